#include "subgc/cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subgc/bounds.hpp"
#include "subgc/errors.hpp"
#include "subgc/io.hpp"
#include "subgc/montecarlo.hpp"

namespace subgc {

namespace {

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
    if (out_path.empty() || out_path == "-") {
        out << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UserError("cannot write '" + out_path + "'");
    f << content;
}

std::string bound_report_text(const BoundReport& r) {
    std::ostringstream s;
    s << "bound: " << format_double(r.bound) << '\n'
      << "terms: t1=" << format_double(r.t1) << " t2=" << format_double(r.t2)
      << " t3=" << format_double(r.t3) << '\n'
      << "p: " << format_double(r.p) << '\n'
      << "q: " << format_double(r.q) << '\n'
      << "m: " << r.m << '\n'
      << "n: " << r.n << '\n'
      << "feasible: " << (r.feasible ? "true" : "false") << '\n'
      << "vacuous: " << (r.vacuous ? "true" : "false") << '\n';
    if (!r.note.empty()) s << "note: " << r.note << '\n';
    return s.str();
}

struct BoundArgs {
    long long n = 0;
    double eps = 0, delta = 0, alpha = 0, theta = 0, C = 1, p = -1, q = -1;
    std::string tune;
    std::string format = "text";
    std::string out_path = "-";
};

struct SimArgs {
    std::string dist;
    long long n = 0, trials = 0;
    std::uint64_t seed = 0;
    double eps = 0, alpha = 0, p = -1, q = -1, theta = 0, C = 1;
    std::string side = "cdf";
    std::string format = "csv";
    std::string out_path = "-";
};

int emit_freq_rows(const std::vector<FreqRow>& rows, const SimArgs& a, std::ostream& out) {
    std::ostringstream content;
    if (a.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const FreqRow& row : rows) {
            nlohmann::json obj = nlohmann::json::parse(row.est.to_json());
            if (row.has_bound) {
                obj["bound"] = row.bound;
                obj["bound_feasible"] = row.bound_feasible;
            }
            arr.push_back(obj);
        }
        content << arr.dump(2) << '\n';
    } else {
        content << kFreqCsvHeader << '\n';
        for (const FreqRow& row : rows) content << freq_row_csv("cli", row) << '\n';
    }
    emit(content.str(), a.out_path, out);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"subgc: empirical-CDF deviation statistics, closed-form failure bounds, "
                 "posted-price revenue estimation, and a reproducible Monte Carlo harness"};
    app.require_subcommand(1);

    // ---- bound ----------------------------------------------------------
    auto* bound = app.add_subcommand("bound", "evaluate closed-form bounds");
    bound->require_subcommand(1);
    BoundArgs ba;

    auto* massart = bound->add_subcommand("massart", "2 exp(-2 n eps^2)");
    massart->add_option("--n", ba.n)->required();
    massart->add_option("--eps", ba.eps)->required();
    massart->add_option("--format", ba.format)->check(CLI::IsMember({"text", "json"}));
    massart->add_option("--out", ba.out_path);

    auto* lemma = bound->add_subcommand(
        "lemma", "three-term failure bound at (p,q), explicit or tuned");
    lemma->add_option("--n", ba.n)->required();
    lemma->add_option("--eps", ba.eps)->required();
    lemma->add_option("--alpha", ba.alpha)->required();
    lemma->add_option("--p", ba.p);
    lemma->add_option("--q", ba.q);
    lemma->add_option("--tune", ba.tune)->check(CLI::IsMember({"paper", "grid"}));
    lemma->add_option("--delta", ba.delta);
    lemma->add_option("--format", ba.format)->check(CLI::IsMember({"text", "json"}));
    lemma->add_option("--out", ba.out_path);

    auto* submult_n0 = bound->add_subcommand("submult-n0", "sample-size threshold");
    submult_n0->add_option("--eps", ba.eps)->required();
    submult_n0->add_option("--delta", ba.delta)->required();
    submult_n0->add_option("--alpha", ba.alpha)->required();
    submult_n0->add_option("--format", ba.format)->check(CLI::IsMember({"text", "json"}));
    submult_n0->add_option("--out", ba.out_path);

    auto* revenue_n0 = bound->add_subcommand(
        "revenue-n0", "sample size for uniform revenue estimation");
    revenue_n0->add_option("--eps", ba.eps)->required();
    revenue_n0->add_option("--delta", ba.delta)->required();
    revenue_n0->add_option("--theta", ba.theta)->required();
    revenue_n0->add_option("--C", ba.C)->required();
    revenue_n0->add_option("--format", ba.format)->check(CLI::IsMember({"text", "json"}));
    revenue_n0->add_option("--out", ba.out_path);

    // ---- simulate -------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo frequency estimates");
    simulate->require_subcommand(1);
    SimArgs sa;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--dist", sa.dist)->required();
        cmd->add_option("--n", sa.n)->required();
        cmd->add_option("--trials", sa.trials)->required();
        cmd->add_option("--seed", sa.seed);
        cmd->add_option("--format", sa.format)->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", sa.out_path);
    };
    auto* sim_gc = simulate->add_subcommand("gc", "submultiplicative deviation failures");
    add_common(sim_gc);
    sim_gc->add_option("--eps", sa.eps)->required();
    sim_gc->add_option("--alpha", sa.alpha)->required();
    sim_gc->add_option("--side", sa.side)->check(CLI::IsMember({"cdf", "tail"}));
    sim_gc->add_option("--p", sa.p);
    sim_gc->add_option("--q", sa.q);

    auto* sim_rev = simulate->add_subcommand("revenue", "revenue-estimation failures");
    add_common(sim_rev);
    sim_rev->add_option("--eps", sa.eps)->required();

    auto* sim_region = simulate->add_subcommand("region", "per-region failure breakdown");
    add_common(sim_region);
    sim_region->add_option("--eps", sa.eps)->required();
    sim_region->add_option("--alpha", sa.alpha)->required();
    sim_region->add_option("--p", sa.p)->required();
    sim_region->add_option("--q", sa.q)->required();

    auto* sim_impl = simulate->add_subcommand(
        "implication", "revenue-error to tail-deviation implication");
    add_common(sim_impl);
    sim_impl->add_option("--eps", sa.eps)->required();
    sim_impl->add_option("--theta", sa.theta)->required();
    sim_impl->add_option("--C", sa.C)->required();

    // ---- sweep ----------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "run a batch of jobs from a JSON config");
    std::string sweep_config, sweep_out_dir;
    sweep->add_option("--config", sweep_config)->required();
    sweep->add_option("--out-dir", sweep_out_dir);

    // ---- plot -----------------------------------------------------------
    auto* plot = app.add_subcommand("plot", "render a CSV as a self-contained SVG chart");
    std::string plot_in, plot_x, plot_y, plot_out;
    bool plot_logx = false, plot_logy = false;
    plot->add_option("--in", plot_in)->required();
    plot->add_option("--x", plot_x)->required();
    plot->add_option("--y", plot_y)->required();
    plot->add_flag("--logx", plot_logx);
    plot->add_flag("--logy", plot_logy);
    plot->add_option("--out", plot_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (massart->parsed() || lemma->parsed() || submult_n0->parsed() ||
            revenue_n0->parsed()) {
            std::ostringstream content;
            int rc = 0;
            if (massart->parsed()) {
                err << "# bound massart n=" << ba.n << " eps=" << format_double(ba.eps)
                    << " format=" << ba.format << " out=" << ba.out_path << '\n';
                const double b = massart_bound(ba.n, ba.eps);
                if (ba.format == "json")
                    content << nlohmann::json{{"kind", "massart"}, {"n", ba.n},
                                              {"eps", ba.eps}, {"bound", b}}.dump()
                            << '\n';
                else
                    content << "bound: " << format_double(b) << '\n';
            } else if (lemma->parsed()) {
                const bool explicit_pq = ba.p > 0 && ba.q > 0;
                if (!explicit_pq && ba.tune.empty())
                    throw UserError("provide --p and --q, or --tune {paper,grid} with --delta");
                err << "# bound lemma n=" << ba.n << " eps=" << format_double(ba.eps)
                    << " alpha=" << format_double(ba.alpha)
                    << (explicit_pq ? " p=" + format_double(ba.p) + " q=" + format_double(ba.q)
                                    : " tune=" + ba.tune + " delta=" + format_double(ba.delta))
                    << " format=" << ba.format << " out=" << ba.out_path << '\n';
                BoundReport rep =
                    explicit_pq
                        ? lemma_failure_bound(ba.n, ba.eps, ba.alpha, ba.p, ba.q)
                        : tune_pq(ba.n, ba.eps, ba.alpha, ba.delta,
                                  ba.tune == "grid" ? TuneStrategy::Grid : TuneStrategy::Paper);
                if (ba.format == "json")
                    content << rep.to_json() << '\n';
                else
                    content << bound_report_text(rep);
                if (!rep.feasible) {
                    err << "error: parameters are infeasible"
                        << (rep.note.empty() ? "" : ": " + rep.note) << '\n';
                    rc = 2;
                }
            } else if (submult_n0->parsed()) {
                err << "# bound submult-n0 eps=" << format_double(ba.eps)
                    << " delta=" << format_double(ba.delta)
                    << " alpha=" << format_double(ba.alpha) << " format=" << ba.format
                    << " out=" << ba.out_path << '\n';
                const N0Report r = n0_submult_report(ba.eps, ba.delta, ba.alpha);
                if (ba.format == "json")
                    content << nlohmann::json{{"kind", "submult_n0"},
                                              {"n0", r.n0},
                                              {"direct_term", r.direct_term},
                                              {"recursed_term", r.recursed_term},
                                              {"D", r.D},
                                              {"exponent", r.exponent}}.dump()
                            << '\n';
                else
                    content << "n0: " << format_double(r.n0) << '\n'
                            << "direct_term: " << format_double(r.direct_term) << '\n'
                            << "recursed_term: " << format_double(r.recursed_term) << '\n'
                            << "D: " << format_double(r.D) << '\n';
            } else {
                err << "# bound revenue-n0 eps=" << format_double(ba.eps)
                    << " delta=" << format_double(ba.delta)
                    << " theta=" << format_double(ba.theta) << " C=" << format_double(ba.C)
                    << " format=" << ba.format << " out=" << ba.out_path << '\n';
                const RevenueComplexityReport r = n0_revenue(ba.eps, ba.delta, ba.theta, ba.C);
                if (ba.format == "json")
                    content << nlohmann::json{{"kind", "revenue_n0"},
                                              {"n0", r.n0},
                                              {"eps_prime", r.eps_prime},
                                              {"alpha", r.alpha},
                                              {"eq1_leading", r.eq1_leading}}.dump()
                            << '\n';
                else
                    content << "n0: " << format_double(r.n0) << '\n'
                            << "eps_prime: " << format_double(r.eps_prime) << '\n'
                            << "alpha: " << format_double(r.alpha) << '\n'
                            << "eq1_leading: " << format_double(r.eq1_leading) << '\n';
            }
            emit(content.str(), ba.out_path, out);
            return rc;
        }

        if (simulate->parsed()) {
            const int workers = resolve_workers(0);
            EventSpec event;
            std::string sub;
            if (sim_gc->parsed()) {
                sub = "gc";
                event = GcEvent{sa.eps, sa.alpha, sa.side == "tail" ? Side::Tail : Side::Cdf};
            } else if (sim_rev->parsed()) {
                sub = "revenue";
                event = RevenueEvent{sa.eps};
            } else if (sim_region->parsed()) {
                sub = "region";
                event = RegionEvent{sa.eps, sa.alpha, sa.p, sa.q};
            } else {
                sub = "implication";
                event = ImplicationEvent{sa.eps, sa.theta, sa.C};
            }
            const Distribution dist = Distribution::parse(sa.dist);
            err << "# simulate " << sub << " dist=" << sa.dist << " n=" << sa.n
                << " trials=" << sa.trials << " seed=" << sa.seed << " event="
                << event_label(event) << " threads=" << workers << " format=" << sa.format
                << " out=" << sa.out_path << '\n';
            const auto rows =
                freq_job(dist, sa.n, event, sa.trials, sa.seed, workers, sa.p, sa.q);
            return emit_freq_rows(rows, sa, out);
        }

        if (sweep->parsed()) {
            std::ifstream f(sweep_config);
            if (!f) throw UserError("cannot read config '" + sweep_config + "'");
            std::stringstream buf;
            buf << f.rdbuf();
            ExperimentConfig cfg = ExperimentConfig::from_json_text(buf.str());
            if (!sweep_out_dir.empty()) cfg.out_dir = sweep_out_dir;
            const int workers = resolve_workers(0);
            err << "# sweep config=" << sweep_config << " out_dir=" << cfg.out_dir
                << " jobs=" << cfg.jobs.size() << " threads=" << workers << '\n';
            const ExperimentResult res = run_experiment(cfg, workers);
            for (const auto& p : res.csv_files) err << "# wrote " << p.string() << '\n';
            out << res.manifest.string() << '\n';
            return 0;
        }

        if (plot->parsed()) {
            err << "# plot in=" << plot_in << " x=" << plot_x << " y=" << plot_y
                << " logx=" << (plot_logx ? "true" : "false")
                << " logy=" << (plot_logy ? "true" : "false") << " out=" << plot_out << '\n';
            std::ifstream f(plot_in);
            if (!f) throw UserError("cannot read '" + plot_in + "'");
            std::stringstream buf;
            buf << f.rdbuf();
            const CsvTable table = CsvTable::parse(buf.str());
            PlotSpec spec;
            spec.x_col = plot_x;
            spec.y_col = plot_y;
            spec.logx = plot_logx;
            spec.logy = plot_logy;
            const std::string svg = render_svg_chart(table, spec);
            std::ofstream o(plot_out, std::ios::binary);
            if (!o) throw UserError("cannot write '" + plot_out + "'");
            o << svg;
            return 0;
        }
    } catch (const UserError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace subgc
