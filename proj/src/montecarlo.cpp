#include "subgc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "subgc/bounds.hpp"
#include "subgc/errors.hpp"
#include "subgc/io.hpp"
#include "subgc/revenue.hpp"

namespace subgc {

namespace {

// Static chunking; trial t always writes slot t, so results are
// independent of the worker count. The first exception wins and is
// rethrown on the caller's thread.
template <class Fn>
void parallel_for(long long total, int workers, Fn&& fn) {
    workers = static_cast<int>(std::min<long long>(std::max(workers, 1), std::max(total, 1ll)));
    if (workers <= 1) {
        for (long long t = 0; t < total; ++t) fn(t);
        return;
    }
    const long long chunk = (total + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        const long long lo = w * chunk;
        const long long hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi] {
            try {
                for (long long t = lo; t < hi; ++t) fn(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

FreqEstimate make_estimate(long long successes, long long trials, std::uint64_t seed,
                           const Distribution& dist, long long n, std::string event) {
    FreqEstimate e;
    e.successes = successes;
    e.trials = trials;
    e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
    e.seed = seed;
    e.dist = dist.spec_string();
    e.n = n;
    e.event = std::move(event);
    return e;
}

std::string side_name(Side s) { return s == Side::Cdf ? "cdf" : "tail"; }

}  // namespace

std::string event_label(const EventSpec& event) {
    std::ostringstream out;
    if (const auto* gc = std::get_if<GcEvent>(&event)) {
        out << "gc(eps=" << format_double(gc->eps) << ",alpha=" << format_double(gc->alpha)
            << ",side=" << side_name(gc->side) << ")";
    } else if (const auto* rv = std::get_if<RevenueEvent>(&event)) {
        out << "revenue(eps=" << format_double(rv->eps) << ")";
    } else if (const auto* rg = std::get_if<RegionEvent>(&event)) {
        out << "region(eps=" << format_double(rg->eps) << ",alpha=" << format_double(rg->alpha)
            << ",p=" << format_double(rg->p) << ",q=" << format_double(rg->q) << ")";
    } else if (const auto* im = std::get_if<ImplicationEvent>(&event)) {
        out << "implication(eps=" << format_double(im->eps)
            << ",theta=" << format_double(im->theta) << ",C=" << format_double(im->C) << ")";
    }
    return out.str();
}

std::string FreqEstimate::to_json() const {
    nlohmann::json j{{"successes", successes}, {"trials", trials},   {"p_hat", p_hat},
                     {"stderr", std_error},    {"seed", seed},       {"dist", dist},
                     {"n", n},                 {"event", event}};
    return j.dump();
}

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    if (const char* env = std::getenv("SUBGC_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(v);
        throw UserError("SUBGC_THREADS must be a positive integer");
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

std::vector<FreqEstimate> estimate_failure(const Distribution& dist, long long n,
                                           const EventSpec& event, long long trials,
                                           std::uint64_t seed, int workers) {
    if (trials < 1) throw UserError("trials must be a positive integer");
    if (n < 1) throw UserError("n must be a positive integer");
    const int nw = resolve_workers(workers);

    // validate event parameters before spawning workers
    GCReduction reduction{};
    if (const auto* gc = std::get_if<GcEvent>(&event)) {
        if (!(gc->eps > 0.0)) throw UserError("eps must be positive");
        if (!(gc->alpha >= 0.0 && gc->alpha < 1.0)) throw UserError("alpha must lie in [0,1)");
    } else if (const auto* rv = std::get_if<RevenueEvent>(&event)) {
        if (!(rv->eps > 0.0)) throw UserError("eps must be positive");
    } else if (const auto* rg = std::get_if<RegionEvent>(&event)) {
        if (!(rg->eps > 0.0)) throw UserError("eps must be positive");
        if (!(rg->alpha > 0.0 && rg->alpha < 1.0)) throw UserError("alpha must lie in (0,1)");
        if (!(rg->p > 0.0 && rg->p < 1.0)) throw UserError("p must lie in (0,1)");
        if (!(rg->q > 0.0 && rg->q <= 1.0)) throw UserError("q must lie in (0,1]");
    } else if (const auto* im = std::get_if<ImplicationEvent>(&event)) {
        reduction = reduce_revenue_to_gc(im->eps, im->theta, im->C);
    }

    std::vector<std::uint8_t> hits(static_cast<std::size_t>(trials), 0);
    parallel_for(trials, nw, [&](long long t) {
        RngStream rng(seed, static_cast<std::uint64_t>(t));
        const Sample s = dist.sample(rng, static_cast<std::size_t>(n));
        std::uint8_t bits = 0;
        if (const auto* gc = std::get_if<GcEvent>(&event)) {
            bits = !check_submult_event(s, dist, gc->alpha, gc->eps, gc->side);
        } else if (const auto* rv = std::get_if<RevenueEvent>(&event)) {
            bits = revenue_error(s, dist) > rv->eps;
        } else if (const auto* rg = std::get_if<RegionEvent>(&event)) {
            const RegionViolations v =
                region_violations(s, dist, rg->alpha, rg->eps, rg->p, rg->q);
            bits = static_cast<std::uint8_t>(v.low | (v.middle << 1) | (v.high << 2));
        } else if (const auto* im = std::get_if<ImplicationEvent>(&event)) {
            bool holds = true;
            if (revenue_error(s, dist) > im->eps)
                holds = sup_submult_deviation(s, dist, reduction.alpha, Side::Tail).value >
                        reduction.eps_prime;
            bits = holds;
        }
        hits[static_cast<std::size_t>(t)] = bits;
    });

    // aggregate in trial order
    if (std::holds_alternative<RegionEvent>(event)) {
        long long counts[3] = {0, 0, 0};
        for (std::uint8_t b : hits)
            for (int k = 0; k < 3; ++k) counts[k] += (b >> k) & 1;
        const auto& rg = std::get<RegionEvent>(event);
        std::ostringstream params;
        params << "(eps=" << format_double(rg.eps) << ",alpha=" << format_double(rg.alpha)
               << ",p=" << format_double(rg.p) << ",q=" << format_double(rg.q) << ")";
        const char* names[3] = {"region_low", "region_middle", "region_high"};
        std::vector<FreqEstimate> out;
        for (int k = 0; k < 3; ++k)
            out.push_back(make_estimate(counts[k], trials, seed, dist, n,
                                        names[k] + params.str()));
        return out;
    }
    long long successes = 0;
    for (std::uint8_t b : hits) successes += b;
    return {make_estimate(successes, trials, seed, dist, n, event_label(event))};
}

std::vector<CurvePoint> convergence_curve(const Distribution& dist,
                                          const std::vector<long long>& n_list,
                                          long long trials, std::uint64_t seed,
                                          CurveStatistic stat, double alpha, Side side,
                                          int workers) {
    if (n_list.empty()) throw UserError("n_list must be nonempty");
    for (std::size_t j = 1; j < n_list.size(); ++j)
        if (n_list[j] <= n_list[j - 1]) throw UserError("n_list must be strictly increasing");
    for (long long n : n_list)
        if (n < 1) throw UserError("n must be a positive integer");
    if (trials < 1) throw UserError("trials must be a positive integer");
    if (stat == CurveStatistic::Submult && !(alpha >= 0.0 && alpha < 1.0))
        throw UserError("alpha must lie in [0,1)");
    const int nw = resolve_workers(workers);

    const long long total = static_cast<long long>(n_list.size()) * trials;
    std::vector<double> values(static_cast<std::size_t>(total));
    parallel_for(total, nw, [&](long long i) {
        const long long j = i / trials;
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const Sample s = dist.sample(rng, static_cast<std::size_t>(n_list[static_cast<std::size_t>(j)]));
        double v = 0.0;
        switch (stat) {
            case CurveStatistic::RevenueError: v = revenue_error(s, dist); break;
            case CurveStatistic::Ks: v = sup_additive_deviation(s, dist).value; break;
            case CurveStatistic::Submult:
                v = sup_submult_deviation(s, dist, alpha, side).value;
                break;
        }
        values[static_cast<std::size_t>(i)] = v;
    });

    std::vector<CurvePoint> out;
    for (std::size_t j = 0; j < n_list.size(); ++j) {
        std::vector<double> col(values.begin() + static_cast<long long>(j) * trials,
                                values.begin() + static_cast<long long>(j + 1) * trials);
        std::sort(col.begin(), col.end());
        auto rank = [&](double qq) {  // nearest-rank quantile
            const auto idx = static_cast<std::size_t>(
                std::max(0.0, std::ceil(qq * static_cast<double>(trials)) - 1.0));
            return col[std::min(idx, col.size() - 1)];
        };
        CurvePoint pt;
        pt.n = n_list[j];
        pt.q25 = rank(0.25);
        pt.q50 = rank(0.50);
        pt.q75 = rank(0.75);
        pt.num_inf = std::count_if(col.begin(), col.end(),
                                   [](double v) { return std::isinf(v); });
        out.push_back(pt);
    }
    return out;
}

std::vector<FreqRow> freq_job(const Distribution& dist, long long n, const EventSpec& event,
                              long long trials, std::uint64_t seed, int workers,
                              double lemma_p, double lemma_q) {
    std::vector<FreqEstimate> ests = estimate_failure(dist, n, event, trials, seed, workers);
    std::vector<FreqRow> rows;
    if (const auto* rg = std::get_if<RegionEvent>(&event)) {
        const BoundReport rep = lemma_failure_bound(n, rg->eps, rg->alpha, rg->p, rg->q);
        const double terms[3] = {rep.t1, rep.t2, rep.t3};
        for (int k = 0; k < 3; ++k)
            rows.push_back({ests[static_cast<std::size_t>(k)], true, terms[k], rep.feasible});
        return rows;
    }
    FreqRow row{ests[0], false, 0.0, false};
    if (const auto* gc = std::get_if<GcEvent>(&event)) {
        if (lemma_p > 0.0 && lemma_q > 0.0) {
            const BoundReport rep = lemma_failure_bound(n, gc->eps, gc->alpha, lemma_p, lemma_q);
            row.has_bound = true;
            row.bound = rep.bound;
            row.bound_feasible = rep.feasible;
        } else if (gc->alpha == 0.0) {
            row.has_bound = true;
            row.bound = massart_bound(n, gc->eps);
            row.bound_feasible = true;
        }
    }
    rows.push_back(row);
    return rows;
}

std::string freq_row_csv(const std::string& job_id, const FreqRow& row) {
    std::ostringstream out;
    const FreqEstimate& e = row.est;
    out << job_id << ',' << e.dist << ',' << e.n << ',' << e.event << ',' << e.successes
        << ',' << e.trials << ',' << format_double(e.p_hat) << ','
        << format_double(e.std_error) << ',';
    if (row.has_bound)
        out << format_double(row.bound) << ',' << (row.bound_feasible ? "true" : "false");
    else
        out << ',';
    return out.str();
}

std::string curve_row_csv(const std::string& job_id, const std::string& dist,
                          const CurvePoint& pt, const std::string& statistic,
                          long long trials) {
    std::ostringstream out;
    out << job_id << ',' << dist << ',' << pt.n << ',' << statistic << ',' << trials << ','
        << format_double(pt.q25) << ',' << format_double(pt.q50) << ','
        << format_double(pt.q75) << ',' << pt.num_inf;
    return out.str();
}

namespace {

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

EventSpec job_event(const Job& job) {
    Side side = job.side == "tail" ? Side::Tail : Side::Cdf;
    if (job.kind == "gc") return GcEvent{job.eps, job.alpha, side};
    if (job.kind == "revenue") return RevenueEvent{job.eps};
    if (job.kind == "region") return RegionEvent{job.eps, job.alpha, job.p, job.q};
    if (job.kind == "implication") return ImplicationEvent{job.eps, job.theta, job.C};
    throw UserError("job kind '" + job.kind + "' is not an event kind");
}

CurveStatistic parse_statistic(const std::string& s) {
    if (s == "revenue_error") return CurveStatistic::RevenueError;
    if (s == "ks") return CurveStatistic::Ks;
    if (s == "submult") return CurveStatistic::Submult;
    throw UserError("unknown curve statistic '" + s + "'");
}

// One CSV document per job, computed fully in memory.
std::string run_job(const Job& job, int workers) {
    std::ostringstream csv;
    if (job.kind == "gc" || job.kind == "revenue" || job.kind == "region" ||
        job.kind == "implication") {
        const Distribution dist = Distribution::parse(job.dist);
        csv << kFreqCsvHeader << '\n';
        for (const FreqRow& row : freq_job(dist, job.n, job_event(job), job.trials, job.seed,
                                           workers, job.p, job.q))
            csv << freq_row_csv(job.id, row) << '\n';
    } else if (job.kind == "curve") {
        const Distribution dist = Distribution::parse(job.dist);
        const CurveStatistic stat = parse_statistic(job.statistic);
        Side side = job.side == "tail" ? Side::Tail : Side::Cdf;
        csv << kCurveCsvHeader << '\n';
        for (const CurvePoint& pt : convergence_curve(dist, job.n_list, job.trials, job.seed,
                                                      stat, job.alpha, side, workers))
            csv << curve_row_csv(job.id, dist.spec_string(), pt, job.statistic, job.trials)
                << '\n';
    } else if (job.kind == "massart") {
        csv << kFreqCsvHeader << '\n';
        csv << job.id << ",," << job.n << ",massart(eps=" << format_double(job.eps)
            << "),,,,," << format_double(massart_bound(job.n, job.eps)) << ",true\n";
    } else if (job.kind == "lemma") {
        const BoundReport rep = lemma_failure_bound(job.n, job.eps, job.alpha, job.p, job.q);
        csv << kFreqCsvHeader << '\n';
        csv << job.id << ",," << job.n << ",lemma(eps=" << format_double(job.eps)
            << ",alpha=" << format_double(job.alpha) << ",p=" << format_double(job.p)
            << ",q=" << format_double(job.q) << "),,,,," << format_double(rep.bound) << ','
            << (rep.feasible ? "true" : "false") << '\n';
    } else if (job.kind == "submult-n0") {
        csv << kFreqCsvHeader << '\n';
        csv << job.id << ",,," << "submult_n0(eps=" << format_double(job.eps)
            << ",delta=" << format_double(job.delta) << ",alpha=" << format_double(job.alpha)
            << "),,,,," << format_double(n0_submult(job.eps, job.delta, job.alpha))
            << ",true\n";
    } else if (job.kind == "revenue-n0") {
        csv << kFreqCsvHeader << '\n';
        csv << job.id << ",,," << "revenue_n0(eps=" << format_double(job.eps)
            << ",delta=" << format_double(job.delta) << ",theta=" << format_double(job.theta)
            << ",C=" << format_double(job.C) << "),,,,,"
            << format_double(n0_revenue(job.eps, job.delta, job.theta, job.C).n0)
            << ",true\n";
    } else {
        throw UserError("unknown job kind '" + job.kind + "'");
    }
    return csv.str();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.out_dir = j.at("out_dir").get<std::string>();
        int index = 0;
        for (const auto& ij : j.at("jobs")) {
            Job job;
            job.id = ij.value("id", "job" + std::to_string(index));
            job.kind = ij.at("kind").get<std::string>();
            job.dist = ij.value("dist", "");
            job.n = ij.value("n", 0ll);
            if (ij.contains("n_list"))
                job.n_list = ij.at("n_list").get<std::vector<long long>>();
            job.trials = ij.value("trials", 0ll);
            job.seed = ij.value("seed", 0ull);
            job.eps = ij.value("eps", 0.0);
            job.alpha = ij.value("alpha", 0.0);
            job.side = ij.value("side", "cdf");
            job.p = ij.value("p", -1.0);
            job.q = ij.value("q", -1.0);
            job.delta = ij.value("delta", 0.0);
            job.theta = ij.value("theta", 0.0);
            job.C = ij.value("C", 1.0);
            job.statistic = ij.value("statistic", "");
            cfg.jobs.push_back(std::move(job));
            ++index;
        }
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("malformed config: ") + e.what());
    }
    if (cfg.jobs.empty()) throw UserError("config contains no jobs");
    for (const Job& job : cfg.jobs)
        if (job.side != "cdf" && job.side != "tail")
            throw UserError("side must be 'cdf' or 'tail'");
    return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
    // compute everything first; a failure leaves no partial output
    std::vector<std::pair<std::string, std::string>> outputs;  // filename -> content
    nlohmann::json manifest_jobs = nlohmann::json::array();
    for (const Job& job : config.jobs) {
        outputs.emplace_back(job.id + ".csv", run_job(job, workers));
        manifest_jobs.push_back({{"id", job.id},
                                 {"kind", job.kind},
                                 {"csv", job.id + ".csv"},
                                 {"seed", job.seed}});
    }

    nlohmann::json manifest;
    manifest["version"] = "subgc 0.1.0";
    nlohmann::json cfg_json{{"out_dir", config.out_dir}};
    for (const Job& j : config.jobs)
        cfg_json["jobs"].push_back({{"id", j.id}, {"kind", j.kind}, {"dist", j.dist},
                                    {"n", j.n}, {"n_list", j.n_list}, {"trials", j.trials},
                                    {"seed", j.seed}, {"eps", j.eps}, {"alpha", j.alpha},
                                    {"side", j.side}, {"p", j.p}, {"q", j.q},
                                    {"delta", j.delta}, {"theta", j.theta}, {"C", j.C},
                                    {"statistic", j.statistic}});
    char hash_hex[32];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(cfg_json.dump())));
    manifest["config_hash"] = hash_hex;
    manifest["jobs"] = manifest_jobs;

    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    ExperimentResult result;
    for (const auto& [name, content] : outputs) {
        const auto path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw UserError("cannot write " + path.string());
        out << content;
        result.csv_files.push_back(path);
    }
    result.manifest = dir / "manifest.json";
    std::ofstream mout(result.manifest, std::ios::binary);
    if (!mout) throw UserError("cannot write " + result.manifest.string());
    mout << manifest.dump(2) << '\n';
    return result;
}

}  // namespace subgc
