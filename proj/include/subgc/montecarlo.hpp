#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "subgc/distributions.hpp"
#include "subgc/empirical.hpp"

namespace subgc {

struct GcEvent {
    double eps;
    double alpha;
    Side side = Side::Cdf;
};

struct RevenueEvent {
    double eps;
};

struct RegionEvent {
    double eps;
    double alpha;
    double p;
    double q;
};

/// The positive event: whenever revenue_error > eps, the tail-side
/// submultiplicative deviation at (eps', alpha') from the (theta, C)
/// reduction exceeds eps'. Expected to hold in every trial.
struct ImplicationEvent {
    double eps;
    double theta;
    double C;
};

using EventSpec = std::variant<GcEvent, RevenueEvent, RegionEvent, ImplicationEvent>;

std::string event_label(const EventSpec& event);

struct FreqEstimate {
    long long successes = 0;
    long long trials = 0;
    double p_hat = 0.0;
    double std_error = 0.0;  // sqrt(p_hat (1-p_hat) / trials)
    std::uint64_t seed = 0;
    std::string dist;
    long long n = 0;
    std::string event;

    std::string to_json() const;
};

/// Resolves the worker count: `workers` if positive, else SUBGC_THREADS,
/// else hardware concurrency. The result of every routine below is
/// independent of the resolved value.
int resolve_workers(int workers);

/// Monte Carlo frequency of the event over `trials` independent trials.
/// Trial t draws its sample from RngStream(seed, t). Returns one
/// estimate, or three (low/middle/high) for a RegionEvent.
std::vector<FreqEstimate> estimate_failure(const Distribution& dist, long long n,
                                           const EventSpec& event, long long trials,
                                           std::uint64_t seed, int workers = 0);

enum class CurveStatistic { RevenueError, Ks, Submult };

struct CurvePoint {
    long long n;
    double q25, q50, q75;   // nearest-rank quartiles; may be +inf
    long long num_inf;      // how many of the trials hit +inf
};

/// Per-n quartiles of a per-sample statistic across trials. Trial t at
/// n_list position j draws from RngStream(seed, j * trials + t).
std::vector<CurvePoint> convergence_curve(const Distribution& dist,
                                          const std::vector<long long>& n_list,
                                          long long trials, std::uint64_t seed,
                                          CurveStatistic stat, double alpha = 0.0,
                                          Side side = Side::Cdf, int workers = 0);

/// A frequency estimate with the matching analytic bound attached when
/// one applies (massart at alpha = 0, the three-term bound when (p,q)
/// are supplied, per-region terms for region events).
struct FreqRow {
    FreqEstimate est;
    bool has_bound = false;
    double bound = 0.0;
    bool bound_feasible = false;
};

std::vector<FreqRow> freq_job(const Distribution& dist, long long n, const EventSpec& event,
                              long long trials, std::uint64_t seed, int workers,
                              double lemma_p = -1.0, double lemma_q = -1.0);

/// One CSV line (no trailing newline) under kFreqCsvHeader / kCurveCsvHeader.
std::string freq_row_csv(const std::string& job_id, const FreqRow& row);
std::string curve_row_csv(const std::string& job_id, const std::string& dist,
                          const CurvePoint& pt, const std::string& statistic,
                          long long trials);

/// One batch entry. `kind` selects which fields apply:
///   gc | revenue | region | implication : estimate_failure jobs
///   curve                               : convergence_curve job
///   massart | lemma | submult-n0 | revenue-n0 : bound evaluation rows
struct Job {
    std::string id;
    std::string kind;
    std::string dist;
    long long n = 0;
    std::vector<long long> n_list;
    long long trials = 0;
    std::uint64_t seed = 0;
    double eps = 0.0;
    double alpha = 0.0;
    std::string side = "cdf";
    double p = -1.0, q = -1.0;   // optional lemma tuning parameters
    double delta = 0.0;
    double theta = 0.0;
    double C = 1.0;
    std::string statistic;       // curve jobs: revenue_error | ks | submult
};

struct ExperimentConfig {
    std::string out_dir;
    std::vector<Job> jobs;

    /// Throws UserError on malformed or unknown fields/values.
    static ExperimentConfig from_json_text(const std::string& text);
};

struct ExperimentResult {
    std::filesystem::path manifest;
    std::vector<std::filesystem::path> csv_files;
};

/// Runs every job, then writes one CSV per job plus a manifest JSON
/// recording seeds and the config hash. All results are computed before
/// anything is written, so a failing job leaves no partial output.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 0);

/// Documented CSV schema for frequency/bound rows.
inline constexpr const char* kFreqCsvHeader =
    "job_id,dist,n,event,successes,trials,p_hat,stderr,bound,bound_feasible";
/// Documented CSV schema for convergence-curve rows.
inline constexpr const char* kCurveCsvHeader =
    "job_id,dist,n,statistic,trials,q25,q50,q75,num_inf";

}  // namespace subgc
