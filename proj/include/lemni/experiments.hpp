#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lemni/compact_set.hpp"
#include "lemni/lemniscate.hpp"
#include "lemni/polynomial.hpp"
#include "lemni/random.hpp"

namespace lemni {

enum class ExperimentKind { mean_ratio, fekete_lemniscate, cluster_lower_bound, capacity_sweep, ehp_census };

std::string to_string(ExperimentKind k);
/// Throws std::invalid_argument for unknown names.
ExperimentKind experiment_kind_from_string(const std::string& name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::mean_ratio;
    CompactSetModel set = make_circle(0.0, 1.0);
    int degree = 200;
    int trials = 100;
    std::uint64_t seed = kDefaultSeed;
    int resolution = 2048;
    /// cluster_lower_bound: the point carrying n1 zeros, and n1 (default n/2).
    Point cluster_center = 2.0;
    std::optional<int> cluster_n1;
    /// ehp_census range.
    int n_min = 3;
    int n_max = 100;
    std::string csv_path;
    std::string summary_path;
    std::string svg_path;
};

/// trials >= 1, degree >= 2, resolution >= 64, valid set, sane census range.
void validate(const ExperimentConfig& cfg);

/// Seed of trial t: first draw of Rng::stream(seed, t). Independent of the
/// order in which trials are evaluated.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// prod (z - X_j) with X_j i.i.d. from the equilibrium measure of K.
MonicPolynomial random_polynomial(const CompactSetModel& k, int n, std::uint64_t seed);

/// One random polynomial counted by critical values; an ambiguous count is
/// replaced by the grid count (method grid, ambiguous stays set).
ComponentReport random_lemniscate_trial(const CompactSetModel& k, int n, std::uint64_t seed,
                                        int resolution = 2048);

struct TrialRecord {
    int trial = 0;
    int count = 0;
    double ratio = 0.0;
    double margin = 0.0;
    bool ambiguous = false;
    CountMethod method = CountMethod::critical_value;
    /// Zeros passing certify_isolated(alpha = 1/2, beta = 3), as a fraction.
    double isolated_fraction = 0.0;
};

struct TrialSummary {
    int degree = 0;
    std::vector<TrialRecord> trials;
    int used = 0;       // unambiguous trials entering the mean
    int ambiguous = 0;  // excluded
    double mean = 0.0;
    double std_error = 0.0;
    /// Largest ratio whose polynomial the grid oracle confirmed; -1 if none.
    int witness_trial = -1;
    double witness_ratio = 0.0;
    int witness_grid_count = 0;
    /// Small-lemniscate spot check, run when K has capacity > 1: every
    /// interior raster cell lies within e^{-n/10} plus a cell diagonal of a
    /// zero. Empty when not run.
    std::optional<bool> small_lemniscate_check;
};

/// Mean of C_n/n over cfg.trials random polynomials on cfg.set. Ambiguous
/// trials are listed but excluded from mean and standard error. The witness
/// is re-counted by the grid before it is reported.
TrialSummary estimate_mean_component_ratio(const ExperimentConfig& cfg);

/// Same statistics for cluster_construction(center, set, n1, n - n1).
TrialSummary cluster_lower_bound_experiment(const ExperimentConfig& cfg);

/// The polynomial with zeros at n Leja points of K.
struct FeketeReport {
    MonicPolynomial poly;
    ComponentReport report;       // both methods combined
    double capacity = 0.0;        // exact where known, else estimated
    std::vector<double> log_derivative;  // log|p'(z_j)|
    double log_derivative_bound = 0.0;   // (n - 1) log c(K)
    double min_spacing = 0.0;
    double spacing_bound = 0.0;          // 1/n^2
    std::vector<bool> isolated;          // isolated_component_test passes
};
FeketeReport fekete_lemniscate_experiment(const CompactSetModel& k, int n, int resolution = 2048);

/// Exact capacity for disk, circle and segment; 64-point estimate otherwise.
double capacity_of(const CompactSetModel& k);

/// Exact minimum over pairs; 0 for duplicates. Needs two points.
double min_pairwise_distance(std::span<const Point> points);

struct EhpRow {
    int n = 0;
    int count = 0;
    double c_n = 0.0;
    double delta_n = 0.0;
    double margin = 0.0;
    bool ambiguous = false;
    int scaled_count = 0;
    bool ok = false;  // count = n - 1, 1 < c_n <= 32, 0 < delta_n < 1
};
/// Needs 3 <= n_min <= n_max <= 100.
std::vector<EhpRow> ehp_census(int n_min, int n_max);

struct CapacityRow {
    int n = 0;
    double capacity = 0.0;
    double transfinite_diameter = 0.0;
};
/// Leja capacity estimates at n = 8, 16, 32, ... doubling, then max_n itself.
std::vector<CapacityRow> capacity_sweep(const CompactSetModel& k, int max_n);

/// The small-lemniscate spot check on one polynomial, see TrialSummary.
bool small_lemniscate_check(const MonicPolynomial& p, int resolution);

}  // namespace lemni
