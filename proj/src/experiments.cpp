#include "lemni/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lemni/constructions.hpp"
#include "lemni/potential.hpp"

namespace lemni {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double isolated_fraction(const MonicPolynomial& p)
{
    std::size_t k = 0;
    for (std::size_t j = 0; j < p.degree(); ++j) {
        if (certify_isolated(p, j, 0.5, 3.0)) ++k;
    }
    return static_cast<double>(k) / static_cast<double>(p.degree());
}

TrialRecord record(int trial, const MonicPolynomial& p, const ComponentReport& r)
{
    TrialRecord t;
    t.trial = trial;
    t.count = r.count;
    t.ratio = static_cast<double>(r.count) / static_cast<double>(p.degree());
    t.margin = r.margin;
    t.ambiguous = r.ambiguous;
    t.method = r.method;
    t.isolated_fraction = isolated_fraction(p);
    return t;
}

// Shared driver: build trial polynomials, aggregate in trial order, then
// confirm the best ratios with the grid until one verifies.
template <class Build>
TrialSummary run_trials(const ExperimentConfig& cfg, Build&& build, bool spot_check)
{
    validate(cfg);
    TrialSummary s;
    s.degree = cfg.degree;
    s.trials.reserve(static_cast<std::size_t>(cfg.trials));
    bool spot_ok = true;
    for (int t = 0; t < cfg.trials; ++t) {
        const MonicPolynomial p = build(trial_seed(cfg.seed, static_cast<std::size_t>(t)));
        ComponentReport r = count_by_critical_values(p);
        if (r.ambiguous) {
            const ComponentReport g = count_by_grid(p, cfg.resolution);
            r.count = g.count;
            r.method = CountMethod::grid;
        }
        s.trials.push_back(record(t, p, r));
        if (spot_check) spot_ok = spot_ok && small_lemniscate_check(p, 512);
    }
    if (spot_check) s.small_lemniscate_check = spot_ok;

    // integer sums keep equal counts exact
    long long sum = 0;
    long long sq = 0;
    for (const auto& t : s.trials) {
        if (t.ambiguous) {
            ++s.ambiguous;
            continue;
        }
        ++s.used;
        sum += t.count;
        sq += static_cast<long long>(t.count) * t.count;
    }
    if (s.used > 0) {
        const double n = static_cast<double>(cfg.degree);
        s.mean = static_cast<double>(sum) / s.used / n;
        if (s.used > 1) {
            const long long spread = s.used * sq - sum * sum;
            s.std_error = std::sqrt(static_cast<double>(spread) / (static_cast<double>(s.used) * (s.used - 1)) / s.used) / n;
        }
    }

    std::vector<std::size_t> order(s.trials.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.trials[a].ratio > s.trials[b].ratio; });
    for (std::size_t i = 0; i < order.size() && i < 8; ++i) {
        const auto& t = s.trials[order[i]];
        const MonicPolynomial p = build(trial_seed(cfg.seed, static_cast<std::size_t>(t.trial)));
        const ComponentReport g = count_by_grid(p, cfg.resolution);
        if (g.certified && g.count == t.count) {
            s.witness_trial = t.trial;
            s.witness_ratio = t.ratio;
            s.witness_grid_count = g.count;
            break;
        }
    }
    return s;
}

}  // namespace

std::string to_string(ExperimentKind k)
{
    switch (k) {
    case ExperimentKind::mean_ratio: return "mean_ratio";
    case ExperimentKind::fekete_lemniscate: return "fekete_lemniscate";
    case ExperimentKind::cluster_lower_bound: return "cluster_lower_bound";
    case ExperimentKind::capacity_sweep: return "capacity_sweep";
    case ExperimentKind::ehp_census: return "ehp_census";
    }
    return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name)
{
    for (auto k : {ExperimentKind::mean_ratio, ExperimentKind::fekete_lemniscate, ExperimentKind::cluster_lower_bound,
                   ExperimentKind::capacity_sweep, ExperimentKind::ehp_census}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown experiment kind: " + name);
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (cfg.degree < 2) throw std::invalid_argument("degree must be at least 2");
    if (cfg.resolution < 64) throw std::invalid_argument("resolution must be at least 64");
    validate(cfg.set);
    if (cfg.kind == ExperimentKind::ehp_census && !(3 <= cfg.n_min && cfg.n_min <= cfg.n_max && cfg.n_max <= 100))
        throw std::invalid_argument("census range must satisfy 3 <= n_min <= n_max <= 100");
    if (cfg.cluster_n1 && (*cfg.cluster_n1 < 0 || *cfg.cluster_n1 > cfg.degree))
        throw std::invalid_argument("n1 must lie in [0, degree]");
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial)
{
    return Rng::stream(seed, trial).next();
}

MonicPolynomial random_polynomial(const CompactSetModel& k, int n, std::uint64_t seed)
{
    if (n < 1) throw std::invalid_argument("degree must be positive");
    return MonicPolynomial::from_zeros(equilibrium_sample(k, static_cast<std::size_t>(n), seed).points);
}

ComponentReport random_lemniscate_trial(const CompactSetModel& k, int n, std::uint64_t seed, int resolution)
{
    const MonicPolynomial p = random_polynomial(k, n, seed);
    ComponentReport r = count_by_critical_values(p);
    if (r.ambiguous) {
        ComponentReport g = count_by_grid(p, resolution);
        g.ambiguous = true;
        g.margin = r.margin;
        return g;
    }
    return r;
}

TrialSummary estimate_mean_component_ratio(const ExperimentConfig& cfg)
{
    const bool spot = capacity_of(cfg.set) > 1.0;
    return run_trials(cfg, [&](std::uint64_t seed) { return random_polynomial(cfg.set, cfg.degree, seed); }, spot);
}

TrialSummary cluster_lower_bound_experiment(const ExperimentConfig& cfg)
{
    const int n1 = cfg.cluster_n1.value_or(cfg.degree / 2);
    return run_trials(
        cfg, [&](std::uint64_t seed) { return cluster_construction(cfg.cluster_center, cfg.set, n1, cfg.degree - n1, seed); },
        false);
}

double capacity_of(const CompactSetModel& k)
{
    if (const auto* d = std::get_if<DiskSet>(&k.shape)) return d->radius;
    if (const auto* c = std::get_if<CircleSet>(&k.shape)) return c->radius;
    if (const auto* s = std::get_if<SegmentSet>(&k.shape)) return 0.25 * std::abs(s->b - s->a);
    return capacity_estimate(k, 64);
}

double min_pairwise_distance(std::span<const Point> points)
{
    if (points.size() < 2) throw std::invalid_argument("need at least two points");
    double best = kInf;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, std::abs(points[i] - points[j]));
    }
    return best;
}

FeketeReport fekete_lemniscate_experiment(const CompactSetModel& k, int n, int resolution)
{
    if (n < 2) throw std::invalid_argument("degree must be at least 2");
    const auto leja = leja_points(k, static_cast<std::size_t>(n));
    FeketeReport out{MonicPolynomial::from_zeros(leja.points), {}, capacity_of(k), {}, 0.0, 0.0, 0.0, {}};
    out.report = count_both(out.poly, resolution).combined();
    out.log_derivative_bound = (n - 1) * std::log(out.capacity);
    out.min_spacing = min_pairwise_distance(out.poly.zeros());
    out.spacing_bound = 1.0 / (static_cast<double>(n) * n);
    for (std::size_t j = 0; j < out.poly.degree(); ++j) {
        out.log_derivative.push_back(log_abs_derivative_at_zero(out.poly, j));
        const double r = isolation_radius(out.poly, j);
        out.isolated.push_back(r > 0.0);
    }
    return out;
}

std::vector<EhpRow> ehp_census(int n_min, int n_max)
{
    if (!(3 <= n_min && n_min <= n_max && n_max <= 100))
        throw std::invalid_argument("census range must satisfy 3 <= n_min <= n_max <= 100");
    std::vector<EhpRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        const EhpData d = ehp_data(n);
        const ComponentReport r = count_by_critical_values(d.poly);
        const ComponentReport rs = count_by_critical_values(scale(d.poly, d.delta_n));
        EhpRow row{n, r.count, d.c_n, d.delta_n, r.margin, r.ambiguous, rs.count, false};
        row.ok = row.count == n - 1 && row.scaled_count == n - 1 && d.c_n > 1.0 && d.c_n <= 32.0 && d.delta_n > 0.0 &&
                 d.delta_n < 1.0;
        rows.push_back(row);
    }
    return rows;
}

std::vector<CapacityRow> capacity_sweep(const CompactSetModel& k, int max_n)
{
    if (max_n < 8) throw std::invalid_argument("capacity sweep needs max_n >= 8");
    std::vector<CapacityRow> rows;
    for (int n = 8;; n *= 2) {
        const int m = std::min(n, max_n);
        const auto est = capacity_report(k, static_cast<std::size_t>(m));
        rows.push_back({m, est.capacity, est.transfinite_diameter});
        if (m == max_n) break;
    }
    return rows;
}

bool small_lemniscate_check(const MonicPolynomial& p, int resolution)
{
    const Raster r = rasterize(p, resolution);
    const auto zs = p.zeros();
    const double reach = std::exp(-static_cast<double>(p.degree()) / 10.0) + r.cell * std::sqrt(2.0);
    for (const auto& run : r.runs) {
        for (int ix = run.x0; ix < run.x1; ++ix) {
            const Point c = r.cell_center(ix, run.y);
            const bool near = std::any_of(zs.begin(), zs.end(), [&](Point z) { return std::abs(c - z) <= reach; });
            if (!near) return false;
        }
    }
    return true;
}

}  // namespace lemni
