#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lemni/compact_set.hpp"
#include "lemni/constructions.hpp"
#include "lemni/experiments.hpp"
#include "lemni/lemniscate.hpp"
#include "oracles.hpp"

using namespace lemni;

namespace {

ExperimentConfig small_config(CompactSetModel k, int degree, int trials)
{
    ExperimentConfig cfg;
    cfg.set = std::move(k);
    cfg.degree = degree;
    cfg.trials = trials;
    cfg.resolution = 512;
    return cfg;
}

}  // namespace

TEST_CASE("experiment kind names round trip")
{
    for (auto k : {ExperimentKind::mean_ratio, ExperimentKind::fekete_lemniscate, ExperimentKind::cluster_lower_bound,
                   ExperimentKind::capacity_sweep, ExperimentKind::ehp_census}) {
        CHECK(experiment_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(experiment_kind_from_string("mean"), std::invalid_argument);
}

TEST_CASE("config validation")
{
    ExperimentConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.trials = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.trials = 1;
    cfg.degree = 1;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.degree = 2;
    cfg.resolution = 32;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("trial seeds do not depend on evaluation order")
{
    CHECK(trial_seed(7, 3) == trial_seed(7, 3));
    CHECK(trial_seed(7, 3) != trial_seed(7, 4));
    CHECK(trial_seed(7, 3) != trial_seed(8, 3));
    const auto a = random_polynomial(make_circle(0.0, 1.0), 20, trial_seed(1, 5));
    const auto b = random_polynomial(make_circle(0.0, 1.0), 20, trial_seed(1, 5));
    CHECK(std::equal(a.zeros().begin(), a.zeros().end(), b.zeros().begin()));
    for (const auto& z : a.zeros()) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
}

TEST_CASE("circle of radius 1/2 always gives one component")
{
    for (int n : {2, 10, 60}) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto r = random_lemniscate_trial(make_circle(0.0, 0.5), n, s, 256);
            CHECK(r.count == 1);
        }
    }
    const auto sum = estimate_mean_component_ratio(small_config(make_circle(0.0, 0.5), 40, 12));
    CHECK(sum.used == 12);
    CHECK(sum.mean == 1.0 / 40.0);
    CHECK(sum.std_error == 0.0);
    CHECK_FALSE(sum.small_lemniscate_check.has_value());
}

TEST_CASE("segment with two zeros")
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const int c = random_lemniscate_trial(make_segment(-1.0, 1.0), 2, s, 256).count;
        CHECK((c == 1 || c == 2));
    }
}

TEST_CASE("one trial: summary equals the trial")
{
    const auto sum = estimate_mean_component_ratio(small_config(make_circle(0.0, 1.0), 30, 1));
    REQUIRE(sum.trials.size() == 1);
    const auto& t = sum.trials[0];
    if (!t.ambiguous) {
        CHECK(sum.mean == t.ratio);
        CHECK(sum.std_error == 0.0);
    }
    const auto direct = random_lemniscate_trial(make_circle(0.0, 1.0), 30, trial_seed(kDefaultSeed, 0), 512);
    CHECK(direct.count == t.count);
}

TEST_CASE("mean ratio statistics are deterministic and consistent")
{
    const auto cfg = small_config(make_circle(0.0, 1.0), 40, 16);
    const auto a = estimate_mean_component_ratio(cfg);
    const auto b = estimate_mean_component_ratio(cfg);
    REQUIRE(a.trials.size() == 16);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    double sum = 0.0, sq = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        const auto& t = a.trials[i];
        CHECK(t.trial == static_cast<int>(i));
        CHECK(t.count == b.trials[i].count);
        CHECK(t.ratio >= 1.0 / 40.0);
        CHECK(t.ratio <= 1.0);
        CHECK(t.ratio == static_cast<double>(t.count) / 40.0);
        CHECK(t.isolated_fraction >= 0.0);
        CHECK(t.isolated_fraction <= 1.0);
        if (t.ambiguous) continue;
        sum += t.ratio;
        sq += t.ratio * t.ratio;
        ++used;
    }
    CHECK(used == a.used);
    CHECK(a.used + a.ambiguous == 16);
    const double mean = sum / used;
    CHECK(a.mean == doctest::Approx(mean).epsilon(1e-12));
    const double var = (sq - used * mean * mean) / (used - 1);
    CHECK(a.std_error == doctest::Approx(std::sqrt(var / used)).epsilon(1e-9));
    // witness: grid-confirmed and the largest confirmed ratio
    REQUIRE(a.witness_trial >= 0);
    const auto& w = a.trials[static_cast<std::size_t>(a.witness_trial)];
    CHECK(a.witness_grid_count == w.count);
    CHECK(a.witness_ratio == w.ratio);
    const auto p = random_polynomial(cfg.set, 40, trial_seed(cfg.seed, static_cast<std::size_t>(a.witness_trial)));
    CHECK(count_by_grid(p, 1024).count == a.witness_grid_count);
    // a different seed gives a different sample
    auto other = cfg;
    other.seed = 99;
    const auto c = estimate_mean_component_ratio(other);
    bool differs = false;
    for (std::size_t i = 0; i < c.trials.size(); ++i) differs = differs || c.trials[i].count != a.trials[i].count;
    CHECK(differs);
}

TEST_CASE("small lemniscate spot check when capacity exceeds 1")
{
    // the balls shrink like e^{-n/10}, so this only holds from moderate n on
    const auto sum = estimate_mean_component_ratio(small_config(make_circle(0.0, 1.3), 100, 3));
    REQUIRE(sum.small_lemniscate_check.has_value());
    CHECK(*sum.small_lemniscate_check);
    CHECK(small_lemniscate_check(roots_of_unity_poly(24, UnitSign::minus_one), 256) == false);
}

TEST_CASE("cluster lower bound experiment")
{
    auto cfg = small_config(make_segment(Point(-2.2, 0.0), Point(-1.8, 0.0)), 20, 4);
    cfg.kind = ExperimentKind::cluster_lower_bound;
    cfg.cluster_center = 2.0;
    const auto sum = cluster_lower_bound_experiment(cfg);
    REQUIRE(sum.trials.size() == 4);
    for (const auto& t : sum.trials) {
        CHECK(t.count >= 1);
        CHECK(t.count <= 20);
        const auto p = cluster_construction(2.0, cfg.set, 10, 10, trial_seed(cfg.seed, static_cast<std::size_t>(t.trial)));
        const auto r = count_by_critical_values(p);
        if (!r.ambiguous) CHECK(r.count == t.count);
    }
}

TEST_CASE("fekete lemniscate on a circle of radius 1.3")
{
    const auto f = fekete_lemniscate_experiment(make_circle(0.0, 1.3), 40, 1024);
    CHECK(f.report.count == 40);
    CHECK(f.report.method == CountMethod::both_agree);
    CHECK(f.capacity == 1.3);
    CHECK(f.log_derivative_bound == doctest::Approx(39.0 * std::log(1.3)).epsilon(1e-14));
    REQUIRE(f.log_derivative.size() == 40);
    REQUIRE(f.isolated.size() == 40);
    const std::vector<Point> zs(f.poly.zeros().begin(), f.poly.zeros().end());
    for (std::size_t j = 0; j < 40; ++j) {
        CHECK(f.log_derivative[j] >= f.log_derivative_bound);
        CHECK(f.isolated[j]);
        // |p'(z_j)| = prod_{k != j} |z_j - z_k|
        long double prod = 1.0L;
        for (std::size_t k = 0; k < 40; ++k) {
            if (k != j) prod *= std::abs(std::complex<long double>(zs[j]) - std::complex<long double>(zs[k]));
        }
        CHECK(f.log_derivative[j] == doctest::Approx(static_cast<double>(std::log(prod))).epsilon(1e-10));
    }
    CHECK(f.min_spacing >= f.spacing_bound);
    CHECK(f.spacing_bound == 1.0 / 1600.0);
}

TEST_CASE("fekete lemniscate collapses below capacity 1")
{
    const auto f = fekete_lemniscate_experiment(make_circle(0.0, 0.9), 40, 512);
    CHECK(f.report.count == 1);
    for (bool b : f.isolated) CHECK_FALSE(b);
}

TEST_CASE("capacity_of")
{
    CHECK(capacity_of(make_disk(1.0, 0.7)) == 0.7);
    CHECK(capacity_of(make_circle(0.0, 2.0)) == 2.0);
    CHECK(capacity_of(make_segment(-1.0, 1.0)) == 0.5);
    CHECK(capacity_of(make_segment(Point(0.0, 0.0), Point(3.0, 4.0))) == 1.25);
    const auto two = make_union({make_segment(-2.1, -2.0), make_segment(2.0, 2.1)});
    CHECK(capacity_of(two) == doctest::Approx(0.5 * std::sqrt(4.1 * 0.1)).epsilon(0.1));
}

TEST_CASE("min_pairwise_distance")
{
    for (int n : {3, 7, 40}) {
        const auto u = roots_of_unity_poly(n, UnitSign::minus_one);
        const std::vector<Point> zs(u.zeros().begin(), u.zeros().end());
        CHECK(min_pairwise_distance(zs) == doctest::Approx(2.0 * std::sin(std::numbers::pi / n)).epsilon(1e-12));
    }
    const std::vector<Point> dup{1.0, Point(0.0, 1.0), 1.0};
    CHECK(min_pairwise_distance(dup) == 0.0);
    oracle::TestRng rng(3);
    std::vector<Point> pts;
    for (int k = 0; k < 50; ++k) pts.push_back(rng.in_disk(1.0));
    double brute = 1e300;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) brute = std::min(brute, std::abs(pts[i] - pts[j]));
    CHECK(min_pairwise_distance(pts) == brute);
    CHECK_THROWS_AS(min_pairwise_distance(std::vector<Point>{1.0}), std::invalid_argument);
}

TEST_CASE("ehp census rows")
{
    const auto rows = ehp_census(3, 20);
    REQUIRE(rows.size() == 18);
    double prev = 0.0;
    for (const auto& r : rows) {
        CHECK(r.ok);
        CHECK(r.count == r.n - 1);
        CHECK(r.scaled_count == r.n - 1);
        CHECK(r.c_n > 1.0);
        CHECK(r.c_n <= 32.0);
        CHECK(r.delta_n > 0.0);
        CHECK(r.delta_n < 1.0);
        CHECK(r.delta_n > prev);
        prev = r.delta_n;
    }
    CHECK_THROWS_AS(ehp_census(2, 5), std::invalid_argument);
    CHECK_THROWS_AS(ehp_census(10, 101), std::invalid_argument);
    CHECK_THROWS_AS(ehp_census(10, 9), std::invalid_argument);
}

TEST_CASE("capacity sweep")
{
    const auto rows = capacity_sweep(make_disk(0.0, 1.0), 40);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].n == 8);
    CHECK(rows[1].n == 16);
    CHECK(rows[2].n == 32);
    CHECK(rows[3].n == 40);
    for (const auto& r : rows) {
        CHECK(r.capacity == doctest::Approx(1.0).epsilon(0.1));
        CHECK(r.transfinite_diameter >= r.capacity * 0.9);
    }
}
