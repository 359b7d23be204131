#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lemni/constructions.hpp"
#include "lemni/rootfind.hpp"
#include "oracles.hpp"

using namespace lemni;

namespace {

std::vector<Point> flatten(const RootSet& rs)
{
    std::vector<Point> out;
    for (const auto& r : rs.roots) {
        for (int m = 0; m < r.multiplicity; ++m) out.push_back(r.point);
    }
    return out;
}

// Distance from z to the convex hull of pts (pts small, O(n^2) edges).
double hull_distance(const std::vector<Point>& pts, Point z)
{
    auto cross = [](Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); };
    // inside iff for the hull no separating direction exists; check with all
    // pairwise edges: z is outside iff some edge line has every point on one
    // side and z strictly on the other.
    double best = 1e300;
    bool outside = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j || pts[i] == pts[j]) continue;
            const Point e = pts[j] - pts[i];
            bool all_left = true;
            for (const auto& q : pts) all_left = all_left && cross(e, q - pts[i]) >= -1e-14;
            if (all_left && cross(e, z - pts[i]) < 0.0) outside = true;
        }
        best = std::min(best, std::abs(z - pts[i]));
    }
    if (!outside) return 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Point e = pts[j] - pts[i];
            const double n2 = std::norm(e);
            if (n2 == 0.0) continue;
            const double t = std::clamp(((z - pts[i]) * std::conj(e)).real() / n2, 0.0, 1.0);
            best = std::min(best, std::abs(z - (pts[i] + t * e)));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("all_roots of z^2 - 1")
{
    const auto rs = all_roots(CoefficientVector{{-1.0, 0.0, 1.0}});
    REQUIRE(rs.converged);
    REQUIRE(rs.roots.size() == 2);
    CHECK(std::abs(rs.roots[0].point - Point(-1.0)) < 1e-14);
    CHECK(std::abs(rs.roots[1].point - Point(1.0)) < 1e-14);
    CHECK(rs.roots[0].multiplicity == 1);
    CHECK(rs.total_multiplicity() == 2);
}

TEST_CASE("all_roots of n z^(n-1) gives 0 with multiplicity n-1")
{
    for (int n : {2, 5, 30, 60}) {
        std::vector<Point> c(static_cast<std::size_t>(n), 0.0);
        c.back() = static_cast<double>(n);
        const auto rs = all_roots(CoefficientVector{c});
        REQUIRE(rs.roots.size() == 1);
        CHECK(rs.roots[0].point == Point(0.0));
        CHECK(rs.roots[0].multiplicity == n - 1);
    }
}

TEST_CASE("roots of the Chebyshev derivative are 2 cos(k pi / n)")
{
    const int n = 20;
    const auto d = derivative_coefficients(coefficients(chebyshev_monic(n, 2.0)));
    const auto rs = all_roots(d);
    REQUIRE(rs.converged);
    std::vector<Point> want;
    for (int k = 1; k < n; ++k) want.push_back(2.0 * std::cos(k * std::numbers::pi / n));
    CHECK(oracle::match_distance(flatten(rs), want) < 1e-9);
}

TEST_CASE("all_roots rejects bad input")
{
    CHECK_THROWS_AS(all_roots(CoefficientVector{{1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(all_roots(CoefficientVector{{1.0, 0.0}}), std::invalid_argument);
    RootOptions o;
    o.tol = 0.0;
    CHECK_THROWS_AS(all_roots(CoefficientVector{{1.0, 1.0}}, o), std::invalid_argument);
}

TEST_CASE("non-convergence is flagged")
{
    RootOptions o;
    o.max_iter = 1;
    oracle::TestRng rng(2);
    std::vector<Point> zs;
    for (int k = 0; k < 25; ++k) zs.push_back(rng.in_disk(1.0));
    const auto rs = all_roots(coefficients(MonicPolynomial::from_zeros(zs)), o);
    CHECK_FALSE(rs.converged);
    CHECK(rs.total_multiplicity() == 25);
}

TEST_CASE("all_roots is deterministic")
{
    const auto c = coefficients(chebyshev_monic(17, 1.3));
    const auto a = all_roots(c);
    const auto b = all_roots(c);
    REQUIRE(a.roots.size() == b.roots.size());
    for (std::size_t k = 0; k < a.roots.size(); ++k) CHECK(a.roots[k].point == b.roots[k].point);
}

TEST_CASE("solve_preimages")
{
    auto rs = solve_preimages(CoefficientVector{{0.0, 0.0, 1.0}}, 4.0);
    REQUIRE(rs.roots.size() == 2);
    CHECK(std::abs(rs.roots[0].point - Point(-2.0)) < 1e-14);
    CHECK(std::abs(rs.roots[1].point - Point(2.0)) < 1e-14);

    const CoefficientVector q{{0.0, 3.0, 0.0, 1.0}};
    oracle::TestRng rng(9);
    for (int t = 0; t < 20; ++t) {
        const Point w = rng.in_disk(1.0);
        rs = solve_preimages(q, w);
        REQUIRE(rs.converged);
        for (const auto& r : rs.roots) CHECK(std::abs(q(r.point)) <= 1.0 + 1e-12);
    }

    const int n = 30;
    for (int k = 1; k <= n; ++k) {
        const double x = 2.0 * std::cos((k - 0.5) * std::numbers::pi / n);
        rs = solve_preimages(CoefficientVector{{0.0, 0.0, 1.0}}, x);
        for (const auto& r : rs.roots) CHECK(std::abs(r.point * r.point - x) < 1e-13);
    }
}

TEST_CASE("cluster_roots merges within the radius")
{
    const std::vector<Point> pts{1.0, Point(1.0 + 1e-9, 0.0), Point(1.0, -1e-9), 3.0};
    const auto r = cluster_roots(pts, 1e-7);
    REQUIRE(r.size() == 2);
    CHECK(r[0].multiplicity == 3);
    CHECK(std::abs(r[0].point - Point(1.0)) < 1e-9);
    CHECK(r[1].multiplicity == 1);
}

TEST_CASE("perturbed multiple roots still cluster at radius 1e-5")
{
    oracle::TestRng rng(31);
    for (int k : {2, 3, 4, 5}) {
        for (int t = 0; t < 10; ++t) {
            std::vector<Point> zs(static_cast<std::size_t>(k), Point(0.3, -0.2));
            zs.push_back(1.5);
            zs.push_back(Point(-1.0, 0.7));
            auto c = coefficients(MonicPolynomial::from_zeros(zs));
            for (std::size_t i = 0; i + 1 < c.coeffs.size(); ++i) c.coeffs[i] += 9e-13 * rng.in_disk(1.0);
            RootOptions o;
            o.cluster_radius = 1e-5;
            const auto rs = all_roots(c, o);
            REQUIRE(rs.converged);
            const auto it = std::find_if(rs.roots.begin(), rs.roots.end(),
                                         [](const Root& r) { return std::abs(r.point - Point(0.3, -0.2)) < 1e-4; });
            REQUIRE(it != rs.roots.end());
            CHECK(it->multiplicity == k);
        }
    }
}

TEST_CASE("root_bound encloses the roots")
{
    oracle::TestRng rng(41);
    for (int t = 0; t < 20; ++t) {
        std::vector<Point> zs;
        for (int k = 0; k < 10; ++k) zs.push_back(rng.in_disk(3.0));
        const double b = root_bound(coefficients(MonicPolynomial::from_zeros(zs)));
        for (const auto& z : zs) CHECK(std::abs(z) <= b * (1.0 + 1e-12));
    }
}

TEST_CASE("critical points of z^n - 1")
{
    for (int n : {2, 10, 30, 60}) {
        std::vector<Point> zs;
        for (int k = 0; k < n; ++k) zs.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / n));
        const auto cs = critical_points(MonicPolynomial::from_zeros(zs));
        REQUIRE(cs.entries.size() == 1);
        CHECK(std::abs(cs.entries[0].point) < 1e-12);
        CHECK(cs.entries[0].multiplicity == n - 1);
        CHECK(cs.entries[0].critical_value == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("critical values of the Chebyshev polynomial are 2")
{
    const auto cs = critical_points(chebyshev_monic(30, 2.0));
    CHECK(cs.total_multiplicity() == 29);
    for (const auto& e : cs.entries) CHECK(e.critical_value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("critical point of (z - a)^m")
{
    const Point a(0.4, -1.2);
    const auto cs = critical_points(MonicPolynomial::from_zeros(std::vector<Point>(7, a)));
    REQUIRE(cs.entries.size() == 1);
    CHECK(cs.entries[0].point == a);
    CHECK(cs.entries[0].multiplicity == 6);
    CHECK(cs.entries[0].critical_value == 0.0);
}

TEST_CASE("repeated zeros mixed with simple ones")
{
    const std::vector<Point> zs{1.0, 1.0, 1.0, -1.0, Point(0.0, 2.0)};
    const auto cs = critical_points(MonicPolynomial::from_zeros(zs));
    CHECK(cs.total_multiplicity() == 4);
    const auto want = oracle::critical_points(zs);
    std::vector<Point> got;
    for (const auto& e : cs.entries) {
        for (int m = 0; m < e.multiplicity; ++m) got.push_back(e.point);
    }
    // the double root of p' at 1 is ill conditioned for the companion oracle
    CHECK(oracle::match_distance(got, want) < 1e-6);
}

TEST_CASE("critical points agree with the companion-matrix oracle")
{
    oracle::TestRng rng(43);
    int checked = 0;
    while (checked < 40) {
        const int n = 2 + static_cast<int>(rng.uniform() * 14);
        std::vector<Point> zs;
        int guard = 0;
        while (static_cast<int>(zs.size()) < n && guard++ < 10000) {
            const Point z = rng.in_disk(3.0);
            if (std::all_of(zs.begin(), zs.end(), [&](Point w) { return std::abs(w - z) >= 0.5; })) zs.push_back(z);
        }
        if (static_cast<int>(zs.size()) < n) continue;
        const auto cs = critical_points(MonicPolynomial::from_zeros(zs));
        std::vector<Point> got;
        for (const auto& e : cs.entries) {
            for (int m = 0; m < e.multiplicity; ++m) got.push_back(e.point);
            CHECK(e.critical_value == doctest::Approx(static_cast<double>(oracle::abs_eval(zs, e.point))).epsilon(1e-9));
        }
        CHECK(oracle::match_distance(got, oracle::critical_points(zs)) < 1e-6);
        ++checked;
    }
}

TEST_CASE("multiplicity conservation and Gauss-Lucas")
{
    oracle::TestRng rng(47);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform() * 40);
        std::vector<Point> zs;
        for (int k = 0; k < n; ++k) zs.push_back(rng.in_disk(2.0));
        if (t % 5 == 0) zs[1] = zs[0];
        const auto cs = critical_points(MonicPolynomial::from_zeros(zs));
        CHECK(cs.total_multiplicity() == n - 1);
        for (const auto& e : cs.entries) CHECK(hull_distance(zs, e.point) < 1e-8);
    }
}

TEST_CASE("product-form route above the expansion bound")
{
    std::vector<Point> zs;
    for (int k = 0; k < 150; ++k) zs.push_back(std::polar(1.0 + 0.1 * std::sin(7.0 * k), 2.0 * std::numbers::pi * (k + 0.3 * std::cos(3.0 * k)) / 150));
    const auto cs = critical_points(MonicPolynomial::from_zeros(zs));
    CHECK(cs.route == CriticalRoute::product_form);
    CHECK(cs.total_multiplicity() == 149);
    for (const auto& e : cs.entries) {
        Point s = 0.0;
        for (const auto& a : zs) s += 1.0 / (e.point - a);
        double scale = 0.0;
        for (const auto& a : zs) scale += 1.0 / std::abs(e.point - a);
        CHECK(std::abs(s) < 1e-8 * scale);
    }
}

TEST_CASE("E_n critical values match high precision references")
{
    // reference values of c_n computed independently at 50 digits
    CHECK(ehp_data(20).c_n == doctest::Approx(1.00580825).epsilon(2e-8));
    CHECK(ehp_data(50).c_n == doctest::Approx(1.00096969).epsilon(2e-8));
}
