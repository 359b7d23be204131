#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "lemni/constructions.hpp"
#include "lemni/polynomial.hpp"
#include "lemni/potential.hpp"
#include "lemni/rootfind.hpp"
#include "oracles.hpp"

using namespace lemni;

namespace {

std::vector<Point> unit_roots(int n)
{
    std::vector<Point> z;
    for (int k = 0; k < n; ++k) z.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / n));
    return z;
}

}  // namespace

TEST_CASE("from_zeros keeps zeros verbatim")
{
    const auto p = MonicPolynomial::from_zeros({1.0, -1.0});
    CHECK(p.degree() == 2);
    CHECK(p.zeros()[0] == Point(1.0));
    CHECK(p.zeros()[1] == Point(-1.0));

    const auto q = MonicPolynomial::from_zeros(std::vector<Point>(5, 0.0));
    CHECK(q.degree() == 5);
    CHECK(evaluate(q, 2.0) == Point(32.0));
}

TEST_CASE("from_zeros rejects empty and non-finite input")
{
    CHECK_THROWS_AS(MonicPolynomial::from_zeros({}), std::invalid_argument);
    CHECK_THROWS_AS(MonicPolynomial::from_zeros({Point(std::numeric_limits<double>::quiet_NaN(), 0.0)}), std::invalid_argument);
    CHECK_THROWS_AS(MonicPolynomial::from_zeros({Point(0.0, std::numeric_limits<double>::infinity())}), std::invalid_argument);
}

TEST_CASE("evaluate small cases")
{
    const auto p = MonicPolynomial::from_zeros({1.0, -1.0});
    CHECK(evaluate(p, 0.0) == Point(-1.0));

    std::vector<Point> cube;
    for (int k = 0; k < 3; ++k) cube.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 3));
    const Point v = evaluate(MonicPolynomial::from_zeros(cube), 2.0);
    CHECK(v.real() == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(std::abs(v.imag()) < 1e-13);

    const Point c = evaluate(MonicPolynomial::from_zeros({std::sqrt(2.0), -std::sqrt(2.0)}), 0.0);
    CHECK(c.real() == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("evaluate overflows far from the zeros of a huge degree polynomial")
{
    const auto p = MonicPolynomial::from_zeros(std::vector<Point>(400, 0.0));
    CHECK_FALSE(is_finite(evaluate(p, 10.0)));
    CHECK(log_abs_evaluate(p, 10.0) == doctest::Approx(400.0 * std::log(10.0)));
}

TEST_CASE("log_abs_evaluate")
{
    const auto p30 = MonicPolynomial::from_zeros(unit_roots(30));
    CHECK(log_abs_evaluate(p30, 2.0) == doctest::Approx(std::log(std::pow(2.0, 30) - 1.0)).epsilon(1e-13));
    CHECK(log_abs_evaluate(p30, p30.zeros()[7]) == -std::numeric_limits<double>::infinity());
    const auto q = MonicPolynomial::from_zeros({1.0, -1.0});
    CHECK(log_abs_evaluate(q, 3.0) == doctest::Approx(std::log(8.0)).epsilon(1e-15));
}

TEST_CASE("log_abs_evaluate matches log|evaluate| where finite")
{
    oracle::TestRng rng(11);
    for (int t = 0; t < 50; ++t) {
        std::vector<Point> zs;
        const int n = 1 + static_cast<int>(rng.uniform() * 20);
        for (int k = 0; k < n; ++k) zs.push_back(rng.in_disk(2.0));
        const auto p = MonicPolynomial::from_zeros(zs);
        const Point z = rng.in_disk(3.0);
        const double direct = std::log(std::abs(evaluate(p, z)));
        CHECK(log_abs_evaluate(p, z) == doctest::Approx(direct).epsilon(1e-10));
        CHECK(fast_log_abs_evaluate(p.zeros(), z) == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("coefficients")
{
    auto c = coefficients(MonicPolynomial::from_zeros({1.0, -1.0}));
    REQUIRE(c.coeffs.size() == 3);
    CHECK(c.coeffs[0] == Point(-1.0));
    CHECK(c.coeffs[1] == Point(0.0));
    CHECK(c.coeffs[2] == Point(1.0));

    c = coefficients(MonicPolynomial::from_zeros(unit_roots(4)));
    REQUIRE(c.coeffs.size() == 5);
    const std::vector<Point> want{-1.0, 0.0, 0.0, 0.0, 1.0};
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(c.coeffs[k] - want[k]) < 1e-15);

    c = coefficients(MonicPolynomial::from_zeros({std::sqrt(2.0), -std::sqrt(2.0)}));
    CHECK(std::abs(c.coeffs[0] - Point(-2.0)) < 1e-15);
    CHECK(c.coeffs[1] == Point(0.0));
    CHECK(c.coeffs[2] == Point(1.0));
}

TEST_CASE("coefficients refuse degrees above the bound")
{
    const auto p = MonicPolynomial::from_zeros(std::vector<Point>(129, 0.5));
    CHECK_THROWS_AS(coefficients(p), std::length_error);
    CHECK_NOTHROW(coefficients(p, 200));
}

TEST_CASE("coefficients agree with a long double expansion")
{
    oracle::TestRng rng(5);
    for (int t = 0; t < 30; ++t) {
        std::vector<Point> zs;
        const int n = 1 + static_cast<int>(rng.uniform() * 25);
        for (int k = 0; k < n; ++k) zs.push_back(rng.in_disk(1.0));
        const auto got = coefficients(MonicPolynomial::from_zeros(zs));
        const auto want = oracle::to_double(oracle::expand(zs));
        for (std::size_t k = 0; k < want.size(); ++k) CHECK(std::abs(got.coeffs[k] - want[k]) < 1e-12);
    }
}

TEST_CASE("derivative_coefficients")
{
    auto d = derivative_coefficients(CoefficientVector{{-1.0, 0.0, 1.0}});
    REQUIRE(d.coeffs.size() == 2);
    CHECK(d.coeffs[0] == Point(0.0));
    CHECK(d.coeffs[1] == Point(2.0));

    d = derivative_coefficients(CoefficientVector{{-2.0, 0.0, 1.0}});
    CHECK(d.coeffs[0] == Point(0.0));
    CHECK(d.coeffs[1] == Point(2.0));

    std::vector<Point> c(13, 0.0);
    c[0] = -1.0;
    c[12] = 1.0;
    d = derivative_coefficients(CoefficientVector{c});
    REQUIRE(d.degree() == 11);
    for (std::size_t k = 0; k < 11; ++k) CHECK(d.coeffs[k] == Point(0.0));
    CHECK(d.coeffs[11] == Point(12.0));
}

TEST_CASE("newton_ratio")
{
    const auto p = MonicPolynomial::from_zeros({1.0, -1.0});
    CHECK(std::abs(newton_ratio(p, 2.0) - Point(4.0 / 3.0)) < 1e-15);
    const auto zn = MonicPolynomial::from_zeros(std::vector<Point>(9, 0.0));
    CHECK(newton_ratio(zn, 1.0) == Point(9.0));
    CHECK_THROWS_AS(newton_ratio(p, 1.0), std::domain_error);
}

TEST_CASE("newton_ratio agrees with expanded p'/p")
{
    oracle::TestRng rng(17);
    for (int t = 0; t < 40; ++t) {
        std::vector<Point> zs;
        const int n = 1 + static_cast<int>(rng.uniform() * 20);
        for (int k = 0; k < n; ++k) zs.push_back(rng.in_disk(1.0));
        const auto c = oracle::expand(zs);
        const oracle::cld z(rng.in_disk(2.0));
        oracle::cld pv = 0.0L, dv = 0.0L;
        for (std::size_t k = c.size(); k-- > 0;) {
            dv = dv * z + pv;
            pv = pv * z + c[k];
        }
        const oracle::cld want = dv / pv;
        const Point got = newton_ratio(MonicPolynomial::from_zeros(zs), Point(static_cast<double>(z.real()), static_cast<double>(z.imag())));
        const double rel = std::abs(oracle::cld(got) - want) / std::abs(want);
        CHECK(rel < 1e-10);
    }
}

TEST_CASE("log_abs_derivative_at_zero")
{
    const auto p = MonicPolynomial::from_zeros(unit_roots(12));
    for (std::size_t j = 0; j < 12; ++j) CHECK(log_abs_derivative_at_zero(p, j) == doctest::Approx(std::log(12.0)).epsilon(1e-13));
    const auto q = MonicPolynomial::from_zeros({0.5, 0.5, -1.0});
    CHECK(log_abs_derivative_at_zero(q, 0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("scale")
{
    const auto p = MonicPolynomial::from_zeros({1.0, -1.0});
    const auto same = scale(p, 1.0);
    CHECK(same.zeros()[0] == p.zeros()[0]);
    CHECK(same.zeros()[1] == p.zeros()[1]);

    const auto half = scale(p, 0.5);
    const auto c = coefficients(half);
    CHECK(std::abs(c.coeffs[0] - Point(-0.25)) < 1e-16);
    const auto cs = critical_points(half);
    REQUIRE(cs.entries.size() == 1);
    CHECK(cs.entries[0].critical_value == doctest::Approx(0.25));

    CHECK_THROWS_AS(scale(p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(scale(p, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(scale(p, std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("scale round trip")
{
    oracle::TestRng rng(3);
    std::vector<Point> zs;
    for (int k = 0; k < 20; ++k) zs.push_back(rng.in_disk(2.0));
    const auto p = MonicPolynomial::from_zeros(zs);
    for (double t : {0.3, 0.7, 1.9, 3.0}) {
        const auto back = scale(scale(p, t), 1.0 / t);
        for (std::size_t k = 0; k < zs.size(); ++k) CHECK(std::abs(back.zeros()[k] - zs[k]) < 1e-12);
    }
}

TEST_CASE("scaled E_n matches delta_n^n E_n(z / delta_n)")
{
    const auto d = ehp_data(12);
    const auto s = scale(d.poly, d.delta_n);
    for (Point z : {Point(0.3, 0.2), Point(-1.1, 0.4), Point(0.0, 1.5)}) {
        const Point want = std::pow(d.delta_n, 12) * evaluate(d.poly, z / d.delta_n);
        CHECK(std::abs(evaluate(s, z) - want) < 1e-12 * std::abs(want));
    }
}

TEST_CASE("round trip zeros -> coefficients -> roots")
{
    oracle::TestRng rng(23);
    for (int t = 0; t < 30; ++t) {
        std::vector<Point> zs;
        const int n = 2 + static_cast<int>(rng.uniform() * 29);
        for (int k = 0; k < n; ++k) zs.push_back(rng.in_disk(1.0));
        const auto rs = all_roots(coefficients(MonicPolynomial::from_zeros(zs)));
        REQUIRE(rs.converged);
        std::vector<Point> got;
        for (const auto& r : rs.roots) {
            for (int m = 0; m < r.multiplicity; ++m) got.push_back(r.point);
        }
        CHECK(oracle::match_distance(zs, got) < 1e-8);
    }
}

TEST_CASE("empirical potential equals log_abs_evaluate / n bit for bit")
{
    oracle::TestRng rng(29);
    for (int t = 0; t < 20; ++t) {
        std::vector<Point> zs;
        const int n = 1 + static_cast<int>(rng.uniform() * 40);
        for (int k = 0; k < n; ++k) zs.push_back(rng.in_disk(2.0));
        const auto p = MonicPolynomial::from_zeros(zs);
        const Point z = rng.in_disk(3.0);
        CHECK(log_potential(empirical_measure(p), z) == log_abs_evaluate(p, z) / static_cast<double>(n));
    }
}
