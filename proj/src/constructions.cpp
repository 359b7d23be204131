#include "lemni/constructions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lemni/lemniscate.hpp"
#include "lemni/potential.hpp"
#include "lemni/rootfind.hpp"

namespace lemni {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Point> all_preimages(const CoefficientVector& q, std::span<const Point> targets)
{
    if (q.degree() < 1 || q.coeffs.back() != Point(1.0)) throw std::invalid_argument("generating polynomial must be monic of degree >= 1");
    RootOptions opts;
    opts.cluster_radius = 1e-300;
    std::vector<Point> zs;
    zs.reserve(targets.size() * q.degree());
    for (const auto& t : targets) {
        const RootSet rs = solve_preimages(q, t, opts);
        if (!rs.converged) throw SolverError("preimage solve did not converge");
        for (const auto& r : rs.roots) {
            for (int m = 0; m < r.multiplicity; ++m) zs.push_back(r.point);
        }
    }
    return zs;
}

std::vector<Point> unit_roots(int n, UnitSign sign)
{
    std::vector<Point> zs(static_cast<std::size_t>(n));
    const double shift = sign == UnitSign::plus_one ? 1.0 : 0.0;
    for (int k = 0; k < n; ++k) zs[static_cast<std::size_t>(k)] = std::polar(1.0, kPi * (2.0 * k + shift) / n);
    return zs;
}

}  // namespace

MonicPolynomial roots_of_unity_poly(int n, UnitSign sign)
{
    if (n < 1) throw std::invalid_argument("degree must be positive");
    return MonicPolynomial::from_zeros(unit_roots(n, sign));
}

MonicPolynomial chebyshev_monic(int n, double half_width)
{
    if (n < 1) throw std::invalid_argument("degree must be positive");
    if (!(half_width > 0.0)) throw std::invalid_argument("half width must be positive");
    std::vector<Point> zs(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) zs[static_cast<std::size_t>(k - 1)] = half_width * std::sin((n - 2 * k + 1) * kPi / (2.0 * n));
    return MonicPolynomial::from_zeros(std::move(zs));
}

MonicPolynomial ehp_polynomial(int n)
{
    if (n < 3) throw std::invalid_argument("EHP polynomial needs n >= 3");
    auto roots = unit_roots(n, UnitSign::plus_one);
    // k = 0 is e^{i pi/n} and k = n-1 is e^{-i pi/n}
    std::vector<Point> zs(roots.begin() + 1, roots.end() - 1);
    zs.push_back(1.0);
    zs.push_back(1.0);
    return MonicPolynomial::from_zeros(std::move(zs));
}

EhpData ehp_data(int n)
{
    EhpData d{ehp_polynomial(n), 0.0, 0.0};
    const CriticalSet cs = critical_points(d.poly);
    double min_log = std::numeric_limits<double>::infinity();
    for (const auto& e : cs.entries) {
        if (std::isfinite(e.log_value)) min_log = std::min(min_log, e.log_value);
    }
    if (!std::isfinite(min_log)) throw SolverError("EHP polynomial has no non-zero critical value");
    d.c_n = std::exp(min_log);
    d.delta_n = std::exp(-min_log / n);
    return d;
}

MonicPolynomial scaled_ehp(int n)
{
    const EhpData d = ehp_data(n);
    return scale(d.poly, d.delta_n);
}

MonicPolynomial composed_period_m(const CoefficientVector& generating, int n)
{
    if (n < 1) throw std::invalid_argument("degree must be positive");
    std::vector<Point> targets(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) targets[static_cast<std::size_t>(k - 1)] = 2.0 * std::sin((n - 2 * k + 1) * kPi / (2.0 * n));
    return MonicPolynomial::from_zeros(all_preimages(generating, targets));
}

MonicPolynomial lemniscate_power(const CoefficientVector& generating, int n, UnitSign sign)
{
    if (n < 1) throw std::invalid_argument("power must be positive");
    return MonicPolynomial::from_zeros(all_preimages(generating, unit_roots(n, sign)));
}

std::vector<int> lemniscate_power_search(const CoefficientVector& generating, int n_max)
{
    if (generating.degree() < 1) throw std::invalid_argument("generating polynomial needs degree >= 1");
    // Critical points of Q^n + 1 are the zeros of Q (value 1) and the
    // critical points beta of Q (value |Q(beta)^n + 1|).
    std::vector<Point> values;
    if (generating.degree() >= 2) {
        const RootSet rs = all_roots(derivative_coefficients(generating));
        if (!rs.converged) throw SolverError("critical points of the generating polynomial did not converge");
        for (const auto& r : rs.roots) values.push_back(generating(r.point));
    }
    const double band = std::log1p(-kMarginThreshold);
    std::vector<int> hits;
    for (int n = 1; n <= n_max; ++n) {
        bool ok = true;
        for (const auto& v : values) {
            const Point vn = v == Point(0.0) ? Point(0.0) : std::exp(static_cast<double>(n) * std::log(v));
            if (std::log(std::abs(vn + 1.0)) < band) {
                ok = false;
                break;
            }
        }
        if (ok) hits.push_back(n);
    }
    return hits;
}

FaberCoefficients faber_polynomials(std::span<const Point> psi_coeffs, int up_to)
{
    if (up_to < 1) throw std::invalid_argument("need at least one Faber polynomial");
    if (static_cast<std::size_t>(up_to) > kSafeExpansionDegree)
        throw std::length_error("Faber degree exceeds the coefficient expansion bound");
    for (const auto& a : psi_coeffs) {
        if (!is_finite(a)) throw std::invalid_argument("psi coefficients must be finite");
    }
    auto a = [&](int j) { return static_cast<std::size_t>(j) < psi_coeffs.size() ? psi_coeffs[static_cast<std::size_t>(j)] : Point(0.0); };

    FaberCoefficients out;
    out.psi_coeffs.assign(psi_coeffs.begin(), psi_coeffs.end());
    out.faber.push_back(CoefficientVector{{1.0}});
    out.faber.push_back(CoefficientVector{{Point(0.0) - a(0), 1.0}});
    for (int n = 1; n < up_to; ++n) {
        const auto& fn = out.faber[static_cast<std::size_t>(n)].coeffs;
        std::vector<Point> next(static_cast<std::size_t>(n) + 2, 0.0);
        for (std::size_t k = 0; k < fn.size(); ++k) {
            next[k + 1] += fn[k];
            next[k] -= a(0) * fn[k];
        }
        for (int j = 1; j <= n - 1; ++j) {
            const auto& f = out.faber[static_cast<std::size_t>(n - j)].coeffs;
            for (std::size_t k = 0; k < f.size(); ++k) next[k] -= a(j) * f[k];
        }
        next[0] -= static_cast<double>(n + 1) * a(n);
        next.back() = 1.0;
        out.faber.push_back(CoefficientVector{std::move(next)});
    }
    return out;
}

MonicPolynomial cluster_construction(Point a, const CompactSetModel& arc, int n1, int n2, std::uint64_t seed)
{
    if (n1 < 0 || n2 < 0 || n1 + n2 < 1) throw std::invalid_argument("cluster construction needs n1 + n2 >= 1");
    if (!is_finite(a)) throw std::invalid_argument("cluster center must be finite");
    std::vector<Point> zs(static_cast<std::size_t>(n1), a);
    if (n2 > 0) {
        const auto sample = equilibrium_sample(arc, static_cast<std::size_t>(n2), seed);
        zs.insert(zs.end(), sample.points.begin(), sample.points.end());
    }
    return MonicPolynomial::from_zeros(std::move(zs));
}

}  // namespace lemni
