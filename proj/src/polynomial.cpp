#include "lemni/polynomial.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lemni {

Point CoefficientVector::operator()(Point z) const
{
    Point acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

bool is_finite(Point z)
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

MonicPolynomial MonicPolynomial::from_zeros(std::vector<Point> zeros)
{
    if (zeros.empty()) throw std::invalid_argument("polynomial needs at least one zero");
    for (const auto& z : zeros) {
        if (!is_finite(z)) throw std::invalid_argument("polynomial zeros must be finite");
    }
    return MonicPolynomial(std::move(zeros));
}

Point evaluate(const MonicPolynomial& p, Point z)
{
    Point acc = 1.0;
    for (const auto& a : p.zeros()) acc *= (z - a);
    return acc;
}

double log_abs_evaluate(const MonicPolynomial& p, Point z)
{
    double sum = 0.0;
    for (const auto& a : p.zeros()) {
        const double d = std::abs(z - a);
        if (d == 0.0) return -std::numeric_limits<double>::infinity();
        sum += std::log(d);
    }
    return sum;
}

double fast_log_abs_evaluate(std::span<const Point> zeros, Point z)
{
    double mant = 1.0;
    long exponent = 0;
    std::size_t k = 0;
    for (const auto& a : zeros) {
        const double dx = z.real() - a.real();
        const double dy = z.imag() - a.imag();
        const double d2 = dx * dx + dy * dy;
        if (d2 == 0.0) return -std::numeric_limits<double>::infinity();
        mant *= d2;
        // Renormalize every four factors, or right after an extreme one, so the
        // mantissa cannot leave the double range.
        if (++k % 4 == 0 || d2 > 1e60 || d2 < 1e-60) {
            int e = 0;
            mant = std::frexp(mant, &e);
            exponent += e;
        }
    }
    return 0.5 * (std::log(mant) + static_cast<double>(exponent) * std::numbers::ln2);
}

CoefficientVector coefficients_of(std::span<const Point> zeros, std::size_t max_degree)
{
    const std::size_t n = zeros.size();
    if (n > max_degree) {
        throw std::length_error("degree " + std::to_string(n) +
                                " exceeds the coefficient expansion bound " +
                                std::to_string(max_degree));
    }
    // c holds the running product; bound holds prod (z + |a|), which dominates
    // |c| coefficient-wise and scales the accumulated rounding error.
    std::vector<Point> c{1.0};
    std::vector<double> bound{1.0};
    c.reserve(n + 1);
    bound.reserve(n + 1);
    for (const auto& a : zeros) {
        c.push_back(0.0);
        bound.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) {
            c[k] = c[k - 1] - a * c[k];
            bound[k] = bound[k - 1] + std::abs(a) * bound[k];
        }
        c[0] = -a * c[0];
        bound[0] = std::abs(a) * bound[0];
    }
    const double gamma = 8.0 * static_cast<double>(n + 1) * std::numeric_limits<double>::epsilon();
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(c[k].real()) <= gamma * bound[k]) c[k].real(0.0);
        if (std::abs(c[k].imag()) <= gamma * bound[k]) c[k].imag(0.0);
    }
    c[n] = 1.0;
    return CoefficientVector{std::move(c)};
}

CoefficientVector coefficients(const MonicPolynomial& p, std::size_t max_degree)
{
    return coefficients_of(p.zeros(), max_degree);
}

CoefficientVector derivative_coefficients(const CoefficientVector& c)
{
    if (c.coeffs.size() < 2) throw std::invalid_argument("derivative needs degree >= 1");
    std::vector<Point> d(c.coeffs.size() - 1);
    for (std::size_t k = 1; k < c.coeffs.size(); ++k) d[k - 1] = static_cast<double>(k) * c.coeffs[k];
    return CoefficientVector{std::move(d)};
}

Point newton_ratio(const MonicPolynomial& p, Point z)
{
    Point sum = 0.0;
    for (const auto& a : p.zeros()) {
        if (z == a) throw std::domain_error("newton_ratio evaluated at a zero");
        sum += 1.0 / (z - a);
    }
    return sum;
}

double log_abs_derivative_at_zero(const MonicPolynomial& p, std::size_t j)
{
    const auto zs = p.zeros();
    if (j >= zs.size()) throw std::out_of_range("zero index out of range");
    double sum = 0.0;
    for (std::size_t k = 0; k < zs.size(); ++k) {
        if (k == j) continue;
        const double d = std::abs(zs[j] - zs[k]);
        if (d == 0.0) return -std::numeric_limits<double>::infinity();
        sum += std::log(d);
    }
    return sum;
}

MonicPolynomial scale(const MonicPolynomial& p, double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("scale factor must be positive and finite");
    std::vector<Point> zs(p.zeros().begin(), p.zeros().end());
    for (auto& z : zs) z *= t;
    return MonicPolynomial::from_zeros(std::move(zs));
}

}  // namespace lemni
