#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace lemni {

using Point = std::complex<double>;

/// Raised when an iterative numerical routine fails to converge.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coefficient paths (Vieta expansion, root solving of p') refuse degrees
/// above this bound; product-form routines have no limit.
inline constexpr std::size_t kSafeExpansionDegree = 128;

/// Ascending-degree coefficient list; for monic vectors the last entry is 1.
struct CoefficientVector {
    std::vector<Point> coeffs;

    [[nodiscard]] std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    [[nodiscard]] Point operator()(Point z) const;  // Horner
};

/// Monic polynomial prod_j (z - z_j), stored by its zeros. Repeated zeros
/// encode multiplicity.
class MonicPolynomial {
public:
    MonicPolynomial() = default;

    /// Throws std::invalid_argument on an empty list or non-finite input.
    static MonicPolynomial from_zeros(std::vector<Point> zeros);

    [[nodiscard]] std::size_t degree() const { return zeros_.size(); }
    [[nodiscard]] std::span<const Point> zeros() const { return zeros_; }

private:
    explicit MonicPolynomial(std::vector<Point> zeros) : zeros_(std::move(zeros)) {}
    std::vector<Point> zeros_;
};

bool is_finite(Point z);

/// Direct product evaluation. May overflow to infinity for large degree far
/// from the zeros; see log_abs_evaluate for a safe alternative.
Point evaluate(const MonicPolynomial& p, Point z);

/// sum_j log|z - z_j| in input order; -inf exactly at a zero.
double log_abs_evaluate(const MonicPolynomial& p, Point z);

/// log|p(z)| through a rescaled running product. Same value as
/// log_abs_evaluate up to rounding, several times faster; used by rasters.
double fast_log_abs_evaluate(std::span<const Point> zeros, Point z);

/// Vieta expansion by repeated multiplication with linear factors.
/// Coefficients that fall below their own rounding-error bound are set to 0.
/// Throws std::length_error when degree exceeds max_degree.
CoefficientVector coefficients(const MonicPolynomial& p,
                               std::size_t max_degree = kSafeExpansionDegree);
CoefficientVector coefficients_of(std::span<const Point> zeros,
                                  std::size_t max_degree = kSafeExpansionDegree);

CoefficientVector derivative_coefficients(const CoefficientVector& c);

/// sum_j 1/(z - z_j) = p'(z)/p(z). Throws std::domain_error at a zero.
Point newton_ratio(const MonicPolynomial& p, Point z);

/// log|p'(z_j)| at zero index j, i.e. sum_{k != j} log|z_j - z_k|.
/// -inf for a repeated zero.
double log_abs_derivative_at_zero(const MonicPolynomial& p, std::size_t j);

/// p_t(z) = t^n p(z/t): zeros t*z_j. Throws std::invalid_argument unless t > 0.
MonicPolynomial scale(const MonicPolynomial& p, double t);

}  // namespace lemni
