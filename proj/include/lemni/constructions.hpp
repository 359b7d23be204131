#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lemni/compact_set.hpp"
#include "lemni/polynomial.hpp"

namespace lemni {

enum class UnitSign { minus_one, plus_one };

/// Zeros are the n-th roots of 1 (z^n - 1) or of -1 (z^n + 1).
MonicPolynomial roots_of_unity_poly(int n, UnitSign sign);

/// Monic Chebyshev polynomial of [-h, h]: zeros h cos((k - 1/2) pi / n).
MonicPolynomial chebyshev_monic(int n, double half_width = 2.0);

/// (z^n + 1)(z - 1)^2 / ((z - e^{i pi/n})(z - e^{-i pi/n})), built by
/// placing zeros: the roots of -1 next to 1 are replaced by a double zero
/// at 1. Needs n >= 3.
MonicPolynomial ehp_polynomial(int n);

struct EhpData {
    MonicPolynomial poly;
    double c_n = 0.0;      // smallest non-zero critical value
    double delta_n = 0.0;  // c_n^{-1/n}
};

/// E_n together with c_n and delta_n.
EhpData ehp_data(int n);

/// E_n scaled by delta_n: zeros on the circle of radius delta_n < 1 and the
/// smallest non-zero critical value moved to 1.
MonicPolynomial scaled_ehp(int n);

/// Zeros of T_n(P(z)) with T_n the monic Chebyshev polynomial of [-2, 2]:
/// every solution of P(z) = 2 cos((k - 1/2) pi / n). Degree m n.
MonicPolynomial composed_period_m(const CoefficientVector& generating, int n);

/// Zeros of Q(z)^n + 1 (plus_one) or Q(z)^n - 1 (minus_one).
MonicPolynomial lemniscate_power(const CoefficientVector& generating, int n, UnitSign sign = UnitSign::plus_one);

/// The n in [1, n_max] for which every critical value of Q^n + 1 has modulus
/// at least 1 (within the ambiguity band), i.e. Q^n + 1 attains the maximal
/// component count mn.
std::vector<int> lemniscate_power_search(const CoefficientVector& generating, int n_max);

/// Faber polynomials of the exterior map with inverse
/// psi(w) = w + a_0 + a_1 / w + a_2 / w^2 + ...
struct FaberCoefficients {
    std::vector<Point> psi_coeffs;
    std::vector<CoefficientVector> faber;  // faber[n] monic of degree n
};

/// F_0 = 1, F_1 = z - a_0,
/// F_{n+1} = (z - a_0) F_n - sum_{j=1}^{n-1} a_j F_{n-j} - (n + 1) a_n.
/// Throws std::length_error above the coefficient degree bound.
FaberCoefficients faber_polynomials(std::span<const Point> psi_coeffs, int up_to);

/// n1 copies of a followed by n2 equilibrium samples of arc.
MonicPolynomial cluster_construction(Point a, const CompactSetModel& arc, int n1, int n2, std::uint64_t seed);

}  // namespace lemni
