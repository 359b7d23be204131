#pragma once

#include <span>
#include <vector>

#include "lemni/polynomial.hpp"

namespace lemni {

struct Root {
    Point point;
    int multiplicity = 1;
};

struct RootSet {
    std::vector<Root> roots;     // sorted by (re, im)
    double residual = 0.0;       // max |q(root)| / sum_k |c_k||root|^k
    bool converged = false;
    int iterations = 0;

    [[nodiscard]] int total_multiplicity() const;
};

struct RootOptions {
    double tol = 1e-12;
    int max_iter = 200;
    double cluster_radius = 0.0;  // <= 0 selects max(1e-7, 100 * tol)
    /// Also merge nearby clusters whose centroid is a multiple root up to a
    /// relative coefficient perturbation of 100 * tol. Only meaningful when
    /// the coefficients are well conditioned.
    bool merge_multiples = true;

    [[nodiscard]] double effective_cluster_radius() const;
};

/// All roots of the polynomial with coefficients c (leading entry non-zero)
/// by Aberth-Ehrlich simultaneous iteration. Exact zero trailing coefficients
/// are split off as an exact root at the origin. A run that does not settle
/// within max_iter is returned with converged == false.
RootSet all_roots(const CoefficientVector& c, const RootOptions& opts = {});

/// Solutions of q(z) = target.
RootSet solve_preimages(const CoefficientVector& q, Point target, const RootOptions& opts = {});

/// Root-bound (Fujiwara) for a polynomial with non-zero leading coefficient.
double root_bound(const CoefficientVector& c);

/// Merge approximations closer than radius (single linkage); each cluster
/// becomes its centroid with multiplicity equal to its size.
std::vector<Root> cluster_roots(std::span<const Point> approximations, double radius);

struct CriticalPoint {
    Point point;
    int multiplicity = 1;
    double critical_value = 0.0;   // |p(point)|, may be +inf for huge degree
    double log_value = 0.0;        // log |p(point)|, exact source for comparisons
};

enum class CriticalRoute { coefficients, product_form };

struct CriticalSet {
    std::vector<CriticalPoint> entries;
    CriticalRoute route = CriticalRoute::coefficients;
    double residual = 0.0;

    [[nodiscard]] int total_multiplicity() const;
};

/// Critical points of p with multiplicities summing to deg(p) - 1. Repeated
/// zeros of p are exact critical points of value 0. The remaining ones are
/// roots of sum_a m_a prod_{b != a} (z - b) over the distinct zeros a, solved
/// on expanded coefficients when the expansion is well conditioned and in
/// product form otherwise. Throws SolverError when the solver fails.
CriticalSet critical_points(const MonicPolynomial& p, const RootOptions& opts = {});

}  // namespace lemni
