#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lemni/compact_set.hpp"
#include "lemni/polynomial.hpp"

namespace lemni {

/// Finitely supported probability measure.
struct WeightedPointSet {
    std::vector<Point> points;
    std::vector<double> weights;

    /// Equal weights 1/n.
    static WeightedPointSet uniform(std::vector<Point> points);
};

/// Throws std::invalid_argument unless lengths match, weights are
/// non-negative and sum to 1 within 1e-12.
void validate(const WeightedPointSet& mu);

/// The empirical zero measure of p, weights 1/n in zero order.
WeightedPointSet empirical_measure(const MonicPolynomial& p);

/// U_mu(z) = sum_i w_i log|z - p_i|; -inf at a positively weighted point.
/// Uniform weights are factored out, so for the empirical zero measure the
/// result is (1/n) * log_abs_evaluate(p, z) bit for bit.
double log_potential(const WeightedPointSet& mu, Point z);

/// Off-diagonal energy estimate
///   sum_{i != j} w_i w_j log|p_i - p_j| / sum_{i != j} w_i w_j.
/// -inf when two points coincide. Needs at least two points.
double energy(const WeightedPointSet& mu);

struct LejaOptions {
    std::size_t boundary_resolution = 4096;
    /// Passes of single-point exchange against the discretization.
    int refine_passes = 0;
};

/// Greedy Leja points on the discretized boundary of K with weights 1/n.
/// The first point is the sample farthest from the sample centroid; each
/// further point maximizes the summed log-distance to those chosen. Ties go
/// to the lexicographically smallest (re, im).
WeightedPointSet leja_points(const CompactSetModel& k, std::size_t n, const LejaOptions& opts = {});

/// Greedy Leja selection from an explicit candidate list.
std::vector<Point> leja_select(std::span<const Point> candidates, std::size_t n);

/// One pass of exchange: each point is replaced by the candidate that most
/// increases the pairwise product, if any. Returns the number of swaps.
int leja_refine(std::vector<Point>& points, std::span<const Point> candidates);

/// (prod_{j<k} |w_j - w_k|)^{2/(n(n-1))}, computed in log space; 0 for
/// coincident points.
double transfinite_diameter(std::span<const Point> points);

/// exp of the discrete energy with a self-energy term for each point: point
/// i stands for uniform mass on a segment of length l_i (mean distance to its
/// two nearest neighbours), whose energy is log l_i - 3/2.
double corrected_energy_capacity(std::span<const Point> points);

struct CapacityEstimate {
    double capacity = 0.0;               // corrected estimate
    double transfinite_diameter = 0.0;   // raw d_n of the Leja points
    std::size_t points = 0;
};

/// Capacity from n Leja points. The raw transfinite diameter overestimates
/// c(K) by a factor close to n^{1/(n-1)}; the returned estimate removes most
/// of that bias. Needs n >= 8.
CapacityEstimate capacity_report(const CompactSetModel& k, std::size_t n, const LejaOptions& opts = {});
double capacity_estimate(const CompactSetModel& k, std::size_t n, const LejaOptions& opts = {});

/// i.i.d. draws from the equilibrium measure. Circle and disk: uniform angle
/// on the boundary circle. Segment: arcsine law. Other variants: uniform
/// resampling of 256 Leja points. Deterministic per seed.
WeightedPointSet equilibrium_sample(const CompactSetModel& k, std::size_t count, std::uint64_t seed);

/// Total weight in the open ball B(center, r).
double ball_mass(const WeightedPointSet& mu, Point center, double r);

/// Least-squares slope of log(ball_mass) against log(r) over the given radii;
/// radii with zero mass are skipped.
double ball_mass_slope(const WeightedPointSet& mu, Point center, std::span<const double> radii);

/// "re,im,weight" rows with a header line.
std::string to_csv(const WeightedPointSet& mu);

}  // namespace lemni
