#pragma once

#include <string>
#include <variant>
#include <vector>

#include "lemni/polynomial.hpp"

namespace lemni {

struct DiskSet {
    Point center;
    double radius = 1.0;
};

struct CircleSet {
    Point center;
    double radius = 1.0;
};

struct SegmentSet {
    Point a;
    Point b;
};

/// Polyline through the samples; closed curves join the last sample to the
/// first. Needs at least 64 samples.
struct JordanCurveSet {
    std::vector<Point> points;
    bool closed = true;
};

/// Q^{-1}(closed disk of the given radius) for a monic generating Q.
struct LemniscatePreimageSet {
    CoefficientVector generating;
    double radius = 1.0;
};

/// P^{-1}([-2, 2]) for a monic generating P.
struct PeriodMSet {
    CoefficientVector generating;
};

struct CompactSetModel;

struct UnionSet {
    std::vector<CompactSetModel> parts;
};

struct CompactSetModel {
    std::variant<DiskSet, CircleSet, SegmentSet, JordanCurveSet, LemniscatePreimageSet, PeriodMSet, UnionSet> shape;

    [[nodiscard]] std::string variant_name() const;
};

CompactSetModel make_disk(Point center, double radius);
CompactSetModel make_circle(Point center, double radius);
CompactSetModel make_segment(Point a, Point b);
CompactSetModel make_union(std::vector<CompactSetModel> parts);

/// Throws std::invalid_argument when an invariant fails (non-finite data,
/// radius <= 0, fewer than 64 curve samples, non-monic generator, empty
/// union, zero-length segment).
void validate(const CompactSetModel& k);

/// Deterministic discretization of the outer boundary with about `count`
/// points. Preimage variants solve Q(z) = w (or P(z) = x) for sampled w on
/// the circle of the given radius (x on [-2, 2]).
std::vector<Point> boundary_samples(const CompactSetModel& k, std::size_t count);

/// Membership with absolute tolerance tol.
bool contains(const CompactSetModel& k, Point z, double tol = 1e-9);

/// Exact for disk, circle and segment; maximum pairwise sample distance
/// otherwise.
double diameter(const CompactSetModel& k);

}  // namespace lemni
