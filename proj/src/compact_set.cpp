#include "lemni/compact_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lemni/rootfind.hpp"

namespace lemni {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double segment_distance(Point z, Point a, Point b)
{
    const Point d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - a);
    const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

void require_monic(const CoefficientVector& c, const char* what)
{
    if (c.degree() < 1) throw std::invalid_argument(std::string(what) + " generating polynomial needs degree >= 1");
    if (c.coeffs.back() != Point(1.0)) throw std::invalid_argument(std::string(what) + " generating polynomial must be monic");
    for (const auto& x : c.coeffs) {
        if (!is_finite(x)) throw std::invalid_argument(std::string(what) + " generating polynomial is not finite");
    }
}

std::vector<Point> preimages(const CoefficientVector& q, std::span<const Point> targets)
{
    std::vector<Point> out;
    out.reserve(targets.size() * q.degree());
    RootOptions opts;
    opts.cluster_radius = 1e-300;  // keep every preimage
    for (const auto& w : targets) {
        const RootSet rs = solve_preimages(q, w, opts);
        for (const auto& r : rs.roots) {
            for (int m = 0; m < r.multiplicity; ++m) out.push_back(r.point);
        }
    }
    return out;
}

}  // namespace

std::string CompactSetModel::variant_name() const
{
    return std::visit(overloaded{
                          [](const DiskSet&) { return std::string("disk"); },
                          [](const CircleSet&) { return std::string("circle"); },
                          [](const SegmentSet&) { return std::string("segment"); },
                          [](const JordanCurveSet&) { return std::string("jordan_curve"); },
                          [](const LemniscatePreimageSet&) { return std::string("lemniscate_preimage"); },
                          [](const PeriodMSet&) { return std::string("period_m"); },
                          [](const UnionSet&) { return std::string("union"); },
                      },
                      shape);
}

CompactSetModel make_disk(Point center, double radius) { return {DiskSet{center, radius}}; }
CompactSetModel make_circle(Point center, double radius) { return {CircleSet{center, radius}}; }
CompactSetModel make_segment(Point a, Point b) { return {SegmentSet{a, b}}; }
CompactSetModel make_union(std::vector<CompactSetModel> parts) { return {UnionSet{std::move(parts)}}; }

void validate(const CompactSetModel& k)
{
    std::visit(overloaded{
                   [](const DiskSet& s) {
                       if (!is_finite(s.center) || !(s.radius > 0.0) || !std::isfinite(s.radius))
                           throw std::invalid_argument("disk needs a finite center and positive radius");
                   },
                   [](const CircleSet& s) {
                       if (!is_finite(s.center) || !(s.radius > 0.0) || !std::isfinite(s.radius))
                           throw std::invalid_argument("circle needs a finite center and positive radius");
                   },
                   [](const SegmentSet& s) {
                       if (!is_finite(s.a) || !is_finite(s.b)) throw std::invalid_argument("segment endpoints must be finite");
                       if (s.a == s.b) throw std::invalid_argument("segment is degenerate");
                   },
                   [](const JordanCurveSet& s) {
                       if (s.points.size() < 64) throw std::invalid_argument("sampled curve needs at least 64 points");
                       for (const auto& z : s.points) {
                           if (!is_finite(z)) throw std::invalid_argument("curve samples must be finite");
                       }
                   },
                   [](const LemniscatePreimageSet& s) {
                       require_monic(s.generating, "lemniscate");
                       if (!(s.radius > 0.0) || !std::isfinite(s.radius)) throw std::invalid_argument("lemniscate radius must be positive");
                   },
                   [](const PeriodMSet& s) { require_monic(s.generating, "period-m"); },
                   [](const UnionSet& s) {
                       if (s.parts.empty()) throw std::invalid_argument("union needs at least one part");
                       for (const auto& part : s.parts) validate(part);
                   },
               },
               k.shape);
}

std::vector<Point> boundary_samples(const CompactSetModel& k, std::size_t count)
{
    validate(k);
    count = std::max<std::size_t>(count, 2);
    auto circle = [count](Point c, double r) {
        std::vector<Point> pts(count);
        for (std::size_t i = 0; i < count; ++i)
            pts[i] = c + std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count));
        return pts;
    };
    return std::visit(
        overloaded{
            [&](const DiskSet& s) { return circle(s.center, s.radius); },
            [&](const CircleSet& s) { return circle(s.center, s.radius); },
            [&](const SegmentSet& s) {
                std::vector<Point> pts(count);
                for (std::size_t i = 0; i < count; ++i) {
                    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
                    pts[i] = s.a + t * (s.b - s.a);
                }
                return pts;
            },
            [&](const JordanCurveSet& s) {
                // Resample the polyline uniformly in arc length.
                std::vector<Point> verts = s.points;
                if (s.closed) verts.push_back(verts.front());
                std::vector<double> cum(verts.size(), 0.0);
                for (std::size_t i = 1; i < verts.size(); ++i) cum[i] = cum[i - 1] + std::abs(verts[i] - verts[i - 1]);
                const double total = cum.back();
                std::vector<Point> pts(count);
                const double denom = s.closed ? static_cast<double>(count) : static_cast<double>(count - 1);
                std::size_t seg = 1;
                for (std::size_t i = 0; i < count; ++i) {
                    const double target = total * static_cast<double>(i) / denom;
                    while (seg + 1 < verts.size() && cum[seg] < target) ++seg;
                    const double len = cum[seg] - cum[seg - 1];
                    const double t = len > 0.0 ? (target - cum[seg - 1]) / len : 0.0;
                    pts[i] = verts[seg - 1] + std::clamp(t, 0.0, 1.0) * (verts[seg] - verts[seg - 1]);
                }
                return pts;
            },
            [&](const LemniscatePreimageSet& s) {
                const std::size_t per = std::max<std::size_t>(8, count / s.generating.degree());
                std::vector<Point> w(per);
                for (std::size_t i = 0; i < per; ++i)
                    w[i] = std::polar(s.radius, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(per));
                return preimages(s.generating, w);
            },
            [&](const PeriodMSet& s) {
                const std::size_t per = std::max<std::size_t>(8, count / s.generating.degree());
                std::vector<Point> x(per);
                // cosine spacing resolves the square-root behaviour at the ends
                for (std::size_t i = 0; i < per; ++i)
                    x[i] = 2.0 * std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(per - 1));
                return preimages(s.generating, x);
            },
            [&](const UnionSet& s) {
                std::vector<Point> pts;
                const std::size_t per = std::max<std::size_t>(2, count / s.parts.size());
                for (const auto& part : s.parts) {
                    auto sub = boundary_samples(part, per);
                    pts.insert(pts.end(), sub.begin(), sub.end());
                }
                return pts;
            },
        },
        k.shape);
}

bool contains(const CompactSetModel& k, Point z, double tol)
{
    return std::visit(
        overloaded{
            [&](const DiskSet& s) { return std::abs(z - s.center) <= s.radius + tol; },
            [&](const CircleSet& s) { return std::abs(std::abs(z - s.center) - s.radius) <= tol; },
            [&](const SegmentSet& s) { return segment_distance(z, s.a, s.b) <= tol; },
            [&](const JordanCurveSet& s) {
                const std::size_t n = s.points.size();
                double dist = std::numeric_limits<double>::infinity();
                const std::size_t edges = s.closed ? n : n - 1;
                bool inside = false;
                for (std::size_t i = 0; i < edges; ++i) {
                    const Point a = s.points[i];
                    const Point b = s.points[(i + 1) % n];
                    dist = std::min(dist, segment_distance(z, a, b));
                    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
                        const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
                        if (z.real() < x) inside = !inside;
                    }
                }
                return dist <= tol || (s.closed && inside);
            },
            [&](const LemniscatePreimageSet& s) { return std::abs(s.generating(z)) <= s.radius + tol; },
            [&](const PeriodMSet& s) {
                const Point v = s.generating(z);
                return std::abs(v.imag()) <= tol && std::abs(v.real()) <= 2.0 + tol;
            },
            [&](const UnionSet& s) {
                return std::any_of(s.parts.begin(), s.parts.end(), [&](const auto& part) { return contains(part, z, tol); });
            },
        },
        k.shape);
}

double diameter(const CompactSetModel& k)
{
    validate(k);
    if (const auto* d = std::get_if<DiskSet>(&k.shape)) return 2.0 * d->radius;
    if (const auto* c = std::get_if<CircleSet>(&k.shape)) return 2.0 * c->radius;
    if (const auto* s = std::get_if<SegmentSet>(&k.shape)) return std::abs(s->b - s->a);
    const auto pts = boundary_samples(k, 1024);
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, std::abs(pts[i] - pts[j]));
    }
    return best;
}

}  // namespace lemni
