#include "lemni/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <cstdio>

#include "lemni/random.hpp"

namespace lemni {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool lex_less(Point a, Point b)
{
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

bool all_equal(const std::vector<double>& w)
{
    return std::all_of(w.begin(), w.end(), [&](double x) { return x == w.front(); });
}

}  // namespace

WeightedPointSet WeightedPointSet::uniform(std::vector<Point> points)
{
    if (points.empty()) throw std::invalid_argument("measure needs at least one point");
    const double w = 1.0 / static_cast<double>(points.size());
    std::vector<double> weights(points.size(), w);
    return {std::move(points), std::move(weights)};
}

void validate(const WeightedPointSet& mu)
{
    if (mu.points.size() != mu.weights.size()) throw std::invalid_argument("points and weights differ in length");
    if (mu.points.empty()) throw std::invalid_argument("measure needs at least one point");
    double total = 0.0;
    for (std::size_t i = 0; i < mu.points.size(); ++i) {
        if (!is_finite(mu.points[i])) throw std::invalid_argument("measure points must be finite");
        if (!(mu.weights[i] >= 0.0)) throw std::invalid_argument("measure weights must be non-negative");
        total += mu.weights[i];
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("measure weights must sum to 1");
}

WeightedPointSet empirical_measure(const MonicPolynomial& p)
{
    return WeightedPointSet::uniform({p.zeros().begin(), p.zeros().end()});
}

double log_potential(const WeightedPointSet& mu, Point z)
{
    if (all_equal(mu.weights)) {
        double sum = 0.0;
        for (const auto& a : mu.points) {
            const double d = std::abs(z - a);
            if (d == 0.0) return mu.weights.front() > 0.0 ? kNegInf : 0.0;
            sum += std::log(d);
        }
        const double n = static_cast<double>(mu.points.size());
        return mu.weights.front() == 1.0 / n ? sum / n : mu.weights.front() * sum;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < mu.points.size(); ++i) {
        if (mu.weights[i] == 0.0) continue;
        const double d = std::abs(z - mu.points[i]);
        if (d == 0.0) return kNegInf;
        sum += mu.weights[i] * std::log(d);
    }
    return sum;
}

double energy(const WeightedPointSet& mu)
{
    const std::size_t n = mu.points.size();
    if (n < 2 || mu.weights.size() != n) throw std::invalid_argument("energy needs at least two points");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = mu.weights[i];
        if (wi == 0.0) continue;
        double row = 0.0;
        double row_w = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double wj = mu.weights[j];
            if (wj == 0.0) continue;
            const double d = std::abs(mu.points[i] - mu.points[j]);
            if (d == 0.0) return kNegInf;
            row += wj * std::log(d);
            row_w += wj;
        }
        num += wi * row;
        den += wi * row_w;
    }
    if (den == 0.0) throw std::invalid_argument("energy needs two positively weighted points");
    return num / den;
}

std::vector<Point> leja_select(std::span<const Point> candidates, std::size_t n)
{
    if (candidates.size() < n) throw std::invalid_argument("fewer candidates than requested Leja points");
    if (n == 0) return {};
    Point centroid = 0.0;
    for (const auto& c : candidates) centroid += c;
    centroid /= static_cast<double>(candidates.size());

    const std::size_t m = candidates.size();
    auto better = [&](std::size_t i, double score, std::size_t best, double best_score) {
        return score > best_score || (score == best_score && lex_less(candidates[i], candidates[best]));
    };

    std::size_t first = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double d = std::abs(candidates[i] - centroid);
        if (i == 0 || better(i, d, first, best)) {
            first = i;
            best = d;
        }
    }
    if (!(best > 0.0) && m > 1) {
        bool degenerate = true;
        for (std::size_t i = 1; i < m && degenerate; ++i) degenerate = candidates[i] == candidates[0];
        if (degenerate) throw std::invalid_argument("compact set is a single point");
    }

    std::vector<Point> chosen{candidates[first]};
    std::vector<double> score(m, 0.0);
    std::vector<char> taken(m, 0);
    taken[first] = 1;
    auto accumulate = [&](Point w) {
        for (std::size_t i = 0; i < m; ++i) {
            if (taken[i]) continue;
            const double d = std::abs(candidates[i] - w);
            score[i] = d == 0.0 ? kNegInf : score[i] + std::log(d);
        }
    };
    accumulate(candidates[first]);
    while (chosen.size() < n) {
        std::size_t arg = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (taken[i] || score[i] == kNegInf) continue;
            if (arg == m || better(i, score[i], arg, score[arg])) arg = i;
        }
        if (arg == m) throw std::invalid_argument("not enough distinct boundary samples for the Leja points");
        taken[arg] = 1;
        chosen.push_back(candidates[arg]);
        accumulate(candidates[arg]);
    }
    return chosen;
}

int leja_refine(std::vector<Point>& points, std::span<const Point> candidates)
{
    int swaps = 0;
    const std::size_t n = points.size();
    for (std::size_t k = 0; k < n; ++k) {
        auto log_product = [&](Point w) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                const double d = std::abs(w - points[j]);
                if (d == 0.0) return kNegInf;
                s += std::log(d);
            }
            return s;
        };
        double best = log_product(points[k]);
        Point arg = points[k];
        for (const auto& c : candidates) {
            const double s = log_product(c);
            if (s > best + 1e-12) {
                best = s;
                arg = c;
            }
        }
        if (arg != points[k]) {
            points[k] = arg;
            ++swaps;
        }
    }
    return swaps;
}

WeightedPointSet leja_points(const CompactSetModel& k, std::size_t n, const LejaOptions& opts)
{
    if (n < 2) throw std::invalid_argument("Leja points need n >= 2");
    const auto candidates = boundary_samples(k, std::max(opts.boundary_resolution, n));
    auto pts = leja_select(candidates, n);
    for (int pass = 0; pass < opts.refine_passes; ++pass) {
        if (leja_refine(pts, candidates) == 0) break;
    }
    return WeightedPointSet::uniform(std::move(pts));
}

double transfinite_diameter(std::span<const Point> points)
{
    const std::size_t n = points.size();
    if (n < 2) throw std::invalid_argument("transfinite diameter needs at least two points");
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            const double d = std::abs(points[j] - points[k]);
            if (d == 0.0) return 0.0;
            sum += std::log(d);
        }
    }
    return std::exp(2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1)));
}

double corrected_energy_capacity(std::span<const Point> points)
{
    const std::size_t n = points.size();
    if (n < 3) throw std::invalid_argument("corrected capacity needs at least three points");
    double off = 0.0;
    double self = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d1 = std::numeric_limits<double>::infinity();
        double d2 = d1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = std::abs(points[i] - points[j]);
            if (d == 0.0) return 0.0;
            if (j > i) off += std::log(d);
            if (d < d1) {
                d2 = d1;
                d1 = d;
            } else if (d < d2) {
                d2 = d;
            }
        }
        self += std::log(0.5 * (d1 + d2)) - 1.5;
    }
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    return std::exp((2.0 * off + self) / nn);
}

CapacityEstimate capacity_report(const CompactSetModel& k, std::size_t n, const LejaOptions& opts)
{
    if (n < 8) throw std::invalid_argument("capacity estimate needs n >= 8");
    const auto mu = leja_points(k, n, opts);
    return {corrected_energy_capacity(mu.points), transfinite_diameter(mu.points), n};
}

double capacity_estimate(const CompactSetModel& k, std::size_t n, const LejaOptions& opts)
{
    return capacity_report(k, n, opts).capacity;
}

WeightedPointSet equilibrium_sample(const CompactSetModel& k, std::size_t count, std::uint64_t seed)
{
    if (count < 1) throw std::invalid_argument("sample count must be positive");
    validate(k);
    Rng rng(seed);
    std::vector<Point> pts;
    pts.reserve(count);
    auto on_circle = [&](Point c, double r) {
        for (std::size_t i = 0; i < count; ++i) pts.push_back(c + std::polar(r, 2.0 * std::numbers::pi * rng.uniform()));
    };
    if (const auto* d = std::get_if<DiskSet>(&k.shape)) {
        on_circle(d->center, d->radius);
    } else if (const auto* c = std::get_if<CircleSet>(&k.shape)) {
        on_circle(c->center, c->radius);
    } else if (const auto* s = std::get_if<SegmentSet>(&k.shape)) {
        const Point mid = 0.5 * (s->a + s->b);
        const Point half = 0.5 * (s->b - s->a);
        for (std::size_t i = 0; i < count; ++i) pts.push_back(mid + half * std::cos(std::numbers::pi * rng.uniform()));
    } else {
        // empirical equilibrium surrogate
        const auto leja = leja_points(k, 256);
        for (std::size_t i = 0; i < count; ++i) {
            const auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(leja.points.size()));
            pts.push_back(leja.points[std::min(idx, leja.points.size() - 1)]);
        }
    }
    return WeightedPointSet::uniform(std::move(pts));
}

double ball_mass(const WeightedPointSet& mu, Point center, double r)
{
    if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
    double mass = 0.0;
    for (std::size_t i = 0; i < mu.points.size(); ++i) {
        if (std::abs(mu.points[i] - center) < r) mass += mu.weights[i];
    }
    return std::min(mass, 1.0);
}

double ball_mass_slope(const WeightedPointSet& mu, Point center, std::span<const double> radii)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double r : radii) {
        const double m = ball_mass(mu, center, r);
        if (m <= 0.0) continue;
        const double x = std::log(r), y = std::log(m);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("slope fit needs two radii with positive mass");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string to_csv(const WeightedPointSet& mu)
{
    std::ostringstream os;
    os << "re,im,weight\n";
    char buf[96];
    for (std::size_t i = 0; i < mu.points.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", mu.points[i].real(), mu.points[i].imag(), mu.weights[i]);
        os << buf;
    }
    return os.str();
}

}  // namespace lemni
