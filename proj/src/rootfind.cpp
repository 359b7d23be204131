#include "lemni/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace lemni {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Fixed irrational phase of the initial circle.
constexpr double kStartPhase = 0.5 * std::numbers::sqrt2;
// Expansions whose scaled modulus on the unit circle exceeds this are solved
// in product form instead.
constexpr double kCoefficientGrowthLimit = 1e4;

bool lex_less(Point a, Point b)
{
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

struct Step {
    Point log_derivative;   // q'(z)/q(z)
    bool at_noise_floor;    // |q(z)| indistinguishable from 0
    bool exact_root;
    double residual;        // scaled |q(z)|
};

// Aberth-Ehrlich iteration in Gauss-Seidel order. eval(z) reports q'/q and
// whether z already sits within the evaluation noise of a root.
template <class Eval>
std::vector<Point> aberth(std::size_t n, Point center, double radius, const RootOptions& opts,
                          Eval&& eval, bool& converged, int& iterations, double& residual)
{
    std::vector<Point> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + kStartPhase;
        z[k] = center + std::polar(radius, theta);
    }
    std::vector<char> frozen(n, 0);
    std::size_t active = n;
    iterations = 0;
    for (int it = 0; it < opts.max_iter && active > 0; ++it) {
        ++iterations;
        for (std::size_t i = 0; i < n; ++i) {
            if (frozen[i]) continue;
            const Step s = eval(z[i]);
            if (s.exact_root || s.at_noise_floor) {
                frozen[i] = 1;
                --active;
                continue;
            }
            Point repulsion = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const Point d = z[i] - z[j];
                if (d != Point(0.0)) repulsion += 1.0 / d;
            }
            const Point denom = s.log_derivative - repulsion;
            if (denom == Point(0.0) || !is_finite(denom)) continue;
            const Point w = 1.0 / denom;
            z[i] -= w;
            if (std::abs(w) <= opts.tol * std::max(1.0, std::abs(z[i]))) {
                frozen[i] = 1;
                --active;
            }
        }
    }
    converged = active == 0;
    residual = 0.0;
    for (const auto& r : z) residual = std::max(residual, eval(r).residual);
    return z;
}

struct ScaledExpansion {
    Point center;
    double radius = 1.0;
    CoefficientVector coeffs;   // monic, in u = (z - center) / radius
    double max_abs = std::numeric_limits<double>::infinity();  // max |D| on |u| = 1
};

// Coefficients of D(u) = prod (u - (a - center) / radius) by interpolation at
// the (d+1)-th roots of unity. Errors are of order d eps max|D| on the unit
// circle, far below those of a Vieta expansion for zeros spread on a circle.
// Coefficients below that noise level are set to 0.
ScaledExpansion interpolate_scaled(std::span<const Point> zeros)
{
    const std::size_t d = zeros.size();
    ScaledExpansion out;
    for (const auto& a : zeros) out.center += a;
    out.center /= static_cast<double>(d);
    double radius = 0.0;
    for (const auto& a : zeros) radius = std::max(radius, std::abs(a - out.center));
    if (std::abs(out.center) <= 64.0 * kEps * radius) out.center = 0.0;
    radius = 0.0;
    for (const auto& a : zeros) radius = std::max(radius, std::abs(a - out.center));
    out.radius = radius > 0.0 ? radius : 1.0;

    std::vector<Point> scaled(d);
    for (std::size_t i = 0; i < d; ++i) scaled[i] = (zeros[i] - out.center) / out.radius;

    const std::size_t n = d + 1;
    std::vector<Point> unit(n);
    for (std::size_t k = 0; k < n; ++k) unit[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    std::vector<Point> values(n);
    out.max_abs = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        Point v = 1.0;
        for (const auto& a : scaled) v *= unit[k] - a;
        values[k] = v;
        out.max_abs = std::max(out.max_abs, std::abs(v));
    }
    std::vector<Point> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        Point acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += values[k] * std::conj(unit[(j * k) % n]);
        c[j] = acc / static_cast<double>(n);
    }
    const double noise = 16.0 * static_cast<double>(n) * kEps * out.max_abs;
    for (std::size_t j = 0; j < d; ++j) {
        if (std::abs(c[j].real()) <= noise) c[j].real(0.0);
        if (std::abs(c[j].imag()) <= noise) c[j].imag(0.0);
    }
    c[d] = 1.0;
    out.coeffs = CoefficientVector{std::move(c)};
    return out;
}

}  // namespace

int RootSet::total_multiplicity() const
{
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
}

int CriticalSet::total_multiplicity() const
{
    int s = 0;
    for (const auto& e : entries) s += e.multiplicity;
    return s;
}

double RootOptions::effective_cluster_radius() const
{
    return cluster_radius > 0.0 ? cluster_radius : std::max(1e-7, 100.0 * tol);
}

double root_bound(const CoefficientVector& c)
{
    const std::size_t n = c.degree();
    if (n == 0) return 0.0;
    const double lead = std::abs(c.coeffs[n]);
    double b = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double term = std::abs(c.coeffs[n - k]) / lead;
        if (k == n) term *= 0.5;
        b = std::max(b, std::pow(term, 1.0 / static_cast<double>(k)));
    }
    return 2.0 * b;
}

std::vector<Root> cluster_roots(std::span<const Point> approximations, double radius)
{
    const std::size_t n = approximations.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(approximations[i] - approximations[j]) <= radius) parent[find(i)] = find(j);
        }
    }
    std::map<std::size_t, std::pair<Point, int>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        auto& g = groups[find(i)];
        g.first += approximations[i];
        g.second += 1;
    }
    std::vector<Root> out;
    out.reserve(groups.size());
    for (const auto& [_, g] : groups) out.push_back({g.first / static_cast<double>(g.second), g.second});
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return lex_less(a.point, b.point); });
    return out;
}

namespace {

// Taylor coefficients of q about c up to order k, and the same for the
// absolute-value polynomial about |c| (the sensitivity of each coefficient to
// relative coefficient perturbations).
void taylor_at(std::span<const Point> q, Point c, std::size_t k, std::vector<std::complex<long double>>& t,
               std::vector<long double>& sens)
{
    std::vector<std::complex<long double>> a(q.begin(), q.end());
    std::vector<long double> b(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) b[i] = std::abs(std::complex<long double>(q[i]));
    const std::complex<long double> cc(c);
    const long double ac = std::abs(cc);
    t.assign(k + 1, 0.0L);
    sens.assign(k + 1, 0.0L);
    for (std::size_t j = 0; j <= k && j < a.size(); ++j) {
        // one synthetic division per order
        std::complex<long double> v = a.back();
        long double w = b.back();
        for (std::size_t i = a.size() - 1; i-- > j;) {
            a[i] += v * cc;
            b[i] += w * ac;
            v = a[i];
            w = b[i];
        }
        t[j] = a[j];
        sens[j] = b[j];
    }
}

// Second pass over radius clusters: a nearby group of total multiplicity k
// merges when its centroid is a k-fold root of q up to a relative coefficient
// perturbation of eta. Catches multiple roots whose computed copies spread by
// about eps^{1/k}, wider than any useful cluster radius once k >= 3.
// k-fold root near the weighted centroid of members, if q has one up to a
// relative coefficient perturbation of eta.
std::optional<Root> numerical_multiple(const std::vector<Root>& members, std::span<const Point> q, double eta)
{
    Point centroid = 0.0;
    int k = 0;
    for (const auto& r : members) {
        centroid += static_cast<double>(r.multiplicity) * r.point;
        k += r.multiplicity;
    }
    centroid /= static_cast<double>(k);
    std::vector<std::complex<long double>> t;
    std::vector<long double> sens;
    // a k-fold root is a simple root of q^{(k-1)}
    const auto order = static_cast<std::size_t>(k);
    if (order >= q.size()) return std::nullopt;
    for (int it = 0; it < 4; ++it) {
        taylor_at(q, centroid, order, t, sens);
        if (t[order] == std::complex<long double>(0.0L)) break;
        const auto step = t[order - 1] / (static_cast<long double>(k) * t[order]);
        centroid -= Point(static_cast<double>(step.real()), static_cast<double>(step.imag()));
    }
    taylor_at(q, centroid, order, t, sens);
    for (std::size_t j = 0; j < order; ++j) {
        if (!(std::abs(t[j]) <= static_cast<long double>(eta) * sens[j])) return std::nullopt;
    }
    return Root{centroid, k};
}

// Second pass over radius clusters: a nearby group of total multiplicity k
// merges when its centroid is a k-fold root of q up to a relative coefficient
// perturbation of eta. Catches multiple roots whose computed copies spread by
// about eps^{1/k}, wider than any useful cluster radius once k >= 3. A group
// that fails sheds its outermost member and is tried again.
std::vector<Root> merge_numerical_multiples(std::vector<Root> roots, std::span<const Point> q, double radius, double eta)
{
    bool merged = true;
    while (merged && roots.size() > 1) {
        merged = false;
        const std::size_t n = roots.size();
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double reach = std::max(radius, 1e-2 * (1.0 + std::abs(roots[i].point)));
                if (std::abs(roots[i].point - roots[j].point) <= reach) parent[find(i)] = find(j);
            }
        }
        std::map<std::size_t, std::vector<Root>> groups;
        for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(roots[i]);
        std::vector<Root> out;
        for (auto& [_, members] : groups) {
            while (members.size() > 1) {
                if (const auto m = numerical_multiple(members, q, eta)) {
                    out.push_back(*m);
                    members.clear();
                    merged = true;
                    break;
                }
                Point mean = 0.0;
                for (const auto& r : members) mean += r.point;
                mean /= static_cast<double>(members.size());
                const auto far = std::max_element(members.begin(), members.end(), [&](const Root& a, const Root& b) {
                    return std::abs(a.point - mean) < std::abs(b.point - mean);
                });
                out.push_back(*far);
                members.erase(far);
            }
            out.insert(out.end(), members.begin(), members.end());
        }
        roots = std::move(out);
    }
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return lex_less(a.point, b.point); });
    return roots;
}

}  // namespace

RootSet all_roots(const CoefficientVector& c, const RootOptions& opts)
{
    if (c.degree() < 1) throw std::invalid_argument("root finding needs degree >= 1");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const Point lead = c.coeffs.back();
    if (lead == Point(0.0)) throw std::invalid_argument("leading coefficient is zero");

    std::vector<Point> monic(c.coeffs.size());
    for (std::size_t k = 0; k < monic.size(); ++k) monic[k] = c.coeffs[k] / lead;
    monic.back() = 1.0;

    std::size_t zero_roots = 0;
    while (zero_roots + 1 < monic.size() && monic[zero_roots] == Point(0.0)) ++zero_roots;
    const CoefficientVector q{std::vector<Point>(monic.begin() + static_cast<std::ptrdiff_t>(zero_roots), monic.end())};
    const std::size_t n = q.degree();

    RootSet result;
    std::vector<Point> approx(zero_roots, Point(0.0));
    if (n == 1) {
        approx.push_back(-q.coeffs[0]);
        result.converged = true;
    } else if (n > 1) {
        std::vector<double> abs_coeffs(n + 1);
        for (std::size_t k = 0; k <= n; ++k) abs_coeffs[k] = std::abs(q.coeffs[k]);
        const double noise = 4.0 * static_cast<double>(n + 1) * kEps;
        auto eval = [&](Point z) {
            Point v = q.coeffs[n];
            Point dv = 0.0;
            double scale = abs_coeffs[n];
            const double az = std::abs(z);
            for (std::size_t k = n; k-- > 0;) {
                dv = dv * z + v;
                v = v * z + q.coeffs[k];
                scale = scale * az + abs_coeffs[k];
            }
            Step s{};
            s.exact_root = v == Point(0.0);
            s.at_noise_floor = std::abs(v) <= noise * scale;
            s.log_derivative = s.exact_root ? Point(0.0) : dv / v;
            s.residual = scale > 0.0 ? std::abs(v) / scale : 0.0;
            return s;
        };
        const double radius = 1.0 + root_bound(q);
        auto z = aberth(n, Point(0.0), radius, opts, eval, result.converged, result.iterations, result.residual);
        approx.insert(approx.end(), z.begin(), z.end());
    } else {
        result.converged = true;
    }
    result.roots = cluster_roots(approx, opts.effective_cluster_radius());
    if (n > 1 && opts.merge_multiples) result.roots = merge_numerical_multiples(std::move(result.roots), monic, opts.effective_cluster_radius(), 100.0 * opts.tol);
    return result;
}

RootSet solve_preimages(const CoefficientVector& q, Point target, const RootOptions& opts)
{
    if (q.degree() < 1) throw std::invalid_argument("preimage solve needs degree >= 1");
    CoefficientVector shifted = q;
    shifted.coeffs[0] -= target;
    return all_roots(shifted, opts);
}

CriticalSet critical_points(const MonicPolynomial& p, const RootOptions& opts)
{
    if (p.degree() < 2) throw std::invalid_argument("critical points need degree >= 2");

    // Distinct zeros with multiplicities, in first-occurrence order.
    std::vector<Point> distinct;
    std::vector<int> mult;
    for (const auto& z : p.zeros()) {
        auto it = std::find(distinct.begin(), distinct.end(), z);
        if (it == distinct.end()) {
            distinct.push_back(z);
            mult.push_back(1);
        } else {
            ++mult[static_cast<std::size_t>(it - distinct.begin())];
        }
    }

    CriticalSet out;
    std::vector<Root> found;
    const std::size_t d = distinct.size();
    for (std::size_t a = 0; a < d; ++a) {
        if (mult[a] > 1) found.push_back({distinct[a], mult[a] - 1});
    }

    if (d >= 2) {
        const ScaledExpansion g = d <= kSafeExpansionDegree ? interpolate_scaled(distinct) : ScaledExpansion{};
        const bool use_coefficients = d <= kSafeExpansionDegree && g.max_abs <= kCoefficientGrowthLimit;

        if (use_coefficients) {
            // In u = (z - center) / radius: q = D' + sum_a (m_a - 1) D / (u - a').
            CoefficientVector q = derivative_coefficients(g.coeffs);
            for (std::size_t a = 0; a < d; ++a) {
                if (mult[a] == 1) continue;
                const Point ua = (distinct[a] - g.center) / g.radius;
                std::vector<Point> quot(d);
                Point carry = 0.0;
                for (std::size_t k = d; k-- > 0;) {
                    carry = g.coeffs.coeffs[k + 1] + carry * ua;
                    quot[k] = carry;
                }
                for (std::size_t k = 0; k < d; ++k) q.coeffs[k] += static_cast<double>(mult[a] - 1) * quot[k];
            }
            RootOptions scaled = opts;
            scaled.merge_multiples = false;
            scaled.cluster_radius = opts.effective_cluster_radius() / g.radius;
            RootSet rs = all_roots(q, scaled);
            if (!rs.converged) throw SolverError("critical point solver did not converge");
            out.route = CriticalRoute::coefficients;
            out.residual = rs.residual;
            for (auto& r : rs.roots) found.push_back({g.center + g.radius * r.point, r.multiplicity});
        } else {
            // q(z) = S(z) D(z) with S = sum_a m_a / (z - a); q'/q = S'/S + sum_a 1/(z - a).
            const std::size_t nroots = d - 1;
            Point center = 0.0;
            for (const auto& z : p.zeros()) center += z;
            center /= static_cast<double>(p.degree());
            double radius = 0.0;
            for (const auto& a : distinct) radius = std::max(radius, std::abs(a - center));
            radius = std::max(radius, 1e-12);
            const double noise = 4.0 * static_cast<double>(d) * kEps;
            auto eval = [&](Point z) {
                Point s = 0.0, ds = 0.0, poles = 0.0;
                double scale = 0.0;
                for (std::size_t a = 0; a < d; ++a) {
                    const Point diff = z - distinct[a];
                    if (diff == Point(0.0)) {
                        Step st{};
                        st.log_derivative = std::numeric_limits<double>::infinity();
                        st.residual = std::numeric_limits<double>::infinity();
                        return st;
                    }
                    const Point inv = 1.0 / diff;
                    const double m = mult[a];
                    s += m * inv;
                    ds -= m * inv * inv;
                    poles += inv;
                    scale += m * std::abs(inv);
                }
                Step st{};
                st.exact_root = s == Point(0.0);
                st.at_noise_floor = std::abs(s) <= noise * scale;
                st.log_derivative = st.exact_root ? Point(0.0) : ds / s + poles;
                st.residual = std::abs(s) / scale;
                return st;
            };
            bool converged = false;
            int iterations = 0;
            double residual = 0.0;
            auto z = aberth(nroots, center, radius * 1.1, opts, eval, converged, iterations, residual);
            if (!converged) throw SolverError("critical point solver did not converge");
            out.route = CriticalRoute::product_form;
            out.residual = residual;
            auto clustered = cluster_roots(z, opts.effective_cluster_radius());
            found.insert(found.end(), clustered.begin(), clustered.end());
        }
    }

    std::sort(found.begin(), found.end(), [](const Root& a, const Root& b) { return lex_less(a.point, b.point); });
    out.entries.reserve(found.size());
    for (const auto& r : found) {
        CriticalPoint cp;
        cp.point = r.point;
        cp.multiplicity = r.multiplicity;
        cp.log_value = log_abs_evaluate(p, r.point);
        cp.critical_value = std::exp(cp.log_value);
        out.entries.push_back(cp);
    }
    return out;
}

}  // namespace lemni
