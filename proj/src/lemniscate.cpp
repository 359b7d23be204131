#include "lemni/lemniscate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lemni {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_double(double v, int digits = 10)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Square cells over the zero box padded so that it contains {|p| < level}:
// |z - z_j| >= level^(1/n) for all j forces |p(z)| >= level.
Raster grid_geometry(const MonicPolynomial& p, int resolution, double level, double pad_factor)
{
    const auto zs = p.zeros();
    const double pad = pad_factor * std::max(1.0, std::pow(level, 1.0 / static_cast<double>(zs.size())));
    double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
    for (const auto& z : zs) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    x0 -= pad;
    x1 += pad;
    y0 -= pad;
    y1 += pad;
    Raster r;
    r.cell = std::max(x1 - x0, y1 - y0) / resolution;
    r.nx = std::max(1, static_cast<int>(std::ceil((x1 - x0) / r.cell - 1e-9)));
    r.ny = std::max(1, static_cast<int>(std::ceil((y1 - y0) / r.cell - 1e-9)));
    r.x_min = x0;
    r.y_min = y0;
    return r;
}

struct UnionFind {
    std::vector<int> parent;
    int add()
    {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x)
    {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

double small_isolation_radius(const MonicPolynomial& p, std::size_t j, double level);

}  // namespace

std::string to_string(CountMethod m)
{
    switch (m) {
    case CountMethod::critical_value: return "critical_value";
    case CountMethod::grid: return "grid";
    case CountMethod::both_agree: return "both_agree";
    }
    return "unknown";
}

ComponentReport count_from_critical_set(const MonicPolynomial& p, const CriticalSet& cs, double level,
                                        double margin_threshold)
{
    if (!(level > 0.0)) throw std::invalid_argument("level must be positive");
    const double log_level = std::log(level);
    const double log_band = std::log1p(-margin_threshold);
    ComponentReport r;
    r.degree = p.degree();
    r.method = CountMethod::critical_value;
    r.margin = kInf;
    int counted = 0;
    for (const auto& e : cs.entries) {
        const double delta = e.log_value - log_level;
        r.margin = std::min(r.margin, std::abs(delta));
        if (std::abs(std::expm1(delta)) < margin_threshold) r.ambiguous = true;
        if (delta >= log_band) counted += e.multiplicity;
    }
    r.count = 1 + counted;
    return r;
}

ComponentReport count_by_critical_values(const MonicPolynomial& p, double level, double margin_threshold)
{
    if (p.degree() < 2) {
        if (!(level > 0.0)) throw std::invalid_argument("level must be positive");
        ComponentReport r;
        r.degree = p.degree();
        r.count = 1;
        r.margin = kInf;
        return r;
    }
    return count_from_critical_set(p, critical_points(p), level, margin_threshold);
}

Point Raster::cell_center(int ix, int iy) const
{
    return {x_min + (ix + 0.5) * cell, y_min + (iy + 0.5) * cell};
}

int Raster::disks() const
{
    return static_cast<int>(std::count_if(disk_radius.begin(), disk_radius.end(), [](double r) { return r > 0.0; }));
}

bool Raster::resolved() const
{
    for (std::size_t j = 0; j < zero_component.size(); ++j) {
        if (zero_component[j] < 0 && !(j < disk_radius.size() && disk_radius[j] > 0.0)) return false;
    }
    for (int k : zeros_in_component) {
        if (k == 0) return false;
    }
    return true;
}

Raster rasterize(const MonicPolynomial& p, int resolution, double level, const GridOptions& opts)
{
    return rasterize(p, resolution, level, opts, {});
}

Raster rasterize(const MonicPolynomial& p, int resolution, double level, const GridOptions& opts,
                 const std::vector<double>& disk_radius)
{
    if (resolution < 1) throw std::invalid_argument("resolution must be positive");
    if (!(level > 0.0)) throw std::invalid_argument("level must be positive");
    const auto zs = p.zeros();
    Raster r = grid_geometry(p, resolution, level, opts.pad);
    r.disk_radius = disk_radius;
    r.disk_radius.resize(zs.size(), 0.0);

    // disks touching each row
    std::vector<std::vector<std::size_t>> row_disks(static_cast<std::size_t>(r.ny));
    for (std::size_t j = 0; j < zs.size(); ++j) {
        const double rad = r.disk_radius[j];
        if (!(rad > 0.0)) continue;
        const int lo = std::max(0, static_cast<int>(std::floor((zs[j].imag() - rad - r.y_min) / r.cell)));
        const int hi = std::min(r.ny - 1, static_cast<int>(std::floor((zs[j].imag() + rad - r.y_min) / r.cell)));
        for (int iy = lo; iy <= hi; ++iy) row_disks[static_cast<std::size_t>(iy)].push_back(j);
    }

    const double threshold = std::log(level) - opts.guard;
    UnionFind uf;
    std::vector<int> run_node;
    std::vector<std::size_t> row_start(static_cast<std::size_t>(r.ny) + 1, 0);
    std::size_t prev_begin = 0, prev_end = 0;
    for (int iy = 0; iy < r.ny; ++iy) {
        row_start[static_cast<std::size_t>(iy)] = r.runs.size();
        const double y = r.y_min + (iy + 0.5) * r.cell;
        int start = -1;
        for (int ix = 0; ix <= r.nx; ++ix) {
            bool inside = false;
            if (ix < r.nx) {
                const Point c{r.x_min + (ix + 0.5) * r.cell, y};
                inside = fast_log_abs_evaluate(zs, c) < threshold;
                for (std::size_t j : row_disks[static_cast<std::size_t>(iy)]) {
                    if (!inside) break;
                    if (std::abs(c - zs[j]) <= r.disk_radius[j]) inside = false;
                }
            }
            if (inside && start < 0) start = ix;
            if (!inside && start >= 0) {
                r.runs.push_back({iy, start, ix, -1});
                run_node.push_back(uf.add());
                start = -1;
            }
        }
        const std::size_t cur_begin = row_start[static_cast<std::size_t>(iy)];
        const std::size_t cur_end = r.runs.size();
        // 4-connectivity: runs in consecutive rows sharing a column.
        std::size_t a = prev_begin, b = cur_begin;
        while (a < prev_end && b < cur_end) {
            const auto& ra = r.runs[a];
            const auto& rb = r.runs[b];
            if (ra.x0 < rb.x1 && rb.x0 < ra.x1) uf.unite(run_node[a], run_node[b]);
            if (ra.x1 < rb.x1) ++a;
            else ++b;
        }
        prev_begin = cur_begin;
        prev_end = cur_end;
    }
    row_start[static_cast<std::size_t>(r.ny)] = r.runs.size();

    std::vector<int> remap(run_node.size(), -1);
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
        const int root = uf.find(run_node[i]);
        if (remap[static_cast<std::size_t>(root)] < 0) remap[static_cast<std::size_t>(root)] = r.components++;
        r.runs[i].component = remap[static_cast<std::size_t>(root)];
    }

    r.zeros_in_component.assign(static_cast<std::size_t>(r.components), 0);
    r.zero_component.assign(zs.size(), -1);
    for (std::size_t j = 0; j < zs.size(); ++j) {
        const int ix = std::clamp(static_cast<int>(std::floor((zs[j].real() - r.x_min) / r.cell)), 0, r.nx - 1);
        const int iy = std::clamp(static_cast<int>(std::floor((zs[j].imag() - r.y_min) / r.cell)), 0, r.ny - 1);
        const auto first = r.runs.begin() + static_cast<std::ptrdiff_t>(row_start[static_cast<std::size_t>(iy)]);
        const auto last = r.runs.begin() + static_cast<std::ptrdiff_t>(row_start[static_cast<std::size_t>(iy) + 1]);
        auto it = std::upper_bound(first, last, ix, [](int x, const RasterRun& run) { return x < run.x1; });
        if (it != last && it->x0 <= ix) {
            r.zero_component[j] = it->component;
            ++r.zeros_in_component[static_cast<std::size_t>(it->component)];
        }
    }
    return r;
}

ComponentReport count_by_grid(const MonicPolynomial& p, int resolution, double level, const GridOptions& opts)
{
    if (resolution < 64) throw std::invalid_argument("grid resolution must be at least 64");
    int res = resolution;
    std::vector<double> disks(p.degree(), 0.0);
    Raster raster = rasterize(p, res, level, opts, disks);
    while (!raster.resolved()) {
        bool added = false;
        for (std::size_t j = 0; j < disks.size(); ++j) {
            if (raster.zero_component[j] >= 0 || disks[j] > 0.0) continue;
            disks[j] = small_isolation_radius(p, j, level);
            added = added || disks[j] > 0.0;
        }
        if (!added) {
            if (res * 2 > opts.max_resolution) break;
            res *= 2;
        }
        raster = rasterize(p, res, level, opts, disks);
    }
    ComponentReport r;
    r.degree = p.degree();
    r.method = CountMethod::grid;
    r.count = raster.total_components();
    r.margin = std::numeric_limits<double>::quiet_NaN();
    r.certified = raster.resolved();
    r.resolution = res;
    std::vector<bool> iso(p.degree());
    for (std::size_t j = 0; j < iso.size(); ++j) {
        const int c = raster.zero_component[j];
        iso[j] = raster.disk_radius[j] > 0.0 || (c >= 0 && raster.zeros_in_component[static_cast<std::size_t>(c)] == 1);
    }
    r.per_zero_isolated = std::move(iso);
    return r;
}

ComponentReport DualReport::combined() const
{
    ComponentReport r = critical;
    r.method = agree() ? CountMethod::both_agree : CountMethod::critical_value;
    r.certified = grid.certified;
    r.resolution = grid.resolution;
    r.per_zero_isolated = grid.per_zero_isolated;
    return r;
}

DualReport count_both(const MonicPolynomial& p, int resolution, double level)
{
    return {count_by_critical_values(p, level), count_by_grid(p, resolution, level)};
}

bool certify_isolated(const MonicPolynomial& p, std::size_t j, double alpha, double beta, double bernstein_constant)
{
    if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("alpha and beta must be positive");
    const auto zs = p.zeros();
    if (j >= zs.size()) throw std::out_of_range("zero index out of range");
    const double n = static_cast<double>(zs.size());
    if (zs.size() < 2) return false;

    double spacing = kInf;
    for (std::size_t k = 0; k < zs.size(); ++k) {
        if (k != j) spacing = std::min(spacing, std::abs(zs[j] - zs[k]));
    }
    if (!(spacing > 0.0)) return false;

    const double log_deriv = log_abs_derivative_at_zero(p, j);
    if (log_deriv < std::pow(n, alpha)) return false;
    if (spacing < std::pow(n, -beta)) return false;
    // diam(component) <= C n^2 / |p'(z_j)|
    const double log_diameter_bound = std::log(bernstein_constant) + 2.0 * std::log(n) - log_deriv;
    return log_diameter_bound < std::log(spacing);
}

bool isolated_component_test(const MonicPolynomial& p, std::size_t j, double radius, double level)
{
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
    const auto zs = p.zeros();
    if (j >= zs.size()) throw std::out_of_range("zero index out of range");
    for (std::size_t k = 0; k < zs.size(); ++k) {
        if (k != j && std::abs(zs[k] - zs[j]) < radius) return false;
    }
    const std::size_t samples = std::max<std::size_t>(64, 64 * zs.size());
    const double log_level = std::log(level);
    for (std::size_t s = 0; s < samples; ++s) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(samples);
        if (fast_log_abs_evaluate(zs, zs[j] + std::polar(radius, theta)) < log_level) return false;
    }
    return true;
}

double isolation_radius(const MonicPolynomial& p, std::size_t j, double level)
{
    const auto zs = p.zeros();
    double spacing = kInf;
    for (std::size_t k = 0; k < zs.size(); ++k) {
        if (k != j) spacing = std::min(spacing, std::abs(zs[j] - zs[k]));
    }
    if (!(spacing > 0.0)) return 0.0;
    if (!std::isfinite(spacing)) spacing = 4.0 * std::max(1.0, level);
    double r = 0.5 * spacing;
    for (int step = 0; step < 40; ++step, r *= 0.75) {
        if (isolated_component_test(p, j, r, level)) return r;
    }
    return 0.0;
}

namespace {

// Near a simple zero |p(z)| ~ |p'(z_j)| |z - z_j|, so try radii from a few
// times level / |p'(z_j)| upward to half the spacing.
double small_isolation_radius(const MonicPolynomial& p, std::size_t j, double level)
{
    const auto zs = p.zeros();
    double spacing = kInf;
    for (std::size_t k = 0; k < zs.size(); ++k) {
        if (k != j) spacing = std::min(spacing, std::abs(zs[j] - zs[k]));
    }
    const double log_deriv = log_abs_derivative_at_zero(p, j);
    if (!(spacing > 0.0) || !std::isfinite(log_deriv)) return 0.0;
    double r = 2.0 * std::exp(std::log(level) - log_deriv);
    for (int step = 0; step < 12 && r < 0.5 * spacing; ++step, r *= 4.0) {
        if (isolated_component_test(p, j, r, level)) return r;
    }
    return 0.0;
}

}  // namespace

std::string render_svg(const MonicPolynomial& p, int resolution, double level)
{
    if (resolution < 64) throw std::invalid_argument("grid resolution must be at least 64");
    if (!(level > 0.0)) throw std::invalid_argument("level must be positive");
    // Node grid spanning the same box as the raster oracle.
    const Raster box = grid_geometry(p, resolution, level, GridOptions{}.pad);
    const int nx = box.nx;
    const int ny = box.ny;
    const double h = box.cell;
    const double log_level = std::log(level);
    const auto zs = p.zeros();

    std::vector<double> f(static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(ny + 1));
    auto at = [&](int i, int k) -> double& { return f[static_cast<std::size_t>(k) * static_cast<std::size_t>(nx + 1) + static_cast<std::size_t>(i)]; };
    for (int k = 0; k <= ny; ++k) {
        for (int i = 0; i <= nx; ++i) {
            double v = fast_log_abs_evaluate(zs, {box.x_min + i * h, box.y_min + k * h}) - log_level;
            if (!std::isfinite(v)) v = -1e300;
            at(i, k) = v;
        }
    }

    std::ostringstream path;
    auto emit = [&](double ax, double ay, double bx, double by) {
        char buf[128];
        // SVG y grows downward.
        std::snprintf(buf, sizeof buf, "M%.2f %.2fL%.2f %.2f", ax, ny - ay, bx, ny - by);
        path << buf;
    };
    auto lerp = [](double a, double b) { return a / (a - b); };
    for (int k = 0; k < ny; ++k) {
        for (int i = 0; i < nx; ++i) {
            const double v00 = at(i, k), v10 = at(i + 1, k), v11 = at(i + 1, k + 1), v01 = at(i, k + 1);
            const int code = (v00 < 0) | ((v10 < 0) << 1) | ((v11 < 0) << 2) | ((v01 < 0) << 3);
            if (code == 0 || code == 15) continue;
            // edge crossing points: bottom, right, top, left
            const std::array<std::pair<double, double>, 4> e{{
                {i + lerp(v00, v10), k},
                {i + 1, k + lerp(v10, v11)},
                {i + lerp(v01, v11), k + 1},
                {i, k + lerp(v00, v01)},
            }};
            auto seg = [&](int a, int b) { emit(e[a].first, e[a].second, e[b].first, e[b].second); };
            const bool center_inside = 0.25 * (v00 + v10 + v11 + v01) < 0;
            switch (code) {
            case 1: case 14: seg(3, 0); break;
            case 2: case 13: seg(0, 1); break;
            case 3: case 12: seg(3, 1); break;
            case 4: case 11: seg(1, 2); break;
            case 6: case 9: seg(0, 2); break;
            case 7: case 8: seg(3, 2); break;
            case 5:
                if (center_inside) { seg(3, 2); seg(0, 1); }
                else { seg(3, 0); seg(1, 2); }
                break;
            case 10:
                if (center_inside) { seg(3, 0); seg(1, 2); }
                else { seg(3, 2); seg(0, 1); }
                break;
            default: break;
            }
        }
    }

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << nx << "\" height=\"" << ny
        << "\" viewBox=\"0 0 " << nx << ' ' << ny << "\">\n"
        << "<desc>degree " << zs.size() << ", level " << fmt_double(level) << "</desc>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1\" d=\"" << path.str() << "\"/>\n";
    for (const auto& z : zs) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"red\"/>\n",
                      (z.real() - box.x_min) / h, ny - (z.imag() - box.y_min) / h);
        svg << buf;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string report_csv_header()
{
    return "degree,method,count,margin,ambiguous";
}

std::string report_csv_row(const ComponentReport& r)
{
    std::ostringstream os;
    os << r.degree << ',' << to_string(r.method) << ',' << r.count << ',' << fmt_double(r.margin) << ','
       << (r.ambiguous ? 1 : 0);
    return os.str();
}

}  // namespace lemni
