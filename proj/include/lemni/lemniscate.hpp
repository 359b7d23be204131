#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lemni/polynomial.hpp"
#include "lemni/rootfind.hpp"

namespace lemni {

/// Critical values within this relative distance of the level are reported
/// as ambiguous (the touching case).
inline constexpr double kMarginThreshold = 1e-6;

enum class CountMethod { critical_value, grid, both_agree };

std::string to_string(CountMethod m);

struct ComponentReport {
    std::size_t degree = 0;
    int count = 0;
    CountMethod method = CountMethod::critical_value;
    /// min over critical points of |log(|p(beta)| / level)|; +inf when there
    /// are none.
    double margin = 0.0;
    bool ambiguous = false;
    /// Grid only: false when the raster failed its under-resolution checks
    /// at the largest permitted resolution.
    bool certified = true;
    int resolution = 0;
    std::optional<std::vector<bool>> per_zero_isolated;
};

/// 1 + sum of multiplicities of critical points with |p(beta)| >= level.
/// Values inside the ambiguity band are treated as touching the level, so
/// they are counted, and the report is flagged ambiguous.
ComponentReport count_by_critical_values(const MonicPolynomial& p, double level = 1.0,
                                         double margin_threshold = kMarginThreshold);

/// Same, from an already computed critical set.
ComponentReport count_from_critical_set(const MonicPolynomial& p, const CriticalSet& cs,
                                        double level = 1.0, double margin_threshold = kMarginThreshold);

struct GridOptions {
    int max_resolution = 8192;
    double pad = 1.05;
    /// Cells whose log|p| lies within this of log(level) count as exterior.
    double guard = kMarginThreshold;
};

/// Horizontal run of interior cells [x0, x1) in row y.
struct RasterRun {
    int y = 0;
    int x0 = 0;
    int x1 = 0;
    int component = -1;
};

/// Square-cell rasterization of {|p| < level} over the padded zero box.
struct Raster {
    double x_min = 0.0;
    double y_min = 0.0;
    double cell = 0.0;
    int nx = 0;
    int ny = 0;
    std::vector<RasterRun> runs;
    int components = 0;
    /// Component id holding each zero's cell, -1 when that cell is exterior.
    std::vector<int> zero_component;
    /// Number of zeros per component.
    std::vector<int> zeros_in_component;
    /// Per zero: radius of a circle around it on which |p| >= level with no
    /// other zero inside, or 0. Such disks are cut out of the raster and each
    /// holds exactly one component, counted in total_components().
    std::vector<double> disk_radius;

    [[nodiscard]] int disks() const;
    [[nodiscard]] int total_components() const { return components + disks(); }

    [[nodiscard]] Point cell_center(int ix, int iy) const;
    [[nodiscard]] bool resolved() const;
};

/// One rasterization at a fixed resolution (cells along the longer side).
Raster rasterize(const MonicPolynomial& p, int resolution, double level = 1.0,
                 const GridOptions& opts = {});

/// Same, with the disks of nonzero disk_radius[j] excluded.
Raster rasterize(const MonicPolynomial& p, int resolution, double level, const GridOptions& opts,
                 const std::vector<double>& disk_radius);

/// Flood-fill oracle. A zero whose cell comes out exterior (a component
/// smaller than a cell) is certified by an isolating circle when one exists
/// and its disk is cut out; otherwise, and while some component holds no
/// zero, the resolution doubles up to opts.max_resolution.
/// Throws std::invalid_argument for resolution < 64.
ComponentReport count_by_grid(const MonicPolynomial& p, int resolution, double level = 1.0,
                              const GridOptions& opts = {});

/// Both methods side by side; combined() folds them into one report.
struct DualReport {
    ComponentReport critical;
    ComponentReport grid;
    [[nodiscard]] bool agree() const { return critical.count == grid.count; }
    /// The critical-value report with method both_agree when the counts
    /// match, per-zero isolation flags taken from the grid.
    [[nodiscard]] ComponentReport combined() const;
};
DualReport count_both(const MonicPolynomial& p, int resolution, double level = 1.0);

/// Bernstein-type certificate that zero j sits alone in its component:
/// |p'(z_j)| >= exp(n^alpha), min_{k != j} |z_j - z_k| >= n^-beta, and the
/// component diameter bound C n^2 / |p'(z_j)| is below that spacing.
bool certify_isolated(const MonicPolynomial& p, std::size_t j, double alpha, double beta,
                      double bernstein_constant = 1.0);

/// True iff no other zero lies in B(z_j, radius) and log|p| >= log(level) on
/// a sampling of the circle |z - z_j| = radius with at least 64 n points.
bool isolated_component_test(const MonicPolynomial& p, std::size_t j, double radius,
                             double level = 1.0);

/// Largest radius passing isolated_component_test, searched over a geometric
/// grid below half the distance to the nearest other zero; 0 if none passes.
double isolation_radius(const MonicPolynomial& p, std::size_t j, double level = 1.0);

/// Marching-squares picture of |p| = level with zero markers. Output bytes
/// depend only on the inputs.
std::string render_svg(const MonicPolynomial& p, int resolution, double level = 1.0);

/// "degree,method,count,margin,ambiguous"
std::string report_csv_header();
std::string report_csv_row(const ComponentReport& r);

}  // namespace lemni
