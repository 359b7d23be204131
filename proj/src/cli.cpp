#include "lemni/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lemni/constructions.hpp"
#include "lemni/experiments.hpp"
#include "lemni/io.hpp"
#include "lemni/lemniscate.hpp"
#include "lemni/potential.hpp"
#include "lemni/random.hpp"

namespace lemni::cli {

namespace {

struct Flags {
    std::string family;
    std::string poly;
    std::string set;
    std::string generating;
    std::string psi;
    std::string center = "[2,0]";
    std::string sign;
    std::string method = "critical";
    std::string config;
    std::string out;
    std::string format;
    int n = 0;
    int degree = 0;
    int trials = 0;
    int n1 = -1;
    int n_min = 3;
    int n_max = 100;
    int resolution = 2048;
    double level = 1.0;
    double half_width = 2.0;
    std::uint64_t seed = kDefaultSeed;
};

// Usage problems found after parsing (missing inputs, bad combinations).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string inline_or_file(const std::string& value)
{
    const auto first = value.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (value[first] == '{' || value[first] == '[')) return value;
    return read_file(value);
}

std::vector<Point> point_list(const std::string& value, const char* what)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(inline_or_file(value));
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("malformed JSON in ") + what + ": " + e.what());
    }
    if (j.is_object() && j.contains("coeffs")) j = j["coeffs"];
    if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of [re, im] pairs");
    std::vector<Point> out;
    for (const auto& e : j) {
        if (e.is_number()) {
            out.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw FormatError(std::string(what) + " entries must be numbers or [re, im] pairs");
        }
    }
    return out;
}

MonicPolynomial load_poly(const Flags& f)
{
    if (f.poly.empty()) throw UsageError("--poly is required");
    return polynomial_from_json(read_file(f.poly));
}

CompactSetModel load_set(const Flags& f)
{
    if (f.set.empty()) throw UsageError("--set is required");
    return compact_set_from_json(inline_or_file(f.set));
}

int require_n(const Flags& f)
{
    if (f.n <= 0) throw UsageError("--n is required and must be positive");
    return f.n;
}

void emit(const Flags& f, std::ostream& out, const std::string& content)
{
    if (f.out.empty()) out << content;
    else write_file(f.out, content);
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

UnitSign parse_sign(const std::string& s)
{
    return s == "minus" ? UnitSign::minus_one : UnitSign::plus_one;
}

void do_construct(const Flags& f, std::ostream& out)
{
    const std::string& fam = f.family;
    if (fam == "faber") {
        if (f.psi.empty()) throw UsageError("faber needs --psi");
        const auto fc = faber_polynomials(point_list(f.psi, "--psi"), require_n(f));
        nlohmann::ordered_json j;
        j["psi"] = nlohmann::ordered_json::array();
        for (const auto& a : fc.psi_coeffs) j["psi"].push_back({a.real(), a.imag()});
        j["faber"] = nlohmann::ordered_json::array();
        for (const auto& c : fc.faber) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (const auto& a : c.coeffs) row.push_back({a.real(), a.imag()});
            j["faber"].push_back(row);
        }
        emit(f, out, j.dump() + "\n");
        return;
    }
    MonicPolynomial p = [&] {
        if (fam == "roots-of-unity") return roots_of_unity_poly(require_n(f), f.sign == "plus" ? UnitSign::plus_one : UnitSign::minus_one);
        if (fam == "chebyshev") return chebyshev_monic(require_n(f), f.half_width);
        if (fam == "ehp") return ehp_polynomial(require_n(f));
        if (fam == "ehp-scaled") return scaled_ehp(require_n(f));
        if (fam == "period-m" || fam == "lemniscate-power") {
            if (f.generating.empty()) throw UsageError(fam + " needs --generating");
            const CoefficientVector q{point_list(f.generating, "--generating")};
            if (fam == "period-m") return composed_period_m(q, require_n(f));
            return lemniscate_power(q, require_n(f), parse_sign(f.sign));
        }
        // cluster
        const auto centers = point_list("[" + f.center + "]", "--center");
        if (centers.size() != 1) throw FormatError("--center must be one [re, im] pair");
        const int n = require_n(f);
        const int n1 = f.n1 >= 0 ? f.n1 : n / 2;
        if (n1 > n) throw UsageError("--n1 exceeds --n");
        return cluster_construction(centers[0], load_set(f), n1, n - n1, f.seed);
    }();
    emit(f, out, polynomial_to_json(p));
}

void do_components(const Flags& f, std::ostream& out)
{
    const MonicPolynomial p = load_poly(f);
    ComponentReport r;
    if (f.method == "critical") {
        r = count_by_critical_values(p, f.level);
    } else if (f.method == "grid") {
        r = count_by_grid(p, f.resolution, f.level);
    } else {
        r = count_both(p, f.resolution, f.level).combined();
    }
    if (f.format == "json") {
        emit(f, out, report_to_json(r));
    } else if (f.format == "csv") {
        emit(f, out, report_csv_header() + "\n" + report_csv_row(r) + "\n");
    } else {
        std::string s = "count " + std::to_string(r.count) + "\nmethod " + to_string(r.method) + "\nmargin " + fmt(r.margin) +
                        "\nambiguous " + (r.ambiguous ? "yes" : "no") + "\n";
        if (f.method != "critical") s += std::string("certified ") + (r.certified ? "yes" : "no") + "\n";
        emit(f, out, s);
    }
}

void do_capacity(const Flags& f, std::ostream& out)
{
    const CompactSetModel k = load_set(f);
    const auto est = capacity_report(k, static_cast<std::size_t>(f.n > 0 ? f.n : 64));
    if (f.format == "json") {
        nlohmann::ordered_json j;
        j["capacity"] = est.capacity;
        j["transfinite_diameter"] = est.transfinite_diameter;
        j["points"] = est.points;
        emit(f, out, j.dump(2) + "\n");
    } else {
        emit(f, out, fmt(est.capacity) + "\n");
    }
}

void do_fekete(const Flags& f, std::ostream& out)
{
    const auto r = fekete_lemniscate_experiment(load_set(f), require_n(f), f.resolution);
    if (f.format == "svg") emit(f, out, render_svg(r.poly, f.resolution, f.level));
    else emit(f, out, fekete_to_json(r));
}

void do_sample(const Flags& f, std::ostream& out)
{
    emit(f, out, to_csv(equilibrium_sample(load_set(f), static_cast<std::size_t>(require_n(f)), f.seed)));
}

void do_plot(const Flags& f, std::ostream& out)
{
    emit(f, out, render_svg(load_poly(f), f.resolution, f.level));
}

void do_census(const Flags& f, std::ostream& out)
{
    emit(f, out, ehp_census_to_csv(ehp_census(f.n_min, f.n_max)));
}

void do_experiment(const Flags& f, const CLI::App& sub, std::ostream& out)
{
    ExperimentConfig cfg;
    if (!f.config.empty()) cfg = config_from_json(read_file(f.config));
    if (!f.set.empty()) cfg.set = load_set(f);
    if (f.degree > 0) cfg.degree = f.degree;
    if (f.n > 0) cfg.degree = f.n;
    if (f.trials > 0) cfg.trials = f.trials;
    if (sub.count("--seed") > 0) cfg.seed = f.seed;
    if (sub.count("--resolution") > 0) cfg.resolution = f.resolution;
    if (sub.count("--n-min") > 0) cfg.n_min = f.n_min;
    if (sub.count("--n-max") > 0) cfg.n_max = f.n_max;
    if (!f.out.empty()) cfg.summary_path = f.out;
    validate(cfg);

    std::string csv;
    std::string summary;
    std::optional<std::string> svg;
    switch (cfg.kind) {
    case ExperimentKind::mean_ratio:
    case ExperimentKind::cluster_lower_bound: {
        const TrialSummary s = cfg.kind == ExperimentKind::mean_ratio ? estimate_mean_component_ratio(cfg)
                                                                      : cluster_lower_bound_experiment(cfg);
        csv = trials_to_csv(s);
        summary = summary_to_json(s, cfg);
        if (!cfg.svg_path.empty() && s.witness_trial >= 0) {
            const auto seed = trial_seed(cfg.seed, static_cast<std::size_t>(s.witness_trial));
            const MonicPolynomial p = cfg.kind == ExperimentKind::mean_ratio
                                          ? random_polynomial(cfg.set, cfg.degree, seed)
                                          : cluster_construction(cfg.cluster_center, cfg.set,
                                                                 cfg.cluster_n1.value_or(cfg.degree / 2),
                                                                 cfg.degree - cfg.cluster_n1.value_or(cfg.degree / 2), seed);
            svg = render_svg(p, std::min(cfg.resolution, 1024), 1.0);
        }
        break;
    }
    case ExperimentKind::fekete_lemniscate: {
        const auto r = fekete_lemniscate_experiment(cfg.set, cfg.degree, cfg.resolution);
        summary = fekete_to_json(r);
        if (!cfg.svg_path.empty()) svg = render_svg(r.poly, std::min(cfg.resolution, 1024), 1.0);
        break;
    }
    case ExperimentKind::capacity_sweep:
        csv = capacity_sweep_to_csv(capacity_sweep(cfg.set, cfg.degree));
        break;
    case ExperimentKind::ehp_census:
        csv = ehp_census_to_csv(ehp_census(cfg.n_min, cfg.n_max));
        break;
    }

    if (!csv.empty()) {
        if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv);
        else if (cfg.summary_path.empty() || summary.empty()) out << csv;
    }
    if (!summary.empty()) {
        if (!cfg.summary_path.empty()) write_file(cfg.summary_path, summary);
        else out << summary;
    }
    if (svg) write_file(cfg.svg_path, *svg);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Polynomial lemniscate toolkit", "lemni"};
    app.require_subcommand(1);
    Flags f;

    const std::vector<std::string> families{"roots-of-unity", "chebyshev", "ehp", "ehp-scaled",
                                            "period-m", "lemniscate-power", "faber", "cluster"};
    auto* construct = app.add_subcommand("construct", "Build a named polynomial family, written as polynomial JSON");
    construct->add_option("family", f.family, "Family name")->required()->check(CLI::IsMember(families));
    construct->add_option("--n", f.n, "Degree, power or Faber index bound");
    construct->add_option("--sign", f.sign,
                          "plus (z^n + 1) or minus (z^n - 1); defaults: roots-of-unity minus, lemniscate-power plus")
        ->check(CLI::IsMember({"plus", "minus"}));
    construct->add_option("--half-width", f.half_width, "chebyshev: half width h of [-h, h]")->capture_default_str();
    construct->add_option("--generating", f.generating, "period-m / lemniscate-power: coefficients, JSON or path, lowest first");
    construct->add_option("--psi", f.psi, "faber: [a_0, a_1, ...] of psi(w) = w + a_0 + a_1/w + ...");
    construct->add_option("--set", f.set, "cluster: arc as compact set JSON or path");
    construct->add_option("--center", f.center, "cluster: point carrying n1 zeros as [re, im]")->capture_default_str();
    construct->add_option("--n1", f.n1, "cluster: zeros at the center (default n/2)");
    construct->add_option("--seed", f.seed, "cluster: random seed")->capture_default_str();
    construct->add_option("--out", f.out, "Output path (default stdout)");

    auto* components = app.add_subcommand("components", "Count connected components of {|p| < level}");
    components->add_option("--poly", f.poly, "Polynomial JSON path")->required();
    components->add_option("--method", f.method, "critical, grid or both")
        ->check(CLI::IsMember({"critical", "grid", "both"}))
        ->capture_default_str();
    components->add_option("--resolution", f.resolution, "Initial grid resolution")->capture_default_str();
    components->add_option("--level", f.level, "Level r > 0")->capture_default_str();
    components->add_option("--format", f.format, "csv or json (default plain text)")->check(CLI::IsMember({"csv", "json"}));
    components->add_option("--out", f.out, "Output path (default stdout)");

    auto* capacity = app.add_subcommand("capacity", "Estimate logarithmic capacity from Leja points");
    capacity->add_option("--set", f.set, "Compact set JSON or path")->required();
    capacity->add_option("--n", f.n, "Number of Leja points (default 64)");
    capacity->add_option("--format", f.format, "json (default plain number)")->check(CLI::IsMember({"json"}));
    capacity->add_option("--out", f.out, "Output path (default stdout)");

    auto* fekete = app.add_subcommand("fekete", "Lemniscate of the Leja-point polynomial of a set");
    fekete->add_option("--set", f.set, "Compact set JSON or path")->required();
    fekete->add_option("--n", f.n, "Degree")->required();
    fekete->add_option("--resolution", f.resolution, "Grid resolution")->capture_default_str();
    fekete->add_option("--level", f.level, "Level used for the svg picture")->capture_default_str();
    fekete->add_option("--format", f.format, "json (default) or svg")->check(CLI::IsMember({"json", "svg"}));
    fekete->add_option("--out", f.out, "Output path (default stdout)");

    auto* sample = app.add_subcommand("sample", "Draw i.i.d. equilibrium-measure samples as CSV");
    sample->add_option("--set", f.set, "Compact set JSON or path")->required();
    sample->add_option("--n", f.n, "Number of samples")->required();
    sample->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    sample->add_option("--format", f.format, "csv")->check(CLI::IsMember({"csv"}));
    sample->add_option("--out", f.out, "Output path (default stdout)");

    auto* experiment = app.add_subcommand("experiment", "Run an experiment from a config JSON and/or flags");
    experiment->add_option("--config", f.config, "Config JSON path");
    experiment->add_option("--set", f.set, "Compact set JSON or path");
    experiment->add_option("--degree", f.degree, "Polynomial degree");
    experiment->add_option("--n", f.n, "Alias of --degree");
    experiment->add_option("--trials", f.trials, "Number of trials");
    experiment->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    experiment->add_option("--resolution", f.resolution, "Grid resolution")->capture_default_str();
    experiment->add_option("--n-min", f.n_min, "ehp_census: smallest n")->capture_default_str();
    experiment->add_option("--n-max", f.n_max, "ehp_census: largest n")->capture_default_str();
    experiment->add_option("--out", f.out, "Summary output path (overrides the config)");

    auto* plot = app.add_subcommand("plot", "Render {|p| = level} as SVG");
    plot->add_option("--poly", f.poly, "Polynomial JSON path")->required();
    plot->add_option("--resolution", f.resolution, "Grid resolution")->capture_default_str();
    plot->add_option("--level", f.level, "Level r > 0")->capture_default_str();
    plot->add_option("--format", f.format, "svg")->check(CLI::IsMember({"svg"}));
    plot->add_option("--out", f.out, "Output path (default stdout)");

    auto* census = app.add_subcommand("ehp-census", "Component counts and c_n of E_n over a range of n, as CSV");
    census->add_option("--n-min", f.n_min, "Smallest n (>= 3)")->capture_default_str();
    census->add_option("--n-max", f.n_max, "Largest n (<= 100)")->capture_default_str();
    census->add_option("--format", f.format, "csv")->check(CLI::IsMember({"csv"}));
    census->add_option("--out", f.out, "Output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (construct->parsed()) do_construct(f, out);
        else if (components->parsed()) do_components(f, out);
        else if (capacity->parsed()) do_capacity(f, out);
        else if (fekete->parsed()) do_fekete(f, out);
        else if (sample->parsed()) do_sample(f, out);
        else if (experiment->parsed()) do_experiment(f, *experiment, out);
        else if (plot->parsed()) do_plot(f, out);
        else if (census->parsed()) do_census(f, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FileError& e) {
        err << "file error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const FormatError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}

}  // namespace lemni::cli
