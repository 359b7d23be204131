#include "lemni/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lemni {

namespace {

using nlohmann::ordered_json;

ordered_json point_json(Point z)
{
    return ordered_json::array({z.real(), z.imag()});
}

Point point_from(const ordered_json& j, const char* what)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError(std::string(what) + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point> points_from(const ordered_json& j, const char* what)
{
    if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of [re, im] pairs");
    std::vector<Point> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(point_from(e, what));
    return out;
}

ordered_json points_json(std::span<const Point> zs)
{
    ordered_json a = ordered_json::array();
    for (const auto& z : zs) a.push_back(point_json(z));
    return a;
}

const ordered_json& require(const ordered_json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

double number(const ordered_json& j, const char* key)
{
    const auto& v = require(j, key);
    if (!v.is_number()) throw FormatError(std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

ordered_json parse(const std::string& text)
{
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

// Non-finite numbers become null in JSON.
ordered_json num(double v)
{
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json set_json(const CompactSetModel& k)
{
    ordered_json j;
    j["variant"] = k.variant_name();
    if (const auto* d = std::get_if<DiskSet>(&k.shape)) {
        j["center"] = point_json(d->center);
        j["radius"] = d->radius;
    } else if (const auto* c = std::get_if<CircleSet>(&k.shape)) {
        j["center"] = point_json(c->center);
        j["radius"] = c->radius;
    } else if (const auto* s = std::get_if<SegmentSet>(&k.shape)) {
        j["a"] = point_json(s->a);
        j["b"] = point_json(s->b);
    } else if (const auto* jc = std::get_if<JordanCurveSet>(&k.shape)) {
        j["points"] = points_json(jc->points);
        j["closed"] = jc->closed;
    } else if (const auto* l = std::get_if<LemniscatePreimageSet>(&k.shape)) {
        j["generating"] = points_json(l->generating.coeffs);
        j["radius"] = l->radius;
    } else if (const auto* pm = std::get_if<PeriodMSet>(&k.shape)) {
        j["generating"] = points_json(pm->generating.coeffs);
    } else if (const auto* u = std::get_if<UnionSet>(&k.shape)) {
        j["parts"] = ordered_json::array();
        for (const auto& part : u->parts) j["parts"].push_back(set_json(part));
    }
    return j;
}

CompactSetModel set_from(const ordered_json& j)
{
    const auto& v = require(j, "variant");
    if (!v.is_string()) throw FormatError("\"variant\" must be a string");
    const std::string name = v.get<std::string>();
    CompactSetModel k;
    if (name == "disk") {
        k.shape = DiskSet{point_from(require(j, "center"), "center"), number(j, "radius")};
    } else if (name == "circle") {
        k.shape = CircleSet{point_from(require(j, "center"), "center"), number(j, "radius")};
    } else if (name == "segment") {
        k.shape = SegmentSet{point_from(require(j, "a"), "a"), point_from(require(j, "b"), "b")};
    } else if (name == "jordan_curve") {
        bool closed = true;
        if (j.contains("closed")) {
            if (!j["closed"].is_boolean()) throw FormatError("\"closed\" must be a boolean");
            closed = j["closed"].get<bool>();
        }
        k.shape = JordanCurveSet{points_from(require(j, "points"), "points"), closed};
    } else if (name == "lemniscate_preimage") {
        const double radius = j.contains("radius") ? number(j, "radius") : 1.0;
        k.shape = LemniscatePreimageSet{CoefficientVector{points_from(require(j, "generating"), "generating")}, radius};
    } else if (name == "period_m") {
        k.shape = PeriodMSet{CoefficientVector{points_from(require(j, "generating"), "generating")}};
    } else if (name == "union") {
        const auto& parts = require(j, "parts");
        if (!parts.is_array()) throw FormatError("\"parts\" must be an array");
        UnionSet u;
        for (const auto& p : parts) u.parts.push_back(set_from(p));
        k.shape = std::move(u);
    } else {
        throw FormatError("unknown compact set variant \"" + name + "\"");
    }
    try {
        validate(k);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("invalid compact set: ") + e.what());
    }
    return k;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string polynomial_to_json(const MonicPolynomial& p)
{
    std::vector<Point> zs(p.zeros().begin(), p.zeros().end());
    std::sort(zs.begin(), zs.end(), [](Point a, Point b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    ordered_json j;
    j["zeros"] = points_json(zs);
    return j.dump() + "\n";
}

MonicPolynomial polynomial_from_json(const std::string& text)
{
    const auto j = parse(text);
    auto zs = points_from(require(j, "zeros"), "zeros");
    try {
        return MonicPolynomial::from_zeros(std::move(zs));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("invalid polynomial: ") + e.what());
    }
}

std::string coefficients_to_json(const CoefficientVector& c)
{
    ordered_json j;
    j["coeffs"] = points_json(c.coeffs);
    return j.dump() + "\n";
}

std::string compact_set_to_json(const CompactSetModel& k)
{
    return set_json(k).dump() + "\n";
}

CompactSetModel compact_set_from_json(const std::string& text)
{
    return set_from(parse(text));
}

ExperimentConfig config_from_json(const std::string& text)
{
    const auto j = parse(text);
    if (!j.is_object()) throw FormatError("config must be a JSON object");
    ExperimentConfig cfg;
    auto integer = [&](const char* key, int& out) {
        if (!j.contains(key)) return;
        if (!j[key].is_number_integer()) throw FormatError(std::string("\"") + key + "\" must be an integer");
        out = j[key].get<int>();
    };
    auto text_field = [&](const char* key, std::string& out) {
        if (!j.contains(key)) return;
        if (!j[key].is_string()) throw FormatError(std::string("\"") + key + "\" must be a string");
        out = j[key].get<std::string>();
    };
    if (j.contains("kind")) {
        if (!j["kind"].is_string()) throw FormatError("\"kind\" must be a string");
        try {
            cfg.kind = experiment_kind_from_string(j["kind"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    }
    if (j.contains("set")) cfg.set = set_from(j["set"]);
    integer("degree", cfg.degree);
    integer("trials", cfg.trials);
    integer("resolution", cfg.resolution);
    integer("n_min", cfg.n_min);
    integer("n_max", cfg.n_max);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) throw FormatError("\"seed\" must be an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("cluster_center")) cfg.cluster_center = point_from(j["cluster_center"], "cluster_center");
    if (j.contains("cluster_n1")) {
        int n1 = 0;
        integer("cluster_n1", n1);
        cfg.cluster_n1 = n1;
    }
    text_field("csv", cfg.csv_path);
    text_field("summary", cfg.summary_path);
    text_field("svg", cfg.svg_path);
    return cfg;
}

std::string trials_to_csv(const TrialSummary& s)
{
    std::ostringstream os;
    os << "trial,count,ratio,margin,ambiguous,method,isolated_fraction\n";
    for (const auto& t : s.trials) {
        os << t.trial << ',' << t.count << ',' << fmt(t.ratio) << ',' << fmt(t.margin) << ',' << (t.ambiguous ? 1 : 0)
           << ',' << to_string(t.method) << ',' << fmt(t.isolated_fraction) << '\n';
    }
    return os.str();
}

std::string summary_to_json(const TrialSummary& s, const ExperimentConfig& cfg)
{
    ordered_json j;
    j["kind"] = to_string(cfg.kind);
    j["set"] = set_json(cfg.set);
    j["degree"] = s.degree;
    j["trials"] = s.trials.size();
    j["seed"] = cfg.seed;
    j["used"] = s.used;
    j["ambiguous"] = s.ambiguous;
    j["mean_ratio"] = num(s.mean);
    j["std_error"] = num(s.std_error);
    if (s.witness_trial >= 0) {
        j["witness"] = {{"trial", s.witness_trial}, {"ratio", s.witness_ratio}, {"grid_count", s.witness_grid_count}};
    } else {
        j["witness"] = nullptr;
    }
    if (s.small_lemniscate_check) j["small_lemniscate_check"] = *s.small_lemniscate_check;
    return j.dump(2) + "\n";
}

std::string ehp_census_to_csv(const std::vector<EhpRow>& rows)
{
    std::ostringstream os;
    os << "n,count,c_n,delta_n,margin,ambiguous,scaled_count,ok\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.count << ',' << fmt(r.c_n) << ',' << fmt(r.delta_n) << ',' << fmt(r.margin) << ','
           << (r.ambiguous ? 1 : 0) << ',' << r.scaled_count << ',' << (r.ok ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string capacity_sweep_to_csv(const std::vector<CapacityRow>& rows)
{
    std::ostringstream os;
    os << "n,capacity,transfinite_diameter\n";
    for (const auto& r : rows) os << r.n << ',' << fmt(r.capacity) << ',' << fmt(r.transfinite_diameter) << '\n';
    return os.str();
}

std::string report_to_json(const ComponentReport& r)
{
    ordered_json j;
    j["degree"] = r.degree;
    j["count"] = r.count;
    j["method"] = to_string(r.method);
    j["margin"] = num(r.margin);
    j["ambiguous"] = r.ambiguous;
    j["certified"] = r.certified;
    if (r.resolution > 0) j["resolution"] = r.resolution;
    if (r.per_zero_isolated) {
        const auto& iso = *r.per_zero_isolated;
        j["isolated_zeros"] = std::count(iso.begin(), iso.end(), true);
    }
    return j.dump(2) + "\n";
}

std::string fekete_to_json(const FeketeReport& r)
{
    ordered_json j;
    j["degree"] = r.poly.degree();
    j["count"] = r.report.count;
    j["method"] = to_string(r.report.method);
    j["margin"] = num(r.report.margin);
    j["capacity"] = r.capacity;
    j["log_derivative_bound"] = r.log_derivative_bound;
    j["min_log_derivative"] = num(r.log_derivative.empty() ? 0.0 : *std::min_element(r.log_derivative.begin(), r.log_derivative.end()));
    j["min_spacing"] = r.min_spacing;
    j["spacing_bound"] = r.spacing_bound;
    j["isolated_zeros"] = std::count(r.isolated.begin(), r.isolated.end(), true);
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write " + path);
    out << content;
    if (!out) throw FileError("write failed for " + path);
}

}  // namespace lemni
