#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lemni/compact_set.hpp"
#include "lemni/constructions.hpp"
#include "lemni/experiments.hpp"
#include "lemni/lemniscate.hpp"
#include "lemni/polynomial.hpp"

namespace lemni {

/// Malformed or schema-violating JSON input.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"zeros": [[re, im], ...]}, zeros sorted by (re, im) on output.
std::string polynomial_to_json(const MonicPolynomial& p);
/// Accepts zeros in any order.
MonicPolynomial polynomial_from_json(const std::string& text);

/// {"coeffs": [[re, im], ...]} lowest degree first.
std::string coefficients_to_json(const CoefficientVector& c);

/// {"variant": "disk", "center": [x, y], "radius": r}
/// {"variant": "circle", "center": [x, y], "radius": r}
/// {"variant": "segment", "a": [x, y], "b": [x, y]}
/// {"variant": "jordan_curve", "points": [[x, y], ...], "closed": true}
/// {"variant": "lemniscate_preimage", "generating": [[re, im], ...], "radius": r}
/// {"variant": "period_m", "generating": [[re, im], ...]}
/// {"variant": "union", "parts": [ ... ]}
/// Generating polynomials are coefficient lists, lowest degree first.
std::string compact_set_to_json(const CompactSetModel& k);
CompactSetModel compact_set_from_json(const std::string& text);

/// Keys: kind, set, degree, trials, seed, resolution, cluster_center,
/// cluster_n1, n_min, n_max, csv, summary, svg. Missing keys keep defaults.
ExperimentConfig config_from_json(const std::string& text);

/// One row per trial: trial,count,ratio,margin,ambiguous,method,isolated_fraction
std::string trials_to_csv(const TrialSummary& s);
std::string summary_to_json(const TrialSummary& s, const ExperimentConfig& cfg);

std::string ehp_census_to_csv(const std::vector<EhpRow>& rows);
std::string capacity_sweep_to_csv(const std::vector<CapacityRow>& rows);
std::string fekete_to_json(const FeketeReport& r);
std::string report_to_json(const ComponentReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lemni
