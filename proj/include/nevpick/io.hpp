#pragma once

// JSON and CSV formats. All coefficient arrays are in descending powers.
//
// Problem:  {"nodes": ["inf" | {"re": r, "im": i}, ...],
//            "values": [{"re": r, "im": i}, ...],
//            "sigma_roots": [{"re": r, "im": i}, ...]   or   "sigma_coeffs": [1, s1, ..., sn]}
//
// System:   {"sigma_roots" | "sigma_coeffs", "a_roots" | "a_coeffs", "order": n,
//            optional "sigma_hat_roots" | "sigma_hat_coeffs", optional "bank_poles": [complex, ...]}

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "nevpick/analysis.hpp"
#include "nevpick/ingestion.hpp"

namespace nevpick::io {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
/// {"re", "im"} object, or a bare number for a real value.
Complex complex_from_json(const Json& j);
Json complex_array(const CVec& v);
Json complex_array(const std::vector<Complex>& v);
Json vector_to_json(const Vec& v);
Json matrix_to_json(const Mat& m);

/// Throws InvalidInput on schema errors (missing keys, wrong types, non-monic sigma).
InterpolationProblem problem_from_json(const Json& j);
Json problem_to_json(const InterpolationProblem& problem);

/// Polynomial from "<prefix>_roots" or "<prefix>_coeffs"; nullopt when neither is present.
std::optional<MonicPolynomial> polynomial_from_json(const Json& j, const std::string& prefix);

/// True system description for simulate / detect-degree.
MonteCarloConfig system_from_json(const Json& j);

Json options_to_json(const ContinuationOptions& opts);
Json solution_to_json(const Solution& solution);
Json degree_report_to_json(const DegreeReport& report);

/// Header "nu,p_1..p_n,pole_re_1,pole_im_1,...,corrector_iters"; poles sorted by argument.
void write_trajectory_csv(std::ostream& os, const Solution& solution);

/// Reads a whole file; throws InvalidInput when unreadable or not JSON.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// One "# key: value" line per config entry, for CSV reproducibility headers.
std::string csv_config_header(const Json& config);

}  // namespace nevpick::io
