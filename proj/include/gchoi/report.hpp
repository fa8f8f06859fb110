#pragma once

// Input parsing and report assembly shared by the C API and the CLI.
//
// Input: {"n": 3, "A": [[...], ...]} with an optional Hermitian "X" given as
// nested [re, im] pairs. Reports are JSON with fields input, form,
// conditions, summary, violation_certificate?, ppt_witness?, config, version.

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gchoi/criteria.hpp"
#include "gchoi/search.hpp"

namespace gchoi {

inline constexpr const char* kVersion = "0.1.0";

struct InputDocument {
  CoefficientMatrix a;
  std::optional<HermitianMatrix> x;
};

InputDocument parse_input(std::string_view json_text);
InputDocument load_input(const std::string& path);

struct RunOptions {
  SearchConfig search;
  /// Margin band for the analytic conditions.
  double tolerance = 1e-9;
};

void validate(const RunOptions& opt);

struct Report {
  std::string json;  // pretty-printed, trailing newline
  std::string text;
  SummaryFlags summary;
  std::optional<ViolationCertificate> violation;
  std::optional<PptWitnessCertificate> witness;
};

/// Conditions, then a violation search unless non-positivity is already
/// proven, then the PPT probe if positivity is not refuted and
/// decomposability is not proven. InternalError on contradictory flags.
Report run_analyze(const InputDocument& in, const RunOptions& opt);
Report run_search(const InputDocument& in, const RunOptions& opt);
Report run_probe(const InputDocument& in, const RunOptions& opt);

/// name: choi | example5 | boundary (params a1 a2 a3) | kye-boundary
/// (params c1 c2 c3, default 1 1 1). Text output starts with the headline.
Report run_reproduce(std::string_view name, std::span<const double> params, const RunOptions& opt);

}  // namespace gchoi
