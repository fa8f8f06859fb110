#include "gchoi/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gchoi/errors.hpp"

namespace gchoi {

using Json = nlohmann::ordered_json;

namespace {

double finite_number(const Json& v, const char* what) {
  if (!v.is_number()) throw InvalidInput(std::string(what) + " entries must be numbers");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput(std::string(what) + " entries must be finite");
  return x;
}

}  // namespace

InputDocument parse_input(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text.begin(), json_text.end());
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("input must be a JSON object");
  if (!doc.contains("A") || !doc["A"].is_array()) throw InvalidInput("missing array field \"A\"");
  const Json& rows = doc["A"];
  const std::size_t n = rows.size();
  if (doc.contains("n")) {
    const Json& jn = doc["n"];
    if (!jn.is_number_integer() || jn.get<long long>() != static_cast<long long>(n)) {
      throw InvalidInput("field \"n\" must be an integer equal to the number of rows of A");
    }
  } else {
    throw InvalidInput("missing integer field \"n\"");
  }
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != n) throw InvalidInput("A must be an n x n array of numbers");
    for (const Json& v : row) flat.push_back(finite_number(v, "A"));
  }
  InputDocument in{CoefficientMatrix(n, flat), std::nullopt};

  if (doc.contains("X")) {
    const Json& xr = doc["X"];
    if (!xr.is_array() || xr.size() != n) throw InvalidInput("X must be an n x n array of [re, im] pairs");
    std::vector<Complex> xs;
    xs.reserve(n * n);
    for (const Json& row : xr) {
      if (!row.is_array() || row.size() != n) throw InvalidInput("X must be an n x n array of [re, im] pairs");
      for (const Json& z : row) {
        if (!z.is_array() || z.size() != 2) throw InvalidInput("X entries must be [re, im] pairs");
        xs.emplace_back(finite_number(z[0], "X"), finite_number(z[1], "X"));
      }
    }
    in.x = HermitianMatrix::from_entries(n, xs);
  }
  return in;
}

InputDocument load_input(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw InvalidInput("cannot read " + path);
  return parse_input(ss.str());
}

void validate(const RunOptions& opt) {
  validate(opt.search);
  if (!(opt.tolerance > 0.0) || !std::isfinite(opt.tolerance)) throw InvalidInput("tolerance must be positive");
}

namespace {

std::string num(double x, int digits = 9) {
  if (std::isnan(x)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string short_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string vec_text(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + short_num(v[k]);
  return s + ")";
}

Json margin_json(double m) { return std::isnan(m) ? Json(nullptr) : Json(m); }

Json matrix_json(const CoefficientMatrix& a) {
  Json rows = Json::array();
  for (const auto& r : a.rows()) rows.push_back(r);
  return rows;
}

Json hermitian_json(const HermitianMatrix& x) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < x.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < x.dim(); ++j) row.push_back({x(i, j).real(), x(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Json form_json(const FormClass& f) {
  Json matched = Json::array();
  for (FormTag t : f.matched) matched.push_back(to_string(t));
  Json params = Json::object();
  for (const auto& [k, v] : f.parameters) params[k] = v;
  return {{"tag", to_string(f.tag)}, {"matched", matched}, {"parameters", params}};
}

Json violation_json(const ViolationCertificate& c) {
  return {{"p", c.p}, {"q", c.q}, {"gap", c.gap}, {"residual_check", c.residual_check}};
}

Json witness_json(const PptWitnessCertificate& w) {
  return {{"alpha", w.state.alpha},
          {"r", w.state.r},
          {"trace_value", w.trace_value},
          {"normalized_value", w.normalized_value},
          {"rho_min_eigenvalue", w.rho_min_eigenvalue},
          {"rho_pt_min_eigenvalue", w.rho_pt_min_eigenvalue}};
}

Json config_json(const RunOptions& opt) {
  return {{"seed", opt.search.seed},
          {"starts", opt.search.starts},
          {"max_iterations", opt.search.max_iterations},
          {"step_tolerance", opt.search.step_tolerance},
          {"violation_tolerance", opt.search.violation_tolerance},
          {"tolerance", opt.tolerance}};
}

// Everything a report needs before serialisation.
struct Draft {
  const CoefficientMatrix* a = nullptr;
  const HermitianMatrix* x = nullptr;
  FormClass form;
  std::vector<NamedVerdict> conditions;
  SummaryFlags summary;
  std::optional<ViolationCertificate> violation;
  std::optional<PptWitnessCertificate> witness;
  std::optional<CounterexampleCheck> x_check;
  Json extra = Json::object();  // appended after the fixed fields
  std::vector<std::string> headline;
  std::vector<std::string> notes;
};

Json build_json(const Draft& d, const RunOptions& opt) {
  Json j;
  Json input = {{"n", d.a->n()}, {"A", matrix_json(*d.a)}};
  if (d.x) input["X"] = hermitian_json(*d.x);
  j["input"] = input;
  j["form"] = form_json(d.form);
  Json conds = Json::array();
  for (const auto& c : d.conditions) {
    conds.push_back({{"name", c.name},
                     {"status", to_string(c.verdict.status)},
                     {"margin", margin_json(c.verdict.margin)},
                     {"detail", c.verdict.detail}});
  }
  j["conditions"] = conds;
  j["summary"] = d.summary.names();
  if (d.x_check) {
    j["input_check"] = {{"input_psd", d.x_check->input_psd},
                        {"input_min_eigenvalue", d.x_check->input_min_eigenvalue},
                        {"image_psd", d.x_check->psd},
                        {"image_min_eigenvalue", d.x_check->image_min_eigenvalue},
                        {"image_determinant", d.x_check->det}};
  }
  if (d.violation) j["violation_certificate"] = violation_json(*d.violation);
  if (d.witness) j["ppt_witness"] = witness_json(*d.witness);
  for (auto it = d.extra.begin(); it != d.extra.end(); ++it) j[it.key()] = it.value();
  j["config"] = config_json(opt);
  j["version"] = kVersion;
  return j;
}

std::string build_text(const Draft& d, const RunOptions& opt) {
  std::ostringstream out;
  for (const auto& h : d.headline) out << h << '\n';
  if (!d.headline.empty()) out << '\n';

  const CoefficientMatrix& a = *d.a;
  out << "A (n = " << a.n() << "):\n";
  for (const auto& row : a.rows()) {
    out << "  ";
    for (double v : row) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%12.6g", v);
      out << buf;
    }
    out << '\n';
  }
  out << "form: " << to_string(d.form.tag);
  if (d.form.matched.size() > 1) {
    out << " (matches";
    for (FormTag t : d.form.matched) out << ' ' << to_string(t);
    out << ')';
  }
  out << "\n";

  if (d.x_check) {
    out << "\nX: " << (d.x_check->input_psd ? "PSD" : "not PSD") << " (min eigenvalue "
        << short_num(d.x_check->input_min_eigenvalue) << ")\n";
    out << "Phi_A(X): " << (d.x_check->psd ? "PSD" : "not PSD") << " (min eigenvalue "
        << short_num(d.x_check->image_min_eigenvalue) << "), det = " << num(d.x_check->det) << "\n";
  }

  if (!d.conditions.empty()) {
    out << "\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s %-15s %16s  %s\n", "condition", "status", "margin", "detail");
    out << buf;
    for (const auto& c : d.conditions) {
      std::snprintf(buf, sizeof buf, "%-28s %-15s %16s  ", c.name.c_str(), to_string(c.verdict.status),
                    num(c.verdict.margin).c_str());
      out << buf << c.verdict.detail << '\n';
    }
  }

  out << "\nsummary:";
  for (const auto& s : d.summary.names()) out << ' ' << s;
  out << '\n';

  if (d.violation) {
    out << "\nviolation certificate: gap = " << short_num(d.violation->gap)
        << ", min eig Phi_A(q q^T) = " << short_num(d.violation->residual_check) << "\n"
        << "  p = " << vec_text(d.violation->p) << "\n"
        << "  q = " << vec_text(d.violation->q) << "\n";
  }
  if (d.witness) {
    out << "\nPPT witness: Tr(rho C) = " << short_num(d.witness->trace_value)
        << ", normalized = " << num(d.witness->normalized_value) << "\n"
        << "  min eig rho = " << short_num(d.witness->rho_min_eigenvalue)
        << ", min eig rho^Gamma = " << short_num(d.witness->rho_pt_min_eigenvalue) << "\n";
    out << "  alpha =";
    for (const auto& row : d.witness->state.alpha) out << ' ' << vec_text(row);
    out << "\n";
  }
  for (const auto& n : d.notes) out << n << '\n';

  out << "\nseed " << opt.search.seed << ", starts " << opt.search.starts << ", tolerance "
      << short_num(opt.tolerance) << ", version " << kVersion << '\n';
  return out.str();
}

Report finish(const Draft& d, const RunOptions& opt) {
  Report r;
  r.json = build_json(d, opt).dump(2) + "\n";
  r.text = build_text(d, opt);
  r.summary = d.summary;
  r.violation = d.violation;
  r.witness = d.witness;
  return r;
}

CriteriaOptions criteria_options(const RunOptions& opt) {
  CriteriaOptions c;
  c.margin_band = opt.tolerance;
  return c;
}

Draft analyze_draft(const CoefficientMatrix& a, const HermitianMatrix* x, const RunOptions& opt) {
  validate(opt);
  Draft d;
  d.a = &a;
  d.x = x;
  const ConditionReport rep = full_report(a, criteria_options(opt));
  d.form = rep.form;
  d.conditions = rep.conditions();
  d.summary = rep.summary;
  if (rep.scaling_certificate) {
    const auto& s = *rep.scaling_certificate;
    d.extra["scaling_certificate"] = {{"a", s.params.a}, {"b", s.params.b}, {"c", s.params.c}, {"v", s.v.p()}};
  }
  if (x) d.x_check = verify_counterexample(a, *x);

  if (!d.summary.has(SummaryFlag::not_positive_proven)) {
    d.violation = find_positivity_violation(a, opt.search);
    if (d.violation) {
      if (d.summary.has(SummaryFlag::positive_proven)) {
        throw InternalError("violation certificate found for a map proven positive (gap " +
                            short_num(d.violation->gap) + ")");
      }
      d.summary.set(SummaryFlag::not_positive_proven);
    }
  }
  if (!d.summary.has(SummaryFlag::not_positive_proven) && !d.summary.has(SummaryFlag::decomposable_proven)) {
    d.witness = indecomposability_probe(a, opt.search);
    if (d.witness) d.summary.set(SummaryFlag::indecomposable_proven);
  }
  d.summary.finalize();
  if (const std::string clash = d.summary.conflict(); !clash.empty()) throw InternalError(clash);
  return d;
}

Draft search_only_draft(const InputDocument& in, const RunOptions& opt) {
  validate(opt);
  Draft d;
  d.a = &in.a;
  d.x = in.x ? &*in.x : nullptr;
  d.form = classify_form(in.a);
  if (d.x) d.x_check = verify_counterexample(in.a, *d.x);
  return d;
}

}  // namespace

Report run_analyze(const InputDocument& in, const RunOptions& opt) {
  return finish(analyze_draft(in.a, in.x ? &*in.x : nullptr, opt), opt);
}

Report run_search(const InputDocument& in, const RunOptions& opt) {
  Draft d = search_only_draft(in, opt);
  const GapMinimum best = minimize_positivity_gap(in.a, opt.search);
  if (best.gap < -opt.search.violation_tolerance) d.violation = find_positivity_violation(in.a, opt.search);
  if (d.violation) d.summary.set(SummaryFlag::not_positive_proven);
  d.summary.finalize();
  d.extra["search"] = {{"kind", "positivity_violation"},
                       {"outcome", d.violation ? "certificate" : "inconclusive"},
                       {"best_gap", best.gap},
                       {"best_start", best.start_index}};
  d.notes.push_back(std::string("\nsearch: ") + (d.violation ? "certificate" : "inconclusive") +
                    " (best gap " + short_num(best.gap) + ")");
  return finish(d, opt);
}

Report run_probe(const InputDocument& in, const RunOptions& opt) {
  Draft d = search_only_draft(in, opt);
  d.witness = indecomposability_probe(in.a, opt.search);
  if (d.witness) d.summary.set(SummaryFlag::indecomposable_proven);
  d.summary.finalize();
  d.extra["search"] = {{"kind", "ppt_witness"}, {"outcome", d.witness ? "certificate" : "inconclusive"}};
  d.notes.push_back(std::string("\nprobe: ") + (d.witness ? "certificate" : "inconclusive"));
  return finish(d, opt);
}

namespace {

void require_params(std::string_view name, std::span<const double> params, std::size_t count) {
  if (params.size() != count) {
    throw InvalidInput("reproduce " + std::string(name) + " takes " + std::to_string(count) + " parameters, got " +
                       std::to_string(params.size()));
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw InvalidInput("parameters must be finite");
  }
}

Report reproduce_choi(const RunOptions& opt) {
  const CoefficientMatrix a(3, std::vector<double>{1, 0, 1, 1, 1, 0, 0, 1, 1});
  Draft d = analyze_draft(a, nullptr, opt);

  // Fixed PPT state with Tr(rho C) = -9/4.
  StructuredPptState s;
  s.n = 3;
  s.alpha = {{1.0, 0.25, 4.0}, {4.0, 1.0, 0.25}, {0.25, 4.0, 1.0}};
  s.r = {{0.0, 1.0, 1.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}};
  const HermitianMatrix rho = assemble_ppt_state(s);
  const double t = ppt_trace_value(a, s);
  const PsdResult rho_psd = is_psd(rho, 1e-12);
  const PsdResult pt_psd = is_psd(partial_transpose(rho, 3), 1e-12);

  d.headline.push_back("Tr(rho C) = " + num(t) + " (normalized " + num(t / rho.trace()) + ")");
  d.headline.push_back(std::string("rho ") + (rho_psd.psd ? "PSD" : "not PSD") + ", rho^Gamma " +
                       (pt_psd.psd ? "PSD" : "not PSD"));
  if (d.witness) d.headline.push_back("probe normalized value = " + num(d.witness->normalized_value));
  d.extra["reproduction"] = {{"name", "choi"},
                             {"explicit_state", {{"alpha", s.alpha}, {"r", s.r}}},
                             {"trace_value", t},
                             {"normalized_value", t / rho.trace()},
                             {"rho_psd", rho_psd.psd},
                             {"rho_pt_psd", pt_psd.psd},
                             {"probe_normalized_value", d.witness ? Json(d.witness->normalized_value) : Json()}};
  return finish(d, opt);
}

Report reproduce_example5(const RunOptions& opt) {
  const CoefficientMatrix a(3, std::vector<double>{0.5, 1, 0, 0, 1, 1, 1, 0, 2});
  const double hi = std::cbrt(4.0), mid = std::pow(2.0, 1.0 / 6.0), lo = 1.0 / std::cbrt(2.0);
  const std::vector<double> xs{hi, mid, mid, mid, lo, lo, mid, lo, lo};
  const HermitianMatrix x = HermitianMatrix::from_real(3, xs);
  Draft d = analyze_draft(a, &x, opt);
  const CounterexampleCheck& c = *d.x_check;
  d.headline.push_back("det = " + num(c.det));
  d.headline.push_back(std::string("X ") + (c.input_psd ? "PSD" : "not PSD") + ", Phi_A(X) " +
                       (c.psd ? "PSD" : "not PSD"));
  d.extra["reproduction"] = {{"name", "example5"},
                             {"det", c.det},
                             {"input_psd", c.input_psd},
                             {"image_psd", c.psd},
                             {"violation_found", d.violation.has_value()}};
  Report r = finish(d, opt);
  return r;
}

CoefficientMatrix boundary_matrix(std::span<const double> av) {
  for (double v : av) {
    if (!(v > 0.0)) throw InvalidInput("boundary parameters a1 a2 a3 must be positive");
  }
  const double astar = std::cbrt(av[0] * av[1] * av[2]);
  const double b = 2.0 - astar;
  if (b < -1e-12) throw InvalidInput("boundary needs (a1 a2 a3)^(1/3) <= 2 so that b = 2 - a* >= 0");
  const double bb = std::max(b, 0.0);
  return CoefficientMatrix(3, std::vector<double>{av[0], bb, 0.0, 0.0, av[1], bb, bb, 0.0, av[2]});
}

Report reproduce_boundary(std::span<const double> params, const RunOptions& opt) {
  static constexpr double kDefault[] = {0.5, 1.0, 2.0};
  if (params.empty()) params = kDefault;
  require_params("boundary", params, 3);
  const CoefficientMatrix a = boundary_matrix(params);
  Draft d = analyze_draft(a, nullptr, opt);
  const BoundaryResult br = boundary_proposition(a, criteria_options(opt));
  const bool positive = d.summary.has(SummaryFlag::positive_proven);
  d.headline.push_back("D_formula = " + num(br.d_formula) + ", D_numeric = " + num(br.d_numeric));
  d.headline.push_back(std::string("Phi_A ") + (positive ? "positive" : "not positive") + " (b = " +
                       short_num(a.b(0)) + ")");
  d.extra["reproduction"] = {{"name", "boundary"},
                             {"a", {params[0], params[1], params[2]}},
                             {"b", a.b(0)},
                             {"d_formula", br.d_formula},
                             {"d_numeric", br.d_numeric},
                             {"positive", positive}};
  return finish(d, opt);
}

Report reproduce_kye_boundary(std::span<const double> params, const RunOptions& opt) {
  static constexpr double kDefault[] = {1.0, 1.0, 1.0};
  if (params.empty()) params = kDefault;
  require_params("kye-boundary", params, 3);
  for (double v : params) {
    if (v < 0.0) throw InvalidInput("kye-boundary parameters c1 c2 c3 must be nonnegative");
  }
  const KyeParams k{1.0, params[0], params[1], params[2]};
  const CoefficientMatrix a = kye_matrix(k);
  Draft d = analyze_draft(a, nullptr, opt);
  const Verdict v = kye_check(k, criteria_options(opt));
  const double product = k.c1 * k.c2 * k.c3;
  d.headline.push_back("a = 1, c1 c2 c3 = " + num(product) + ", (2 - a)^3 = " + num(1.0));
  d.headline.push_back(std::string("condition ") + to_string(v.status) + ", margin " + num(v.margin));
  d.extra["reproduction"] = {{"name", "kye-boundary"},
                             {"c", {k.c1, k.c2, k.c3}},
                             {"c_product", product},
                             {"status", to_string(v.status)},
                             {"margin", margin_json(v.margin)},
                             {"detail", v.detail}};
  return finish(d, opt);
}

}  // namespace

Report run_reproduce(std::string_view name, std::span<const double> params, const RunOptions& opt) {
  validate(opt);
  if (name == "choi") {
    require_params(name, params, 0);
    return reproduce_choi(opt);
  }
  if (name == "example5") {
    require_params(name, params, 0);
    return reproduce_example5(opt);
  }
  if (name == "boundary") return reproduce_boundary(params, opt);
  if (name == "kye-boundary") return reproduce_kye_boundary(params, opt);
  throw InvalidInput("unknown reproduction '" + std::string(name) + "' (choi, example5, boundary, kye-boundary)");
}

}  // namespace gchoi
