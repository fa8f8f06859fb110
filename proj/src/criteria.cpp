#include "gchoi/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gchoi/errors.hpp"

namespace gchoi {

const char* to_string(Status s) {
  switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::not_applicable: return "not_applicable";
    case Status::marginal: return "marginal";
  }
  return "not_applicable";
}

const char* to_string(SummaryFlag f) {
  switch (f) {
    case SummaryFlag::positive_proven: return "positive_proven";
    case SummaryFlag::not_positive_proven: return "not_positive_proven";
    case SummaryFlag::cp_proven: return "cp_proven";
    case SummaryFlag::indecomposable_proven: return "indecomposable_proven";
    case SummaryFlag::decomposable_proven: return "decomposable_proven";
    case SummaryFlag::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<std::string> SummaryFlags::names() const {
  std::vector<std::string> out;
  for (SummaryFlag f : {SummaryFlag::positive_proven, SummaryFlag::not_positive_proven, SummaryFlag::cp_proven,
                        SummaryFlag::indecomposable_proven, SummaryFlag::decomposable_proven,
                        SummaryFlag::inconclusive}) {
    if (has(f)) out.emplace_back(to_string(f));
  }
  return out;
}

std::string SummaryFlags::conflict() const {
  using F = SummaryFlag;
  if (has(F::positive_proven) && has(F::not_positive_proven)) return "positive_proven and not_positive_proven";
  if (has(F::cp_proven) && has(F::not_positive_proven)) return "cp_proven and not_positive_proven";
  if (has(F::decomposable_proven) && has(F::indecomposable_proven)) {
    return "decomposable_proven and indecomposable_proven";
  }
  if (has(F::decomposable_proven) && has(F::not_positive_proven)) {
    return "decomposable_proven and not_positive_proven";
  }
  return {};
}

void SummaryFlags::finalize() {
  if (has(SummaryFlag::positive_proven) || has(SummaryFlag::not_positive_proven)) {
    clear(SummaryFlag::inconclusive);
  } else {
    set(SummaryFlag::inconclusive);
  }
}

Verdict not_applicable(std::string detail) {
  Verdict v;
  v.status = Status::not_applicable;
  v.margin = std::numeric_limits<double>::quiet_NaN();
  v.detail = std::move(detail);
  v.satisfied = false;
  return v;
}

namespace {

Verdict decided(double margin, bool satisfied, std::string detail, const CriteriaOptions& opt) {
  Verdict v;
  v.margin = margin;
  v.satisfied = satisfied;
  v.detail = std::move(detail);
  if (std::abs(margin) < opt.margin_band) {
    v.status = Status::marginal;
  } else {
    v.status = satisfied ? Status::holds : Status::fails;
  }
  return v;
}

// margin >= 0 style condition.
Verdict at_least(double margin, std::string detail, const CriteriaOptions& opt) {
  return decided(margin, margin >= -opt.margin_band, std::move(detail), opt);
}

// margin > 0 style condition.
Verdict strictly(double margin, std::string detail, const CriteriaOptions& opt) {
  return decided(margin, margin >= opt.margin_band, std::move(detail), opt);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

Verdict ckl_is_positive(const CklParams& p, const CriteriaOptions& opt) {
  const double sum_slack = p.a + p.b + p.c - 2.0;
  const double low_a_slack = std::max(p.a - 1.0, p.b * p.c - (1.0 - p.a) * (1.0 - p.a));
  const double margin = std::min(sum_slack, low_a_slack);
  std::string detail = "a+b+c-2 = " + fmt(sum_slack) + "; ";
  if (p.a > 1.0) {
    detail += "a > 1 so bc >= (1-a)^2 is not required";
  } else {
    detail += "a <= 1 requires bc - (1-a)^2 = " + fmt(p.b * p.c - (1.0 - p.a) * (1.0 - p.a)) + " >= 0";
  }
  if (p.a >= 2.0) detail += "; a >= 2: completely positive branch (reduced matrix eigenvalue a-2 >= 0)";
  return at_least(margin, std::move(detail), opt);
}

Verdict ckl_is_indecomposable(const CklParams& p, const CriteriaOptions& opt) {
  if (!ckl_is_positive(p, opt).satisfied) return not_applicable("CKL map is not positive");
  const double two_minus_a = 2.0 - p.a;
  const double margin = std::min(two_minus_a, two_minus_a * two_minus_a - 4.0 * p.b * p.c);
  std::string detail = "(2-a)^2 - 4bc = " + fmt(two_minus_a * two_minus_a - 4.0 * p.b * p.c);
  if (p.a >= 2.0) detail += "; a >= 2: completely positive, hence decomposable";
  return strictly(margin, std::move(detail), opt);
}

Verdict kye_check(const KyeParams& k, const CriteriaOptions& opt) {
  const double two_minus_a = 2.0 - k.a;
  const double product_slack = k.c1 * k.c2 * k.c3 - two_minus_a * two_minus_a * two_minus_a;
  const double margin = std::min({k.a - 1.0, two_minus_a, product_slack});
  const bool satisfied =
      k.a - 1.0 >= -opt.margin_band && two_minus_a >= opt.margin_band && product_slack >= -opt.margin_band;
  std::string detail = "c1c2c3 - (2-a)^3 = " + fmt(product_slack) + "; a in [1,2) required";
  if (satisfied) detail += "; positive, not completely positive, indecomposable";
  if (std::abs(k.a - 1.0) < opt.margin_band && std::abs(product_slack) < opt.margin_band) {
    detail += "; a = 1 with c1c2c3 = 1: extremal by a known result (not tested here)";
  }
  return decided(margin, satisfied, std::move(detail), opt);
}

Verdict cp_verdict(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  const CpResult r = cp_check(a, opt.psd_tolerance);
  Verdict v = decided(r.min_eigenvalue, r.completely_positive,
                      "min eigenvalue of the reduced matrix (diag a_ii, off-diagonal -1) = " + fmt(r.min_eigenvalue),
                      opt);
  return v;
}

Verdict average_necessary(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  if (a.n() != 3) return not_applicable("defined for n = 3");
  const CklParams avg = averaged_params(a);
  Verdict v = ckl_is_positive(avg, opt);
  v.detail = "averaged (a,b,c) = (" + fmt(avg.a) + ", " + fmt(avg.b) + ", " + fmt(avg.c) + "); " + v.detail +
             "; necessary only";
  return v;
}

namespace {

std::vector<PairVerdict> pairwise(const CoefficientMatrix& a, double diag_weight, const char* role,
                                  const CriteriaOptions& opt) {
  std::vector<PairVerdict> out;
  const std::size_t n = a.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diag = std::sqrt(a(i, i) * a(j, j));
      const double cross = std::sqrt(a(i, j) * a(j, i));
      const double margin = diag_weight * diag + cross - 1.0;
      std::string detail = std::string(role) + ": sqrt(a_ii a_jj) = " + fmt(diag) +
                           ", sqrt(a_ij a_ji) = " + fmt(cross);
      if (a(i, j) * a(j, i) == 0.0) detail += "; a_ij a_ji = 0, enforced via the limiting argument";
      out.push_back({i, j, at_least(margin, std::move(detail), opt)});
    }
  }
  return out;
}

}  // namespace

std::vector<PairVerdict> pairwise_necessary(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  return pairwise(a, 1.0, "necessary", opt);
}

std::vector<PairVerdict> pairwise_sufficient(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  return pairwise(a, 1.0 / static_cast<double>(a.n() - 1), "sufficient for positivity and decomposability", opt);
}

Verdict c3_mean(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  if (a.n() != 3) return not_applicable("defined for n = 3");
  const CklParams g = geometric_means(a);
  return at_least(g.a + g.b + g.c - 2.0,
                  "a*+b*+c*-2 with (a*,b*,c*) = (" + fmt(g.a) + ", " + fmt(g.b) + ", " + fmt(g.c) +
                      "); conjectured necessary, proven only for the cyclic and b-only forms",
                  opt);
}

ComplexVector cyclic_witness_vector(const CoefficientMatrix& a) {
  const double a1 = a.a(0), a2 = a.a(1), a3 = a.a(2);
  return {std::pow(a2 * a3 / a1, 1.0 / 12.0), std::pow(a1 * a3 / a2, 1.0 / 12.0),
          std::pow(a1 * a2 / a3, 1.0 / 12.0)};
}

std::pair<ComplexVector, ComplexVector> b_only_witness_vectors(const CoefficientMatrix& a) {
  ComplexVector xi(3), eta(3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double ai = a.a(i), bi = a.b(i), prev = a.b(i + 2);
    xi[i] = std::pow(ai, -1.0 / 6.0) * std::pow(bi, -1.0 / 6.0) * std::pow(prev, 1.0 / 6.0);
    eta[i] = std::pow(ai, -1.0 / 6.0) * std::pow(bi, 1.0 / 6.0) * std::pow(prev, -1.0 / 6.0);
  }
  // eta pairs with the input (block) factor of the Choi matrix.
  return {eta, xi};
}

Verdict cyclic_necessary(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  if (a.n() != 3) return not_applicable("defined for n = 3");
  const FormClass form = classify_form(a);
  if (!form.matches(FormTag::cyclic_bc)) return not_applicable("requires constant b and c");
  const double b = a.b(0), c = a.c(0);
  if (std::min({a.a(0), a.a(1), a.a(2)}) < 1.0) return not_applicable("requires a_1, a_2, a_3 >= 1");
  if (!(b > 0.0) || !(c > 0.0)) return not_applicable("requires b, c > 0");
  const double astar = geometric_means(a).a;
  const ComplexVector xi = cyclic_witness_vector(a);
  const double witness = expectation(choi_matrix(a), product_vector(xi, xi));
  return at_least(astar + b + c - 2.0,
                  "a*+b+c-2; block value at the witness vector = " + fmt(witness), opt);
}

Verdict b_only_necessary(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  if (a.n() != 3) return not_applicable("defined for n = 3");
  const FormClass form = classify_form(a);
  if (!form.matches(FormTag::b_only)) return not_applicable("requires c_i = 0 and b_i > 0");
  if (std::min({a.a(0), a.a(1), a.a(2)}) < 1.0) return not_applicable("requires a_1, a_2, a_3 >= 1");
  const CklParams g = geometric_means(a);
  const auto [in, out] = b_only_witness_vectors(a);
  const double witness = expectation(choi_matrix(a), product_vector(in, out));
  return at_least(g.a + g.b - 2.0, "a*+b*-2; block value at the witness vectors = " + fmt(witness), opt);
}

double scaling_residual_min(const CoefficientMatrix& a, const CklParams& p, const ScalingVector& v) {
  if (a.n() != 3) throw NotApplicable("scaling condition is defined for n = 3");
  const CoefficientMatrix scaled = scaled_ckl_matrix(p, v);
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) lo = std::min(lo, a(i, j) - scaled(i, j));
  }
  return lo;
}

Verdict scaling_sufficient(const CoefficientMatrix& a, const CklParams& p, const ScalingVector& v,
                           const CriteriaOptions& opt) {
  if (a.n() != 3) return not_applicable("defined for n = 3");
  if (!ckl_is_positive(p, opt).satisfied) throw InvalidInput("scaling reference (a,b,c) is not a positive CKL triple");
  const double lo = scaling_residual_min(a, p, v);
  return decided(lo, lo >= -1e-12,
                 "min entry of A - V^-1 A_[a,b,c] V with (a,b,c) = (" + fmt(p.a) + ", " + fmt(p.b) + ", " +
                     fmt(p.c) + "), p = (" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + ")",
                 opt);
}

namespace {

// Given (b, c) with b <= b*, c <= c* and bc <= min_i b_i c_{i+1}, builds p with
// b_i >= b p_{i+1}/p_i and c_i >= c p_{i+2}/p_i. Works in log ratios
// d_i = log(p_{i+1}/p_i): d_i <= log(b_i/b), d_i >= -log(c_{i+1}/c), sum d = 0.
ScalingVector scaling_for(const CoefficientMatrix& a, double b, double c) {
  std::array<double, 3> lo{}, hi{};
  const bool has_lo = c > 0.0;
  const bool has_hi = b > 0.0;
  double sum_lo = 0.0, sum_hi = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (has_hi) hi[k] = std::log(a.b(k) / b);
    if (has_lo) lo[k] = -std::log(a.c(k + 1) / c);
    sum_lo += lo[k];
    sum_hi += hi[k];
  }
  std::array<double, 3> d{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (has_lo && has_hi) {
      const double span = sum_hi - sum_lo;
      const double t = span > 0.0 ? std::clamp(-sum_lo / span, 0.0, 1.0) : 0.0;
      d[k] = lo[k] + t * (hi[k] - lo[k]);
    } else if (has_lo) {
      d[k] = lo[k] - sum_lo / 3.0;
    } else if (has_hi) {
      d[k] = hi[k] - sum_hi / 3.0;
    }
  }
  return ScalingVector({1.0, std::exp(d[0]), std::exp(d[0] + d[1])});
}

constexpr int kScalingGrid = 64;
constexpr int kScalingSubGrid = 16;

}  // namespace

ScalingSearchResult scaling_sufficient_search(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  if (a.n() != 3) return {not_applicable("defined for n = 3"), std::nullopt};
  const double a_min = std::min({a.a(0), a.a(1), a.a(2)});
  const CklParams g = geometric_means(a);
  double bc_cap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) bc_cap = std::min(bc_cap, a.b(i) * a.c(i + 1));

  auto try_certify = [&](double b, double c) -> std::optional<ScalingCertificate> {
    const CklParams p{a_min, b, c};
    if (!ckl_is_positive(p, opt).satisfied) return std::nullopt;
    const ScalingVector v = scaling_for(a, b, c);
    if (scaling_residual_min(a, p, v) < -1e-12) return std::nullopt;
    return ScalingCertificate{p, v};
  };

  if (g.b == 0.0) {
    // b_1 b_2 b_3 = 0: decided in closed form.
    const double margin = std::min(a_min - 1.0, a_min + g.c - 2.0);
    Verdict v = at_least(margin, "b* = 0: min a_i - 1 and min a_i + c* - 2; margin is the smaller", opt);
    std::optional<ScalingCertificate> cert;
    if (v.satisfied) {
      cert = try_certify(0.0, g.c);
      if (!cert) {
        v = decided(margin, false, v.detail + "; scaling certificate failed verification", opt);
      }
    }
    return {std::move(v), cert};
  }

  double best_margin = -std::numeric_limits<double>::infinity();
  double best_b = 0.0, best_c = 0.0;
  auto feasible_cap = [&](double b, double c) { return b * c <= bc_cap * (1.0 + 1e-12); };
  auto visit = [&](double b, double c) {
    if (!feasible_cap(b, c)) return;
    const double m = ckl_is_positive({a_min, b, c}, opt).margin;
    if (m > best_margin) {
      best_margin = m;
      best_b = b;
      best_c = c;
    }
  };

  // Level 0 grid over [0, b*] x [0, c*], then two refinements around the cells
  // straddling the bc cap, where the best CKL slack lives.
  struct Cell {
    double b0, c0, db, dc;
  };
  std::vector<Cell> cells;
  const double db = g.b / kScalingGrid;
  const double dc = g.c / kScalingGrid;
  for (int k = 0; k <= kScalingGrid; ++k) {
    for (int l = 0; l <= kScalingGrid; ++l) {
      const double b = k == kScalingGrid ? g.b : k * db;
      const double c = l == kScalingGrid ? g.c : l * dc;
      visit(b, c);
      if (k < kScalingGrid && l < kScalingGrid) cells.push_back({b, c, db, dc});
    }
  }
  for (int level = 0; level < 2; ++level) {
    std::vector<Cell> next;
    for (const Cell& cell : cells) {
      const bool low_in = feasible_cap(cell.b0, cell.c0);
      const bool high_in = feasible_cap(cell.b0 + cell.db, cell.c0 + cell.dc);
      if (!(low_in && !high_in)) continue;
      const double sb = cell.db / kScalingSubGrid;
      const double sc = cell.dc / kScalingSubGrid;
      for (int k = 0; k <= kScalingSubGrid; ++k) {
        for (int l = 0; l <= kScalingSubGrid; ++l) {
          visit(cell.b0 + k * sb, cell.c0 + l * sc);
          if (level == 0 && k < kScalingSubGrid && l < kScalingSubGrid) {
            next.push_back({cell.b0 + k * sb, cell.c0 + l * sc, sb, sc});
          }
        }
      }
    }
    cells = std::move(next);
  }

  const std::string where = "best CKL slack over the grid with a = min a_i = " + fmt(a_min) + ", b <= b* = " +
                            fmt(g.b) + ", c <= c* = " + fmt(g.c) + ", bc <= " + fmt(bc_cap);
  std::optional<ScalingCertificate> cert;
  if (best_margin > -std::numeric_limits<double>::infinity()) cert = try_certify(best_b, best_c);
  if (cert) {
    return {at_least(best_margin, where + "; certificate (b, c) = (" + fmt(best_b) + ", " + fmt(best_c) + ")", opt),
            cert};
  }
  return {decided(best_margin, false, where + "; no certificate", opt), std::nullopt};
}

Verdict n2_positive(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  if (a.n() != 2) return not_applicable("defined for n = 2");
  const double margin = std::sqrt(a(0, 0) * a(1, 1)) + std::sqrt(a(0, 1) * a(1, 0)) - 1.0;
  return at_least(margin, "sqrt(a11 a22) + sqrt(a12 a21) - 1; necessary and sufficient", opt);
}

double boundary_numeric_determinant(const CoefficientMatrix& a) {
  ComplexVector xi(3);
  for (std::size_t i = 0; i < 3; ++i) xi[i] = std::pow(a.a(i), -1.0 / 6.0) * std::pow(a.a(i + 2), 1.0 / 6.0);
  return determinant(apply_map(a, outer_product(xi)));
}

BoundaryResult boundary_proposition(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  BoundaryResult out;
  if (a.n() != 3) {
    out.verdict = not_applicable("defined for n = 3");
    return out;
  }
  const FormClass form = classify_form(a);
  if (!form.matches(FormTag::cyclic_bc) || a.c(0) > kFormMatchTolerance) {
    out.verdict = not_applicable("requires constant b and c = 0");
    return out;
  }
  if (std::min({a.a(0), a.a(1), a.a(2)}) <= 0.0) {
    out.verdict = not_applicable("requires a_1, a_2, a_3 > 0");
    return out;
  }
  const double astar = geometric_means(a).a;
  const double abar = averaged_params(a).a;
  const double b = a.b(0);
  if (std::abs(astar + b - 2.0) >= 1e-9) {
    out.verdict = not_applicable("requires a* + b = 2");
    return out;
  }
  out.d_formula = 6.0 * (astar - abar) / astar;
  out.d_numeric = boundary_numeric_determinant(a);
  const double spread = std::max({a.a(0), a.a(1), a.a(2)}) - std::min({a.a(0), a.a(1), a.a(2)});
  const bool equal = spread < 1e-9;
  const bool ckl_ok = ckl_is_positive({astar, b, 0.0}, opt).satisfied;
  std::string detail = "D_formula = 6(a*-abar)/a* = " + fmt(out.d_formula) +
                       ", D_numeric = det Phi_A(xi xi^*) = " + fmt(out.d_numeric);
  if (equal && !ckl_ok) detail += "; equal a_i but a < 1 with c = 0 violates bc >= (1-a)^2";
  out.verdict = decided(-spread, equal && ckl_ok, std::move(detail), opt);
  return out;
}

std::vector<NamedVerdict> ConditionReport::conditions() const {
  std::vector<NamedVerdict> out;
  out.push_back({"cp", cp});
  out.push_back({"ckl_positive", ckl_positive});
  out.push_back({"ckl_indecomposable", ckl_indecomposable});
  out.push_back({"kye", kye});
  out.push_back({"average_necessary", average_necessary});
  for (const auto& p : pairwise_necessary) {
    out.push_back({"pairwise_necessary(" + std::to_string(p.i + 1) + "," + std::to_string(p.j + 1) + ")", p.verdict});
  }
  for (const auto& p : pairwise_sufficient) {
    out.push_back(
        {"pairwise_sufficient(" + std::to_string(p.i + 1) + "," + std::to_string(p.j + 1) + ")", p.verdict});
  }
  out.push_back({"c3_mean", c3_mean});
  out.push_back({"cyclic_necessary", cyclic_necessary});
  out.push_back({"b_only_necessary", b_only_necessary});
  out.push_back({"scaling_sufficient", scaling_sufficient});
  out.push_back({"n2_positive", n2_positive});
  out.push_back({"boundary_proposition", boundary_proposition});
  return out;
}

ConditionReport full_report(const CoefficientMatrix& a, const CriteriaOptions& opt) {
  using F = SummaryFlag;
  ConditionReport r;
  r.form = classify_form(a);
  r.cp = cp_verdict(a, opt);

  if (r.form.matches(FormTag::constant_ckl)) {
    const CklParams p{a.a(0), a.b(0), a.c(0)};
    r.ckl_positive = ckl_is_positive(p, opt);
    r.ckl_indecomposable = ckl_is_indecomposable(p, opt);
  } else {
    r.ckl_positive = not_applicable("requires constant (a, b, c) coefficients");
    r.ckl_indecomposable = not_applicable("requires constant (a, b, c) coefficients");
  }
  if (r.form.matches(FormTag::kye_form)) {
    r.kye = kye_check({a.a(0), a.c(0), a.c(1), a.c(2)}, opt);
  } else {
    r.kye = not_applicable("requires equal a_i and b_i = 0");
  }
  r.average_necessary = average_necessary(a, opt);
  r.pairwise_necessary = pairwise_necessary(a, opt);
  r.pairwise_sufficient = pairwise_sufficient(a, opt);
  r.c3_mean = c3_mean(a, opt);
  r.cyclic_necessary = cyclic_necessary(a, opt);
  r.b_only_necessary = b_only_necessary(a, opt);
  ScalingSearchResult scaling = scaling_sufficient_search(a, opt);
  r.scaling_sufficient = std::move(scaling.verdict);
  r.scaling_certificate = scaling.certificate;
  r.n2_positive = n2_positive(a, opt);
  r.boundary_proposition = boundary_proposition(a, opt).verdict;

  SummaryFlags& s = r.summary;
  std::vector<std::string> positive_by, not_positive_by;
  auto positive = [&](const char* why) {
    s.set(F::positive_proven);
    positive_by.emplace_back(why);
  };
  auto not_positive = [&](const char* why) {
    s.set(F::not_positive_proven);
    not_positive_by.emplace_back(why);
  };

  if (r.cp.satisfied) {
    s.set(F::cp_proven);
    s.set(F::decomposable_proven);
    positive("cp");
  }
  if (r.ckl_positive.applicable()) {
    if (r.ckl_positive.satisfied) {
      positive("ckl_positive");
      if (r.ckl_indecomposable.applicable()) {
        s.set(r.ckl_indecomposable.satisfied ? F::indecomposable_proven : F::decomposable_proven);
      }
    } else {
      not_positive("ckl_positive");
    }
  }
  if (r.kye.applicable()) {
    if (r.kye.satisfied) {
      positive("kye");
      s.set(F::indecomposable_proven);
    } else if (!r.cp.satisfied) {
      not_positive("kye");
    }
  }
  if (r.average_necessary.applicable() && !r.average_necessary.satisfied) not_positive("average_necessary");
  for (const auto& p : r.pairwise_necessary) {
    if (!p.verdict.satisfied) {
      not_positive("pairwise_necessary");
      break;
    }
  }
  if (std::all_of(r.pairwise_sufficient.begin(), r.pairwise_sufficient.end(),
                  [](const PairVerdict& p) { return p.verdict.satisfied; })) {
    positive("pairwise_sufficient");
    s.set(F::decomposable_proven);
  }
  if (r.cyclic_necessary.applicable() && !r.cyclic_necessary.satisfied) not_positive("cyclic_necessary");
  if (r.b_only_necessary.applicable() && !r.b_only_necessary.satisfied) not_positive("b_only_necessary");
  if (r.scaling_sufficient.applicable() && r.scaling_sufficient.satisfied) positive("scaling_sufficient");
  if (r.n2_positive.applicable()) {
    if (r.n2_positive.satisfied) {
      positive("n2_positive");
    } else {
      not_positive("n2_positive");
    }
  }
  if (r.boundary_proposition.applicable()) {
    if (r.boundary_proposition.satisfied) {
      positive("boundary_proposition");
    } else {
      not_positive("boundary_proposition");
    }
  }

  s.finalize();
  if (const std::string clash = s.conflict(); !clash.empty()) {
    auto join = [](const std::vector<std::string>& v) {
      std::string out;
      for (const auto& x : v) out += (out.empty() ? "" : ", ") + x;
      return out;
    };
    throw InternalError("conflicting conclusions (" + clash + "); positive by [" + join(positive_by) +
                        "], not positive by [" + join(not_positive_by) + "]");
  }
  return r;
}

}  // namespace gchoi
