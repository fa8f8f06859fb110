#pragma once

// Analytic positivity, complete-positivity and decomposability conditions for
// Phi_A. Each condition yields a Verdict with a signed margin (distance to
// the condition's boundary, positive on the satisfied side).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gchoi/choi_maps.hpp"

namespace gchoi {

enum class Status { holds, fails, not_applicable, marginal };

const char* to_string(Status s);

struct Verdict {
  Status status = Status::not_applicable;
  double margin = 0.0;  // NaN when not applicable
  std::string detail;
  /// Decision used by the summary. Marginal non-strict conditions count as
  /// satisfied; marginal strict conditions do not.
  bool satisfied = false;

  bool applicable() const { return status != Status::not_applicable; }
};

struct CriteriaOptions {
  double margin_band = 1e-9;
  double psd_tolerance = kDefaultPsdTolerance;
};

Verdict not_applicable(std::string detail);

enum class SummaryFlag : std::uint32_t {
  positive_proven = 1u << 0,
  not_positive_proven = 1u << 1,
  cp_proven = 1u << 2,
  indecomposable_proven = 1u << 3,
  decomposable_proven = 1u << 4,
  inconclusive = 1u << 5,
};

class SummaryFlags {
 public:
  void set(SummaryFlag f) { bits_ |= static_cast<std::uint32_t>(f); }
  void clear(SummaryFlag f) { bits_ &= ~static_cast<std::uint32_t>(f); }
  bool has(SummaryFlag f) const { return (bits_ & static_cast<std::uint32_t>(f)) != 0; }
  std::uint32_t bits() const { return bits_; }
  std::vector<std::string> names() const;

  /// Empty string when consistent, otherwise a description of the clash.
  std::string conflict() const;
  /// Sets or clears `inconclusive` from the positivity flags.
  void finalize();

 private:
  std::uint32_t bits_ = 0;
};

const char* to_string(SummaryFlag f);

struct PairVerdict {
  std::size_t i = 0;  // 0-based, i < j
  std::size_t j = 0;
  Verdict verdict;
};

struct NamedVerdict {
  std::string name;
  Verdict verdict;
};

struct BoundaryResult {
  Verdict verdict;
  double d_formula = 0.0;
  double d_numeric = 0.0;
};

struct ScalingCertificate {
  CklParams params;
  ScalingVector v{{1.0, 1.0, 1.0}};
};

struct ScalingSearchResult {
  Verdict verdict;
  std::optional<ScalingCertificate> certificate;
};

struct ConditionReport {
  FormClass form;
  Verdict cp;
  Verdict ckl_positive;
  Verdict ckl_indecomposable;
  Verdict kye;
  Verdict average_necessary;
  std::vector<PairVerdict> pairwise_necessary;
  std::vector<PairVerdict> pairwise_sufficient;
  Verdict c3_mean;
  Verdict cyclic_necessary;
  Verdict b_only_necessary;
  Verdict scaling_sufficient;
  std::optional<ScalingCertificate> scaling_certificate;
  Verdict n2_positive;
  Verdict boundary_proposition;
  SummaryFlags summary;

  /// Flattened in a fixed order, with pair conditions named like
  /// "pairwise_necessary(1,2)" (1-based).
  std::vector<NamedVerdict> conditions() const;
};

Verdict ckl_is_positive(const CklParams& p, const CriteriaOptions& opt = {});
Verdict ckl_is_indecomposable(const CklParams& p, const CriteriaOptions& opt = {});
Verdict kye_check(const KyeParams& k, const CriteriaOptions& opt = {});
Verdict cp_verdict(const CoefficientMatrix& a, const CriteriaOptions& opt = {});
Verdict average_necessary(const CoefficientMatrix& a, const CriteriaOptions& opt = {});
std::vector<PairVerdict> pairwise_necessary(const CoefficientMatrix& a, const CriteriaOptions& opt = {});
std::vector<PairVerdict> pairwise_sufficient(const CoefficientMatrix& a, const CriteriaOptions& opt = {});
Verdict c3_mean(const CoefficientMatrix& a, const CriteriaOptions& opt = {});
Verdict cyclic_necessary(const CoefficientMatrix& a, const CriteriaOptions& opt = {});
Verdict b_only_necessary(const CoefficientMatrix& a, const CriteriaOptions& opt = {});

/// M = A - V^{-1} A_[a,b,c] V must be entrywise >= -1e-12. Throws
/// InvalidInput when (a,b,c) is not a positive CKL triple.
Verdict scaling_sufficient(const CoefficientMatrix& a, const CklParams& p, const ScalingVector& v,
                           const CriteriaOptions& opt = {});

/// Entry-wise minimum of A - V^{-1} A_[a,b,c] V.
double scaling_residual_min(const CoefficientMatrix& a, const CklParams& p, const ScalingVector& v);

ScalingSearchResult scaling_sufficient_search(const CoefficientMatrix& a, const CriteriaOptions& opt = {});

Verdict n2_positive(const CoefficientMatrix& a, const CriteriaOptions& opt = {});

BoundaryResult boundary_proposition(const CoefficientMatrix& a, const CriteriaOptions& opt = {});

/// Determinant of Phi_A(xi xi^*) for xi_i = a_i^{-1/6} a_{i-1}^{1/6}.
double boundary_numeric_determinant(const CoefficientMatrix& a);

/// Witness vector xi = eta of the cyclic-form necessary condition:
/// xi_i = (a_i^{-1} a_j a_k)^{1/12}.
ComplexVector cyclic_witness_vector(const CoefficientMatrix& a);

/// Witness pair of the b-only necessary condition, returned as
/// (input-side, output-side) vectors for block_positivity evaluation.
std::pair<ComplexVector, ComplexVector> b_only_witness_vectors(const CoefficientMatrix& a);

/// Runs every applicable criterion and reconciles the summary. Throws
/// InternalError when two proven flags contradict each other.
ConditionReport full_report(const CoefficientMatrix& a, const CriteriaOptions& opt = {});

}  // namespace gchoi
