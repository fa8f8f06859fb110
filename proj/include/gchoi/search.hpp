#pragma once

// Numerical certificates for Phi_A.
//
// Non-positivity: Phi_A is positive iff the positivity gap
//     G(p, q) = sum_ij (a_ij + delta_ij) p_i^2 q_j^2 - (sum_i p_i q_i)^2
// is nonnegative for all nonnegative p, q. Here q is the input-side vector
// (Phi_A is applied to q q^T) and p the output-side probe, so that
// G(p, q) = <p, Phi_A(q q^T) p>. A (p, q) with G < 0 certifies that Phi_A is
// not positive.
//
// Indecomposability: Tr(rho C) < 0 for a PPT state rho certifies that Phi_A is
// not decomposable. The search is restricted to states whose block rho_ii is
// diagonal (alpha[i][.]) and whose only off-diagonal entries are the cross
// terms r_ij at global positions (i*n+i, j*n+j).
//
// Both searches are multi-start. Start k draws its randomness from a stream
// keyed by (seed, k) and the winner is the lexicographic minimum of
// (value, k), so results do not depend on thread scheduling.

#include <cstdint>
#include <optional>
#include <vector>

#include "gchoi/choi_maps.hpp"
#include "gchoi/linalg.hpp"

namespace gchoi {

using NonnegativeVector = std::vector<double>;

struct SearchConfig {
  std::uint64_t seed = 42;
  int starts = 64;
  int max_iterations = 2000;
  double step_tolerance = 1e-12;
  double violation_tolerance = 1e-9;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

void validate(const SearchConfig& cfg);

struct ViolationCertificate {
  NonnegativeVector p;  // output-side probe, unit norm
  NonnegativeVector q;  // input-side vector, unit norm
  double gap = 0.0;
  double residual_check = 0.0;  // min eigenvalue of Phi_A(q q^T)
};

struct StructuredPptState {
  std::size_t n = 0;
  std::vector<std::vector<double>> alpha;  // alpha[i][k]: k-th diagonal entry of block (i,i)
  std::vector<std::vector<double>> r;      // r[i][j], i < j; zero elsewhere
};

struct PptWitnessCertificate {
  StructuredPptState state;
  double trace_value = 0.0;       // Tr(rho C_Phi)
  double normalized_value = 0.0;  // trace_value / Tr(rho)
  double rho_min_eigenvalue = 0.0;
  double rho_pt_min_eigenvalue = 0.0;
};

double positivity_gap(const CoefficientMatrix& a, std::span<const double> p, std::span<const double> q);

struct GapDecomposition {
  /// sum_k a_kk p_k^2 q_k^2, then per pair k<l the square
  /// (sqrt(a_kl) p_k q_l - sqrt(a_lk) p_l q_k)^2 and the cross term
  /// 2 (sqrt(a_kl a_lk) - 1) p_k p_l q_k q_l.
  std::vector<double> terms;
  double total = 0.0;
  /// Same sum with the diagonal spread over pairs using the 1/(n-1) weight:
  /// squares (sqrt(a_kk/(n-1)) p_k q_k - sqrt(a_ll/(n-1)) p_l q_l)^2, the
  /// off-diagonal squares, and 2 (sqrt(a_kk a_ll)/(n-1) + sqrt(a_kl a_lk) - 1) p_k p_l q_k q_l.
  std::vector<double> pairwise_terms;
  double pairwise_total = 0.0;
};

GapDecomposition gap_decomposition(const CoefficientMatrix& a, std::span<const double> p,
                                   std::span<const double> q);

struct GapMinimum {
  NonnegativeVector p;
  NonnegativeVector q;
  double gap = 0.0;
  int start_index = -1;
};

/// Best (p, q) over all starts, whether or not it is negative.
GapMinimum minimize_positivity_gap(const CoefficientMatrix& a, const SearchConfig& cfg);

std::optional<ViolationCertificate> find_positivity_violation(const CoefficientMatrix& a, const SearchConfig& cfg);

/// Recomputes gap and residual from the stored vectors.
bool verify(const CoefficientMatrix& a, const ViolationCertificate& cert, double tolerance);

struct CounterexampleCheck {
  HermitianMatrix image;
  double det = 0.0;
  bool psd = false;
  bool input_psd = false;
  double image_min_eigenvalue = 0.0;
  double input_min_eigenvalue = 0.0;
};

CounterexampleCheck verify_counterexample(const CoefficientMatrix& a, const HermitianMatrix& x,
                                          double tol = kDefaultPsdTolerance);

/// Re <xi (x) eta, C xi (x) eta>; xi is the block (input) factor.
double block_positivity_value(const HermitianMatrix& c, std::span<const Complex> xi, std::span<const Complex> eta);

/// Sum_{i,k} a_ki alpha[i][k] - 2 sum_{i<j} min(sqrt(alpha_ii alpha_jj), sqrt(alpha_ij alpha_ji)).
double structured_ppt_value(const CoefficientMatrix& a, const std::vector<std::vector<double>>& alpha);

/// State with maximal cross terms r_ij = min of the two caps.
StructuredPptState structured_state(const std::vector<std::vector<double>>& alpha);

HermitianMatrix assemble_ppt_state(const StructuredPptState& s);

/// Tr(rho C) for the assembled state, by explicit matrix product.
double ppt_trace_value(const CoefficientMatrix& a, const StructuredPptState& s);

std::optional<PptWitnessCertificate> indecomposability_probe(const CoefficientMatrix& a, const SearchConfig& cfg);

/// Checks PSD of rho and rho^Gamma (relative tolerance) and recomputes the trace.
bool verify(const CoefficientMatrix& a, const PptWitnessCertificate& cert, double tolerance);

}  // namespace gchoi
