#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gchoi/errors.hpp"
#include "gchoi/search.hpp"

using namespace gchoi;

namespace {

CoefficientMatrix make(std::size_t n, std::vector<double> v) { return CoefficientMatrix(n, v); }

CoefficientMatrix random_coefficients(std::size_t n, std::mt19937_64& rng, double hi = 2.0) {
  std::uniform_real_distribution<double> u(0.0, hi);
  std::vector<double> v(n * n);
  for (auto& x : v) x = u(rng);
  return CoefficientMatrix(n, v);
}

std::vector<double> random_nonneg(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// <p, Phi_A(q q^T) p> through the map itself.
double map_gap(const CoefficientMatrix& a, const std::vector<double>& p, const std::vector<double>& q) {
  const HermitianMatrix img = apply_map(a, outer_product(to_complex(q)));
  double s = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) s += p[i] * img(i, j).real() * p[j];
  return s;
}

SearchConfig quick(unsigned threads = 1) {
  SearchConfig cfg;
  cfg.threads = threads;
  return cfg;
}

const CoefficientMatrix kChoi = make(3, {1, 0, 1, 1, 1, 0, 0, 1, 1});
const CoefficientMatrix kExample5 = make(3, {0.5, 1, 0, 0, 1, 1, 1, 0, 2});
const CoefficientMatrix kOnes = make(3, std::vector<double>(9, 1.0));

}  // namespace

TEST(Gap, AllOnes) {
  const std::vector<double> one(3, 1.0);
  EXPECT_NEAR(positivity_gap(kOnes, one, one), 3.0, 1e-14);
}

TEST(Gap, MatchesMapQuadraticForm) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 5;
    const CoefficientMatrix a = random_coefficients(n, rng);
    const auto p = random_nonneg(n, rng), q = random_nonneg(n, rng);
    EXPECT_NEAR(positivity_gap(a, p, q), map_gap(a, p, q), 1e-12);
  }
  EXPECT_THROW(positivity_gap(kOnes, std::vector<double>(2, 1.0), std::vector<double>(3, 1.0)), InvalidInput);
}

TEST(Gap, DecompositionSums) {
  std::mt19937_64 rng(32);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 2 + rep % 4;
    const CoefficientMatrix a = random_coefficients(n, rng);
    const auto p = random_nonneg(n, rng), q = random_nonneg(n, rng);
    const GapDecomposition d = gap_decomposition(a, p, q);
    const double g = positivity_gap(a, p, q);
    EXPECT_NEAR(d.total, g, 1e-10);
    EXPECT_NEAR(d.pairwise_total, g, 1e-10);
  }
}

TEST(Gap, PairPointClosedForm) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int rep = 0; rep < 100; ++rep) {
    const CoefficientMatrix a = make(3, {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)});
    const std::size_t i = rep % 3, j = (i + 1 + rep % 2) % 3;
    std::vector<double> p(3, 0.0), q(3, 0.0);
    p[i] = 1.0;
    q[j] = 1.0;
    p[j] = std::pow(a(i, j) * a(i, i) / (a(j, i) * a(j, j)), 0.25);
    q[i] = std::pow(a(i, j) * a(j, j) / (a(j, i) * a(i, i)), 0.25);
    const double m = std::sqrt(a(i, i) * a(j, j)) + std::sqrt(a(i, j) * a(j, i)) - 1.0;
    EXPECT_NEAR(positivity_gap(a, p, q), 2.0 * m * std::sqrt(a(i, j) / a(j, i)), 1e-10);
  }
}

TEST(Violation, Example5) {
  const auto cert = find_positivity_violation(kExample5, quick());
  ASSERT_TRUE(cert.has_value());
  EXPECT_LT(cert->gap, -1e-9);
  EXPECT_LT(cert->residual_check, 0.0);
  EXPECT_TRUE(verify(kExample5, *cert, 1e-9));
  EXPECT_NEAR(map_gap(kExample5, cert->p, cert->q), cert->gap, 1e-12);
  double np = 0.0, nq = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_GE(cert->p[k], 0.0);
    EXPECT_GE(cert->q[k], 0.0);
    np += cert->p[k] * cert->p[k];
    nq += cert->q[k] * cert->q[k];
  }
  EXPECT_NEAR(np, 1.0, 1e-12);
  EXPECT_NEAR(nq, 1.0, 1e-12);
}

TEST(Violation, PositiveMapsHaveNone) {
  EXPECT_FALSE(find_positivity_violation(kOnes, quick()).has_value());
  EXPECT_FALSE(find_positivity_violation(kChoi, quick()).has_value());
  EXPECT_GE(minimize_positivity_gap(kChoi, quick()).gap, -1e-12);
}

TEST(Violation, ConstantHalf) {
  const CoefficientMatrix a = ckl_matrix({0.5, 0.5, 0.5});
  const auto cert = find_positivity_violation(a, quick());
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(verify(a, *cert, 1e-9));
}

TEST(Violation, TamperedCertificateRejected) {
  auto cert = find_positivity_violation(kExample5, quick());
  ASSERT_TRUE(cert.has_value());
  auto bad = *cert;
  bad.gap *= 0.5;
  EXPECT_FALSE(verify(kExample5, bad, 1e-9));
  bad = *cert;
  bad.p[0] = -bad.p[0] - 0.1;
  EXPECT_FALSE(verify(kExample5, bad, 1e-9));
  EXPECT_FALSE(verify(kOnes, *cert, 1e-9));
}

TEST(Violation, DeterministicAcrossThreads) {
  std::mt19937_64 rng(34);
  for (int rep = 0; rep < 5; ++rep) {
    const CoefficientMatrix a = random_coefficients(4, rng, 1.2);
    const GapMinimum one = minimize_positivity_gap(a, quick(1));
    const GapMinimum many = minimize_positivity_gap(a, quick(4));
    EXPECT_EQ(one.gap, many.gap);
    EXPECT_EQ(one.p, many.p);
    EXPECT_EQ(one.q, many.q);
    EXPECT_EQ(one.start_index, many.start_index);
  }
}

TEST(Violation, ConfigValidation) {
  SearchConfig cfg;
  cfg.starts = 0;
  EXPECT_THROW(find_positivity_violation(kOnes, cfg), InvalidInput);
  cfg = SearchConfig{};
  cfg.step_tolerance = 0.0;
  EXPECT_THROW(indecomposability_probe(kOnes, cfg), InvalidInput);
}

TEST(Counterexample, DisplayedMatrix) {
  const double hi = std::cbrt(4.0), mid = std::pow(2.0, 1.0 / 6.0), lo = 1.0 / std::cbrt(2.0);
  const HermitianMatrix x = HermitianMatrix::from_real(3, std::vector<double>{hi, mid, mid, mid, lo, lo, mid, lo, lo});
  const CounterexampleCheck c = verify_counterexample(kExample5, x);
  EXPECT_TRUE(c.input_psd);
  EXPECT_FALSE(c.psd);
  EXPECT_NEAR(c.det, -1.0, 1e-9);
  EXPECT_LT(c.image_min_eigenvalue, 0.0);
}

TEST(BlockPositivity, MatchesMapOnComplexVectors) {
  std::mt19937_64 rng(35);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rep % 3;
    const CoefficientMatrix a = random_coefficients(n, rng);
    ComplexVector xi(n), eta(n), xi_conj(n);
    for (std::size_t k = 0; k < n; ++k) {
      xi[k] = {g(rng), g(rng)};
      eta[k] = {g(rng), g(rng)};
      xi_conj[k] = std::conj(xi[k]);
    }
    // <xi (x) eta, C xi (x) eta> = <eta, Phi_A(conj(xi) conj(xi)^*) eta>.
    const HermitianMatrix img = apply_map(a, outer_product(xi_conj));
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += std::conj(eta[i]) * img(i, j) * eta[j];
    EXPECT_NEAR(block_positivity_value(choi_matrix(a), xi, eta), s.real(), 1e-10);
  }
  EXPECT_THROW(block_positivity_value(choi_matrix(kOnes), ComplexVector(2), ComplexVector(3)), InvalidInput);
}

TEST(Ppt, ExplicitChoiWitness) {
  const std::vector<std::vector<double>> alpha{{1.0, 0.25, 4.0}, {4.0, 1.0, 0.25}, {0.25, 4.0, 1.0}};
  EXPECT_NEAR(structured_ppt_value(kChoi, alpha), -2.25, 1e-12);
  const StructuredPptState s = structured_state(alpha);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) EXPECT_NEAR(s.r[i][j], 1.0, 1e-15);
  const HermitianMatrix rho = assemble_ppt_state(s);
  EXPECT_NEAR(rho.trace(), 15.75, 1e-12);
  EXPECT_NEAR(ppt_trace_value(kChoi, s), -2.25, 1e-10);
  EXPECT_TRUE(is_psd(rho, 1e-12).psd);
  EXPECT_TRUE(is_psd(partial_transpose(rho, 3), 1e-12).psd);
}

TEST(Ppt, TraceMatchesStructuredValue) {
  std::mt19937_64 rng(36);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 4;
    const CoefficientMatrix a = random_coefficients(n, rng);
    std::vector<std::vector<double>> alpha(n);
    for (auto& row : alpha) row = random_nonneg(n, rng);
    const StructuredPptState s = structured_state(alpha);
    EXPECT_NEAR(ppt_trace_value(a, s), structured_ppt_value(a, alpha), 1e-12);
    // The pairwise caps alone always keep the partial transpose PSD.
    EXPECT_TRUE(is_psd(partial_transpose(assemble_ppt_state(s), n), 1e-12).psd);
  }
  EXPECT_THROW(structured_ppt_value(kOnes, {{1.0, -1.0, 0.0}, {0, 0, 0}, {0, 0, 0}}), InvalidInput);
}

TEST(Probe, ChoiMapWitness) {
  const auto w = indecomposability_probe(kChoi, quick());
  ASSERT_TRUE(w.has_value());
  EXPECT_LE(w->normalized_value, -1.0 / 7.0 + 1e-6);
  EXPECT_TRUE(verify(kChoi, *w, 1e-9));

  // One-parameter oracle: unit diagonal, weight t on the zero-cost entries and
  // 1/t on the unit-cost ones gives (1 - t) / (1 + t + t^2).
  double grid = 0.0;
  for (int k = 0; k <= 90000; ++k) {
    const double t = 1.0 + k * 1e-4;
    grid = std::min(grid, (1.0 - t) / (1.0 + t + t * t));
  }
  EXPECT_LE(w->normalized_value, grid + 1e-6);

  const HermitianMatrix rho = assemble_ppt_state(w->state);
  EXPECT_GE(hermitian_eigenvalues(rho).values.front(), -1e-12 * rho.trace());
  EXPECT_GE(hermitian_eigenvalues(partial_transpose(rho, 3)).values.front(), -1e-12 * rho.trace());
  EXPECT_NEAR(ppt_trace_value(kChoi, w->state), w->trace_value, 1e-10);
}

TEST(Probe, DecomposableMapsHaveNone) {
  EXPECT_FALSE(indecomposability_probe(kOnes, quick()).has_value());
  EXPECT_FALSE(indecomposability_probe(make(3, std::vector<double>(9, 2.0)), quick()).has_value());
  // Every positive map on 2 x 2 matrices is decomposable.
  std::mt19937_64 rng(37);
  int tested = 0;
  while (tested < 20) {
    const CoefficientMatrix a = random_coefficients(2, rng);
    if (std::sqrt(a(0, 0) * a(1, 1)) + std::sqrt(a(0, 1) * a(1, 0)) < 1.0) {
      EXPECT_TRUE(indecomposability_probe(a, quick()).has_value());
      continue;
    }
    ++tested;
    EXPECT_FALSE(indecomposability_probe(a, quick()).has_value());
  }
}

TEST(Probe, TamperedWitnessRejected) {
  auto w = indecomposability_probe(kChoi, quick());
  ASSERT_TRUE(w.has_value());
  auto bad = *w;
  bad.state.r[0][1] *= 3.0;
  EXPECT_FALSE(verify(kChoi, bad, 1e-9));
  bad = *w;
  bad.trace_value += 1e-6;
  EXPECT_FALSE(verify(kChoi, bad, 1e-9));
}

TEST(Probe, DeterministicAcrossThreads) {
  const auto a = indecomposability_probe(kChoi, quick(1));
  const auto b = indecomposability_probe(kChoi, quick(3));
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->trace_value, b->trace_value);
  EXPECT_EQ(a->state.alpha, b->state.alpha);
  EXPECT_EQ(a->state.r, b->state.r);
}
