#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gchoi/errors.hpp"
#include "gchoi/linalg.hpp"

using namespace gchoi;

namespace {

HermitianMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h.set(i, i, g(rng));
    for (std::size_t j = i + 1; j < n; ++j) h.set(i, j, {g(rng), g(rng)});
  }
  return h;
}

// <v, H v> computed entrywise, independent of the library helper.
Complex quad(const HermitianMatrix& h, const ComplexVector& v) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    for (std::size_t j = 0; j < h.dim(); ++j) s += std::conj(v[i]) * h(i, j) * v[j];
  }
  return s;
}

}  // namespace

TEST(Eigen, AllOnes) {
  const std::vector<double> ones(9, 1.0);
  const auto r = hermitian_eigenvalues(HermitianMatrix::from_real(3, ones));
  ASSERT_EQ(r.values.size(), 3u);
  EXPECT_NEAR(r.values[0], 0.0, 1e-12);
  EXPECT_NEAR(r.values[1], 0.0, 1e-12);
  EXPECT_NEAR(r.values[2], 3.0, 1e-12);
}

TEST(Eigen, TwoIMinusJ) {
  const std::vector<double> m{1, -1, -1, -1, 1, -1, -1, -1, 1};
  const auto r = hermitian_eigenvalues(HermitianMatrix::from_real(3, m));
  EXPECT_NEAR(r.values[0], -1.0, 1e-12);
  EXPECT_NEAR(r.values[1], 2.0, 1e-12);
  EXPECT_NEAR(r.values[2], 2.0, 1e-12);
}

TEST(Eigen, ComplexTwoByTwo) {
  HermitianMatrix h(2);
  h.set(0, 0, 2.0);
  h.set(1, 1, 2.0);
  h.set(0, 1, {0.0, 1.0});
  const auto r = hermitian_eigenvalues(h);
  EXPECT_NEAR(r.values[0], 1.0, 1e-13);
  EXPECT_NEAR(r.values[1], 3.0, 1e-13);
}

TEST(Eigen, RandomInvariants) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 2u, 3u, 5u, 9u, 16u}) {
    for (int rep = 0; rep < 10; ++rep) {
      const HermitianMatrix h = random_hermitian(n, rng);
      const EigenSystem sys = hermitian_eigensystem(h);
      double tr = 0.0, fro = 0.0, sum = 0.0, sumsq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        tr += h(i, i).real();
        for (std::size_t j = 0; j < n; ++j) fro += std::norm(h(i, j));
      }
      for (double v : sys.values) {
        sum += v;
        sumsq += v * v;
      }
      EXPECT_NEAR(sum, tr, 1e-10 * (1.0 + std::abs(tr)));
      EXPECT_NEAR(sumsq, fro, 1e-10 * (1.0 + fro));
      EXPECT_TRUE(std::is_sorted(sys.values.begin(), sys.values.end()));
      EXPECT_LT(sys.residual, 1e-10);
      for (std::size_t k = 0; k < n; ++k) {
        // Rayleigh quotient of each unit eigenvector reproduces its eigenvalue.
        EXPECT_NEAR(quad(h, sys.vectors[k]).real(), sys.values[k], 1e-10);
        for (std::size_t l = k + 1; l < n; ++l) {
          Complex ip = 0.0;
          for (std::size_t i = 0; i < n; ++i) ip += std::conj(sys.vectors[k][i]) * sys.vectors[l][i];
          EXPECT_LT(std::abs(ip), 1e-10);
        }
      }
    }
  }
}

TEST(Eigen, Deterministic) {
  std::mt19937_64 rng(11);
  const HermitianMatrix h = random_hermitian(7, rng);
  const auto a = hermitian_eigenvalues(h);
  const auto b = hermitian_eigenvalues(h);
  EXPECT_EQ(a.values, b.values);
}

TEST(Psd, ToleranceBoundary) {
  const std::vector<double> d{1.0, -5e-10};
  EXPECT_TRUE(is_psd(HermitianMatrix::diagonal(d), 1e-9).psd);
  EXPECT_FALSE(is_psd(HermitianMatrix::diagonal(d), 1e-10).psd);
  EXPECT_NEAR(is_psd(HermitianMatrix::diagonal(d)).min_eigenvalue, -5e-10, 1e-20);
  EXPECT_THROW(is_psd(HermitianMatrix::diagonal(d), -1.0), InvalidInput);
}

TEST(Determinant, SmallCases) {
  const std::vector<double> m{2, 1, 1, 2};
  EXPECT_NEAR(determinant(HermitianMatrix::from_real(2, m)), 3.0, 1e-14);
  HermitianMatrix c(2);
  c.set(0, 0, 2.0);
  c.set(1, 1, 3.0);
  c.set(0, 1, {1.0, 1.0});
  EXPECT_NEAR(determinant(c), 4.0, 1e-14);
  // Needs a pivot swap.
  const std::vector<double> p{0, 1, 1, 0};
  EXPECT_NEAR(determinant(HermitianMatrix::from_real(2, p)), -1.0, 1e-14);
}

TEST(Determinant, ProductOfEigenvalues) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const HermitianMatrix h = random_hermitian(4, rng);
    double prod = 1.0;
    for (double v : hermitian_eigenvalues(h).values) prod *= v;
    EXPECT_NEAR(determinant(h), prod, 1e-9 * (1.0 + std::abs(prod)));
  }
}

TEST(Hermitian, RejectsAsymmetricInput) {
  const std::vector<Complex> bad{1.0, 2.0, 3.0, 1.0};
  EXPECT_THROW(HermitianMatrix::from_entries(2, bad), InvalidInput);
  const std::vector<Complex> imag_diag{{1.0, 0.5}, 0.0, 0.0, 1.0};
  EXPECT_THROW(HermitianMatrix::from_entries(2, imag_diag), InvalidInput);
  const std::vector<Complex> ok{1.0, {0.0, 2.0}, {0.0, -2.0}, 1.0};
  EXPECT_NO_THROW(HermitianMatrix::from_entries(2, ok));
  EXPECT_THROW(HermitianMatrix(0), InvalidInput);
}

TEST(PartialTranspose, Involution) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {2u, 3u, 4u}) {
    const HermitianMatrix r = random_hermitian(n * n, rng);
    EXPECT_EQ(max_abs_diff(partial_transpose(partial_transpose(r, n), n), r), 0.0);
  }
}

TEST(PartialTranspose, ProductOperator) {
  // (X (x) Y)^Gamma = X (x) Y^T with the second factor transposed.
  std::mt19937_64 rng(9);
  const std::size_t n = 3;
  const HermitianMatrix x = random_hermitian(n, rng);
  const HermitianMatrix y = random_hermitian(n, rng);
  std::vector<Complex> kron(n * n * n * n), kron_t(n * n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          kron[(i * n + k) * n * n + (j * n + l)] = x(i, j) * y(k, l);
          kron_t[(i * n + k) * n * n + (j * n + l)] = x(i, j) * y(l, k);
        }
  const HermitianMatrix r = HermitianMatrix::from_entries(n * n, kron);
  const HermitianMatrix expected = HermitianMatrix::from_entries(n * n, kron_t);
  EXPECT_LT(max_abs_diff(partial_transpose(r, n), expected), 1e-15);
  EXPECT_THROW(partial_transpose(HermitianMatrix(5), 2), InvalidInput);
}

TEST(ProductVector, Ordering) {
  const ComplexVector xi{1.0, 2.0};
  const ComplexVector eta{3.0, 5.0, 7.0};
  const ComplexVector v = product_vector(xi, eta);
  const ComplexVector expected{3.0, 5.0, 7.0, 6.0, 10.0, 14.0};
  EXPECT_EQ(v, expected);
}

TEST(Expectation, MatchesOuterProductTrace) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  const HermitianMatrix h = random_hermitian(4, rng);
  ComplexVector v(4);
  for (auto& z : v) z = {g(rng), g(rng)};
  EXPECT_NEAR(expectation(h, v), quad(h, v).real(), 1e-12);
  // Tr(H v v^*) = <v, H v>.
  const HermitianMatrix p = outer_product(v);
  Complex tr = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) tr += h(i, j) * p(j, i);
  EXPECT_NEAR(tr.real(), expectation(h, v), 1e-12);
}
