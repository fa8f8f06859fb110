#pragma once

// Dense complex linear algebra at desk scale: Hermitian matrices up to a few
// hundred rows, eigenvalues by cyclic Jacobi rotations, pivoted determinants,
// partial transposition and tensor products.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gchoi {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kDefaultPsdTolerance = 1e-9;

/// Square complex matrix with Hermitian symmetry, stored densely row-major.
///
/// The symmetry is maintained by construction: `set(i, j, z)` writes both
/// (i, j) and the conjugate at (j, i). Only `from_entries` accepts arbitrary
/// data, and it rejects input that is not Hermitian within
/// kHermitianTolerance.
class HermitianMatrix {
 public:
  /// Zero matrix.
  explicit HermitianMatrix(std::size_t dim);

  static HermitianMatrix from_entries(std::size_t dim, std::span<const Complex> row_major);
  static HermitianMatrix from_real(std::size_t dim, std::span<const double> row_major);
  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix diagonal(std::span<const double> values);

  std::size_t dim() const { return dim_; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const Complex> entries() const { return data_; }

  /// Writes z at (i, j) and conj(z) at (j, i). Diagonal writes keep the real part.
  void set(std::size_t i, std::size_t j, Complex z);

  double trace() const;

  HermitianMatrix& operator+=(const HermitianMatrix& other);
  HermitianMatrix& operator-=(const HermitianMatrix& other);
  HermitianMatrix& operator*=(double s);

  friend HermitianMatrix operator+(HermitianMatrix lhs, const HermitianMatrix& rhs) { return lhs += rhs; }
  friend HermitianMatrix operator-(HermitianMatrix lhs, const HermitianMatrix& rhs) { return lhs -= rhs; }
  friend HermitianMatrix operator*(double s, HermitianMatrix m) { return m *= s; }

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of the difference. Dimensions must match.
double max_abs_diff(const HermitianMatrix& x, const HermitianMatrix& y);

struct EigenResult {
  std::vector<double> values;  // ascending
  double residual = 0.0;       // max_k |H v_k - lambda_k v_k|
};

struct EigenSystem {
  std::vector<double> values;   // ascending
  std::vector<ComplexVector> vectors;  // unit eigenvectors, vectors[k] pairs with values[k]
  double residual = 0.0;
};

EigenResult hermitian_eigenvalues(const HermitianMatrix& h);
EigenSystem hermitian_eigensystem(const HermitianMatrix& h);

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

PsdResult is_psd(const HermitianMatrix& h, double tol = kDefaultPsdTolerance);

/// Real determinant by LU elimination with partial pivoting.
double determinant(const HermitianMatrix& h);

/// Transposes every n x n block of an n^2 x n^2 matrix. Global index
/// i * n + k addresses entry k of block row i (0-based).
HermitianMatrix partial_transpose(const HermitianMatrix& r, std::size_t n);

/// xi (x) eta, entry i * dim(eta) + k = xi_i * eta_k.
ComplexVector product_vector(std::span<const Complex> xi, std::span<const Complex> eta);

/// zeta zeta^*.
HermitianMatrix outer_product(std::span<const Complex> zeta);

/// Re <v, H v>.
double expectation(const HermitianMatrix& h, std::span<const Complex> v);

ComplexVector to_complex(std::span<const double> v);

}  // namespace gchoi
