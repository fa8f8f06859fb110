#pragma once

// Maps of the form Phi_A(X) = Delta_A(X) - X, where Delta_A(X) is diagonal
// with entries sum_j (a_ij + delta_ij) x_jj. Equivalently the image has
// diagonal sum_j a_ij x_jj and off-diagonal -x_ij.
//
// For n = 3 the coefficients carry cyclic names
//
//        | a1 b1 c1 |
//    A = | c2 a2 b2 |
//        | b3 c3 a3 |
//
// i.e. (0-based) a(i) = A[i][i], b(i) = A[i][i+1], c(i) = A[i][i+2], indices
// mod 3. Every criterion reads the n = 3 entries through these accessors.

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gchoi/linalg.hpp"

namespace gchoi {

inline constexpr std::size_t kMaxDimension = 16;
inline constexpr double kClampTolerance = 1e-12;

class CoefficientMatrix {
 public:
  /// Validates and stores an n x n nonnegative matrix given row-major.
  /// Entries in (-1e-12, 0) are clamped to zero.
  CoefficientMatrix(std::size_t n, std::span<const double> row_major);

  std::size_t n() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> entries() const { return data_; }
  std::vector<std::vector<double>> rows() const;

  // Named entries, n = 3 only (NotApplicable otherwise). 0-based cyclic index.
  double a(std::size_t i) const;
  double b(std::size_t i) const;
  double c(std::size_t i) const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

CoefficientMatrix validate_coefficients(const std::vector<std::vector<double>>& raw);

struct CklParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct KyeParams {
  double a = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// Diagonal scaling V = diag(p), p_i > 0.
class ScalingVector {
 public:
  explicit ScalingVector(std::array<double, 3> p);
  const std::array<double, 3>& p() const { return p_; }
  double operator[](std::size_t i) const { return p_[i % 3]; }

 private:
  std::array<double, 3> p_;
};

enum class FormTag { general, constant_ckl, kye_form, cyclic_bc, b_only };

const char* to_string(FormTag tag);

/// Coefficient pattern. `tag` is the most specific match (constant_ckl >
/// kye_form > b_only > cyclic_bc > general); `matched` lists every pattern
/// that fits so criteria can gate on membership instead of the tag alone.
struct FormClass {
  FormTag tag = FormTag::general;
  std::vector<FormTag> matched;
  std::map<std::string, double> parameters;

  bool matches(FormTag t) const;
};

inline constexpr double kFormMatchTolerance = 1e-12;

/// Phi_A on a Hermitian input.
HermitianMatrix apply_map(const CoefficientMatrix& a, const HermitianMatrix& x);

/// Phi_A on an arbitrary square complex matrix (row-major), used for
/// assembling the Choi matrix from images of non-Hermitian matrix units.
std::vector<Complex> apply_map_general(const CoefficientMatrix& a, std::span<const Complex> x);

/// Choi matrix (Phi_A(E_ij))_ij with the block index on the input factor:
/// block (i,i) = diag(column i of A), block (i,j) has -1 at entry (i,j).
HermitianMatrix choi_matrix(const CoefficientMatrix& a);

/// Same matrix assembled by literally applying the map to every E_ij.
HermitianMatrix choi_matrix_from_images(const CoefficientMatrix& a);

/// The n x n matrix with diagonal a_ii and every off-diagonal entry -1.
HermitianMatrix reduced_cp_matrix(const CoefficientMatrix& a);

struct CpResult {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;
};

CpResult cp_check(const CoefficientMatrix& a, double tol = kDefaultPsdTolerance);

CklParams averaged_params(const CoefficientMatrix& a);
CklParams geometric_means(const CoefficientMatrix& a);

/// (1/3)(Phi_A(X) + S Phi_A(S* X S) S* + S* Phi_A(S X S*) S), S e_i = e_{i+1}.
HermitianMatrix shift_average(const CoefficientMatrix& a, const HermitianMatrix& x);

CoefficientMatrix ckl_matrix(const CklParams& p);
CoefficientMatrix kye_matrix(const KyeParams& k);

/// a_i = a, b_i = (p_{i+1}/p_i) b, c_i = (p_{i+2}/p_i) c, i.e. V^{-1} A_[a,b,c] V.
CoefficientMatrix scaled_ckl_matrix(const CklParams& params, const ScalingVector& v);

FormClass classify_form(const CoefficientMatrix& a);

}  // namespace gchoi
