#include "gchoi/choi_maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gchoi/errors.hpp"

namespace gchoi {

CoefficientMatrix::CoefficientMatrix(std::size_t n, std::span<const double> row_major)
    : n_(n), data_(row_major.begin(), row_major.end()) {
  if (n < 2) throw InvalidInput("coefficient matrix must be at least 2 x 2");
  if (n > kMaxDimension) {
    throw InvalidInput("coefficient matrix larger than " + std::to_string(kMaxDimension) + " x " +
                       std::to_string(kMaxDimension) + " is not supported");
  }
  if (data_.size() != n * n) throw InvalidInput("coefficient matrix is not square");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    double& x = data_[k];
    if (!std::isfinite(x)) throw InvalidInput("coefficient entries must be finite");
    if (x < 0.0) {
      if (x > -kClampTolerance) {
        x = 0.0;
      } else {
        throw InvalidInput("negative coefficient " + std::to_string(x) + " at (" + std::to_string(k / n + 1) +
                           ", " + std::to_string(k % n + 1) + ")");
      }
    }
  }
}

std::vector<std::vector<double>> CoefficientMatrix::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(data_.begin() + i * n_, data_.begin() + (i + 1) * n_);
  return out;
}

namespace {

void require_three(std::size_t n, const char* what) {
  if (n != 3) throw NotApplicable(std::string(what) + " is defined for 3 x 3 coefficient matrices only");
}

}  // namespace

double CoefficientMatrix::a(std::size_t i) const {
  require_three(n_, "named entry a_i");
  i %= 3;
  return (*this)(i, i);
}

double CoefficientMatrix::b(std::size_t i) const {
  require_three(n_, "named entry b_i");
  i %= 3;
  return (*this)(i, (i + 1) % 3);
}

double CoefficientMatrix::c(std::size_t i) const {
  require_three(n_, "named entry c_i");
  i %= 3;
  return (*this)(i, (i + 2) % 3);
}

CoefficientMatrix validate_coefficients(const std::vector<std::vector<double>>& raw) {
  const std::size_t n = raw.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : raw) {
    if (row.size() != n) throw InvalidInput("coefficient matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return CoefficientMatrix(n, flat);
}

ScalingVector::ScalingVector(std::array<double, 3> p) : p_(p) {
  for (double x : p_) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("scaling vector entries must be positive and finite");
  }
}

const char* to_string(FormTag tag) {
  switch (tag) {
    case FormTag::general: return "general";
    case FormTag::constant_ckl: return "constant_ckl";
    case FormTag::kye_form: return "kye_form";
    case FormTag::cyclic_bc: return "cyclic_bc";
    case FormTag::b_only: return "b_only";
  }
  return "general";
}

bool FormClass::matches(FormTag t) const { return std::find(matched.begin(), matched.end(), t) != matched.end(); }

std::vector<Complex> apply_map_general(const CoefficientMatrix& a, std::span<const Complex> x) {
  const std::size_t n = a.n();
  if (x.size() != n * n) throw InvalidInput("input matrix dimension does not match the coefficient matrix");
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = -x[i * n + j];
    Complex d = 0.0;
    for (std::size_t j = 0; j < n; ++j) d += a(i, j) * x[j * n + j];
    out[i * n + i] = d;
  }
  return out;
}

HermitianMatrix apply_map(const CoefficientMatrix& a, const HermitianMatrix& x) {
  const std::size_t n = a.n();
  if (x.dim() != n) throw InvalidInput("input matrix dimension does not match the coefficient matrix");
  HermitianMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) d += a(i, j) * x(j, j).real();
    out.set(i, i, d);
    for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, -x(i, j));
  }
  return out;
}

HermitianMatrix choi_matrix(const CoefficientMatrix& a) {
  const std::size_t n = a.n();
  HermitianMatrix c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) c.set(i * n + k, i * n + k, a(k, i));
    for (std::size_t j = i + 1; j < n; ++j) c.set(i * n + i, j * n + j, -1.0);
  }
  return c;
}

HermitianMatrix choi_matrix_from_images(const CoefficientMatrix& a) {
  const std::size_t n = a.n();
  const std::size_t d = n * n;
  std::vector<Complex> c(d * d);
  std::vector<Complex> unit(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(unit.begin(), unit.end(), Complex(0.0));
      unit[i * n + j] = 1.0;
      const std::vector<Complex> img = apply_map_general(a, unit);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) c[(i * n + k) * d + (j * n + l)] = img[k * n + l];
      }
    }
  }
  return HermitianMatrix::from_entries(d, c);
}

HermitianMatrix reduced_cp_matrix(const CoefficientMatrix& a) {
  const std::size_t n = a.n();
  HermitianMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.set(i, i, a(i, i));
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, -1.0);
  }
  return d;
}

CpResult cp_check(const CoefficientMatrix& a, double tol) {
  const PsdResult r = is_psd(reduced_cp_matrix(a), tol);
  return {r.psd, r.min_eigenvalue};
}

CklParams averaged_params(const CoefficientMatrix& a) {
  require_three(a.n(), "averaged_params");
  CklParams p;
  for (std::size_t i = 0; i < 3; ++i) {
    p.a += a.a(i);
    p.b += a.b(i);
    p.c += a.c(i);
  }
  p.a /= 3.0;
  p.b /= 3.0;
  p.c /= 3.0;
  return p;
}

CklParams geometric_means(const CoefficientMatrix& a) {
  require_three(a.n(), "geometric_means");
  return {std::cbrt(a.a(0) * a.a(1) * a.a(2)), std::cbrt(a.b(0) * a.b(1) * a.b(2)),
          std::cbrt(a.c(0) * a.c(1) * a.c(2))};
}

namespace {

// (S Y S*)_{ij} = Y_{i-1, j-1} for S e_i = e_{i+1}; shift = -1 gives S* Y S.
HermitianMatrix cyclic_conjugate(const HermitianMatrix& y, int shift) {
  const std::size_t n = y.dim();
  const std::size_t back = shift > 0 ? n - 1 : 1;  // source index offset
  HermitianMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.set(i, j, y((i + back) % n, (j + back) % n));
  }
  return out;
}

}  // namespace

HermitianMatrix shift_average(const CoefficientMatrix& a, const HermitianMatrix& x) {
  require_three(a.n(), "shift_average");
  HermitianMatrix sum = apply_map(a, x);
  sum += cyclic_conjugate(apply_map(a, cyclic_conjugate(x, -1)), 1);
  sum += cyclic_conjugate(apply_map(a, cyclic_conjugate(x, 1)), -1);
  sum *= 1.0 / 3.0;
  return sum;
}

CoefficientMatrix ckl_matrix(const CklParams& p) {
  const std::vector<double> flat{p.a, p.b, p.c,  //
                                 p.c, p.a, p.b,  //
                                 p.b, p.c, p.a};
  return CoefficientMatrix(3, flat);
}

CoefficientMatrix kye_matrix(const KyeParams& k) {
  const std::vector<double> flat{k.a,  0.0,  k.c1,  //
                                 k.c2, k.a,  0.0,   //
                                 0.0,  k.c3, k.a};
  return CoefficientMatrix(3, flat);
}

CoefficientMatrix scaled_ckl_matrix(const CklParams& params, const ScalingVector& v) {
  std::vector<double> flat(9, 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    flat[i * 3 + i] = params.a;
    flat[i * 3 + (i + 1) % 3] = v[i + 1] / v[i] * params.b;
    flat[i * 3 + (i + 2) % 3] = v[i + 2] / v[i] * params.c;
  }
  return CoefficientMatrix(3, flat);
}

namespace {

bool all_equal(double x, double y, double z) {
  return std::abs(x - y) <= kFormMatchTolerance && std::abs(y - z) <= kFormMatchTolerance &&
         std::abs(x - z) <= kFormMatchTolerance;
}

}  // namespace

FormClass classify_form(const CoefficientMatrix& a) {
  FormClass form;
  if (a.n() != 3) {
    form.matched = {FormTag::general};
    return form;
  }
  const bool equal_a = all_equal(a.a(0), a.a(1), a.a(2));
  const bool equal_b = all_equal(a.b(0), a.b(1), a.b(2));
  const bool equal_c = all_equal(a.c(0), a.c(1), a.c(2));
  const bool zero_b = std::max({a.b(0), a.b(1), a.b(2)}) <= kFormMatchTolerance;
  const bool zero_c = std::max({a.c(0), a.c(1), a.c(2)}) <= kFormMatchTolerance;
  const bool positive_b = std::min({a.b(0), a.b(1), a.b(2)}) > kFormMatchTolerance;

  auto& prm = form.parameters;
  if (equal_a && equal_b && equal_c) {
    form.matched.push_back(FormTag::constant_ckl);
    prm["a"] = a.a(0);
    prm["b"] = a.b(0);
    prm["c"] = a.c(0);
  }
  if (equal_a && zero_b) {
    form.matched.push_back(FormTag::kye_form);
    prm["a"] = a.a(0);
    prm["c1"] = a.c(0);
    prm["c2"] = a.c(1);
    prm["c3"] = a.c(2);
  }
  if (zero_c && positive_b) {
    form.matched.push_back(FormTag::b_only);
    prm["b1"] = a.b(0);
    prm["b2"] = a.b(1);
    prm["b3"] = a.b(2);
  }
  if (equal_b && equal_c) {
    form.matched.push_back(FormTag::cyclic_bc);
    prm["b"] = a.b(0);
    prm["c"] = a.c(0);
  }
  if (!form.matched.empty()) {
    prm["a1"] = a.a(0);
    prm["a2"] = a.a(1);
    prm["a3"] = a.a(2);
  }
  form.matched.push_back(FormTag::general);
  form.tag = form.matched.front();
  return form;
}

}  // namespace gchoi
