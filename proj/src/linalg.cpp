#include "gchoi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gchoi/errors.hpp"

namespace gchoi {

HermitianMatrix::HermitianMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw InvalidInput("matrix dimension must be at least 1");
}

HermitianMatrix HermitianMatrix::from_entries(std::size_t dim, std::span<const Complex> row_major) {
  if (row_major.size() != dim * dim) {
    throw InvalidInput("expected " + std::to_string(dim * dim) + " entries, got " +
                       std::to_string(row_major.size()));
  }
  HermitianMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const Complex upper = row_major[i * dim + j];
      const Complex lower = row_major[j * dim + i];
      if (!std::isfinite(upper.real()) || !std::isfinite(upper.imag()) || !std::isfinite(lower.real()) ||
          !std::isfinite(lower.imag())) {
        throw InvalidInput("matrix entries must be finite");
      }
      if (std::abs(upper - std::conj(lower)) > kHermitianTolerance) {
        throw InvalidInput("matrix is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      m.data_[i * dim + j] = upper;
      m.data_[j * dim + i] = std::conj(upper);
    }
    m.data_[i * dim + i] = m.data_[i * dim + i].real();
  }
  return m;
}

HermitianMatrix HermitianMatrix::from_real(std::size_t dim, std::span<const double> row_major) {
  std::vector<Complex> z(row_major.begin(), row_major.end());
  return from_entries(dim, z);
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  HermitianMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.data_[i * dim + i] = 1.0;
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  HermitianMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m.data_[i * values.size() + i] = values[i];
  return m;
}

void HermitianMatrix::set(std::size_t i, std::size_t j, Complex z) {
  if (i == j) {
    data_[i * dim_ + i] = z.real();
    return;
  }
  data_[i * dim_ + j] = z;
  data_[j * dim_ + i] = std::conj(z);
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i].real();
  return t;
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  if (other.dim_ != dim_) throw InvalidInput("dimension mismatch in matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& other) {
  if (other.dim_ != dim_) throw InvalidInput("dimension mismatch in matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  for (auto& z : data_) z *= s;
  return *this;
}

double max_abs_diff(const HermitianMatrix& x, const HermitianMatrix& y) {
  if (x.dim() != y.dim()) throw InvalidInput("dimension mismatch");
  double worst = 0.0;
  auto ex = x.entries();
  auto ey = y.entries();
  for (std::size_t k = 0; k < ex.size(); ++k) worst = std::max(worst, std::abs(ex[k] - ey[k]));
  return worst;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalRatio = 1e-14;

// Cyclic Jacobi on a Hermitian matrix. Each rotation first removes the phase
// of a_pq with a diagonal unitary and then applies the real symmetric
// rotation that zeroes the (now real) pivot.
EigenSystem jacobi(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  std::vector<Complex> a(h.entries().begin(), h.entries().end());
  std::vector<Complex> v(n * n);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double m2 = std::norm(a[i * n + j]);
        (i == j ? diag : off) += m2;
      }
    }
    if (off == 0.0 || std::sqrt(off) < kOffDiagonalRatio * std::sqrt(diag)) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex phase = std::conj(apq / mag);
        const Complex w_pp = c;
        const Complex w_pq = s;
        const Complex w_qp = -s * phase;
        const Complex w_qq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex xp = a[k * n + p];
          const Complex xq = a[k * n + q];
          a[k * n + p] = xp * w_pp + xq * w_qp;
          a[k * n + q] = xp * w_pq + xq * w_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex yp = a[p * n + k];
          const Complex yq = a[q * n + k];
          a[p * n + k] = std::conj(w_pp) * yp + std::conj(w_qp) * yq;
          a[q * n + k] = std::conj(w_pq) * yp + std::conj(w_qq) * yq;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = a[p * n + p].real();
        a[q * n + q] = a[q * n + q].real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex xp = v[k * n + p];
          const Complex xq = v[k * n + q];
          v[k * n + p] = xp * w_pp + xq * w_qp;
          v[k * n + q] = xp * w_pq + xq * w_qq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * n + x].real() < a[y * n + y].real(); });

  EigenSystem out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t k : order) {
    out.values.push_back(a[k * n + k].real());
    ComplexVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[i * n + k];
    out.vectors.push_back(std::move(col));
  }

  for (std::size_t k = 0; k < n; ++k) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex hv = 0.0;
      for (std::size_t j = 0; j < n; ++j) hv += h(i, j) * out.vectors[k][j];
      r2 += std::norm(hv - out.values[k] * out.vectors[k][i]);
    }
    out.residual = std::max(out.residual, std::sqrt(r2));
  }
  return out;
}

}  // namespace

EigenSystem hermitian_eigensystem(const HermitianMatrix& h) { return jacobi(h); }

EigenResult hermitian_eigenvalues(const HermitianMatrix& h) {
  EigenSystem sys = jacobi(h);
  return {std::move(sys.values), sys.residual};
}

PsdResult is_psd(const HermitianMatrix& h, double tol) {
  if (!(tol >= 0.0)) throw InvalidInput("PSD tolerance must be nonnegative");
  const EigenResult eig = hermitian_eigenvalues(h);
  const double lo = eig.values.front();
  return {lo >= -tol, lo};
}

double determinant(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  std::vector<Complex> lu(h.entries().begin(), h.entries().end());
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu[r * n + col]) > std::abs(lu[pivot * n + col])) pivot = r;
    }
    if (lu[pivot * n + col] == Complex(0.0)) return 0.0;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(lu[pivot * n + k], lu[col * n + k]);
      det = -det;
    }
    const Complex d = lu[col * n + col];
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu[r * n + col] / d;
      if (f == Complex(0.0)) continue;
      for (std::size_t k = col + 1; k < n; ++k) lu[r * n + k] -= f * lu[col * n + k];
    }
  }
  // The imaginary part is rounding residue for Hermitian input.
  return det.real();
}

HermitianMatrix partial_transpose(const HermitianMatrix& r, std::size_t n) {
  if (n == 0 || n * n != r.dim()) {
    throw InvalidInput("partial transpose needs an n^2 x n^2 matrix; got dim " + std::to_string(r.dim()) +
                       " for n = " + std::to_string(n));
  }
  std::vector<Complex> out(r.dim() * r.dim());
  const std::size_t d = r.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          out[(i * n + k) * d + (j * n + l)] = r(i * n + l, j * n + k);
        }
      }
    }
  }
  return HermitianMatrix::from_entries(d, out);
}

ComplexVector product_vector(std::span<const Complex> xi, std::span<const Complex> eta) {
  ComplexVector out;
  out.reserve(xi.size() * eta.size());
  for (const Complex& x : xi) {
    for (const Complex& y : eta) out.push_back(x * y);
  }
  return out;
}

HermitianMatrix outer_product(std::span<const Complex> zeta) {
  HermitianMatrix m(zeta.size());
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    for (std::size_t j = i; j < zeta.size(); ++j) m.set(i, j, zeta[i] * std::conj(zeta[j]));
  }
  return m;
}

double expectation(const HermitianMatrix& h, std::span<const Complex> v) {
  if (v.size() != h.dim()) throw InvalidInput("vector length does not match matrix dimension");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) row += h(i, j) * v[j];
    acc += std::conj(v[i]) * row;
  }
  return acc.real();
}

ComplexVector to_complex(std::span<const double> v) { return ComplexVector(v.begin(), v.end()); }

}  // namespace gchoi
