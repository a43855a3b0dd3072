#include "monogamy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "monogamy/error.hpp"
#include "monogamy/simd/kernels.hpp"

namespace monogamy {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::shape_mismatch, "matrix data length " + std::to_string(data_.size()) +
                                               " does not match " + std::to_string(rows_) + "x" +
                                               std::to_string(cols_));
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
  CMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMatrix CMatrix::outer(std::span<const cplx> ket) {
  const std::size_t n = ket.size();
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

CMatrix CMatrix::conjugate() const {
  CMatrix out = *this;
  for (cplx& v : out.data_) v = std::conj(v);
  return out;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const { return std::sqrt(simd::squared_norm(data_)); }

double CMatrix::hermiticity_error() const {
  if (!is_square()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return worst;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::shape_mismatch, "matrix addition of different shapes");
  }
  simd::axpy(1.0, other.data_, data_);
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::shape_mismatch, "matrix subtraction of different shapes");
  }
  simd::axpy(-1.0, other.data_, data_);
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& v : data_) v *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::shape_mismatch, "matrix product of incompatible shapes");
  }
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik != cplx{}) simd::axpy(aik, b.row(k), out_row);
    }
  }
  return out;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) acc += std::norm(a(i, j));
    }
  }
  return std::sqrt(acc);
}

}  // namespace

EigenSystem hermitian_eigen(const CMatrix& input, const JacobiOptions& options) {
  if (!input.is_square()) {
    throw Error(ErrorCode::non_square_input, "eigen decomposition of a non-square matrix");
  }
  const std::size_t n = input.rows();
  CMatrix a = input;
  // Symmetrize so that round-off in the input cannot leak into the rotations.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  // Rows of `w` are the eigenvectors; transposed on output.
  CMatrix w = CMatrix::identity(n);
  const double threshold = options.tolerance * std::max(1.0, a.frobenius_norm());

  EigenSystem result;
  int sweep = 0;
  for (; sweep < options.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      result.converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = apq / mag;  // e^{i theta}
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // rows p, q <- J^H A
        simd::rotate_pair(a.row(p), a.row(q), c, -s * phase, s, c * phase);
        // Columns follow from Hermiticity of J^H A J; J only mixes columns p, q.
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = std::conj(a(p, k));
          a(k, q) = std::conj(a(q, k));
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        simd::rotate_pair(w.row(p), w.row(q), c, -s * std::conj(phase), s, c * std::conj(phase));
      }
    }
  }
  if (!result.converged && off_diagonal_norm(a) <= threshold) result.converged = true;
  result.sweeps = sweep;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  result.values.resize(n);
  result.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    result.values[k] = a(order[k], order[k]).real();
    const auto vec = w.row(order[k]);
    for (std::size_t i = 0; i < n; ++i) result.vectors(i, k) = vec[i];
  }
  return result;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& a, const JacobiOptions& options) {
  return hermitian_eigen(a, options).values;
}

std::vector<double> singular_values(const CMatrix& input, const JacobiOptions& options) {
  // Orthogonalize the rows of the shorter side; the row norms are then the
  // singular values.
  CMatrix m = input.rows() <= input.cols() ? input : input.adjoint();
  const std::size_t k = m.rows();
  std::vector<double> norms(k);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const double alpha = simd::squared_norm(m.row(i));
        const double beta = simd::squared_norm(m.row(j));
        const cplx gamma = simd::inner_product(m.row(i), m.row(j));
        const double mag = std::abs(gamma);
        if (mag == 0.0 || mag <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx phase = std::conj(gamma / mag);
        const double zeta = (beta - alpha) / (2.0 * mag);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        simd::rotate_pair(m.row(i), m.row(j), c, -s * phase, s, c * phase);
      }
    }
    if (!rotated) break;
  }
  for (std::size_t i = 0; i < k; ++i) norms[i] = std::sqrt(simd::squared_norm(m.row(i)));
  std::sort(norms.begin(), norms.end(), std::greater<>());
  return norms;
}

double clamp_psd_eigenvalue(double value) {
  return (value < 0.0 && value >= -1e-10) ? 0.0 : value;
}

CMatrix psd_sqrt(const CMatrix& a) {
  const EigenSystem es = hermitian_eigen(a);
  const std::size_t n = a.rows();
  CMatrix scaled = es.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = clamp_psd_eigenvalue(es.values[k]);
    if (v < 0.0) {
      throw Error(ErrorCode::domain_error,
                  "square root of a matrix with eigenvalue " + std::to_string(v));
    }
    const double r = std::sqrt(v);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= r;
  }
  return scaled * es.vectors.adjoint();
}

}  // namespace monogamy
