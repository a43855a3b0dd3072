#pragma once
// Small dense complex matrices (side <= 64) and the Jacobi eigen/singular
// value solvers used throughout. Storage is row-major.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace monogamy {

using cplx = std::complex<double>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> values);
  static CMatrix outer(std::span<const cplx> ket);  // |v><v|

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conjugate() const;

  cplx trace() const;
  double frobenius_norm() const;
  // max_ij |a_ij - conj(a_ji)|
  double hermiticity_error() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix kron(const CMatrix& a, const CMatrix& b);

struct JacobiOptions {
  double tolerance = 1e-13;  // on the off-diagonal Frobenius norm (relative when ||A||_F > 1)
  int max_sweeps = 100;
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k is the eigenvector of values[k]
  bool converged = false;
  int sweeps = 0;
};

// Cyclic complex Jacobi. The input is assumed Hermitian; only that part of it
// is used.
EigenSystem hermitian_eigen(const CMatrix& a, const JacobiOptions& options = {});
std::vector<double> hermitian_eigenvalues(const CMatrix& a, const JacobiOptions& options = {});

// One-sided (Hestenes) Jacobi; returns min(rows, cols) values, descending.
std::vector<double> singular_values(const CMatrix& a, const JacobiOptions& options = {});

// Principal square root of a PSD matrix; eigenvalues in [-1e-10, 0) are clamped to 0.
CMatrix psd_sqrt(const CMatrix& a);

double clamp_psd_eigenvalue(double value);

}  // namespace monogamy
