#include "monogamy/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "monogamy/error.hpp"
#include "monogamy/random.hpp"
#include "monogamy/simd/kernels.hpp"

namespace monogamy {
namespace {

constexpr double kStateTolerance = 1e-10;

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void check_qubit_count(std::size_t n_qubits) {
  if (n_qubits == 0) throw Error(ErrorCode::wrong_dimensions, "a register needs at least one qubit");
  if (n_qubits > kMaxQubits) {
    throw Error(ErrorCode::dimension_too_large,
                std::to_string(n_qubits) + " qubits exceeds the limit of " + std::to_string(kMaxQubits));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(std::size_t n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits_);
  if (amplitudes_.size() != (std::size_t{1} << n_qubits_)) {
    throw Error(ErrorCode::wrong_dimensions, "expected " + std::to_string(std::size_t{1} << n_qubits_) +
                                                 " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
  const double norm2 = simd::squared_norm(amplitudes_);
  if (std::abs(norm2 - 1.0) > kStateTolerance) {
    throw Error(ErrorCode::invalid_normalization, "squared norm " + std::to_string(norm2));
  }
}

PureState PureState::normalized(std::size_t n_qubits, std::vector<cplx> amplitudes) {
  const double norm = std::sqrt(simd::squared_norm(amplitudes));
  if (norm == 0.0) throw Error(ErrorCode::invalid_normalization, "zero vector");
  for (cplx& a : amplitudes) a /= norm;
  return PureState(n_qubits, std::move(amplitudes));
}

PureState PureState::basis(std::size_t n_qubits, std::size_t index) {
  check_qubit_count(n_qubits);
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  if (index >= amps.size()) throw Error(ErrorCode::index_out_of_range, "basis index " + std::to_string(index));
  amps[index] = 1.0;
  return PureState(n_qubits, std::move(amps));
}

// ---------------------------------------------------------------------------
// QubitPartition

QubitPartition::QubitPartition(std::size_t n_parties, std::vector<std::size_t> side_a)
    : n_parties_(n_parties), side_a_(std::move(side_a)) {
  std::sort(side_a_.begin(), side_a_.end());
  if (side_a_.empty()) throw Error(ErrorCode::index_out_of_range, "side A of a partition is empty");
  if (std::adjacent_find(side_a_.begin(), side_a_.end()) != side_a_.end()) {
    throw Error(ErrorCode::index_out_of_range, "duplicate index in partition");
  }
  if (side_a_.back() >= n_parties_) {
    throw Error(ErrorCode::index_out_of_range,
                "index " + std::to_string(side_a_.back()) + " outside 0.." + std::to_string(n_parties_ - 1));
  }
  for (std::size_t i = 0; i < n_parties_; ++i) {
    if (!std::binary_search(side_a_.begin(), side_a_.end(), i)) side_b_.push_back(i);
  }
  if (side_b_.empty()) throw Error(ErrorCode::index_out_of_range, "side B of a partition is empty");
}

QubitPartition QubitPartition::first_vs_rest(std::size_t n_parties) { return QubitPartition(n_parties, {0}); }

QubitPartition QubitPartition::swapped() const { return QubitPartition(n_parties_, side_b_); }

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(std::vector<std::size_t> dims, CMatrix matrix)
    : DensityMatrix(std::move(dims), std::move(matrix), TrustedTag{}) {
  const double herm = matrix_.hermiticity_error();
  if (herm > kStateTolerance) {
    throw Error(ErrorCode::domain_error, "density matrix is not Hermitian (error " + std::to_string(herm) + ")");
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kStateTolerance) {
    throw Error(ErrorCode::invalid_normalization, "density matrix trace " + std::to_string(tr));
  }
  const auto values = hermitian_eigenvalues(matrix_);
  if (!values.empty() && values.front() < -kStateTolerance) {
    throw Error(ErrorCode::domain_error,
                "density matrix has eigenvalue " + std::to_string(values.front()));
  }
}

DensityMatrix::DensityMatrix(std::vector<std::size_t> dims, CMatrix matrix, TrustedTag)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  if (dims_.empty()) throw Error(ErrorCode::wrong_dimensions, "no tensor factors");
  for (std::size_t d : dims_) {
    if (d < 2) throw Error(ErrorCode::wrong_dimensions, "tensor factor of dimension " + std::to_string(d));
  }
  if (!matrix_.is_square()) throw Error(ErrorCode::non_square_input, "density matrix must be square");
  if (matrix_.rows() != product(dims_)) {
    throw Error(ErrorCode::wrong_dimensions, "matrix side " + std::to_string(matrix_.rows()) +
                                                 " does not match the factor dimensions");
  }
}

DensityMatrix DensityMatrix::qubits(CMatrix matrix) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < matrix.rows()) ++n;
  if ((std::size_t{1} << n) != matrix.rows() || n == 0) {
    throw Error(ErrorCode::wrong_dimensions, "side " + std::to_string(matrix.rows()) + " is not a power of two");
  }
  return DensityMatrix(qubit_dims(n), std::move(matrix));
}

DensityMatrix DensityMatrix::trusted(std::vector<std::size_t> dims, CMatrix matrix) {
  return DensityMatrix(std::move(dims), std::move(matrix), TrustedTag{});
}

// ---------------------------------------------------------------------------
// BipartiteLayout

BipartiteLayout::BipartiteLayout(std::span<const std::size_t> dims, const QubitPartition& cut) {
  if (cut.n_parties() != dims.size()) {
    throw Error(ErrorCode::index_out_of_range, "partition over " + std::to_string(cut.n_parties()) +
                                                   " factors applied to " + std::to_string(dims.size()));
  }
  // stride of each factor in the full (big-endian) index
  std::vector<std::size_t> stride(dims.size());
  std::size_t s = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    stride[k] = s;
    s *= dims[k];
  }
  auto offsets = [&](const std::vector<std::size_t>& factors, std::size_t& total) {
    total = 1;
    for (std::size_t f : factors) total *= dims[f];
    std::vector<std::size_t> out(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      std::size_t off = 0;
      for (std::size_t k = factors.size(); k-- > 0;) {
        const std::size_t d = dims[factors[k]];
        off += (rem % d) * stride[factors[k]];
        rem /= d;
      }
      out[idx] = off;
    }
    return out;
  };
  offset_a_ = offsets(cut.side_a(), dim_a_);
  offset_b_ = offsets(cut.side_b(), dim_b_);
  for (std::size_t f : cut.side_a()) factor_dims_a_.push_back(dims[f]);
}

std::vector<std::size_t> BipartiteLayout::dims_a() const { return factor_dims_a_; }

std::vector<std::size_t> qubit_dims(std::size_t n_qubits) { return std::vector<std::size_t>(n_qubits, 2); }

// ---------------------------------------------------------------------------
// Constructors of states

PureState make_gsd_state(const GsdParams& params) {
  double norm2 = 0.0;
  for (double l : params.lambda) {
    if (l < 0.0) throw Error(ErrorCode::domain_error, "Schmidt coefficients must be nonnegative");
    norm2 += l * l;
  }
  if (std::abs(norm2 - 1.0) > 1e-8) {
    throw Error(ErrorCode::invalid_normalization, "sum of squared coefficients is " + std::to_string(norm2));
  }
  const auto& l = params.lambda;
  std::vector<cplx> amps(8);
  amps[0b000] = l[0];
  amps[0b100] = l[1] * std::polar(1.0, params.phi);
  // lambda_2 pairs A with B (C_AB = 2 lambda_0 lambda_2), lambda_3 pairs A with C
  amps[0b110] = l[2];
  amps[0b101] = l[3];
  amps[0b111] = l[4];
  return PureState::normalized(3, std::move(amps));
}

PureState haar_random_pure(std::size_t n_qubits, std::uint64_t seed) {
  check_qubit_count(n_qubits);
  CounterRng rng(seed);
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  for (cplx& a : amps) a = rng.complex_gaussian();
  return PureState::normalized(n_qubits, std::move(amps));
}

DensityMatrix density_of(const PureState& psi) {
  return DensityMatrix::trusted(qubit_dims(psi.n_qubits()), CMatrix::outer(psi.amplitudes()));
}

// ---------------------------------------------------------------------------
// Tensor operations

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitPartition& keep) {
  const BipartiteLayout layout(rho.dims(), keep);
  const std::size_t da = layout.dim_a();
  const std::size_t db = layout.dim_b();
  const CMatrix& m = rho.matrix();
  CMatrix out(da, da);
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t a2 = 0; a2 < da; ++a2) {
      cplx acc = 0.0;
      for (std::size_t b = 0; b < db; ++b) acc += m(layout.full_index(a, b), layout.full_index(a2, b));
      out(a, a2) = acc;
    }
  }
  return DensityMatrix::trusted(layout.dims_a(), std::move(out));
}

CMatrix reduced_matrix(std::span<const cplx> amplitudes, const BipartiteLayout& layout) {
  const std::size_t da = layout.dim_a();
  const std::size_t db = layout.dim_b();
  // rows of `shaped` are the side-B vectors attached to each side-A digit
  CMatrix shaped(da, db);
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t b = 0; b < db; ++b) shaped(a, b) = amplitudes[layout.full_index(a, b)];
  }
  CMatrix out(da, da);
  for (std::size_t a = 0; a < da; ++a) {
    out(a, a) = simd::squared_norm(shaped.row(a));
    for (std::size_t a2 = a + 1; a2 < da; ++a2) {
      const cplx v = simd::inner_product(shaped.row(a2), shaped.row(a));
      out(a, a2) = v;
      out(a2, a) = std::conj(v);
    }
  }
  return out;
}

DensityMatrix reduced_density(const PureState& psi, const QubitPartition& keep) {
  const auto dims = qubit_dims(psi.n_qubits());
  const BipartiteLayout layout(dims, keep);
  return DensityMatrix::trusted(layout.dims_a(), reduced_matrix(psi.amplitudes(), layout));
}

CMatrix partial_transpose(const DensityMatrix& rho, std::size_t transposed_factor) {
  const auto& dims = rho.dims();
  if (transposed_factor >= dims.size()) {
    throw Error(ErrorCode::index_out_of_range, "factor " + std::to_string(transposed_factor) +
                                                   " outside 0.." + std::to_string(dims.size() - 1));
  }
  if (dims.size() == 1) return rho.matrix().transpose();
  const BipartiteLayout layout(dims, QubitPartition(dims.size(), {transposed_factor}));
  const CMatrix& m = rho.matrix();
  CMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < layout.dim_a(); ++i) {
    for (std::size_t j = 0; j < layout.dim_a(); ++j) {
      for (std::size_t b = 0; b < layout.dim_b(); ++b) {
        for (std::size_t b2 = 0; b2 < layout.dim_b(); ++b2) {
          out(layout.full_index(i, b), layout.full_index(j, b2)) =
              m(layout.full_index(j, b), layout.full_index(i, b2));
        }
      }
    }
  }
  return out;
}

double trace_norm(const CMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::non_square_input, "trace norm of a non-square matrix");
  const double scale = std::max(1.0, m.frobenius_norm());
  if (m.hermiticity_error() <= 1e-12 * scale) {
    double acc = 0.0;
    for (double v : hermitian_eigenvalues(m)) acc += std::abs(v);
    return acc;
  }
  const auto sv = singular_values(m);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

std::vector<double> schmidt_values(std::span<const cplx> amplitudes, const BipartiteLayout& layout) {
  CMatrix shaped(layout.dim_a(), layout.dim_b());
  for (std::size_t a = 0; a < layout.dim_a(); ++a) {
    for (std::size_t b = 0; b < layout.dim_b(); ++b) shaped(a, b) = amplitudes[layout.full_index(a, b)];
  }
  return singular_values(shaped);
}

std::vector<double> schmidt_coefficients(const PureState& psi, const QubitPartition& cut) {
  const auto dims = qubit_dims(psi.n_qubits());
  auto values = schmidt_values(psi.amplitudes(), BipartiteLayout(dims, cut));
  for (double& v : values) v *= v;
  return values;
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return simd::squared_norm(rho.matrix().data());
}

}  // namespace monogamy
