#pragma once
// Pure and mixed states of small registers. Factor 0 is the leftmost tensor
// factor and the most significant digit of a basis index (big-endian).

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "monogamy/linalg.hpp"

namespace monogamy {

inline constexpr std::size_t kMaxQubits = 12;

class PureState {
 public:
  // Requires amplitudes.size() == 2^n_qubits and unit norm within 1e-10.
  PureState(std::size_t n_qubits, std::vector<cplx> amplitudes);

  // Rescales to unit norm; rejects the zero vector.
  static PureState normalized(std::size_t n_qubits, std::vector<cplx> amplitudes);
  static PureState basis(std::size_t n_qubits, std::size_t index);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  std::size_t n_qubits_;
  std::vector<cplx> amplitudes_;
};

// A bipartition of the factors 0..n-1 into two nonempty complementary sets.
class QubitPartition {
 public:
  QubitPartition(std::size_t n_parties, std::vector<std::size_t> side_a);

  // {0} | {1..n-1}
  static QubitPartition first_vs_rest(std::size_t n_parties);

  std::size_t n_parties() const { return n_parties_; }
  const std::vector<std::size_t>& side_a() const { return side_a_; }
  const std::vector<std::size_t>& side_b() const { return side_b_; }
  QubitPartition swapped() const;

 private:
  std::size_t n_parties_;
  std::vector<std::size_t> side_a_;
  std::vector<std::size_t> side_b_;
};

class DensityMatrix {
 public:
  // Validates side, Hermiticity, unit trace and PSD (all within 1e-10).
  DensityMatrix(std::vector<std::size_t> dims, CMatrix matrix);

  // Qubit register of log2(side) factors.
  static DensityMatrix qubits(CMatrix matrix);

  // Skips the PSD eigen-check; for matrices produced by this library from
  // valid states, where positivity holds by construction.
  static DensityMatrix trusted(std::vector<std::size_t> dims, CMatrix matrix);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t n_factors() const { return dims_.size(); }
  std::size_t dimension() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }

 private:
  struct TrustedTag {};
  DensityMatrix(std::vector<std::size_t> dims, CMatrix matrix, TrustedTag);

  std::vector<std::size_t> dims_;
  CMatrix matrix_;
};

struct GsdParams {
  std::array<double, 5> lambda{};
  double phi = 0.0;
};

// Index bookkeeping for viewing a register as (side A) x (side B).
// full_index(a, b) is the register index whose side-A digits spell a and
// whose side-B digits spell b (each in ascending factor order).
class BipartiteLayout {
 public:
  BipartiteLayout(std::span<const std::size_t> dims, const QubitPartition& cut);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t full_index(std::size_t a, std::size_t b) const { return offset_a_[a] + offset_b_[b]; }
  std::vector<std::size_t> dims_a() const;

 private:
  std::size_t dim_a_ = 1;
  std::size_t dim_b_ = 1;
  std::vector<std::size_t> offset_a_;
  std::vector<std::size_t> offset_b_;
  std::vector<std::size_t> factor_dims_a_;
};

std::vector<std::size_t> qubit_dims(std::size_t n_qubits);

// l0|000> + l1 e^{i phi}|100> + l2|110> + l3|101> + l4|111>, so that
// C_AB = 2 l0 l2 and C_AC = 2 l0 l3.
PureState make_gsd_state(const GsdParams& params);
PureState haar_random_pure(std::size_t n_qubits, std::uint64_t seed);

DensityMatrix density_of(const PureState& psi);

// Keeps the factors in keep.side_a() (ascending order).
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitPartition& keep);

// Reduced state on keep.side_a() computed directly from amplitudes.
DensityMatrix reduced_density(const PureState& psi, const QubitPartition& keep);
// Same, for an arbitrary (not necessarily normalized) vector over `dims`.
CMatrix reduced_matrix(std::span<const cplx> amplitudes, const BipartiteLayout& layout);

CMatrix partial_transpose(const DensityMatrix& rho, std::size_t transposed_factor);

double trace_norm(const CMatrix& m);

// Squared Schmidt coefficients (eigenvalues of the smaller reduced state),
// descending, length min(d_A, d_B).
std::vector<double> schmidt_coefficients(const PureState& psi, const QubitPartition& cut);

// Singular values of the d_A x d_B reshaping of `amplitudes`, descending.
// These are the (unsquared) Schmidt coefficients for a unit vector; small
// ones keep full absolute accuracy, unlike square roots of eigenvalues.
std::vector<double> schmidt_values(std::span<const cplx> amplitudes, const BipartiteLayout& layout);

double purity(const DensityMatrix& rho);

}  // namespace monogamy
