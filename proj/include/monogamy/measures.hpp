#pragma once
// Closed-form entanglement measures: concurrence, entanglement of formation,
// negativity and convex-roof extended negativity (CREN).

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "monogamy/qstate.hpp"

namespace monogamy {

enum class MeasureKind { concurrence, eof, cren };

std::string_view to_string(MeasureKind kind);
MeasureKind measure_kind_from_string(std::string_view name);

struct MeasureValue {
  MeasureKind kind;
  double value;
  bool exact;  // false when the value is a numerical convex-roof estimate
};

struct RoofConfig;

double concurrence_pure(const PureState& psi, const QubitPartition& cut);

// Wootters closed form; rho must be 2x2 with dims (2, 2).
double concurrence_two_qubit(const DensityMatrix& rho);

// Decreasing spin-flip values mu_1 >= ... (only rank(rho) of them are nonzero).
std::vector<double> wootters_values(const DensityMatrix& rho);

double binary_entropy(double x);
double g_func(double x);

// g^{sqrt2}(x^2 + y^2) - g^{sqrt2}(x^2) - g^{sqrt2}(y^2)
double g_superadditivity_gap(double x, double y);

// -sum p log2 p over eigenvalues; values below 1e-14 contribute nothing.
double von_neumann_entropy(std::span<const double> eigenvalues);
double von_neumann_entropy(const DensityMatrix& rho);

double eof_pure(const PureState& psi, const QubitPartition& cut);
double eof_two_qubit(const DensityMatrix& rho);

// ||rho^{T_k}||_1 - 1 (no factor 1/2).
double negativity(const DensityMatrix& rho, std::size_t transposed_factor);

// 2 * sum_{i<j} sqrt(l_i l_j) over the squared Schmidt coefficients.
double negativity_pure_schmidt(const PureState& psi, const QubitPartition& cut);
double negativity_from_schmidt(std::span<const double> schmidt);

// CREN of a 2 (x) d state. Exact (Wootters) for d = 2; a convex-roof estimate
// of the concurrence otherwise, using `roof` (defaults when omitted).
MeasureValue cren_two_by_d(const DensityMatrix& rho, const RoofConfig* roof = nullptr);

// Pure-state value of `kind` across `cut`.
double pure_measure(MeasureKind kind, const PureState& psi, const QubitPartition& cut);

// Evaluates pure-state measures on raw vectors over a fixed register layout.
// Vectors need not be normalized; the value refers to w / ||w||. When one
// side is a single qubit the Schmidt data come from 2x2 minors (closed form),
// otherwise from a Jacobi SVD of the reshaped vector.
class PureMeasureEvaluator {
 public:
  PureMeasureEvaluator(std::span<const std::size_t> dims, const QubitPartition& cut);

  double operator()(MeasureKind kind, std::span<const cplx> w) const;

  // Same, with the sqrt kinks at vanishing Schmidt products rounded off:
  // sqrt(x) -> sqrt(x + eps^2) - eps. eps = 0 gives operator().
  double smoothed(MeasureKind kind, std::span<const cplx> w, double eps) const;

  // Squared Schmidt coefficients of w / ||w||, descending.
  std::vector<double> schmidt(std::span<const cplx> w) const;

 private:
  std::array<double, 2> qubit_schmidt(std::span<const cplx> w) const;

  BipartiteLayout layout_;  // side A is the smaller side
  bool qubit_side_;
};

}  // namespace monogamy
