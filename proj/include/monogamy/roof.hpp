#pragma once
// Numerical convex roofs: minimize sum_i p_i M(|phi_i>) over decompositions
// {p_i, |phi_i>} of a mixed state. Every decomposition of size m is
// U * (sqrt(nu_j) |e_j>) for an m x m unitary U acting on the eigen-ensemble;
// U is built up as a product of two-row complex rotations, so iterates never
// leave the set of valid decompositions. The result is an upper bound on the
// true roof.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monogamy/measures.hpp"
#include "monogamy/qstate.hpp"

namespace monogamy {

struct Decomposition {
  std::vector<std::size_t> dims;
  std::vector<double> weights;                // positive, sum to 1
  std::vector<std::vector<cplx>> states;      // unit vectors
};

struct RoofConfig {
  std::size_t ensemble_size = 0;  // 0 selects 2 * rank
  int restarts = 8;
  int max_iters = 500;            // sweeps over all rotation pairs
  double step_tol = 1e-10;        // golden-section bracket width (radians)
  double value_tol = 1e-9;        // stop when a sweep improves less than this
  std::uint64_t seed = 0x5eed0f2007ULL;
};

struct RoofResult {
  double value = 0.0;
  Decomposition decomposition;
  bool converged = false;
  int iterations_used = 0;
  std::size_t rank = 0;
  double eigen_ensemble_value = 0.0;  // objective of the spectral decomposition
  std::size_t best_restart = 0;
  std::vector<double> history;        // best-so-far after each sweep, winning restart
};

// Spectral support of rho: eigenvalues above 1e-12 and their eigenvectors.
struct Support {
  std::vector<double> values;
  std::vector<std::vector<cplx>> vectors;
};
Support spectral_support(const DensityMatrix& rho);

// Members w_i = sum_j V_ij sqrt(nu_j) |e_j>; V is m x r with orthonormal columns.
Decomposition ensemble_from_isometry(const DensityMatrix& rho, const CMatrix& isometry);

RoofResult roof_minimize(const DensityMatrix& rho, MeasureKind kind, const QubitPartition& cut,
                         const RoofConfig& config = {});

// Frobenius norm of rho - sum_i p_i |phi_i><phi_i|.
double validate_decomposition(const DensityMatrix& rho, const Decomposition& d);

// Ensemble average of the pure-state measure.
double average_measure(const Decomposition& d, MeasureKind kind, const QubitPartition& cut);

}  // namespace monogamy
