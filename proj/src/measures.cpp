#include "monogamy/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "monogamy/error.hpp"
#include "monogamy/roof.hpp"

namespace monogamy {

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::concurrence: return "concurrence";
    case MeasureKind::eof: return "eof";
    case MeasureKind::cren: return "cren";
  }
  return "unknown";
}

MeasureKind measure_kind_from_string(std::string_view name) {
  if (name == "concurrence" || name == "c") return MeasureKind::concurrence;
  if (name == "eof" || name == "e") return MeasureKind::eof;
  if (name == "cren" || name == "n") return MeasureKind::cren;
  throw Error(ErrorCode::config_invalid, "unknown measure '" + std::string(name) + "'");
}

namespace {

void require_two_qubit(const DensityMatrix& rho) {
  if (rho.dims().size() != 2 || rho.dims()[0] != 2 || rho.dims()[1] != 2) {
    throw Error(ErrorCode::wrong_dimensions, "expected a two-qubit state with dims (2, 2)");
  }
}

constexpr double kRankCutoff = 1e-12;

}  // namespace

namespace {

QubitPartition smaller_side(std::span<const std::size_t> dims, const QubitPartition& cut) {
  const BipartiteLayout layout(dims, cut);
  return layout.dim_a() <= layout.dim_b() ? cut : cut.swapped();
}

}  // namespace

PureMeasureEvaluator::PureMeasureEvaluator(std::span<const std::size_t> dims, const QubitPartition& cut)
    : layout_(dims, smaller_side(dims, cut)), qubit_side_(layout_.dim_a() == 2) {}

std::array<double, 2> PureMeasureEvaluator::qubit_schmidt(std::span<const cplx> w) const {
  // weight = s1^2 + s2^2, det = s1^2 s2^2 = sum over 2x2 minors (Cauchy-Binet)
  const std::size_t db = layout_.dim_b();
  double weight = 0.0;
  double det = 0.0;
  for (std::size_t b = 0; b < db; ++b) {
    const cplx u0 = w[layout_.full_index(0, b)];
    const cplx u1 = w[layout_.full_index(1, b)];
    weight += std::norm(u0) + std::norm(u1);
    for (std::size_t b2 = b + 1; b2 < db; ++b2) {
      det += std::norm(u0 * w[layout_.full_index(1, b2)] - w[layout_.full_index(0, b2)] * u1);
    }
  }
  if (weight == 0.0) return {1.0, 0.0};
  const double d = det / (weight * weight);
  const double small = (2.0 * d) / (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * d)));
  return {1.0 - small, small};
}

std::vector<double> PureMeasureEvaluator::schmidt(std::span<const cplx> w) const {
  if (qubit_side_) {
    const auto l = qubit_schmidt(w);
    return {l[0], l[1]};
  }
  auto sv = schmidt_values(w, layout_);
  double weight = 0.0;
  for (double& v : sv) {
    v *= v;
    weight += v;
  }
  if (weight == 0.0) return sv;
  for (double& v : sv) v /= weight;
  return sv;
}

double PureMeasureEvaluator::operator()(MeasureKind kind, std::span<const cplx> w) const {
  return smoothed(kind, w, 0.0);
}

double PureMeasureEvaluator::smoothed(MeasureKind kind, std::span<const cplx> w, double eps) const {
  const double e2 = eps * eps;
  if (qubit_side_) {
    const auto l = qubit_schmidt(w);
    const double prod = l[0] * l[1];
    switch (kind) {
      case MeasureKind::concurrence:
      case MeasureKind::cren: return eps == 0.0 ? 2.0 * std::sqrt(prod) : 2.0 * (std::sqrt(prod + e2) - eps);
      case MeasureKind::eof: return von_neumann_entropy(l);
    }
    return 0.0;
  }
  const auto lambda = schmidt(w);
  switch (kind) {
    case MeasureKind::concurrence: {
      // 2 (1 - sum l_i^2) = 4 sum_{i<j} l_i l_j, summed without cancellation
      double acc = 0.0;
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        for (std::size_t j = i + 1; j < lambda.size(); ++j) acc += lambda[i] * lambda[j];
      }
      return eps == 0.0 ? 2.0 * std::sqrt(acc) : 2.0 * (std::sqrt(acc + e2) - eps);
    }
    case MeasureKind::eof: return von_neumann_entropy(lambda);
    case MeasureKind::cren: {
      if (eps == 0.0) return negativity_from_schmidt(lambda);
      double acc = 0.0;
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        for (std::size_t j = i + 1; j < lambda.size(); ++j) {
          acc += std::sqrt(std::max(0.0, lambda[i] * lambda[j]) + e2) - eps;
        }
      }
      return 2.0 * acc;
    }
  }
  return 0.0;
}

double concurrence_pure(const PureState& psi, const QubitPartition& cut) {
  const auto dims = qubit_dims(psi.n_qubits());
  return PureMeasureEvaluator(dims, cut)(MeasureKind::concurrence, psi.amplitudes());
}

std::vector<double> wootters_values(const DensityMatrix& rho) {
  require_two_qubit(rho);
  // rho = W W^H with W's columns sqrt(nu_j) e_j. The spin-flip values are the
  // singular values of tau = W^T (sy x sy) W, which avoids square roots of
  // the (numerically noisy) zero eigenvalues of rho * rho~.
  const EigenSystem es = hermitian_eigen(rho.matrix());
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < 4; ++k) {
    if (es.values[k] > kRankCutoff) support.push_back(k);
  }
  const std::size_t r = support.size();
  std::vector<double> mu(4, 0.0);
  if (r == 0) return mu;
  CMatrix w(4, r);
  for (std::size_t j = 0; j < r; ++j) {
    const double s = std::sqrt(es.values[support[j]]);
    for (std::size_t i = 0; i < 4; ++i) w(i, j) = s * es.vectors(i, support[j]);
  }
  // sy x sy is antidiag(-1, 1, 1, -1) in the |00>,|01>,|10>,|11> basis.
  CMatrix tau(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = j; k < r; ++k) {
      const cplx v = -w(0, j) * w(3, k) + w(1, j) * w(2, k) + w(2, j) * w(1, k) - w(3, j) * w(0, k);
      tau(j, k) = v;
      tau(k, j) = v;
    }
  }
  const auto sv = singular_values(tau);
  std::copy(sv.begin(), sv.end(), mu.begin());
  return mu;
}

double concurrence_two_qubit(const DensityMatrix& rho) {
  const auto mu = wootters_values(rho);
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double binary_entropy(double x) {
  constexpr double slack = 1e-12;
  if (!(x >= -slack && x <= 1.0 + slack)) {
    throw Error(ErrorCode::domain_error, "binary entropy argument " + std::to_string(x));
  }
  x = std::clamp(x, 0.0, 1.0);
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(x) + term(1.0 - x);
}

double g_func(double x) {
  constexpr double slack = 1e-12;
  if (!(x >= -slack && x <= 1.0 + slack)) {
    throw Error(ErrorCode::domain_error, "g argument " + std::to_string(x));
  }
  x = std::clamp(x, 0.0, 1.0);
  return binary_entropy((1.0 + std::sqrt(1.0 - x)) / 2.0);
}

double g_superadditivity_gap(double x, double y) {
  if (x < 0.0 || y < 0.0) throw Error(ErrorCode::domain_error, "arguments must be nonnegative");
  const double s = x * x + y * y;
  if (s > 1.0 + 1e-12) throw Error(ErrorCode::domain_error, "x^2 + y^2 = " + std::to_string(s) + " exceeds 1");
  constexpr double r2 = std::numbers::sqrt2;
  return std::pow(g_func(s), r2) - std::pow(g_func(x * x), r2) - std::pow(g_func(y * y), r2);
}

double von_neumann_entropy(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double p : eigenvalues) {
    if (p > 1e-14) s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto values = hermitian_eigenvalues(rho.matrix());
  return von_neumann_entropy(values);
}

double eof_pure(const PureState& psi, const QubitPartition& cut) {
  const auto dims = qubit_dims(psi.n_qubits());
  return PureMeasureEvaluator(dims, cut)(MeasureKind::eof, psi.amplitudes());
}

double eof_two_qubit(const DensityMatrix& rho) {
  const double c = concurrence_two_qubit(rho);
  return g_func(c * c);
}

double negativity(const DensityMatrix& rho, std::size_t transposed_factor) {
  return std::max(0.0, trace_norm(partial_transpose(rho, transposed_factor)) - 1.0);
}

double negativity_from_schmidt(std::span<const double> schmidt) {
  double acc = 0.0;
  for (std::size_t i = 0; i < schmidt.size(); ++i) {
    for (std::size_t j = i + 1; j < schmidt.size(); ++j) acc += std::sqrt(schmidt[i] * schmidt[j]);
  }
  return 2.0 * acc;
}

double negativity_pure_schmidt(const PureState& psi, const QubitPartition& cut) {
  return negativity_from_schmidt(schmidt_coefficients(psi, cut));
}

MeasureValue cren_two_by_d(const DensityMatrix& rho, const RoofConfig* roof) {
  if (rho.dims().size() != 2 || rho.dims()[0] != 2) {
    throw Error(ErrorCode::wrong_dimensions, "CREN closed form needs a 2 (x) d state");
  }
  if (rho.dims()[1] == 2) return {MeasureKind::cren, concurrence_two_qubit(rho), true};
  const RoofConfig config = roof != nullptr ? *roof : RoofConfig{};
  const RoofResult result = roof_minimize(rho, MeasureKind::concurrence, QubitPartition(2, {0}), config);
  return {MeasureKind::cren, result.value, result.rank == 1};
}

double pure_measure(MeasureKind kind, const PureState& psi, const QubitPartition& cut) {
  switch (kind) {
    case MeasureKind::concurrence: return concurrence_pure(psi, cut);
    case MeasureKind::eof: return eof_pure(psi, cut);
    case MeasureKind::cren: return negativity_pure_schmidt(psi, cut);
  }
  return 0.0;
}

}  // namespace monogamy
