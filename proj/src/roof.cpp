#include "monogamy/roof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "monogamy/error.hpp"
#include "monogamy/random.hpp"
#include "monogamy/simd/kernels.hpp"

namespace monogamy {
namespace {

constexpr double kRankCutoff = 1e-12;
constexpr double kTiny = 1e-300;
constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio
constexpr int kPairRounds = 16;

using Rows = std::vector<std::vector<cplx>>;

// Rows p, q <- [[c, -s e^{i delta}], [s e^{-i delta}, c]] applied to (x, y).
void rotate(std::span<cplx> x, std::span<cplx> y, double theta, double delta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cplx e = std::polar(1.0, delta);
  simd::rotate_pair(x, y, c, -s * e, s * std::conj(e), c);
}

class PairObjective {
 public:
  PairObjective(const PureMeasureEvaluator& eval, MeasureKind kind, std::size_t dim)
      : eval_(eval), kind_(kind), x_(dim), y_(dim) {}

  double member(std::span<const cplx> w) const {
    const double weight = simd::squared_norm(w);
    if (weight < kTiny) return 0.0;
    return weight * eval_.smoothed(kind_, w, eps_);
  }

  void set_smoothing(double eps) { eps_ = eps; }

  double operator()(std::span<const cplx> x, std::span<const cplx> y, double theta, double delta) {
    std::copy(x.begin(), x.end(), x_.begin());
    std::copy(y.begin(), y.end(), y_.begin());
    rotate(x_, y_, theta, delta);
    return member(x_) + member(y_);
  }

 private:
  const PureMeasureEvaluator& eval_;
  MeasureKind kind_;
  double eps_ = 0.0;
  std::vector<cplx> x_;
  std::vector<cplx> y_;
};

struct LineResult {
  double arg;
  double value;
};

// Coarse scan to pick a bracket, then golden-section refinement inside it.
template <class F>
LineResult line_minimize(F&& f, double lo, double hi, double tol) {
  constexpr int kScan = 8;
  const double step = (hi - lo) / kScan;
  int best = 0;
  double best_value = INFINITY;
  for (int k = 0; k <= kScan; ++k) {
    const double v = f(lo + k * step);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  double a = lo + std::max(0, best - 1) * step;
  double b = lo + std::min(kScan, best + 1) * step;
  LineResult out{lo + best * step, best_value};
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  if (fc < out.value) out = {c, fc};
  if (fd < out.value) out = {d, fd};
  return out;
}

struct RestartOutcome {
  double value = INFINITY;
  Rows rows;
  bool converged = false;
  int sweeps = 0;
  std::vector<double> history;
};

double total(const PairObjective& obj, const Rows& rows) {
  double acc = 0.0;
  for (const auto& r : rows) acc += obj.member(r);
  return acc;
}

RestartOutcome descend(Rows rows, PairObjective& obj, const RoofConfig& config) {
  const std::size_t m = rows.size();
  RestartOutcome out;
  double current = total(obj, rows);
  out.history.push_back(current);
  for (int sweep = 0; sweep < config.max_iters; ++sweep) {
    const double start = current;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        auto& x = rows[p];
        auto& y = rows[q];
        const double base = obj.member(x) + obj.member(y);
        if (base == 0.0) continue;  // nothing left to lower for this pair
        double theta = 0.0;
        double delta = 0.0;
        double value = base;
        auto along_theta = [&](double t) { return obj(x, y, t, delta); };
        auto along_delta = [&](double dl) { return obj(x, y, theta, dl); };
        // alternate theta and the relative phase until the pair stops improving
        for (int round = 0; round < kPairRounds; ++round) {
          const double before = value;
          LineResult r = line_minimize(along_theta, -std::numbers::pi / 2, std::numbers::pi / 2,
                                       config.step_tol);
          if (r.value < value) {
            theta = r.arg;
            value = r.value;
          }
          if (theta == 0.0) break;
          r = line_minimize(along_delta, -std::numbers::pi, std::numbers::pi, config.step_tol);
          if (r.value < value) {
            delta = r.arg;
            value = r.value;
          }
          if (before - value < 1e-3 * config.value_tol) break;
        }
        if (value < base) {
          rotate(x, y, theta, delta);
          current += obj.member(x) + obj.member(y) - base;
        }
      }
    }
    current = total(obj, rows);
    current = std::min(current, out.history.back());
    out.history.push_back(current);
    out.sweeps = sweep + 1;
    if (start - current < config.value_tol) {
      out.converged = true;
      break;
    }
  }
  out.value = total(obj, rows);
  out.rows = std::move(rows);
  return out;
}

// Smoothed stages first so the sweeps are not caught on the sqrt kinks, then
// the true objective.
RestartOutcome run_restart(Rows rows, PairObjective& obj, const RoofConfig& config) {
  int used = 0;
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    obj.set_smoothing(eps);
    RoofConfig loose = config;
    loose.step_tol = std::max(config.step_tol, 1e-3 * eps);
    loose.value_tol = std::max(config.value_tol, 1e-4 * eps);
    RestartOutcome stage = descend(std::move(rows), obj, loose);
    rows = std::move(stage.rows);
    used += stage.sweeps;
  }
  obj.set_smoothing(0.0);
  RestartOutcome out = descend(std::move(rows), obj, config);
  out.sweeps += used;
  return out;
}

Decomposition to_decomposition(const std::vector<std::size_t>& dims, const Rows& rows) {
  Decomposition d;
  d.dims = dims;
  for (const auto& w : rows) {
    const double weight = simd::squared_norm(w);
    if (weight < kTiny) continue;
    const double norm = std::sqrt(weight);
    std::vector<cplx> state(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) state[i] = w[i] / norm;
    d.weights.push_back(weight);
    d.states.push_back(std::move(state));
  }
  return d;
}

}  // namespace

Support spectral_support(const DensityMatrix& rho) {
  const EigenSystem es = hermitian_eigen(rho.matrix());
  Support s;
  const std::size_t n = rho.dimension();
  for (std::size_t k = n; k-- > 0;) {
    if (es.values[k] <= kRankCutoff) continue;
    s.values.push_back(es.values[k]);
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = es.vectors(i, k);
    s.vectors.push_back(std::move(v));
  }
  return s;
}

Decomposition ensemble_from_isometry(const DensityMatrix& rho, const CMatrix& isometry) {
  const Support support = spectral_support(rho);
  const std::size_t r = support.values.size();
  if (isometry.cols() != r) {
    throw Error(ErrorCode::rank_mismatch, "isometry has " + std::to_string(isometry.cols()) +
                                              " columns but rank(rho) = " + std::to_string(r));
  }
  const CMatrix gram = isometry.adjoint() * isometry;
  if ((gram - CMatrix::identity(r)).frobenius_norm() > 1e-10 * std::max<double>(1.0, r)) {
    throw Error(ErrorCode::not_an_isometry, "columns are not orthonormal");
  }
  const std::size_t n = rho.dimension();
  Rows rows(isometry.rows(), std::vector<cplx>(n));
  for (std::size_t i = 0; i < isometry.rows(); ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      simd::axpy(isometry(i, j) * std::sqrt(support.values[j]), support.vectors[j], rows[i]);
    }
  }
  return to_decomposition(rho.dims(), rows);
}

double validate_decomposition(const DensityMatrix& rho, const Decomposition& d) {
  if (d.weights.size() != d.states.size()) {
    throw Error(ErrorCode::shape_mismatch, "weights and states differ in count");
  }
  const std::size_t n = rho.dimension();
  CMatrix residual = rho.matrix();
  for (std::size_t i = 0; i < d.states.size(); ++i) {
    if (d.states[i].size() != n) {
      throw Error(ErrorCode::shape_mismatch, "member state of length " + std::to_string(d.states[i].size()) +
                                                 " for a matrix of side " + std::to_string(n));
    }
    const auto& s = d.states[i];
    for (std::size_t a = 0; a < n; ++a) {
      const cplx sa = d.weights[i] * s[a];
      auto row = residual.row(a);
      for (std::size_t b = 0; b < n; ++b) row[b] -= sa * std::conj(s[b]);
    }
  }
  return residual.frobenius_norm();
}

double average_measure(const Decomposition& d, MeasureKind kind, const QubitPartition& cut) {
  const PureMeasureEvaluator eval(d.dims, cut);
  double acc = 0.0;
  for (std::size_t i = 0; i < d.states.size(); ++i) acc += d.weights[i] * eval(kind, d.states[i]);
  return acc;
}

RoofResult roof_minimize(const DensityMatrix& rho, MeasureKind kind, const QubitPartition& cut,
                         const RoofConfig& config) {
  if (config.restarts < 1) throw Error(ErrorCode::config_invalid, "restarts must be at least 1");
  if (config.max_iters < 1) throw Error(ErrorCode::config_invalid, "max_iters must be at least 1");
  if (!(config.step_tol > 0.0) || !(config.value_tol > 0.0)) {
    throw Error(ErrorCode::config_invalid, "tolerances must be positive");
  }
  const PureMeasureEvaluator eval(rho.dims(), cut);
  const Support support = spectral_support(rho);
  const std::size_t r = support.values.size();
  const std::size_t n = rho.dimension();
  if (r == 0) throw Error(ErrorCode::domain_error, "density matrix has empty support");

  Rows base(r, std::vector<cplx>(n));
  for (std::size_t j = 0; j < r; ++j) {
    const double s = std::sqrt(support.values[j]);
    for (std::size_t i = 0; i < n; ++i) base[j][i] = s * support.vectors[j][i];
  }

  RoofResult result;
  result.rank = r;
  PairObjective obj(eval, kind, n);
  result.eigen_ensemble_value = total(obj, base);

  if (r == 1) {
    result.value = eval(kind, support.vectors[0]);
    result.decomposition = to_decomposition(rho.dims(), base);
    result.converged = true;
    result.iterations_used = 1;
    result.history = {result.value};
    return result;
  }

  const std::size_t m = config.ensemble_size == 0 ? 2 * r : config.ensemble_size;
  if (m < r) {
    throw Error(ErrorCode::config_invalid, "ensemble size " + std::to_string(m) + " below rank " + std::to_string(r));
  }
  base.resize(m, std::vector<cplx>(n));

  RestartOutcome best;
  for (int k = 0; k < config.restarts; ++k) {
    Rows start = base;
    if (k > 0) {
      CounterRng rng(derive_seed(config.seed, static_cast<std::uint64_t>(k)));
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t p = 0; p + 1 < m; ++p) {
          for (std::size_t q = p + 1; q < m; ++q) {
            const double theta = std::acos(std::sqrt(rng.uniform()));
            rotate(start[p], start[q], theta, rng.uniform(-std::numbers::pi, std::numbers::pi));
          }
        }
      }
    }
    RestartOutcome outcome = run_restart(std::move(start), obj, config);
    if (outcome.value < best.value) {
      best = std::move(outcome);
      result.best_restart = static_cast<std::size_t>(k);
    }
  }

  // the spectral ensemble is always a valid candidate
  if (best.value > result.eigen_ensemble_value) {
    base.resize(r);
    best.value = result.eigen_ensemble_value;
    best.rows = std::move(base);
  }

  result.value = best.value;
  result.decomposition = to_decomposition(rho.dims(), best.rows);
  result.converged = best.converged;
  result.iterations_used = best.sweeps;
  result.history = std::move(best.history);
  return result;
}

}  // namespace monogamy
