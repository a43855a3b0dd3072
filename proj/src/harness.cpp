#include "monogamy/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "monogamy/error.hpp"
#include "monogamy/random.hpp"

namespace monogamy {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kBetaSlack = 1e-12;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CheckStatus status_for(double margin, bool exact) {
  if (!exact) return CheckStatus::heuristic;
  return margin < kViolationThreshold ? CheckStatus::violation : CheckStatus::verified;
}

BoundCheck make_check(BoundId id, MeasureKind kind, double beta, double lhs_pow, double rhs, bool exact) {
  const double margin = lhs_pow - rhs;
  return {id, kind, beta, lhs_pow, rhs, margin, status_for(margin, exact), {}};
}

BoundCheck inapplicable_check(BoundId id, MeasureKind kind, double beta, double lhs_pow) {
  return {id, kind, beta, lhs_pow, 0.0, 0.0, CheckStatus::inapplicable, "ordering precondition not met"};
}

double measure_beta_floor(MeasureKind kind) {
  return kind == MeasureKind::eof ? 2.0 * kSqrt2 : 4.0;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool wants(const std::optional<BoundId>& only, BoundId id) { return !only || *only == id; }

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::verified: return "verified";
    case CheckStatus::heuristic: return "heuristic";
    case CheckStatus::inapplicable: return "inapplicable";
    case CheckStatus::violation: return "VIOLATION";
  }
  return "unknown";
}

std::string_view to_string(StateFamily family) {
  switch (family) {
    case StateFamily::haar: return "haar";
    case StateFamily::gsd: return "gsd";
    case StateFamily::gsd_saturating: return "gsd-saturating";
    case StateFamily::gsd_symmetric: return "gsd-symmetric";
    case StateFamily::product: return "product";
    case StateFamily::w_class: return "w-class";
  }
  return "unknown";
}

StateFamily state_family_from_string(std::string_view name) {
  for (StateFamily f : {StateFamily::haar, StateFamily::gsd, StateFamily::gsd_saturating,
                        StateFamily::gsd_symmetric, StateFamily::product, StateFamily::w_class}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::config_invalid, "unknown state family '" + std::string(name) + "'");
}

const MeasureSet* BoundReport::find(MeasureKind kind) const {
  for (const auto& m : measures) {
    if (m.kind == kind) return &m;
  }
  return nullptr;
}

bool BoundReport::all_constants_ok() const {
  return std::all_of(constants.begin(), constants.end(), [](const ConstantCheck& c) { return c.ok; });
}

std::size_t BoundReport::count(CheckStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const BoundCheck& c) { return c.status == status; }));
}

// ---------------------------------------------------------------------------
// Campaign configuration and sampling

namespace {

void validate_common(const CampaignConfig& config) {
  if (config.n_qubits < 3 || config.n_qubits > 6) {
    throw Error(ErrorCode::config_invalid, "qubits must be in 3..6, got " + std::to_string(config.n_qubits));
  }
  if (config.samples < 1) throw Error(ErrorCode::config_invalid, "samples must be at least 1");
  if (config.beta_grid.empty()) throw Error(ErrorCode::config_invalid, "beta grid is empty");
  const bool gsd = config.family == StateFamily::gsd || config.family == StateFamily::gsd_saturating ||
                   config.family == StateFamily::gsd_symmetric;
  if (gsd && config.n_qubits != 3) {
    throw Error(ErrorCode::config_invalid, "generalized Schmidt states are 3-qubit states");
  }
  if (config.roof_config.restarts < 1 || config.roof_config.max_iters < 1 ||
      !(config.roof_config.step_tol > 0.0) || !(config.roof_config.value_tol > 0.0)) {
    throw Error(ErrorCode::config_invalid, "invalid convex-roof settings");
  }
}

}  // namespace

void validate(const CampaignConfig& config) {
  validate_common(config);
  if (config.measures.empty()) throw Error(ErrorCode::config_invalid, "no measures selected");
  for (MeasureKind kind : config.measures) {
    const double floor = measure_beta_floor(kind);
    for (double beta : config.beta_grid) {
      if (!(beta >= floor - kBetaSlack)) {
        throw Error(ErrorCode::config_invalid, "beta " + format_double(beta) + " is below " +
                                                   format_double(floor) + " required for " +
                                                   std::string(to_string(kind)));
      }
    }
  }
}

std::string state_id(const CampaignConfig& config, std::uint64_t sample_index) {
  std::ostringstream os;
  os << to_string(config.family) << config.n_qubits << '-' << sample_index << '-' << std::hex
     << std::setw(16) << std::setfill('0') << derive_seed(config.seed, sample_index);
  return os.str();
}

PureState sample_state(const CampaignConfig& config, std::uint64_t sample_index) {
  const std::uint64_t key = derive_seed(config.seed, sample_index);
  switch (config.family) {
    case StateFamily::haar: return haar_random_pure(config.n_qubits, key);
    case StateFamily::gsd:
    case StateFamily::gsd_saturating:
    case StateFamily::gsd_symmetric: {
      CounterRng rng(key);
      GsdParams params;
      double norm2 = 0.0;
      for (double& l : params.lambda) l = std::abs(rng.gaussian());
      if (config.family == StateFamily::gsd_saturating) {
        params.lambda[1] = 0.0;
        params.lambda[4] = 0.0;
      }
      if (config.family == StateFamily::gsd_symmetric) params.lambda[3] = params.lambda[2];
      for (double l : params.lambda) norm2 += l * l;
      for (double& l : params.lambda) l /= std::sqrt(norm2);
      params.phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
      return make_gsd_state(params);
    }
    case StateFamily::product: {
      CounterRng rng(key);
      std::vector<cplx> amps{1.0};
      for (std::size_t q = 0; q < config.n_qubits; ++q) {
        const cplx a = rng.complex_gaussian();
        const cplx b = rng.complex_gaussian();
        std::vector<cplx> next;
        next.reserve(amps.size() * 2);
        for (const cplx& v : amps) {
          next.push_back(v * a);
          next.push_back(v * b);
        }
        amps = std::move(next);
      }
      return PureState::normalized(config.n_qubits, std::move(amps));
    }
    case StateFamily::w_class: {
      CounterRng rng(key);
      const std::size_t n = config.n_qubits;
      std::vector<cplx> amps(std::size_t{1} << n);
      amps[0] = std::abs(rng.gaussian());
      const std::size_t a_bit = std::size_t{1} << (n - 1);
      for (std::size_t k = 1; k < n; ++k) {
        amps[a_bit | (std::size_t{1} << (n - 1 - k))] = std::abs(rng.gaussian());
      }
      return PureState::normalized(n, std::move(amps));
    }
  }
  throw Error(ErrorCode::config_invalid, "unknown state family");
}

// ---------------------------------------------------------------------------
// Per-state evaluation

BoundReport evaluate_state(const PureState& psi, const CampaignConfig& config, std::optional<BoundId> only) {
  const auto start = Clock::now();
  const std::size_t n = psi.n_qubits();
  if (n < 3) throw Error(ErrorCode::config_invalid, "monogamy checks need at least 3 qubits");
  BoundReport report;

  std::vector<MeasureKind> kinds = only ? std::vector<MeasureKind>{bound_measure(*only)} : config.measures;
  auto selected = [&](MeasureKind k) { return std::find(kinds.begin(), kinds.end(), k) != kinds.end(); };

  // Pairwise two-qubit states are always exact (Wootters).
  MeasureSet conc{MeasureKind::concurrence, 0.0, {}, {}, {}};
  std::vector<DensityMatrix> pair_states;
  for (std::size_t k = 1; k < n; ++k) {
    pair_states.push_back(reduced_density(psi, QubitPartition(n, {0, k})));
    conc.pairs.push_back(concurrence_two_qubit(pair_states.back()));
  }
  conc.global = concurrence_pure(psi, QubitPartition::first_vs_rest(n));

  // Tails A | B_{i+1} ... B_{N-1}; the last one is a two-qubit state.
  std::vector<double> eof_tails;
  std::vector<bool> eof_tail_exact;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (i == n - 2) {
      conc.tails.push_back(conc.pairs.back());
      conc.tail_exact.push_back(true);
      eof_tails.push_back(g_func(conc.pairs.back() * conc.pairs.back()));
      eof_tail_exact.push_back(true);
      continue;
    }
    std::vector<std::size_t> keep{0};
    for (std::size_t q = i + 1; q < n; ++q) keep.push_back(q);
    const DensityMatrix tail_state = reduced_density(psi, QubitPartition(n, keep));
    const QubitPartition tail_cut(keep.size(), {0});
    const RoofResult c_roof = roof_minimize(tail_state, MeasureKind::concurrence, tail_cut, config.roof_config);
    conc.tails.push_back(c_roof.value);
    conc.tail_exact.push_back(c_roof.rank == 1);
    if (selected(MeasureKind::eof)) {
      const RoofResult e_roof = roof_minimize(tail_state, MeasureKind::eof, tail_cut, config.roof_config);
      eof_tails.push_back(e_roof.value);
      eof_tail_exact.push_back(e_roof.rank == 1);
    } else {
      eof_tails.push_back(0.0);
      eof_tail_exact.push_back(false);
    }
  }
  report.classification = classify_ordering(conc.pairs, conc.tails);
  if (report.classification.kind == OrderingClass::split || n >= 4) {
    report.notes.emplace_back("tail values for N >= 4 are convex-roof upper estimates");
  }

  const bool tails_exact = std::all_of(conc.tail_exact.begin(), conc.tail_exact.end(), [](bool b) { return b; });
  const auto& cls = report.classification;

  for (MeasureKind kind : kinds) {
    MeasureSet set{kind, 0.0, {}, {}, {}};
    switch (kind) {
      case MeasureKind::concurrence: set = conc; break;
      case MeasureKind::eof:
        set.global = eof_pure(psi, QubitPartition::first_vs_rest(n));
        for (double c : conc.pairs) set.pairs.push_back(g_func(c * c));
        set.tails = eof_tails;
        set.tail_exact = eof_tail_exact;
        break;
      case MeasureKind::cren:
        // CREN equals concurrence on 2 (x) d states; the pairs and tails carry over.
        set = conc;
        set.kind = MeasureKind::cren;
        set.global = negativity_pure_schmidt(psi, QubitPartition::first_vs_rest(n));
        break;
    }
    const bool set_exact = std::all_of(set.tail_exact.begin(), set.tail_exact.end(), [](bool b) { return b; });

    for (double beta : config.beta_grid) {
      const double lhs = std::pow(set.global, beta);
      BoundInputs in;
      in.beta = beta;
      in.pair_values = set.pairs;
      in.tail_values = set.tails;
      in.tail_exact = set.tail_exact;

      if (kind == MeasureKind::concurrence || kind == MeasureKind::cren) {
        const bool is_c = kind == MeasureKind::concurrence;
        const BoundId forward = is_c ? BoundId::thm1 : BoundId::thm5;
        const BoundId split = is_c ? BoundId::thm2 : BoundId::thm4;
        if (is_c && wants(only, BoundId::zhu)) {
          report.checks.push_back(make_check(BoundId::zhu, kind, beta, lhs, rhs_zhu(set.pairs, beta), true));
        }
        if (cls.kind == OrderingClass::fully_ordered) {
          if (wants(only, forward)) {
            const auto b = is_c ? rhs_concurrence_thm1(in) : rhs_cren_thm5(in);
            report.checks.push_back(make_check(forward, kind, beta, lhs, b.rhs_total, tails_exact && set_exact));
          }
          if (n == 3 && is_c && only && *only == BoundId::lemma2) {
            const auto b = rhs_lemma2_concurrence(set.pairs[0], set.pairs[1], beta);
            report.checks.push_back(make_check(BoundId::lemma2, kind, beta, lhs, b.rhs_total, true));
          }
          if (n == 3 && wants(only, BoundId::jzsz_c)) {
            report.checks.push_back(make_check(BoundId::jzsz_c, kind, beta, lhs,
                                               rhs_jzsz_concurrence(set.pairs[0], set.pairs[1], beta), true));
          }
        } else if (cls.kind == OrderingClass::split) {
          in.m_split = cls.m;
          if (wants(only, split)) {
            const auto b = is_c ? rhs_concurrence_thm2(in) : rhs_cren_thm4(in);
            report.checks.push_back(make_check(split, kind, beta, lhs, b.rhs_total, tails_exact && set_exact));
            if (!is_c) report.checks.back().note = "tails read as A|B_{i+1}...B_{N-1}";
          }
          if (is_c && wants(only, BoundId::jin)) {
            report.checks.push_back(
                make_check(BoundId::jin, kind, beta, lhs, rhs_jin(set.pairs, beta, cls.m), tails_exact));
          }
        } else if (!only || *only == forward || *only == split) {
          report.checks.push_back(inapplicable_check(n >= 4 && only && *only == split ? split : forward, kind,
                                                     beta, lhs));
        }
      } else {
        if (wants(only, BoundId::zhu) && !only) {
          report.checks.push_back(make_check(BoundId::zhu, kind, beta, lhs, rhs_zhu(set.pairs, beta), true));
        }
        if (cls.kind == OrderingClass::fully_ordered) {
          in.concurrence_ordering = true;
          if (wants(only, BoundId::thm3)) {
            const auto b = rhs_eof_thm3(in);
            report.checks.push_back(make_check(BoundId::thm3, kind, beta, lhs, b.rhs_total, tails_exact && set_exact));
          }
          if (n == 3 && wants(only, BoundId::jzsz_e)) {
            report.checks.push_back(make_check(BoundId::jzsz_e, kind, beta, lhs,
                                               rhs_jzsz_eof(set.pairs[0], set.pairs[1], beta), true));
          }
        } else if (!only || *only == BoundId::thm3) {
          report.checks.push_back(inapplicable_check(BoundId::thm3, kind, beta, lhs));
        }
      }
    }
    report.measures.push_back(std::move(set));
  }
  report.seconds = seconds_since(start);
  return report;
}

CampaignSummary run_campaign(const CampaignConfig& config) {
  validate(config);
  const auto start = Clock::now();
  CampaignSummary summary;
  std::ofstream out;
  if (!config.output_path.empty()) {
    out.open(config.output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot open " + config.output_path);
  }
  for (std::uint64_t i = 0; i < config.samples; ++i) {
    BoundReport report = evaluate_state(sample_state(config, i), config);
    report.state_id = state_id(config, i);
    report.sample_index = i;
    summary.verified += report.count(CheckStatus::verified);
    summary.heuristic += report.count(CheckStatus::heuristic);
    summary.inapplicable += report.count(CheckStatus::inapplicable);
    summary.violations += report.count(CheckStatus::violation);
    if (report.classification.kind == OrderingClass::fully_ordered) ++summary.fully_ordered_states;
    if (report.classification.kind == OrderingClass::split) ++summary.split_states;
    if (out) out << to_json_line(report) << '\n';
    summary.reports.push_back(std::move(report));
  }
  summary.states = config.samples;
  if (out) {
    out << to_json_line(summary, config) << '\n';
    if (!out) throw Error(ErrorCode::io_error, "write failed for " + config.output_path);
  }
  summary.seconds = seconds_since(start);
  return summary;
}

// ---------------------------------------------------------------------------
// Worked examples and figure data

GsdParams example_params(int id) {
  GsdParams p;
  switch (id) {
    case 1:
    case 3:
      p.lambda = {kSqrt2 / 3.0, 0.0, std::sqrt(5.0) / 3.0, kSqrt2 / 3.0, 0.0};
      return p;
    case 2:
      p.lambda = {std::sqrt(6.0) / 3.0, 0.0, kSqrt2 / 3.0, 1.0 / 3.0, 0.0};
      return p;
    default:
      throw Error(ErrorCode::invalid_range, "example id must be 1, 2 or 3, got " + std::to_string(id));
  }
}

namespace {

struct ExampleValues {
  MeasureKind kind;
  double global;
  double ab;
  double ac;
};

ExampleValues example_values(int id) {
  const PureState psi = make_gsd_state(example_params(id));
  const DensityMatrix rho_ab = reduced_density(psi, QubitPartition(3, {0, 1}));
  const DensityMatrix rho_ac = reduced_density(psi, QubitPartition(3, {0, 2}));
  const QubitPartition a_bc = QubitPartition::first_vs_rest(3);
  switch (id) {
    case 1:
      return {MeasureKind::concurrence, concurrence_pure(psi, a_bc), concurrence_two_qubit(rho_ab),
              concurrence_two_qubit(rho_ac)};
    case 2:
      return {MeasureKind::eof, eof_pure(psi, a_bc), eof_two_qubit(rho_ab), eof_two_qubit(rho_ac)};
    default: {
      // A | BC as a 2 (x) 4 bipartite state, negativity from the partial transpose
      const DensityMatrix rho = DensityMatrix::trusted({2, 4}, CMatrix::outer(psi.amplitudes()));
      return {MeasureKind::cren, negativity(rho, 0), cren_two_by_d(rho_ab).value, cren_two_by_d(rho_ac).value};
    }
  }
}

struct RhsPair {
  BoundId new_id;
  double rhs_new;
  BoundId old_id;
  double rhs_jzsz;
};

RhsPair example_rhs(const ExampleValues& v, double beta) {
  BoundInputs in;
  in.beta = beta;
  in.pair_values = {v.ab, v.ac};
  in.tail_values = {v.ac};
  switch (v.kind) {
    case MeasureKind::concurrence:
      return {BoundId::lemma2, rhs_lemma2_concurrence(v.ab, v.ac, beta).rhs_total, BoundId::jzsz_c,
              rhs_jzsz_concurrence(v.ab, v.ac, beta)};
    case MeasureKind::eof:
      in.concurrence_ordering = true;
      return {BoundId::thm3, rhs_eof_thm3(in).rhs_total, BoundId::jzsz_e, rhs_jzsz_eof(v.ab, v.ac, beta)};
    case MeasureKind::cren:
      return {BoundId::thm5, rhs_cren_thm5(in).rhs_total, BoundId::jzsz_c, rhs_jzsz_concurrence(v.ab, v.ac, beta)};
  }
  return {};
}

}  // namespace

BoundReport reproduce_example(int id) {
  const auto start = Clock::now();
  const GsdParams params = example_params(id);
  const ExampleValues v = example_values(id);
  BoundReport report;
  report.state_id = "example-" + std::to_string(id);

  const auto& l = params.lambda;
  const double closed_global = 2.0 * l[0] * std::sqrt(l[2] * l[2] + l[3] * l[3] + l[4] * l[4]);
  auto add = [&](std::string name, double computed, double expected, double tol) {
    report.constants.push_back({std::move(name), computed, expected, tol, std::abs(computed - expected) <= tol});
  };
  switch (id) {
    case 1:
      add("C_A|BC", v.global, 2.0 * std::sqrt(14.0) / 9.0, 1e-10);
      add("C_AB", v.ab, 2.0 * std::sqrt(10.0) / 9.0, 1e-10);
      add("C_AC", v.ac, 4.0 / 9.0, 1e-10);
      add("C_A|BC closed form", v.global, closed_global, 1e-10);
      add("C_AB closed form", v.ab, 2.0 * l[0] * l[2], 1e-10);
      add("C_AC closed form", v.ac, 2.0 * l[0] * l[3], 1e-10);
      break;
    case 2:
      add("E_A|BC", v.global, 0.91829, 5e-5);
      add("E_AB", v.ab, 0.68193, 5e-5);
      add("E_AC", v.ac, 0.40416, 5e-5);
      break;
    default:
      add("Nc_A|BC", v.global, 2.0 * std::sqrt(14.0) / 9.0, 1e-9);
      add("Nc_AB", v.ab, 2.0 * std::sqrt(10.0) / 9.0, 1e-9);
      add("Nc_AC", v.ac, 4.0 / 9.0, 1e-9);
      add("Nc_A|BC closed form", v.global, closed_global, 1e-9);
      break;
  }

  MeasureSet set{v.kind, v.global, {v.ab, v.ac}, {v.ac}, {true}};
  report.measures.push_back(set);
  report.classification = classify_ordering(set.pairs, set.tails);

  for (double beta : beta_grid(figure_beta_floor(id), 10.0, 13)) {
    const RhsPair r = example_rhs(v, beta);
    const double lhs = std::pow(v.global, beta);
    BoundCheck fresh = make_check(r.new_id, v.kind, beta, lhs, r.rhs_new, true);
    std::ostringstream note;
    note << "rhs_new - rhs_jzsz = " << format_double(r.rhs_new - r.rhs_jzsz);
    fresh.note = note.str();
    report.checks.push_back(fresh);
    report.checks.push_back(make_check(r.old_id, v.kind, beta, lhs, r.rhs_jzsz, true));
  }
  report.seconds = seconds_since(start);
  return report;
}

double figure_beta_floor(int id) {
  if (id == 2) return 2.0 * kSqrt2;
  if (id == 1 || id == 3) return 4.0;
  throw Error(ErrorCode::invalid_range, "figure id must be 1, 2 or 3, got " + std::to_string(id));
}

std::vector<double> beta_grid(double beta_min, double beta_max, std::size_t steps) {
  if (steps == 0) throw Error(ErrorCode::invalid_range, "steps must be at least 1");
  if (!(beta_max >= beta_min)) throw Error(ErrorCode::invalid_range, "beta_max is below beta_min");
  if (steps == 1) {
    if (beta_max != beta_min) throw Error(ErrorCode::invalid_range, "one step needs beta_min == beta_max");
    return {beta_min};
  }
  std::vector<double> grid(steps);
  const double width = beta_max - beta_min;
  for (std::size_t k = 0; k < steps; ++k) {
    grid[k] = beta_min + width * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  grid.back() = beta_max;
  return grid;
}

std::vector<FigureRow> figure_rows(int id, double beta_min, double beta_max, std::size_t steps) {
  const double floor = figure_beta_floor(id);
  if (!(beta_min >= floor - kBetaSlack)) {
    throw Error(ErrorCode::invalid_range, "figure " + std::to_string(id) + " needs beta >= " + format_double(floor));
  }
  const ExampleValues v = example_values(id);
  std::vector<FigureRow> rows;
  for (double beta : beta_grid(beta_min, beta_max, steps)) {
    const RhsPair r = example_rhs(v, beta);
    rows.push_back({beta, std::pow(v.global, beta), r.rhs_new, r.rhs_jzsz});
  }
  return rows;
}

std::string figure_csv(int id, double beta_min, double beta_max, std::size_t steps) {
  const auto rows = figure_rows(id, beta_min, beta_max, steps);
  const GsdParams p = example_params(id);
  const ExampleValues v = example_values(id);
  std::ostringstream os;
  os << "# figure=" << id << " measure=" << to_string(v.kind) << " state=gsd lambda=";
  for (std::size_t k = 0; k < p.lambda.size(); ++k) os << (k ? "," : "") << format_double(p.lambda[k]);
  os << " phi=" << format_double(p.phi) << " grid=uniform-closed beta_min=" << format_double(beta_min)
     << " beta_max=" << format_double(beta_max) << " steps=" << steps << '\n';
  os << "beta,lhs,rhs_new,rhs_jzsz\n";
  for (const auto& r : rows) {
    os << format_double(r.beta) << ',' << format_double(r.lhs) << ',' << format_double(r.rhs_new) << ','
       << format_double(r.rhs_jzsz) << '\n';
  }
  return os.str();
}

void emit_figure_data(int id, double beta_min, double beta_max, std::size_t steps, const std::string& out) {
  const std::string csv = figure_csv(id, beta_min, beta_max, steps);
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::io_error, "cannot open " + out);
  file << csv;
  if (!file) throw Error(ErrorCode::io_error, "write failed for " + out);
}

// ---------------------------------------------------------------------------
// Counterexample hunting

double bound_beta_floor(BoundId id) {
  switch (id) {
    case BoundId::zhu:
    case BoundId::jin: return 2.0;
    case BoundId::jzsz_e:
    case BoundId::thm3: return 2.0 * kSqrt2;
    default: return 4.0;
  }
}

MeasureKind bound_measure(BoundId id) {
  switch (id) {
    case BoundId::jzsz_e:
    case BoundId::thm3: return MeasureKind::eof;
    case BoundId::thm4:
    case BoundId::thm5: return MeasureKind::cren;
    default: return MeasureKind::concurrence;
  }
}

HuntResult hunt_counterexamples(const CampaignConfig& config, BoundId bound, std::size_t k) {
  validate_common(config);
  const double floor = bound_beta_floor(bound);
  for (double beta : config.beta_grid) {
    if (!(beta >= floor - kBetaSlack)) {
      throw Error(ErrorCode::config_invalid, "beta " + format_double(beta) + " is below " + format_double(floor) +
                                                 " required for " + std::string(to_string(bound)));
    }
  }
  const bool three_only = bound == BoundId::lemma2 || bound == BoundId::jzsz_c || bound == BoundId::jzsz_e;
  const bool four_plus = bound == BoundId::thm2 || bound == BoundId::thm4 || bound == BoundId::jin;
  if (three_only && config.n_qubits != 3) {
    throw Error(ErrorCode::config_invalid, std::string(to_string(bound)) + " is a 3-qubit bound");
  }
  if (four_plus && config.n_qubits < 4) {
    throw Error(ErrorCode::config_invalid, std::string(to_string(bound)) + " needs at least 4 qubits");
  }

  HuntResult result;
  std::vector<NearViolation> per_state;
  for (std::uint64_t i = 0; i < config.samples; ++i) {
    const BoundReport report = evaluate_state(sample_state(config, i), config, bound);
    ++result.states_evaluated;
    std::optional<NearViolation> worst;
    for (const auto& c : report.checks) {
      if (c.bound_id != bound || c.status == CheckStatus::inapplicable) continue;
      ++result.checks_evaluated;
      if (c.status == CheckStatus::violation) result.violation_found = true;
      if (!worst || c.margin < worst->margin) {
        worst = NearViolation{i, state_id(config, i), c.measure, c.beta, c.margin, c.status};
      }
    }
    if (worst) per_state.push_back(*worst);
  }
  std::stable_sort(per_state.begin(), per_state.end(), [](const NearViolation& a, const NearViolation& b) {
    const bool va = a.status == CheckStatus::violation;
    const bool vb = b.status == CheckStatus::violation;
    if (va != vb) return va;
    return a.margin < b.margin;
  });
  if (per_state.size() > k) per_state.resize(k);
  result.frontier = std::move(per_state);
  return result;
}

// ---------------------------------------------------------------------------
// Serialization

std::string to_json_line(const BoundReport& report) {
  Json j;
  j["type"] = "state";
  j["state_id"] = report.state_id;
  j["sample"] = report.sample_index;
  j["classification"] = to_string(report.classification);
  Json measures = Json::object();
  for (const auto& m : report.measures) {
    Json mj;
    mj["global"] = m.global;
    mj["pairs"] = m.pairs;
    mj["tails"] = m.tails;
    std::vector<int> exact(m.tail_exact.begin(), m.tail_exact.end());
    mj["tail_exact"] = exact;
    measures[std::string(to_string(m.kind))] = mj;
  }
  j["measures"] = measures;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json cj;
    cj["bound"] = to_string(c.bound_id);
    cj["measure"] = to_string(c.measure);
    cj["beta"] = c.beta;
    cj["lhs"] = c.lhs_pow;
    cj["rhs"] = c.rhs;
    cj["margin"] = c.margin;
    cj["status"] = to_string(c.status);
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  if (!report.constants.empty()) {
    Json constants = Json::array();
    for (const auto& c : report.constants) {
      constants.push_back({{"name", c.name}, {"computed", c.computed}, {"expected", c.expected},
                           {"tolerance", c.tolerance}, {"ok", c.ok}});
    }
    j["constants"] = constants;
  }
  if (!report.notes.empty()) j["notes"] = report.notes;
  return j.dump();
}

std::string to_json_line(const CampaignSummary& summary, const CampaignConfig& config) {
  Json j;
  j["type"] = "summary";
  j["qubits"] = config.n_qubits;
  j["samples"] = config.samples;
  j["seed"] = config.seed;
  j["family"] = to_string(config.family);
  j["betas"] = config.beta_grid;
  std::vector<std::string> measures;
  for (MeasureKind k : config.measures) measures.emplace_back(to_string(k));
  j["measures"] = measures;
  j["verified"] = summary.verified;
  j["heuristic"] = summary.heuristic;
  j["inapplicable"] = summary.inapplicable;
  j["violations"] = summary.violations;
  j["fully_ordered_states"] = summary.fully_ordered_states;
  j["split_states"] = summary.split_states;
  return j.dump();
}

std::string summary_table(const CampaignSummary& summary, const CampaignConfig& config) {
  std::ostringstream os;
  os << "campaign: " << summary.states << " " << to_string(config.family) << " states, " << config.n_qubits
     << " qubits, seed " << config.seed << '\n';
  os << std::left << std::setw(28) << "  checks verified" << summary.verified << '\n'
     << std::setw(28) << "  checks heuristic" << summary.heuristic << '\n'
     << std::setw(28) << "  checks inapplicable" << summary.inapplicable << '\n'
     << std::setw(28) << "  VIOLATIONS" << summary.violations << '\n'
     << std::setw(28) << "  fully-ordered states" << summary.fully_ordered_states << '\n'
     << std::setw(28) << "  split-m states" << summary.split_states << '\n';
  os << std::setw(28) << "  wall time [s]" << std::fixed << std::setprecision(3) << summary.seconds << '\n';
  return os.str();
}

std::string report_table(const BoundReport& report) {
  std::ostringstream os;
  os << report.state_id << "  (" << to_string(report.classification) << ")\n";
  os << std::setprecision(12);
  for (const auto& m : report.measures) {
    os << "  " << to_string(m.kind) << ": global " << m.global << ", pairs";
    for (double v : m.pairs) os << ' ' << v;
    os << '\n';
  }
  for (const auto& c : report.constants) {
    os << "  [" << (c.ok ? "ok" : "MISMATCH") << "] " << c.name << " = " << c.computed << " (expected "
       << c.expected << ", tol " << c.tolerance << ")\n";
  }
  for (const auto& c : report.checks) {
    os << "  " << std::left << std::setw(7) << to_string(c.bound_id) << " beta=" << std::setw(8)
       << std::setprecision(6) << c.beta << std::setprecision(12) << " lhs=" << std::setw(16) << c.lhs_pow
       << " rhs=" << std::setw(16) << c.rhs << " margin=" << std::setw(16) << c.margin << ' '
       << to_string(c.status) << '\n';
  }
  return os.str();
}

}  // namespace monogamy
