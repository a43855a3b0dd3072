#pragma once
// Drives the library end to end: reproduces the three worked examples and
// their figure data, and runs seeded verification campaigns over random
// states, classifying every bound check as verified, heuristic (depends on a
// convex-roof estimate) or a violation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monogamy/bounds.hpp"
#include "monogamy/measures.hpp"
#include "monogamy/roof.hpp"

namespace monogamy {

inline constexpr double kViolationThreshold = -1e-9;

enum class CheckStatus { verified, heuristic, inapplicable, violation };
std::string_view to_string(CheckStatus status);

enum class StateFamily {
  haar,            // Haar-random pure states
  gsd,             // random generalized-Schmidt 3-qubit states
  gsd_saturating,  // GSD with lambda_1 = lambda_4 = 0
  gsd_symmetric,   // GSD with lambda_2 = lambda_3
  product,         // random product states
  w_class,         // a|0...0> + sum_k b_k |1 e_k>, A excited together with B_k
};
std::string_view to_string(StateFamily family);
StateFamily state_family_from_string(std::string_view name);

struct BoundCheck {
  BoundId bound_id;
  MeasureKind measure;
  double beta;
  double lhs_pow;  // (global measure)^beta
  double rhs;
  double margin;   // lhs_pow - rhs
  CheckStatus status;
  std::string note;
};

struct ConstantCheck {
  std::string name;
  double computed;
  double expected;
  double tolerance;
  bool ok;
};

struct MeasureSet {
  MeasureKind kind;
  double global = 0.0;              // A | B_1 ... B_{N-1}
  std::vector<double> pairs;        // A B_k, k = 1..N-1
  std::vector<double> tails;        // A | B_{i+1} ... B_{N-1}, i = 1..N-2
  std::vector<bool> tail_exact;
};

struct BoundReport {
  std::string state_id;
  std::uint64_t sample_index = 0;
  std::vector<MeasureSet> measures;
  OrderingClassification classification;
  std::vector<BoundCheck> checks;
  std::vector<ConstantCheck> constants;
  std::vector<std::string> notes;
  double seconds = 0.0;  // wall time; kept out of serialized output

  const MeasureSet* find(MeasureKind kind) const;
  bool all_constants_ok() const;
  std::size_t count(CheckStatus status) const;
};

struct CampaignConfig {
  std::size_t n_qubits = 3;
  std::size_t samples = 1000;
  std::vector<double> beta_grid{4.0, 6.0, 10.0};
  std::uint64_t seed = 1;
  std::vector<MeasureKind> measures{MeasureKind::concurrence, MeasureKind::eof, MeasureKind::cren};
  RoofConfig roof_config{};
  std::string output_path;  // empty: no file
  StateFamily family = StateFamily::haar;
};

// Throws config_invalid.
void validate(const CampaignConfig& config);

struct CampaignSummary {
  std::size_t states = 0;
  std::size_t verified = 0;
  std::size_t heuristic = 0;
  std::size_t inapplicable = 0;
  std::size_t violations = 0;
  std::size_t fully_ordered_states = 0;
  std::size_t split_states = 0;
  double seconds = 0.0;
  std::vector<BoundReport> reports;

  int exit_code() const { return violations == 0 ? 0 : 1; }
};

PureState sample_state(const CampaignConfig& config, std::uint64_t sample_index);
std::string state_id(const CampaignConfig& config, std::uint64_t sample_index);

// Measures, ordering classification and checks for one state. `only`
// restricts the checks to a single bound.
BoundReport evaluate_state(const PureState& psi, const CampaignConfig& config,
                           std::optional<BoundId> only = std::nullopt);

CampaignSummary run_campaign(const CampaignConfig& config);

// Example ids 1..3; throws invalid_range otherwise.
GsdParams example_params(int id);
BoundReport reproduce_example(int id);

struct FigureRow {
  double beta;
  double lhs;
  double rhs_new;
  double rhs_jzsz;
};

double figure_beta_floor(int id);
std::vector<double> beta_grid(double beta_min, double beta_max, std::size_t steps);
std::vector<FigureRow> figure_rows(int id, double beta_min, double beta_max, std::size_t steps);
std::string figure_csv(int id, double beta_min, double beta_max, std::size_t steps);
void emit_figure_data(int id, double beta_min, double beta_max, std::size_t steps, const std::string& out);

struct NearViolation {
  std::uint64_t sample_index;
  std::string state_id;
  MeasureKind measure;
  double beta;
  double margin;
  CheckStatus status;
};

struct HuntResult {
  std::vector<NearViolation> frontier;  // ascending margin, genuine violations first
  bool violation_found = false;
  std::size_t states_evaluated = 0;
  std::size_t checks_evaluated = 0;

  int exit_code() const { return violation_found ? 1 : 0; }
};

// Smallest beta allowed for checks of this bound.
double bound_beta_floor(BoundId id);
MeasureKind bound_measure(BoundId id);

HuntResult hunt_counterexamples(const CampaignConfig& config, BoundId bound, std::size_t k = 10);

// One JSON object per line.
std::string to_json_line(const BoundReport& report);
std::string to_json_line(const CampaignSummary& summary, const CampaignConfig& config);
std::string summary_table(const CampaignSummary& summary, const CampaignConfig& config);
std::string report_table(const BoundReport& report);

}  // namespace monogamy
