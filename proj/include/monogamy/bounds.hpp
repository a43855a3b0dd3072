#pragma once
// Right-hand sides of the monogamy inequalities for beta-th powers of
// concurrence, entanglement of formation and CREN, together with the
// baseline bounds they are compared against.
//
// Indexing: pair_values[k] is the pairwise value for parties (A, B_{k+1}),
// k = 0..N-2; tail_values[k] is the value across A | B_{k+2} ... B_{N-1},
// k = 0..N-3. So tail_values.size() == pair_values.size() - 1.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace monogamy {

enum class BoundId {
  zhu,          // plain power sum
  jin,          // h-weighted power sum with split m
  jzsz_c,       // prior concurrence bound (N = 3)
  jzsz_e,       // prior EoF bound (N = 3)
  lemma2,
  thm1,
  thm2,
  thm3,
  thm4,
  thm5,
};

std::string_view to_string(BoundId id);
BoundId bound_id_from_string(std::string_view name);  // throws unknown_bound_id

struct BoundInputs {
  double beta = 4.0;
  std::vector<double> pair_values;
  std::vector<double> tail_values;
  std::vector<bool> tail_exact;       // empty means all exact
  std::optional<std::size_t> m_split; // Theorems 2 and 4
  // Theorem 3 is conditioned on a concurrence ordering that its EoF inputs
  // cannot show; the caller states whether it holds. false -> precondition-violated.
  std::optional<bool> concurrence_ordering;

  bool all_exact() const;
};

struct BoundTerm {
  std::size_t index;  // 1-based party index i of B_i
  double base;
  double correction;
};

struct BoundBreakdown {
  BoundId bound_id;
  double rhs_total = 0.0;
  std::vector<BoundTerm> per_term;
};

double h_factor(double beta);                 // 2^{beta/2} - 1
double t_param(double beta);                  // beta / sqrt(2)
double h_factor_eof(double beta);             // 2^t - 1

// (1+x)^t and the three successively weaker lower bounds.
std::array<double, 4> lemma1_chain(double x, double t);

double p_term(double c_pair, double c_tail, double beta);
double p1_term(double c_pair, double c_tail, double beta);
double q_term(const std::vector<double>& e_pairs_after_i, double e_pair_i, double e_tail_i, double beta);

BoundBreakdown rhs_lemma2_concurrence(double c_ab, double c_ac, double beta);
BoundBreakdown rhs_concurrence_thm1(const BoundInputs& inputs);
BoundBreakdown rhs_concurrence_thm2(const BoundInputs& inputs);
BoundBreakdown rhs_eof_thm3(const BoundInputs& inputs);
BoundBreakdown rhs_cren_thm4(const BoundInputs& inputs);
BoundBreakdown rhs_cren_thm5(const BoundInputs& inputs);

double rhs_zhu(const std::vector<double>& pair_values, double beta);
double rhs_jin(const std::vector<double>& pair_values, double beta, std::size_t m);
double rhs_jzsz_concurrence(double c_ab, double c_ac, double beta);
double rhs_jzsz_eof(double e_ab, double e_ac, double beta);

enum class OrderingClass { fully_ordered, split, inapplicable };

struct OrderingClassification {
  OrderingClass kind = OrderingClass::inapplicable;
  std::size_t m = 0;  // N-2 when fully ordered, the split index when split
  bool fully_ordered() const { return kind == OrderingClass::fully_ordered; }
};

std::string to_string(const OrderingClassification& c);

// Values within 1e-12 of equality count as satisfying either direction.
OrderingClassification classify_ordering(const std::vector<double>& pair_values,
                                         const std::vector<double>& tail_values);

}  // namespace monogamy
