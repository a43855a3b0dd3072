#include "monogamy/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "monogamy/error.hpp"

namespace monogamy {
namespace {

constexpr double kSlack = 1e-12;
constexpr double kSqrt2 = std::numbers::sqrt2;

// std::pow already returns 1 for 0^0, which the boundary coincidences at
// beta = 4 and beta = 2 sqrt2 rely on.
double pw(double base, double exponent) { return std::pow(base, exponent); }

void require_beta_at_least(double beta, double minimum, std::string_view what) {
  if (!(beta >= minimum - kSlack)) {
    std::ostringstream os;
    os << what << " needs beta >= " << minimum << ", got " << beta;
    throw Error(ErrorCode::domain_error, os.str());
  }
}

double nonnegative(double v, std::string_view what) {
  if (!(v >= -kSlack)) {
    std::ostringstream os;
    os << what << " must be nonnegative, got " << v;
    throw Error(ErrorCode::domain_error, os.str());
  }
  return std::max(0.0, v);
}

struct Shape {
  std::size_t n_parties;  // N
};

Shape check_shape(const BoundInputs& in, std::size_t min_parties) {
  const std::size_t n = in.pair_values.size() + 1;
  if (in.pair_values.size() < 2 || in.tail_values.size() + 1 != in.pair_values.size()) {
    throw Error(ErrorCode::shape_mismatch, "need N-1 >= 2 pair values and N-2 tail values");
  }
  if (!in.tail_exact.empty() && in.tail_exact.size() != in.tail_values.size()) {
    throw Error(ErrorCode::shape_mismatch, "tail_exact must match tail_values");
  }
  if (n < min_parties) {
    throw Error(ErrorCode::precondition_violated,
                "bound requires N >= " + std::to_string(min_parties) + ", got " + std::to_string(n));
  }
  for (double v : in.pair_values) nonnegative(v, "pair value");
  for (double v : in.tail_values) nonnegative(v, "tail value");
  return {n};
}

// 1-based indices i in [first, last] where the forward ordering fails.
std::string failing_indices(const BoundInputs& in, std::size_t first, std::size_t last, bool forward) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = first; i <= last; ++i) {
    const double c = in.pair_values[i - 1];
    const double t = in.tail_values[i - 1];
    const bool ok = forward ? c >= t - kSlack : c <= t + kSlack;
    if (!ok) {
      os << (any ? "," : "") << i;
      any = true;
    }
  }
  return any ? os.str() : std::string{};
}

void require_ordering(const BoundInputs& in, std::size_t first, std::size_t last, bool forward,
                      std::string_view bound) {
  if (first > last) return;
  const std::string bad = failing_indices(in, first, last, forward);
  if (!bad.empty()) {
    throw Error(ErrorCode::precondition_violated,
                std::string(bound) + ": ordering " + (forward ? "pair >= tail" : "pair <= tail") +
                    " fails at i = " + bad);
  }
}

BoundBreakdown nested_forward(BoundId id, const BoundInputs& in, std::size_t n) {
  const double beta = in.beta;
  const double h = h_factor(beta);
  BoundBreakdown out{id, 0.0, {}};
  for (std::size_t i = 1; i <= n - 2; ++i) {
    const double w = pw(h, static_cast<double>(i - 1));
    const double c = std::max(0.0, in.pair_values[i - 1]);
    const double t = std::max(0.0, in.tail_values[i - 1]);
    out.per_term.push_back({i, w * pw(c, beta), w * p_term(c, t, beta)});
  }
  out.per_term.push_back({n - 1, pw(h, static_cast<double>(n - 2)) * pw(in.pair_values[n - 2], beta), 0.0});
  for (const auto& term : out.per_term) out.rhs_total += term.base + term.correction;
  return out;
}

BoundBreakdown nested_split(BoundId id, const BoundInputs& in, std::size_t n, std::string_view name) {
  if (!in.m_split) throw Error(ErrorCode::invalid_m, std::string(name) + " needs a split index m");
  const std::size_t m = *in.m_split;
  if (m < 1 || m > n - 3) {
    throw Error(ErrorCode::invalid_m, "m = " + std::to_string(m) + " outside 1.." + std::to_string(n - 3));
  }
  require_ordering(in, 1, m, true, name);
  require_ordering(in, m + 1, n - 2, false, name);
  const double beta = in.beta;
  const double h = h_factor(beta);
  const double hm = pw(h, static_cast<double>(m));
  BoundBreakdown out{id, 0.0, {}};
  for (std::size_t i = 1; i <= m; ++i) {
    const double w = pw(h, static_cast<double>(i - 1));
    const double c = std::max(0.0, in.pair_values[i - 1]);
    const double t = std::max(0.0, in.tail_values[i - 1]);
    out.per_term.push_back({i, w * pw(c, beta), w * p_term(c, t, beta)});
  }
  for (std::size_t j = m + 1; j <= n - 2; ++j) {
    const double c = std::max(0.0, in.pair_values[j - 1]);
    const double t = std::max(0.0, in.tail_values[j - 1]);
    out.per_term.push_back({j, hm * h * pw(c, beta), hm * p1_term(c, t, beta)});
  }
  out.per_term.push_back({n - 1, hm * pw(in.pair_values[n - 2], beta), 0.0});
  for (const auto& term : out.per_term) out.rhs_total += term.base + term.correction;
  return out;
}

}  // namespace

std::string_view to_string(BoundId id) {
  switch (id) {
    case BoundId::zhu: return "zhu";
    case BoundId::jin: return "jin";
    case BoundId::jzsz_c: return "jzsz-c";
    case BoundId::jzsz_e: return "jzsz-e";
    case BoundId::lemma2: return "lemma2";
    case BoundId::thm1: return "thm1";
    case BoundId::thm2: return "thm2";
    case BoundId::thm3: return "thm3";
    case BoundId::thm4: return "thm4";
    case BoundId::thm5: return "thm5";
  }
  return "unknown";
}

BoundId bound_id_from_string(std::string_view name) {
  for (BoundId id : {BoundId::zhu, BoundId::jin, BoundId::jzsz_c, BoundId::jzsz_e, BoundId::lemma2,
                     BoundId::thm1, BoundId::thm2, BoundId::thm3, BoundId::thm4, BoundId::thm5}) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorCode::unknown_bound_id, "'" + std::string(name) + "'");
}

bool BoundInputs::all_exact() const {
  for (bool e : tail_exact) {
    if (!e) return false;
  }
  return true;
}

double h_factor(double beta) { return std::pow(2.0, beta / 2.0) - 1.0; }
double t_param(double beta) { return beta / kSqrt2; }
double h_factor_eof(double beta) { return std::pow(2.0, t_param(beta)) - 1.0; }

std::array<double, 4> lemma1_chain(double x, double t) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::domain_error, "x must lie in [0, 1]");
  if (!(t >= 2.0)) throw Error(ErrorCode::domain_error, "t must be at least 2");
  const double xt = pw(x, t);
  const double two_t = std::pow(2.0, t);
  const double lin = t / 2.0;
  const double quad = t * (t - 1.0) / 2.0;
  return {
      pw(1.0 + x, t),
      1.0 + lin * x + quad * x * x + (two_t - lin - quad - 1.0) * xt,
      1.0 + lin * x + (two_t - lin - 1.0) * xt,
      1.0 + (two_t - 1.0) * xt,
  };
}

double p_term(double c_pair, double c_tail, double beta) {
  require_beta_at_least(beta, 4.0, "P term");
  c_pair = nonnegative(c_pair, "pair value");
  c_tail = nonnegative(c_tail, "tail value");
  if (c_pair < c_tail - kSlack) {
    throw Error(ErrorCode::precondition_violated, "P term needs pair >= tail");
  }
  return beta / 4.0 * c_tail * c_tail * (pw(c_pair, beta - 2.0) - pw(c_tail, beta - 2.0)) +
         beta * (beta - 2.0) / 8.0 * pw(c_tail, 4.0) * (pw(c_pair, beta - 4.0) - pw(c_tail, beta - 4.0));
}

double p1_term(double c_pair, double c_tail, double beta) {
  require_beta_at_least(beta, 4.0, "P1 term");
  c_pair = nonnegative(c_pair, "pair value");
  c_tail = nonnegative(c_tail, "tail value");
  if (c_tail < c_pair - kSlack) {
    throw Error(ErrorCode::precondition_violated, "P1 term needs tail >= pair");
  }
  return beta / 4.0 * c_pair * c_pair * (pw(c_tail, beta - 2.0) - pw(c_pair, beta - 2.0)) +
         beta * (beta - 2.0) / 8.0 * pw(c_pair, 4.0) * (pw(c_tail, beta - 4.0) - pw(c_pair, beta - 4.0));
}

double q_term(const std::vector<double>& e_pairs_after_i, double e_pair_i, double e_tail_i, double beta) {
  require_beta_at_least(beta, 2.0 * kSqrt2, "Q term");
  e_pair_i = nonnegative(e_pair_i, "pair value");
  e_tail_i = nonnegative(e_tail_i, "tail value");
  const double t = t_param(beta);
  double sum_r2 = 0.0;
  double sum_2r2 = 0.0;
  for (double e : e_pairs_after_i) {
    e = nonnegative(e, "pair value");
    sum_r2 += pw(e, kSqrt2);
    sum_2r2 += pw(e, 2.0 * kSqrt2);
  }
  return t / 2.0 * sum_r2 * (pw(e_pair_i, beta - kSqrt2) - pw(e_tail_i, beta - kSqrt2)) +
         (t * t - t) / 2.0 * sum_2r2 * (pw(e_pair_i, beta - 2.0 * kSqrt2) - pw(e_tail_i, beta - 2.0 * kSqrt2));
}

BoundBreakdown rhs_lemma2_concurrence(double c_ab, double c_ac, double beta) {
  BoundInputs in;
  in.beta = beta;
  in.pair_values = {c_ab, c_ac};
  in.tail_values = {c_ac};
  BoundBreakdown out = rhs_concurrence_thm1(in);
  out.bound_id = BoundId::lemma2;
  return out;
}

BoundBreakdown rhs_concurrence_thm1(const BoundInputs& inputs) {
  require_beta_at_least(inputs.beta, 4.0, "Theorem 1");
  const Shape s = check_shape(inputs, 3);
  require_ordering(inputs, 1, s.n_parties - 2, true, "thm1");
  return nested_forward(BoundId::thm1, inputs, s.n_parties);
}

BoundBreakdown rhs_concurrence_thm2(const BoundInputs& inputs) {
  require_beta_at_least(inputs.beta, 4.0, "Theorem 2");
  const Shape s = check_shape(inputs, 4);
  return nested_split(BoundId::thm2, inputs, s.n_parties, "thm2");
}

BoundBreakdown rhs_eof_thm3(const BoundInputs& inputs) {
  require_beta_at_least(inputs.beta, 2.0 * kSqrt2, "Theorem 3");
  const Shape s = check_shape(inputs, 3);
  if (inputs.concurrence_ordering.has_value() && !*inputs.concurrence_ordering) {
    throw Error(ErrorCode::precondition_violated, "thm3: concurrence ordering does not hold");
  }
  const std::size_t n = s.n_parties;
  const double beta = inputs.beta;
  const double h = h_factor_eof(beta);
  BoundBreakdown out{BoundId::thm3, 0.0, {}};
  for (std::size_t i = 1; i <= n - 2; ++i) {
    const double w = pw(h, static_cast<double>(i - 1));
    const std::vector<double> after(inputs.pair_values.begin() + static_cast<std::ptrdiff_t>(i),
                                    inputs.pair_values.end());
    const double e = std::max(0.0, inputs.pair_values[i - 1]);
    out.per_term.push_back({i, w * pw(e, beta), w * q_term(after, e, inputs.tail_values[i - 1], beta)});
  }
  out.per_term.push_back({n - 1, pw(h, static_cast<double>(n - 2)) * pw(inputs.pair_values[n - 2], beta), 0.0});
  for (const auto& term : out.per_term) out.rhs_total += term.base + term.correction;
  return out;
}

BoundBreakdown rhs_cren_thm4(const BoundInputs& inputs) {
  require_beta_at_least(inputs.beta, 4.0, "Theorem 4");
  const Shape s = check_shape(inputs, 4);
  return nested_split(BoundId::thm4, inputs, s.n_parties, "thm4");
}

BoundBreakdown rhs_cren_thm5(const BoundInputs& inputs) {
  require_beta_at_least(inputs.beta, 4.0, "Theorem 5");
  const Shape s = check_shape(inputs, 3);
  require_ordering(inputs, 1, s.n_parties - 2, true, "thm5");
  return nested_forward(BoundId::thm5, inputs, s.n_parties);
}

double rhs_zhu(const std::vector<double>& pair_values, double beta) {
  double acc = 0.0;
  for (double c : pair_values) acc += pw(std::max(0.0, c), beta);
  return acc;
}

double rhs_jin(const std::vector<double>& pair_values, double beta, std::size_t m) {
  require_beta_at_least(beta, 2.0, "Jin bound");
  const std::size_t n = pair_values.size() + 1;
  if (n < 4) throw Error(ErrorCode::invalid_m, "Jin bound needs N >= 4");
  if (m < 1 || m > n - 3) {
    throw Error(ErrorCode::invalid_m, "m = " + std::to_string(m) + " outside 1.." + std::to_string(n - 3));
  }
  const double h = h_factor(beta);
  double acc = 0.0;
  for (std::size_t k = 1; k <= n - 1; ++k) {
    double exponent;
    if (k <= m) {
      exponent = static_cast<double>(k - 1);
    } else if (k <= n - 2) {
      exponent = static_cast<double>(m + 1);
    } else {
      exponent = static_cast<double>(m);
    }
    acc += pw(h, exponent) * pw(std::max(0.0, pair_values[k - 1]), beta);
  }
  return acc;
}

double rhs_jzsz_concurrence(double c_ab, double c_ac, double beta) {
  require_beta_at_least(beta, 4.0, "JZSZ concurrence bound");
  c_ab = nonnegative(c_ab, "C_AB");
  c_ac = nonnegative(c_ac, "C_AC");
  if (c_ab < c_ac - kSlack) throw Error(ErrorCode::precondition_violated, "JZSZ bound needs C_AB >= C_AC");
  return pw(c_ab, beta) + h_factor(beta) * pw(c_ac, beta) +
         beta / 4.0 * c_ac * c_ac * (pw(c_ab, beta - 2.0) - pw(c_ac, beta - 2.0));
}

double rhs_jzsz_eof(double e_ab, double e_ac, double beta) {
  require_beta_at_least(beta, 2.0 * kSqrt2, "JZSZ EoF bound");
  e_ab = nonnegative(e_ab, "E_AB");
  e_ac = nonnegative(e_ac, "E_AC");
  const double t = t_param(beta);
  return pw(e_ab, beta) + h_factor_eof(beta) * pw(e_ac, beta) +
         t / 2.0 * pw(e_ac, kSqrt2) * (pw(e_ab, beta - kSqrt2) - pw(e_ac, beta - kSqrt2));
}

std::string to_string(const OrderingClassification& c) {
  switch (c.kind) {
    case OrderingClass::fully_ordered: return "fully-ordered";
    case OrderingClass::split: return "split-" + std::to_string(c.m);
    case OrderingClass::inapplicable: return "inapplicable";
  }
  return "unknown";
}

OrderingClassification classify_ordering(const std::vector<double>& pair_values,
                                         const std::vector<double>& tail_values) {
  if (pair_values.size() < 2 || tail_values.size() + 1 != pair_values.size()) {
    throw Error(ErrorCode::shape_mismatch, "need N-1 >= 2 pair values and N-2 tail values");
  }
  const std::size_t levels = tail_values.size();  // N - 2
  std::size_t prefix = 0;
  while (prefix < levels && pair_values[prefix] >= tail_values[prefix] - kSlack) ++prefix;
  if (prefix == levels) return {OrderingClass::fully_ordered, levels};
  if (prefix == 0) return {OrderingClass::inapplicable, 0};
  for (std::size_t j = prefix; j < levels; ++j) {
    if (pair_values[j] > tail_values[j] + kSlack) return {OrderingClass::inapplicable, 0};
  }
  return {OrderingClass::split, prefix};
}

}  // namespace monogamy
