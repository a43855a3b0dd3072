#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "monogamy/error.hpp"
#include "monogamy/harness.hpp"

using namespace monogamy;

namespace {

const double kS2 = std::numbers::sqrt2;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::io_error;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("monogamy_test_" + name);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MONOGAMY_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::vector<std::vector<double>> parse_rows(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'b') continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Examples, ConstantsReproduce) {
  for (int id = 1; id <= 3; ++id) {
    const BoundReport r = reproduce_example(id);
    EXPECT_TRUE(r.all_constants_ok()) << "example " << id;
    EXPECT_EQ(r.count(CheckStatus::violation), 0u);
    for (const auto& c : r.constants) EXPECT_LE(std::abs(c.computed - c.expected), c.tolerance) << c.name;
  }
  EXPECT_EQ(code_of([] { reproduce_example(4); }), ErrorCode::invalid_range);
}

TEST(Examples, Example1Margins) {
  const BoundReport r = reproduce_example(1);
  for (const auto& c : r.checks) {
    EXPECT_NEAR(c.margin, c.lhs_pow - c.rhs, 1e-12);
    if (c.beta > 4 + 1e-12) EXPECT_GT(c.margin, 0.0);
    EXPECT_EQ(c.status, CheckStatus::verified);
  }
}

TEST(Figures, Figure1) {
  const auto rows = figure_rows(1, 4, 10, 200);
  ASSERT_EQ(rows.size(), 200u);
  EXPECT_DOUBLE_EQ(rows.front().beta, 4.0);
  EXPECT_DOUBLE_EQ(rows.back().beta, 10.0);
  EXPECT_LT(std::abs(rows.front().rhs_new - rows.front().rhs_jzsz), 1e-12);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0) EXPECT_GT(rows[k].beta, rows[k - 1].beta);
    EXPECT_GE(rows[k].lhs - rows[k].rhs_new, -1e-9);
    EXPECT_GE(rows[k].rhs_new - rows[k].rhs_jzsz, -1e-9);
  }
}

TEST(Figures, Figure2Ordering) {
  const auto rows = figure_rows(2, 2 * kS2, 10, 200);
  ASSERT_EQ(rows.size(), 200u);
  EXPECT_LT(std::abs(rows.front().rhs_new - rows.front().rhs_jzsz), 1e-12);
  for (const auto& r : rows) {
    EXPECT_GE(r.lhs - r.rhs_new, -1e-9);
    EXPECT_GE(r.rhs_new - r.rhs_jzsz, -1e-9);
  }
}

TEST(Figures, Figure3MatchesFigure1) {
  const auto a = figure_rows(1, 4, 10, 200);
  const auto b = figure_rows(3, 4, 10, 200);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_NEAR(a[k].rhs_new, b[k].rhs_new, 1e-14);
    EXPECT_NEAR(a[k].rhs_jzsz, b[k].rhs_jzsz, 1e-14);
    EXPECT_NEAR(a[k].lhs, b[k].lhs, 1e-14);
  }
}

TEST(Figures, CsvLayoutAndDeterminism) {
  const auto p1 = temp_path("fig_a.csv");
  const auto p2 = temp_path("fig_b.csv");
  emit_figure_data(2, 2 * kS2, 10, 50, p1.string());
  emit_figure_data(2, 2 * kS2, 10, 50, p2.string());
  const std::string a = slurp(p1);
  EXPECT_EQ(a, slurp(p2));
  EXPECT_EQ(a.rfind("# figure=2", 0), 0u);
  EXPECT_NE(a.find("\nbeta,lhs,rhs_new,rhs_jzsz\n"), std::string::npos);
  EXPECT_EQ(parse_rows(a).size(), 50u);
  const auto rows = parse_rows(a);
  const auto direct = figure_rows(2, 2 * kS2, 10, 50);
  for (std::size_t k = 0; k < rows.size(); ++k) EXPECT_EQ(rows[k][2], direct[k].rhs_new);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST(Figures, Errors) {
  EXPECT_EQ(code_of([] { figure_rows(1, 3.5, 10, 10); }), ErrorCode::invalid_range);
  EXPECT_EQ(code_of([] { figure_rows(2, 2.5, 10, 10); }), ErrorCode::invalid_range);
  EXPECT_EQ(code_of([] { figure_rows(1, 6, 5, 10); }), ErrorCode::invalid_range);
  EXPECT_EQ(code_of([] { figure_rows(1, 4, 10, 0); }), ErrorCode::invalid_range);
  EXPECT_EQ(code_of([] { figure_rows(4, 4, 10, 10); }), ErrorCode::invalid_range);
  EXPECT_EQ(code_of([] { emit_figure_data(1, 4, 10, 5, "/nonexistent-dir/x.csv"); }), ErrorCode::io_error);
  EXPECT_EQ(beta_grid(4, 4, 1).size(), 1u);
}

TEST(Campaign, ConfigValidation) {
  CampaignConfig c;
  c.n_qubits = 2;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::config_invalid);
  c = {};
  c.samples = 0;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::config_invalid);
  c = {};
  c.beta_grid = {3.0};  // below the concurrence floor
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::config_invalid);
  c.measures = {MeasureKind::eof};  // 3 >= 2 sqrt 2 is fine for EoF
  EXPECT_NO_THROW(validate(c));
  c = {};
  c.n_qubits = 4;
  c.family = StateFamily::gsd;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::config_invalid);
  EXPECT_EQ(code_of([] { state_family_from_string("ghz"); }), ErrorCode::config_invalid);
}

TEST(Campaign, DeterministicReports) {
  CampaignConfig c;
  c.samples = 1;
  c.seed = 42;
  const auto a = run_campaign(c);
  const auto b = run_campaign(c);
  ASSERT_EQ(a.reports.size(), 1u);
  EXPECT_EQ(to_json_line(a.reports[0]), to_json_line(b.reports[0]));
  EXPECT_EQ(a.reports[0].state_id, state_id(c, 0));

  c.samples = 20;
  const auto p1 = temp_path("campaign_a.jsonl");
  const auto p2 = temp_path("campaign_b.jsonl");
  c.output_path = p1.string();
  run_campaign(c);
  c.output_path = p2.string();
  run_campaign(c);
  EXPECT_EQ(slurp(p1), slurp(p2));
  EXPECT_FALSE(slurp(p1).empty());
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST(Campaign, ThreeQubitsNoViolations) {
  CampaignConfig c;
  c.samples = 500;
  c.seed = 3;
  const auto s = run_campaign(c);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_EQ(s.heuristic, 0u);  // all measures exact at N = 3
  EXPECT_GT(s.verified, 0u);
  EXPECT_GT(s.fully_ordered_states, 0u);
  EXPECT_EQ(s.exit_code(), 0);
  for (const auto& r : s.reports) {
    for (const auto& chk : r.checks) {
      if (chk.status == CheckStatus::inapplicable) continue;
      EXPECT_NEAR(chk.margin, chk.lhs_pow - chk.rhs, 1e-12);
      EXPECT_EQ(chk.status == CheckStatus::violation, chk.margin < kViolationThreshold);
    }
  }
}

TEST(Campaign, RoofDependentChecksAreNeverVerified) {
  for (StateFamily family : {StateFamily::haar, StateFamily::w_class}) {
    CampaignConfig c;
    c.n_qubits = 4;
    c.samples = family == StateFamily::haar ? 10 : 6;
    c.family = family;
    c.measures = {MeasureKind::concurrence, MeasureKind::cren};
    c.roof_config.restarts = 2;
    const auto s = run_campaign(c);
    for (const auto& r : s.reports) {
      const MeasureSet* m = r.find(MeasureKind::concurrence);
      ASSERT_NE(m, nullptr);
      ASSERT_EQ(m->tails.size(), 2u);
      EXPECT_TRUE(m->tail_exact[1]);  // A | B_3 is a two-qubit pair
      const bool roof = !m->tail_exact[0];
      for (const auto& chk : r.checks) {
        const bool uses_tails = chk.bound_id == BoundId::thm1 || chk.bound_id == BoundId::thm2 ||
                                chk.bound_id == BoundId::thm4 || chk.bound_id == BoundId::thm5;
        if (uses_tails && roof) EXPECT_NE(chk.status, CheckStatus::verified);
      }
    }
    if (family == StateFamily::w_class) EXPECT_GT(s.heuristic, 0u);
  }
}

TEST(Hunt, ZhuSaturatesOnGsdStates) {
  CampaignConfig c;
  c.family = StateFamily::gsd_saturating;
  c.samples = 50;
  c.beta_grid = {2.0};
  const auto h = hunt_counterexamples(c, BoundId::zhu, 5);
  EXPECT_FALSE(h.violation_found);
  ASSERT_EQ(h.frontier.size(), 5u);
  for (const auto& nv : h.frontier) EXPECT_LT(std::abs(nv.margin), 1e-12);
}

TEST(Hunt, Lemma2OnSymmetricGsd) {
  CampaignConfig c;
  c.family = StateFamily::gsd_symmetric;
  c.samples = 200;
  c.beta_grid = {4.0, 6.0};
  const auto h = hunt_counterexamples(c, BoundId::lemma2, 10);
  EXPECT_FALSE(h.violation_found);
  EXPECT_EQ(h.exit_code(), 0);
  for (std::size_t k = 1; k < h.frontier.size(); ++k) EXPECT_LE(h.frontier[k - 1].margin, h.frontier[k].margin);
  for (const auto& nv : h.frontier) EXPECT_GE(nv.margin, 0.0);
}

TEST(Hunt, ProductStatesAreTight) {
  CampaignConfig c;
  c.family = StateFamily::product;
  c.samples = 10;
  const auto h = hunt_counterexamples(c, BoundId::thm1, 3);
  for (const auto& nv : h.frontier) EXPECT_LT(std::abs(nv.margin), 1e-12);
}

TEST(Hunt, Errors) {
  CampaignConfig c;
  c.samples = 2;
  c.beta_grid = {2.0};
  EXPECT_EQ(code_of([&] { hunt_counterexamples(c, BoundId::lemma2); }), ErrorCode::config_invalid);
  c.beta_grid = {4.0};
  c.n_qubits = 4;
  EXPECT_EQ(code_of([&] { hunt_counterexamples(c, BoundId::lemma2); }), ErrorCode::config_invalid);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("example 1"), 0);
  EXPECT_EQ(run_cli("example 7"), 2);
  EXPECT_EQ(run_cli("verify --qubits 2"), 2);
  EXPECT_EQ(run_cli("verify --betas 3"), 2);
  EXPECT_EQ(run_cli("bogus"), 2);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli("verify --samples 20 --seed 5 --quiet"), 0);
  EXPECT_EQ(run_cli("hunt --bound thm9"), 2);
  EXPECT_EQ(run_cli("figure --id 1 --beta-min 3"), 2);
}

TEST(Cli, ConfigFileAndOverride) {
  const auto cfg = temp_path("cli.ini");
  const auto out_a = temp_path("cli_a.jsonl");
  const auto out_b = temp_path("cli_b.jsonl");
  {
    std::ofstream f(cfg);
    f << "[verify]\nsamples=5\nseed=9\nquiet=true\n";
  }
  EXPECT_EQ(run_cli("--config " + cfg.string() + " verify --out " + out_a.string()), 0);
  EXPECT_EQ(run_cli("verify --samples 5 --seed 9 --quiet --out " + out_b.string()), 0);
  EXPECT_EQ(slurp(out_a), slurp(out_b));
  EXPECT_EQ(run_cli("--config " + cfg.string() + " verify --samples 6 --out " + out_a.string()), 0);
  EXPECT_NE(slurp(out_a), slurp(out_b));
  for (const auto& p : {cfg, out_a, out_b}) std::filesystem::remove(p);
}

TEST(Cli, FigureToFile) {
  const auto out = temp_path("cli_fig.csv");
  EXPECT_EQ(run_cli("figure --id 3 --beta-max 10 --steps 200 --out " + out.string()), 0);
  EXPECT_EQ(slurp(out), figure_csv(3, 4, 10, 200));
  std::filesystem::remove(out);
}
