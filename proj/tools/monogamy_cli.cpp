// monogamy: reproduce the worked examples, emit figure CSVs, run seeded
// verification campaigns and hunt for near-violations.
//
// exit codes: 0 ok, 1 violation or failed constant check, 2 usage/config error

#include <cmath>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monogamy/error.hpp"
#include "monogamy/harness.hpp"

namespace {

using namespace monogamy;

double parse_beta(const std::string& token) {
  if (token == "2sqrt2") return 2.0 * std::numbers::sqrt2;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::config_invalid, "bad beta value '" + token + "'");
  }
  return v;
}

struct CampaignFlags {
  std::size_t qubits = 3;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> betas{"4", "6", "10"};
  std::vector<std::string> measures{"concurrence", "eof", "cren"};
  std::string family = "haar";
  std::string out;
  std::size_t restarts = 8;
  std::size_t max_iters = 500;
  std::size_t ensemble = 0;
  bool quiet = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--qubits", qubits, "number of qubits N (3..6)")->capture_default_str();
    cmd->add_option("--samples", samples, "number of sampled states")->capture_default_str();
    cmd->add_option("--seed", seed, "campaign seed")->capture_default_str();
    cmd->add_option("--betas", betas, "beta grid, comma separated; '2sqrt2' accepted")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--family", family, "haar | gsd | gsd-saturating | gsd-symmetric | product | w-class")
        ->capture_default_str();
    cmd->add_option("--out", out, "JSONL output path");
    cmd->add_option("--restarts", restarts, "convex-roof restarts")->capture_default_str();
    cmd->add_option("--max-iters", max_iters, "convex-roof sweeps per restart")->capture_default_str();
    cmd->add_option("--ensemble", ensemble, "convex-roof ensemble size (0: twice the rank)")
        ->capture_default_str();
    cmd->add_flag("--quiet", quiet, "only print the summary");
  }

  CampaignConfig build() const {
    CampaignConfig c;
    c.n_qubits = qubits;
    c.samples = samples;
    c.seed = seed;
    c.beta_grid.clear();
    for (const auto& b : betas) c.beta_grid.push_back(parse_beta(b));
    c.measures.clear();
    for (const auto& m : measures) c.measures.push_back(measure_kind_from_string(m));
    c.family = state_family_from_string(family);
    c.output_path = out;
    c.roof_config.restarts = restarts;
    c.roof_config.max_iters = max_iters;
    c.roof_config.ensemble_size = ensemble;
    return c;
  }
};

int run_example(int id) {
  const BoundReport report = reproduce_example(id);
  std::cout << report_table(report);
  return report.all_constants_ok() && report.count(CheckStatus::violation) == 0 ? 0 : 1;
}

int run_figure(int id, double beta_min, double beta_max, std::size_t steps, const std::string& out) {
  if (out.empty()) {
    std::cout << figure_csv(id, beta_min, beta_max, steps);
  } else {
    emit_figure_data(id, beta_min, beta_max, steps, out);
    std::cerr << "wrote " << out << '\n';
  }
  return 0;
}

int run_verify(const CampaignFlags& flags) {
  const CampaignConfig config = flags.build();
  const CampaignSummary summary = run_campaign(config);
  if (!flags.quiet) {
    for (const auto& r : summary.reports) {
      if (r.count(CheckStatus::violation) > 0) std::cout << report_table(r);
    }
  }
  std::cout << summary_table(summary, config);
  return summary.exit_code();
}

int run_hunt(const CampaignFlags& flags, const std::string& bound_name, std::size_t top) {
  const BoundId bound = bound_id_from_string(bound_name);
  CampaignConfig config = flags.build();
  config.measures = {bound_measure(bound)};
  const HuntResult result = hunt_counterexamples(config, bound, top);
  std::cout << "hunt " << bound_name << ": " << result.states_evaluated << " states, " << result.checks_evaluated
            << " checks, " << (result.violation_found ? "VIOLATION FOUND" : "no violation") << '\n';
  std::cout << "rank  sample  beta          margin                  status        state\n";
  std::size_t rank = 1;
  for (const auto& nv : result.frontier) {
    std::printf("%-5zu %-7llu %-13.6g %-23.15e %-13s %s\n", rank++, static_cast<unsigned long long>(nv.sample_index),
                nv.beta, nv.margin, std::string(to_string(nv.status)).c_str(), nv.state_id.c_str());
  }
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monogamy relations for entanglement measures: examples, figures and verification"};
  app.set_config("--config", "", "read options from a key=value file (command-line flags take precedence)");
  app.require_subcommand(1);

  int example_id = 1;
  auto* example = app.add_subcommand("example", "reproduce a worked example (1, 2 or 3)");
  example->add_option("id", example_id, "example id")->required()->check(CLI::Range(1, 3));

  int figure_id = 1;
  double beta_min = 4.0;
  double beta_max = 10.0;
  std::size_t steps = 200;
  std::string figure_out;
  std::string beta_min_token;
  auto* figure = app.add_subcommand("figure", "emit the figure data as CSV");
  figure->add_option("--id", figure_id, "figure id (1, 2 or 3)")->required();
  figure->add_option("--beta-min", beta_min_token, "smallest beta (default: 4, or 2sqrt2 for figure 2)");
  figure->add_option("--beta-max", beta_max, "largest beta")->capture_default_str();
  figure->add_option("--steps", steps, "number of grid points, endpoints included")->capture_default_str();
  figure->add_option("--out", figure_out, "output CSV path (stdout if omitted)");

  CampaignFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "run a seeded verification campaign");
  verify_flags.attach(verify);
  verify->add_option("--measures", verify_flags.measures, "concurrence,eof,cren")
      ->delimiter(',')
      ->capture_default_str();

  CampaignFlags hunt_flags;
  std::string bound_name;
  std::size_t top = 10;
  auto* hunt = app.add_subcommand("hunt", "search for states closest to violating one bound");
  hunt_flags.attach(hunt);
  hunt->add_option("--bound", bound_name, "zhu | jin | jzsz-c | jzsz-e | lemma2 | thm1..thm5")->required();
  hunt->add_option("--top", top, "number of near-violations to list")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*example) return run_example(example_id);
    if (*figure) {
      beta_min = beta_min_token.empty() ? figure_beta_floor(figure_id) : parse_beta(beta_min_token);
      return run_figure(figure_id, beta_min, beta_max, steps, figure_out);
    }
    if (*verify) return run_verify(verify_flags);
    if (*hunt) return run_hunt(hunt_flags, bound_name, top);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
