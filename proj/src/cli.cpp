#include "odds/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "odds/dp.hpp"
#include "odds/lp_export.hpp"
#include "odds/lp_model.hpp"
#include "odds/policy_bridge.hpp"
#include "odds/simplex.hpp"

namespace odds::cli {

using io::Json;

namespace {

constexpr double kAgreementTol = 1e-9;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Json flow_to_json(const FlowSolution& flow) { return Json{{"y", flow.y}, {"z", flow.z}}; }

// The stop rule shown for a possibly randomized policy: stop where the
// stopping probability is at least one half.
StopRegion rounded_stop_region(const Policy& pol) {
  StopRegion region;
  region.stop.resize(pol.size());
  for (std::size_t i = 0; i < pol.size(); ++i) region.stop[i] = pol[i] <= 0.5;
  return region;
}

struct MethodResult {
  std::string method;
  double value = 0.0;
  StopRegion stop;
  Policy policy{std::vector<double>{}};
  Json extra = Json::object();
  Json certificate = Json::object();
  double timing_ms = 0.0;
};

MethodResult run_dp(const Instance& inst) {
  Stopwatch clock;
  MethodResult res;
  res.method = "dp";
  const ValueVector w = dp::solve_dp(inst);
  res.value = w.w.front();
  res.stop = dp::policy_from_values(inst, w);
  res.policy = res.stop.to_policy();
  res.certificate = Json{{"w", w.w}};
  res.timing_ms = clock.elapsed_ms();
  return res;
}

MethodResult run_simplex(const Instance& inst) {
  Stopwatch clock;
  MethodResult res;
  res.method = "simplex";
  const lp::LpProblem prob = lp::build_flow_lp(inst);
  const lp::LpSolution sol = lp::solve_lp(prob);
  if (sol.status != lp::Status::Optimal) {
    throw Error(ErrorKind::NumericalFailure,
                std::string("flow LP reported ") + lp::to_string(sol.status));
  }
  const std::size_t n = inst.n();
  const FlowSolution flow = lp::flow_from_lp_point(n, sol.primal);
  res.value = sol.objective;
  res.policy = bridge::flow_to_policy(inst, flow);
  res.stop = rounded_stop_region(res.policy);
  // Duals of Cons_i are w_i, the dual of Source is w_0.
  std::vector<double> w(n + 1);
  w[0] = sol.duals[*prob.find_constraint("Source")];
  for (std::size_t i = 1; i <= n; ++i) {
    w[i] = sol.duals[*prob.find_constraint("Cons_" + std::to_string(i))];
  }
  res.extra = Json{{"iterations", sol.iterations}};
  res.certificate = Json{{"flow", flow_to_json(flow)}, {"w", w}};
  res.timing_ms = clock.elapsed_ms();
  return res;
}

MethodResult run_odds(const Instance& inst) {
  Stopwatch clock;
  MethodResult res;
  res.method = "odds-theorem";
  const dp::OddsThreshold th = dp::odds_threshold(inst);
  res.value = th.win_probability;
  res.stop = dp::threshold_stop_region(inst.n(), th.s_star);
  res.policy = res.stop.to_policy();
  res.extra = Json{{"s_star", th.s_star}};
  res.timing_ms = clock.elapsed_ms();
  return res;
}

Json method_to_json(const MethodResult& res, bool with_certificate) {
  Json out{{"method", res.method},
           {"value", res.value},
           {"policy", io::policy_to_json(res.stop, res.policy)}};
  for (const auto& [key, value] : res.extra.items()) out[key] = value;
  if (with_certificate && !res.certificate.empty()) out["certificate"] = res.certificate;
  out["timing_ms"] = res.timing_ms;
  return out;
}

int exit_code_for(const Error& err) {
  return err.kind() == ErrorKind::NumericalFailure ? kNumericalFailure : kUsageError;
}

}  // namespace

bool has_last_success_rewards(const io::InstanceDocument& doc) {
  if (doc.variant) return doc.variant->kind == rewards::VariantKind::LastSuccess;
  const Instance& inst = doc.instance;
  const auto expected = rewards::build_rewards(inst.p(), rewards::VariantSpec::last_success());
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const double scale = std::max(1.0, std::abs(expected[i]));
    if (std::abs(inst.reward(i) - expected[i]) > 1e-12 * scale) return false;
  }
  return true;
}

CommandResult solve(const io::InstanceDocument& doc, const std::string& method,
                    bool with_certificate) {
  Stopwatch clock;
  const Instance& inst = doc.instance;
  Json warnings = Json::array();
  for (const auto& w : inst.warnings()) warnings.push_back(w);
  const bool last_success = has_last_success_rewards(doc);

  CommandResult out;
  if (method == "dp" || method == "simplex" || method == "odds-theorem") {
    MethodResult res;
    if (method == "dp") {
      res = run_dp(inst);
    } else if (method == "simplex") {
      res = run_simplex(inst);
    } else {
      if (!last_success) {
        warnings.push_back(
            "odds-theorem value is only guaranteed optimal for last-success rewards");
      }
      res = run_odds(inst);
    }
    out.document = method_to_json(res, with_certificate);
  } else if (method == "all") {
    std::vector<MethodResult> results{run_dp(inst), run_simplex(inst)};
    Json skipped = Json::array();
    if (!last_success) {
      skipped.push_back(Json{{"method", "odds-theorem"}, {"reason", "rewards are not last-success"}});
    } else {
      try {
        results.push_back(run_odds(inst));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UndefinedOdds) throw;
        skipped.push_back(Json{{"method", "odds-theorem"}, {"reason", e.what()}});
      }
    }
    bool agree = true;
    for (std::size_t a = 0; a < results.size(); ++a) {
      for (std::size_t b = a + 1; b < results.size(); ++b) {
        agree = agree && std::abs(results[a].value - results[b].value) <= kAgreementTol;
      }
    }
    Json list = Json::array();
    for (const auto& r : results) list.push_back(method_to_json(r, with_certificate));
    out.document = Json{{"method", "all"},
                        {"value", results.front().value},
                        {"policy", io::policy_to_json(results.front().stop, results.front().policy)},
                        {"agreement", agree},
                        {"agreement_tolerance", kAgreementTol},
                        {"results", list},
                        {"skipped", skipped}};
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + method + "'");
  }
  out.document["warnings"] = warnings;
  out.document["timing_ms"] = clock.elapsed_ms();
  return out;
}

namespace {

class CheckList {
 public:
  void add(const std::string& name, double value, double tolerance) {
    const bool pass = std::isfinite(value) && value <= tolerance;
    passed_ = passed_ && pass;
    checks_.push_back(
        Json{{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}});
  }
  void fail(const std::string& name, const std::string& reason) {
    passed_ = false;
    checks_.push_back(Json{{"name", name}, {"pass", false}, {"reason", reason}});
  }
  bool passed() const { return passed_; }
  Json& checks() { return checks_; }

 private:
  bool passed_ = true;
  Json checks_ = Json::array();
};

void audit_solution(const Instance& inst, const ValueVector& dp_w, const Json& sol,
                    const std::string& label, CheckList& checks) {
  const double scale = std::max(1.0, dp_w.w.front());
  try {
    if (!sol.is_object() || !sol.contains("value") || !sol.at("value").is_number()) {
      throw Error(ErrorKind::Parse, "solution needs a numeric 'value'");
    }
    const double value = sol.at("value").get<double>();
    checks.add(label + ".value_vs_dp", std::abs(value - dp_w.w.front()), 1e-7 * scale);

    const Policy pol = io::parse_policy(sol);
    require_same_length(inst, pol.size(), "solution policy");
    checks.add(label + ".policy_value", std::abs(eval::expected_reward(inst, pol) - value),
               1e-9 * scale);

    if (sol.contains("certificate")) {
      const Json& cert = sol.at("certificate");
      if (cert.contains("w")) {
        const ValueVector w{cert.at("w").get<std::vector<double>>()};
        checks.add(label + ".w_feasible", duality::check_dual_feasible(inst, w).max(), 1e-9);
        checks.add(label + ".w0_vs_dp", std::abs(w.w.front() - dp_w.w.front()), 1e-7 * scale);
      }
      if (cert.contains("flow")) {
        const FlowSolution flow{cert.at("flow").at("y").get<std::vector<double>>(),
                                cert.at("flow").at("z").get<std::vector<double>>()};
        checks.add(label + ".flow_feasible", duality::check_primal_feasible(inst, flow).max(), 1e-9);
        double obj = 0.0;
        for (std::size_t i = 0; i < inst.n(); ++i) obj += inst.reward(i) * flow.y[i];
        checks.add(label + ".flow_objective_vs_dp", std::abs(obj - dp_w.w.front()), 1e-7 * scale);
      }
    }
  } catch (const Error& e) {
    checks.fail(label, e.what());
  } catch (const Json::exception& e) {
    checks.fail(label, e.what());
  }
}

}  // namespace

CommandResult verify(const io::InstanceDocument& doc, const std::vector<Json>& solutions) {
  Stopwatch clock;
  const Instance& inst = doc.instance;
  const std::size_t n = inst.n();
  CheckList checks;

  const ValueVector w = dp::solve_dp(inst);
  const double scale = std::max(1.0, w.w.front());
  checks.add("dp.recurrence_residual", dp::recurrence_residual(inst, w), 1e-15 * scale);
  checks.add("dp.value_feasible", duality::check_dual_feasible(inst, w).max(), 1e-12);

  const StopRegion stop = dp::policy_from_values(inst, w);
  const Policy pol = stop.to_policy();
  const FlowSolution flow = bridge::policy_to_flow(inst, pol);
  checks.add("flow.feasible", duality::check_primal_feasible(inst, flow).max(), 1e-12);

  const double gap = duality::duality_gap(inst, flow, w);
  checks.add("duality.gap", std::abs(gap), 1e-10);
  const auto slack = duality::complementary_slackness(inst, flow, w);
  checks.add("duality.slackness_violations", static_cast<double>(slack.violations.size()), 0.0);

  // Round trips in both directions.
  const Policy back = bridge::flow_to_policy(inst, flow);
  double policy_rt = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (flow.z[i] > 0.0) policy_rt = std::max(policy_rt, std::abs(back[i] - pol[i]));
  }
  checks.add("roundtrip.policy", policy_rt, 1e-12);
  const FlowSolution again = bridge::policy_to_flow(inst, back);
  double flow_rt = 0.0;
  for (std::size_t i = 0; i < n; ++i) flow_rt = std::max(flow_rt, std::abs(again.y[i] - flow.y[i]));
  for (std::size_t i = 0; i <= n; ++i) flow_rt = std::max(flow_rt, std::abs(again.z[i] - flow.z[i]));
  checks.add("roundtrip.flow", flow_rt, 1e-12);

  const MethodResult lp_res = run_simplex(inst);
  checks.add("simplex.flow_vs_dp", std::abs(lp_res.value - w.w.front()), 1e-7 * scale);
  const ValueVector lp_w{lp_res.certificate.at("w").get<std::vector<double>>()};
  checks.add("simplex.duals_feasible_for_value_lp", duality::check_dual_feasible(inst, lp_w).max(),
             1e-7);
  checks.add("simplex.dual_w0_vs_dp", std::abs(lp_w.w.front() - w.w.front()), 1e-7 * scale);

  bool odds_checked = false;
  if (has_last_success_rewards(doc)) {
    try {
      const auto th = dp::odds_threshold(inst);
      checks.add("odds_theorem.vs_dp", std::abs(th.win_probability - w.w.front()), 1e-12 * scale);
      odds_checked = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UndefinedOdds) throw;
    }
  }

  for (std::size_t s = 0; s < solutions.size(); ++s) {
    audit_solution(inst, w, solutions[s], "solution[" + std::to_string(s) + "]", checks);
  }

  CommandResult out;
  out.exit_code = checks.passed() ? kSuccess : kVerificationFailed;
  out.document = Json{{"passed", checks.passed()},
                      {"value", w.w.front()},
                      {"duality_gap", gap},
                      {"slackness", io::slackness_to_json(slack)},
                      {"odds_theorem_checked", odds_checked},
                      {"checks", std::move(checks.checks())},
                      {"timing_ms", clock.elapsed_ms()}};
  return out;
}

CommandResult simulate(const io::InstanceDocument& doc, const SimulateOptions& opts) {
  Stopwatch clock;
  const Instance& inst = doc.instance;
  if (opts.trials <= 0) throw Error(ErrorKind::InvalidArgument, "--trials must be positive");
  if (opts.workers == 0) throw Error(ErrorKind::InvalidArgument, "--workers must be positive");

  Policy pol = opts.policy == "optimal"
                   ? dp::policy_from_values(inst, dp::solve_dp(inst)).to_policy()
                   : io::parse_policy(io::read_json_file(opts.policy));
  require_same_length(inst, pol.size(), "policy");

  const auto res = eval::simulate(inst, pol, static_cast<std::uint64_t>(opts.trials), opts.seed,
                                  opts.workers);
  CommandResult out;
  out.document = io::sim_result_to_json(res);
  if (opts.compare_exact) {
    const double exact = eval::expected_reward(inst, pol);
    out.document["exact"] = exact;
    const double diff = res.estimate - exact;
    if (res.std_error > 0.0) {
      out.document["z_score"] = diff / res.std_error;
    } else {
      out.document["z_score"] = diff == 0.0 ? Json(0.0) : Json(nullptr);
    }
  }
  out.document["timing_ms"] = clock.elapsed_ms();
  return out;
}

CommandResult export_lp(const io::InstanceDocument& doc, const std::string& formulation,
                        const std::string& format) {
  const Instance& inst = doc.instance;
  auto build = [&]() {
    if (formulation == "ff") return lp::build_flow_lp(inst);
    if (formulation == "dual-p") return lp::build_dual_lp(inst, lp::DualForm::P);
    if (formulation == "dual-p1") return lp::build_dual_lp(inst, lp::DualForm::P1);
    if (formulation == "secretary-reduced") {
      if (!is_secretary(inst)) {
        throw Error(ErrorKind::InvalidArgument,
                    "secretary-reduced needs a secretary instance (p_i = 1/i, R_i = i/n)");
      }
      return lp::build_secretary_reduced_lp(inst.n());
    }
    throw Error(ErrorKind::InvalidArgument, "unknown formulation '" + formulation + "'");
  };
  if (format != "mps" && format != "lp-text") {
    throw Error(ErrorKind::InvalidArgument, "unknown format '" + format + "'");
  }
  const lp::LpProblem prob = build();
  CommandResult out;
  out.text = format == "mps" ? lp::to_mps(prob) : lp::to_lp_text(prob);
  return out;
}

namespace {

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "cannot parse probability '" + item + "'");
    }
    if (used != item.size()) throw Error(ErrorKind::Parse, "cannot parse probability '" + item + "'");
    p.push_back(v);
  }
  return p;
}

}  // namespace

CommandResult gen(const GenOptions& opts) {
  const int sources = static_cast<int>(opts.secretary) + static_cast<int>(opts.p_list.has_value()) +
                      static_cast<int>(opts.seed.has_value());
  if (sources != 1) {
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --secretary, --p-list or --seed");
  }

  std::vector<double> p;
  if (opts.p_list) {
    p = parse_p_list(*opts.p_list);
    if (opts.n && *opts.n != p.size()) {
      throw Error(ErrorKind::DimensionMismatch, "--n does not match the length of --p-list");
    }
  } else {
    if (!opts.n || *opts.n == 0) throw Error(ErrorKind::InvalidArgument, "--n must be positive");
    p.resize(*opts.n);
    if (opts.secretary) {
      for (std::size_t i = 1; i <= p.size(); ++i) p[i - 1] = 1.0 / static_cast<double>(i);
    } else {
      std::mt19937_64 rng(*opts.seed);
      for (double& v : p) v = 0.05 + 0.9 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    }
  }

  std::vector<double> r;
  if (opts.secretary && !opts.variant) {
    const auto n = static_cast<double>(p.size());
    for (std::size_t i = 1; i <= p.size(); ++i) r.push_back(static_cast<double>(i) / n);
  } else {
    rewards::VariantSpec spec;
    spec.kind = rewards::variant_from_string(opts.variant.value_or("last-success"));
    spec.m = opts.m;
    spec.k = opts.k;
    spec.l = opts.l;
    r = rewards::build_rewards(p, spec);
  }
  CommandResult out;
  out.document = io::instance_to_json(make_instance(std::move(p), std::move(r)));
  return out;
}

namespace {

void write_output(const std::string& path, const std::string& body, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << body;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  file << body;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal stopping for the odds problem: DP, flow LP and odds theorem"};
  app.require_subcommand(1);

  std::string input;
  std::string output;

  auto* solve_cmd = app.add_subcommand("solve", "Compute an optimal policy");
  std::string method = "dp";
  bool certificate = false;
  solve_cmd->add_option("--input,-i", input, "Instance file")->required();
  solve_cmd->add_option("--method,-m", method, "dp | simplex | odds-theorem | all")
      ->check(CLI::IsMember({"dp", "simplex", "odds-theorem", "all"}));
  solve_cmd->add_flag("--certificate", certificate, "Include values and flows in the output");
  solve_cmd->add_option("--output,-o", output, "Output file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Check the DP / flow LP duality certificates");
  std::vector<std::string> check_files;
  verify_cmd->add_option("--input,-i", input, "Instance file")->required();
  verify_cmd->add_option("--check-files", check_files, "Solution documents to audit");
  verify_cmd->add_option("--output,-o", output, "Output file (default stdout)");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of a policy's reward");
  SimulateOptions sim;
  sim_cmd->add_option("--input,-i", input, "Instance file")->required();
  sim_cmd->add_option("--policy", sim.policy, "'optimal' or a policy file");
  sim_cmd->add_option("--trials", sim.trials, "Number of simulated games");
  sim_cmd->add_option("--seed", sim.seed, "Generator seed");
  sim_cmd->add_option("--workers", sim.workers, "Worker threads (part of the reproducibility key)");
  sim_cmd->add_flag("--compare-exact", sim.compare_exact, "Report the exact value and z-score");
  sim_cmd->add_option("--output,-o", output, "Output file (default stdout)");

  auto* export_cmd = app.add_subcommand("export-lp", "Write a formulation as MPS or LP text");
  std::string formulation = "ff";
  std::string format = "lp-text";
  export_cmd->add_option("--input,-i", input, "Instance file")->required();
  export_cmd->add_option("--formulation", formulation, "ff | dual-p | dual-p1 | secretary-reduced")
      ->check(CLI::IsMember({"ff", "dual-p", "dual-p1", "secretary-reduced"}));
  export_cmd->add_option("--format", format, "mps | lp-text")
      ->check(CLI::IsMember({"mps", "lp-text"}));
  export_cmd->add_option("--output,-o", output, "Output file (default stdout)");

  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  GenOptions g;
  std::size_t gen_n = 0;
  std::string p_list;
  std::uint64_t gen_seed = 0;
  std::string variant;
  gen_cmd->add_option("--variant", variant, "last-success | mth-last | any-of-last-m | k-of-last-l")
      ->check(CLI::IsMember({"last-success", "mth-last", "any-of-last-m", "k-of-last-l"}));
  gen_cmd->add_option("--m", g.m, "Parameter m");
  gen_cmd->add_option("--k", g.k, "Parameter k");
  gen_cmd->add_option("--l", g.l, "Parameter l");
  auto* n_opt = gen_cmd->add_option("--n", gen_n, "Number of observations");
  auto* p_opt = gen_cmd->add_option("--p-list", p_list, "Comma-separated success probabilities");
  gen_cmd->add_flag("--secretary", g.secretary, "p_i = 1/i and R_i = i/n");
  auto* seed_opt = gen_cmd->add_option("--seed", gen_seed, "Random p_i uniform in [0.05, 0.95]");
  gen_cmd->add_option("--output,-o", output, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << io::Json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return kUsageError;
  }

  try {
    CommandResult res;
    if (solve_cmd->parsed()) {
      res = solve(io::read_instance_file(input), method, certificate);
    } else if (verify_cmd->parsed()) {
      std::vector<Json> sols;
      for (const auto& path : check_files) sols.push_back(io::read_json_file(path));
      res = verify(io::read_instance_file(input), sols);
    } else if (sim_cmd->parsed()) {
      res = simulate(io::read_instance_file(input), sim);
    } else if (export_cmd->parsed()) {
      res = export_lp(io::read_instance_file(input), formulation, format);
    } else {
      if (!variant.empty()) g.variant = variant;
      if (n_opt->count() > 0) g.n = gen_n;
      if (p_opt->count() > 0) g.p_list = p_list;
      if (seed_opt->count() > 0) g.seed = gen_seed;
      res = gen(g);
    }
    write_output(output, res.text.empty() ? res.document.dump(2) + "\n" : res.text, out);
    return res.exit_code;
  } catch (const Error& e) {
    err << io::error_to_json(e).dump() << "\n";
    return exit_code_for(e);
  } catch (const Json::exception& e) {
    err << io::error_to_json(Error(ErrorKind::Parse, e.what())).dump() << "\n";
    return kUsageError;
  }
}

}  // namespace odds::cli
