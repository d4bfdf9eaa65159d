#include "ahprank/cli.hpp"

#include "ahprank/baselines.hpp"
#include "ahprank/cardinal.hpp"
#include "ahprank/error.hpp"
#include "ahprank/experiments.hpp"
#include "ahprank/graph.hpp"
#include "ahprank/metrics.hpp"
#include "ahprank/ordinal.hpp"
#include "ahprank/pcm.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#ifndef AHPRANK_FIXTURE_DIR
#define AHPRANK_FIXTURE_DIR "fixtures"
#endif

namespace ahprank {

namespace {

using Json = nlohmann::ordered_json;

Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

Json vec(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

Json mat(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
  return a;
}

Json relation_json(const PreferenceRelation& x) {
  Json a = Json::array();
  for (int i = 0; i < x.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < x.size(); ++j) row.push_back(x(i, j) ? 1 : 0);
    a.push_back(std::move(row));
  }
  return a;
}

Json ordinal_json(const OrdinalPreferenceMatrix& o, const OrdinalObjective& obj) {
  Json j;
  j["provenance"] = std::string(to_string(o.provenance));
  j["unique"] = o.uniqueness_certificate;
  j["optimum_count"] = o.optimum_count;
  j["timed_out"] = o.timed_out;
  j["sigma"] = num(obj.sigma);
  j["tau"] = num(obj.tau);
  j["relation"] = relation_json(o.x);
  return j;
}

std::string label(const IncompletePCM& pcm, int i) {
  return static_cast<int>(pcm.labels().size()) == pcm.size() ? pcm.labels()[i] : std::to_string(i + 1);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!(f << content)) throw Error(Errc::InvalidArgument, "cannot write " + path);
}

struct RankArgs {
  std::string matrix;
  std::string method = "mwov";
  bool ordinal_only = false;
  double epsilon = kDefaultEpsilon;
  double delta = kDefaultDelta;
  long budget_ms = 10000;
  std::string normalization = "sum-one";
  std::string dot;
};

void cmd_rank(const RankArgs& a, bool json, std::ostream& out, std::ostream& err) {
  const auto pcm = read_matrix_file(a.matrix);
  for (const auto& w : pcm.range_warnings()) err << "warning: " << w << '\n';
  const auto norm = normalization_from_string(a.normalization);
  const auto g = build_comparison_graph(pcm);
  const auto gd = build_dominance_graph(pcm);
  if (!a.dot.empty()) write_file(a.dot, to_dot(g, gd, pcm.labels()));

  OrdinalOptions oo;
  oo.delta = a.delta;
  oo.budget = std::chrono::milliseconds(a.budget_ms);

  if (a.method == "ills") {
    if (a.ordinal_only) throw Error(Errc::InvalidArgument, "--ordinal-only needs --method mwov");
    const auto s = solve_ills(g);
    const auto w = s.weights.renormalized(norm);
    const auto obj = evaluate_objective(pcm, ordinal_from_weights(pcm, w.weights()), a.delta);
    if (json) {
      Json j;
      j["method"] = "ILLS";
      j["normalization"] = std::string(to_string(norm));
      j["weights"] = vec(w.weights());
      j["log_weights"] = vec(w.log_weights());
      j["objective"] = num(s.objective);
      j["sigma"] = num(obj.sigma);
      j["tau"] = num(obj.tau);
      j["residual"] = num(s.residual);
      out << j.dump(2) << '\n';
    } else {
      out << "method: ILLS\n"
          << "objective: " << format_number(s.objective) << '\n'
          << "sigma: " << format_number(obj.sigma) << '\n'
          << "tau: " << format_number(obj.tau) << '\n'
          << "residual: " << format_number(s.residual) << '\n'
          << serialize_weights(w, Format::Csv, pcm.labels());
    }
    return;
  }
  if (a.method != "mwov") throw Error(Errc::InvalidArgument, "--method must be 'mwov' or 'ills'");

  if (a.ordinal_only) {
    const auto o = solve_ordinal(pcm, oo);
    const auto obj = evaluate_objective(pcm, o.x, a.delta);
    if (json) {
      out << ordinal_json(o, obj).dump(2) << '\n';
    } else {
      out << "provenance: " << to_string(o.provenance) << '\n'
          << "unique: " << (o.uniqueness_certificate ? "true" : "false") << '\n'
          << "optimum_count: " << o.optimum_count << '\n'
          << "sigma: " << format_number(obj.sigma) << '\n'
          << "tau: " << format_number(obj.tau) << '\n'
          << relation_to_csv(o.x);
    }
    return;
  }

  MwovOptions mo;
  mo.epsilon = a.epsilon;
  mo.ordinal = oo;
  const auto r = solve_ills_mwov(pcm, mo);
  const auto w = r.cardinal.weights.renormalized(norm);
  const auto& c = r.cardinal.certificate;
  if (json) {
    Json j;
    j["method"] = "ILLS-MWOV";
    j["normalization"] = std::string(to_string(norm));
    j["weights"] = vec(w.weights());
    j["log_weights"] = vec(w.log_weights());
    j["objective"] = num(r.cardinal.objective);
    j["sigma"] = num(r.ordinal_objective.sigma);
    j["tau"] = num(r.ordinal_objective.tau);
    j["epsilon"] = num(a.epsilon);
    j["delta"] = num(a.delta);
    j["ordinal"] = ordinal_json(r.ordinal, r.ordinal_objective);
    Json k;
    k["stationarity"] = num(c.stationarity);
    k["complementarity"] = num(c.complementarity);
    k["primal_feasibility"] = num(c.primal_feasibility);
    k["dual_feasibility"] = num(c.dual_feasibility);
    k["accepted"] = c.accepted();
    Json active = Json::array();
    for (auto [i, jj] : r.cardinal.active) active.push_back({i + 1, jj + 1});
    k["active"] = std::move(active);
    j["kkt"] = std::move(k);
    out << j.dump(2) << '\n';
  } else {
    out << "method: ILLS-MWOV\n"
        << "provenance: " << to_string(r.ordinal.provenance) << '\n'
        << "unique: " << (r.ordinal.uniqueness_certificate ? "true" : "false") << '\n'
        << "sigma: " << format_number(r.ordinal_objective.sigma) << '\n'
        << "tau: " << format_number(r.ordinal_objective.tau) << '\n'
        << "objective: " << format_number(r.cardinal.objective) << '\n'
        << "kkt_stationarity: " << format_number(c.stationarity) << '\n'
        << "kkt_complementarity: " << format_number(c.complementarity) << '\n'
        << "kkt_primal_feasibility: " << format_number(c.primal_feasibility) << '\n'
        << "kkt_dual_feasibility: " << format_number(c.dual_feasibility) << '\n'
        << serialize_weights(w, Format::Csv, pcm.labels());
  }
}

void cmd_compare(const std::string& path, const MethodOptions& mo, bool json, std::ostream& out, std::ostream& err) {
  const auto pcm = read_matrix_file(path);
  for (const auto& w : pcm.range_warnings()) err << "warning: " << w << '\n';
  if (!is_connected(build_comparison_graph(pcm))) throw Error(Errc::Disconnected, "comparison graph is not connected");
  Json rows = Json::array();
  std::ostringstream table;
  table << "method,status,positive,sigma,tau,mvs,tds";
  for (int i = 0; i < pcm.size(); ++i) table << ",w_" << label(pcm, i);
  table << '\n';
  for (Method m : kAllMethods) {
    Json row;
    row["method"] = std::string(to_string(m));
    table << to_string(m) << ',';
    try {
      const auto r = run_method(m, pcm, mo);
      row["positive"] = r.positive;
      row["weights"] = vec(r.weights);
      Json diag;
      for (const auto& [k, v] : r.diagnostics) diag[k] = num(v);
      row["diagnostics"] = std::move(diag);
      if (r.provenance) row["provenance"] = std::string(to_string(*r.provenance));
      if (r.positive) {
        const auto mr = compute_metrics(pcm, r.weights, mo.delta);
        row["status"] = "ok";
        row["sigma"] = num(mr.sigma);
        row["tau"] = num(mr.tau);
        row["mvs"] = num(mr.mvs);
        row["tds"] = num(mr.tds);
        table << "ok,true," << format_number(mr.sigma) << ',' << format_number(mr.tau) << ','
              << format_number(mr.mvs) << ',' << format_number(mr.tds);
      } else {
        row["status"] = "non-positive weights";
        table << "non-positive weights,false,,,,";
      }
      for (Eigen::Index i = 0; i < r.weights.size(); ++i) table << ',' << format_number(r.weights(i));
    } catch (const Error& e) {
      row["status"] = "failed";
      row["error"] = e.what();
      table << "failed,,,,,";
      for (int i = 0; i < pcm.size(); ++i) table << ',';
      err << "warning: " << to_string(m) << ": " << e.what() << '\n';
    }
    table << '\n';
    rows.push_back(std::move(row));
  }
  if (json) {
    out << Json{{"methods", rows}}.dump(2) << '\n';
  } else {
    out << table.str();
  }
}

void cmd_metrics(const std::string& matrix, const std::string& weights, const std::string& other, double delta,
                 bool json, std::ostream& out) {
  const auto pcm = read_matrix_file(matrix);
  const Eigen::VectorXd w = parse_raw_weights(read_text_file(weights), format_for_path(weights));
  auto report = compute_metrics(pcm, w, delta);
  if (!other.empty()) {
    const Eigen::VectorXd v = parse_raw_weights(read_text_file(other), format_for_path(other));
    report.delta = compute_delta(pcm, w, v);
  }
  if (json) {
    Json j;
    j["sigma"] = num(report.sigma);
    j["tau"] = num(report.tau);
    j["mvs"] = num(report.mvs);
    j["tds"] = num(report.tds);
    if (report.delta) j["deviation"] = mat(*report.delta);
    out << j.dump(2) << '\n';
    return;
  }
  out << "sigma: " << format_number(report.sigma) << '\n'
      << "tau: " << format_number(report.tau) << '\n'
      << "mvs: " << format_number(report.mvs) << '\n'
      << "tds: " << format_number(report.tds) << '\n';
  if (report.delta) {
    out << "deviation:\n";
    for (Eigen::Index i = 0; i < report.delta->rows(); ++i) {
      for (Eigen::Index k = 0; k < report.delta->cols(); ++k) {
        if (k) out << ',';
        out << format_number((*report.delta)(i, k));
      }
      out << '\n';
    }
  }
}

void cmd_gen(int n, double rho, double gamma, std::uint64_t seed, const std::string& truth, bool json,
             std::ostream& out) {
  Rng rng(seed);
  const auto inst = generate_instance(n, rho, gamma, rng);
  if (!truth.empty()) write_file(truth, serialize_weights(inst.truth, format_for_path(truth)));
  out << serialize_matrix(inst.pcm, json ? Format::Json : Format::Csv);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_cell(item);
    if (!v || item.empty()) throw Error(Errc::InvalidArgument, "bad number '" + item + "' in list");
    values.push_back(*v);
  }
  if (values.empty()) throw Error(Errc::InvalidArgument, "empty list");
  return values;
}

Json summary_json(const SweepResult& r) {
  Json rows = Json::array();
  for (const auto& s : r.summary) {
    rows.push_back({{"rho", num(s.rho)},
                    {"gamma", num(s.gamma)},
                    {"method", std::string(to_string(s.method))},
                    {"completed", s.completed},
                    {"failures", s.failures},
                    {"sigma_mean", num(s.sigma_mean)},
                    {"sigma_std", num(s.sigma_std)},
                    {"mvs_mean", num(s.mvs_mean)},
                    {"mvs_std", num(s.mvs_std)},
                    {"tds_mean", num(s.tds_mean)},
                    {"tds_std", num(s.tds_std)}});
  }
  return rows;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Priority vectors from incomplete pairwise comparison matrices"};
  app.name("ahp_rank");
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Two-stage ranking of one matrix");
  rank_cmd->add_option("matrix", rank.matrix, "Matrix file (.csv or .json)")->required();
  rank_cmd->add_option("--method", rank.method, "mwov or ills")->check(CLI::IsMember({"mwov", "ills"}));
  rank_cmd->add_flag("--ordinal-only", rank.ordinal_only, "Stop after the ordinal stage");
  rank_cmd->add_option("--epsilon", rank.epsilon, "Separation between ordered log-weights");
  rank_cmd->add_option("--delta", rank.delta, "Tie penalty");
  rank_cmd->add_option("--budget-ms", rank.budget_ms, "Time budget of the exact ordinal search");
  rank_cmd->add_option("--normalization", rank.normalization, "sum-one or first-component-one")
      ->check(CLI::IsMember({"sum-one", "first-component-one"}));
  rank_cmd->add_option("--emit-dot", rank.dot, "Write Graphviz graphs to this file");
  rank_cmd->add_flag("--json", json, "Machine-readable output");

  std::string compare_path;
  MethodOptions compare_opts;
  auto* compare_cmd = app.add_subcommand("compare", "Run every method and tabulate metrics");
  compare_cmd->add_option("matrix", compare_path, "Matrix file")->required();
  compare_cmd->add_option("--epsilon", compare_opts.epsilon, "Separation for ILLS-MWOV");
  compare_cmd->add_option("--delta", compare_opts.delta, "Tie penalty");
  compare_cmd->add_option("--idls-restarts", compare_opts.idls.restarts, "IDLS restarts");
  compare_cmd->add_flag("--json", json, "Machine-readable output");

  std::string metrics_matrix, metrics_weights, metrics_other;
  double metrics_delta = kDefaultDelta;
  auto* metrics_cmd = app.add_subcommand("metrics", "Evaluate a weight vector");
  metrics_cmd->add_option("matrix", metrics_matrix, "Matrix file")->required();
  metrics_cmd->add_option("weights", metrics_weights, "Weight file")->required();
  metrics_cmd->add_option("--deviation", metrics_other, "Second weight file; adds |ratio differences|");
  metrics_cmd->add_option("--delta", metrics_delta, "Tie penalty");
  metrics_cmd->add_flag("--json", json, "Machine-readable output");

  int gen_n = 7;
  double gen_rho = 0.5, gen_gamma = 0.2;
  std::uint64_t gen_seed = 42;
  std::string gen_truth;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n", gen_n, "Alternatives");
  gen_cmd->add_option("--rho", gen_rho, "Density");
  gen_cmd->add_option("--gamma", gen_gamma, "Perturbation std");
  gen_cmd->add_option("--seed", gen_seed, "Seed");
  gen_cmd->add_option("--truth", gen_truth, "Write nominal weights to this file");
  gen_cmd->add_flag("--json", json, "Machine-readable output");

  std::string exp_config, exp_rho, exp_gamma, exp_out, exp_suite;
  std::optional<int> exp_n, exp_trials, exp_threads;
  std::optional<std::uint64_t> exp_seed;
  bool exp_svg = false;
  auto* exp_cmd = app.add_subcommand("experiment", "Monte-Carlo comparison sweep");
  exp_cmd->add_option("--config", exp_config, "JSON config file");
  exp_cmd->add_option("--n", exp_n, "Alternatives");
  exp_cmd->add_option("--rho", exp_rho, "Comma-separated densities");
  exp_cmd->add_option("--gamma", exp_gamma, "Comma-separated perturbation stds");
  exp_cmd->add_option("--trials", exp_trials, "Trials per cell");
  exp_cmd->add_option("--seed", exp_seed, "Seed");
  exp_cmd->add_option("--threads", exp_threads, "Worker threads");
  exp_cmd->add_option("--out", exp_out, "Output directory");
  exp_cmd->add_flag("--svg", exp_svg, "Also write pareto.svg");
  exp_cmd->add_option("--suite", exp_suite, "Run a fixed suite instead of a sweep")
      ->check(CLI::IsMember({"ambiguous-cycle"}));
  exp_cmd->add_flag("--json", json, "Machine-readable output");

  std::string fixture_dir = AHPRANK_FIXTURE_DIR;
  auto* fix_cmd = app.add_subcommand("fixtures", "Reference checks on the bundled matrices");
  fix_cmd->add_option("--dir", fixture_dir, "Fixture directory");
  fix_cmd->add_flag("--json", json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return 2;
  }

  std::ostringstream buffer;
  try {
    if (rank_cmd->parsed()) {
      cmd_rank(rank, json, buffer, err);
    } else if (compare_cmd->parsed()) {
      cmd_compare(compare_path, compare_opts, json, buffer, err);
    } else if (metrics_cmd->parsed()) {
      cmd_metrics(metrics_matrix, metrics_weights, metrics_other, metrics_delta, json, buffer);
    } else if (gen_cmd->parsed()) {
      cmd_gen(gen_n, gen_rho, gen_gamma, gen_seed, gen_truth, json, buffer);
    } else if (exp_cmd->parsed()) {
      SweepResult result;
      if (exp_suite == "ambiguous-cycle") {
        result = run_ambiguous_cycle_suite();
      } else {
        ExperimentConfig config;
        if (!exp_config.empty()) config = ExperimentConfig::from_json(read_text_file(exp_config));
        if (exp_n) config.n = *exp_n;
        if (!exp_rho.empty()) config.densities = parse_list(exp_rho);
        if (!exp_gamma.empty()) config.gammas = parse_list(exp_gamma);
        if (exp_trials) config.trials = *exp_trials;
        if (exp_seed) config.seed = *exp_seed;
        if (exp_threads) config.threads = *exp_threads;
        config.svg = config.svg || exp_svg;
        exp_svg = config.svg;
        result = run_sweep(config);
      }
      if (!exp_out.empty()) write_sweep_outputs(result, exp_out, exp_svg);
      if (json) {
        buffer << Json{{"summary", summary_json(result)}}.dump(2) << '\n';
      } else {
        buffer << summary_csv(result);
      }
    } else if (fix_cmd->parsed()) {
      const auto checks = run_fixture_suite(fixture_dir);
      int passed = 0;
      Json rows = Json::array();
      for (const auto& c : checks) {
        passed += c.passed;
        rows.push_back({{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"expected", c.expected}});
        if (!json) {
          buffer << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured " << c.measured << "  expected "
                 << c.expected << '\n';
        }
      }
      if (json) {
        buffer << Json{{"checks", rows}, {"passed", passed}, {"total", checks.size()}}.dump(2) << '\n';
      } else {
        buffer << passed << "/" << checks.size() << " checks passed\n";
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  out << buffer.str();
  return 0;
}

}  // namespace ahprank
