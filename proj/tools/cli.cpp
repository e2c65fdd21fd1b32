#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "manlp/engine.hpp"
#include "manlp/oracle.hpp"
#include "manlp/syntax.hpp"
#include "manlp/uniqueness.hpp"
#include "report.hpp"

namespace manlp::cli {

namespace {

struct Options {
  std::string lattice = "auto";
  std::string json_path;
  bool timing = false;

  std::string program_path;
  std::string interp_path;
  bool iterate = false;
  double tol = FixpointConfig{}.tolerance;
  std::size_t max_iterations = FixpointConfig{}.max_iterations;

  std::string check_path;
  bool search = false;
  std::size_t brute = 0;
  std::uint64_t seed = 1;
  double max_points = GridSpec{}.max_points;

  bool solve = false;
};

struct Loaded {
  std::string text;
  Program program;
};

class Runner {
public:
  Runner(const Options& opt, std::ostream& out, std::ostream& err)
      : opt_(opt), out_(out), err_(err) {}

  int run(const std::string& command) {
    const auto started = std::chrono::steady_clock::now();
    report_["command"] = command;
    load_program();
    int code = exit_ok;
    if (command == "check-model") code = check_model();
    if (command == "tp") code = tp_command();
    if (command == "reduct") code = reduct_command();
    if (command == "stable") code = stable_command();
    if (command == "cert") code = cert_command();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    if (opt_.timing) {
      report_["timing_ms"] = ms;
      out_ << "time: " << table_number(ms) << " ms\n";
    }
    write_json();
    return code;
  }

private:
  FixpointConfig config() const {
    FixpointConfig cfg{opt_.tol, opt_.max_iterations};
    cfg.validate();
    return cfg;
  }

  void load_program() {
    loaded_.text = read_file(opt_.program_path);
    LatticeKind kind = infer_lattice_kind(loaded_.text);
    if (opt_.lattice == "unit") kind = LatticeKind::unit_interval;
    if (opt_.lattice == "interval") kind = LatticeKind::subinterval;
    try {
      loaded_.program = parse_program(loaded_.text, kind);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), e.column(), opt_.program_path + ": " + e.message());
    }
    report_["program"] = {{"path", opt_.program_path},
                          {"digest", digest(loaded_.text)},
                          {"lattice", to_string(kind)},
                          {"rules", loaded_.program.rules().size()},
                          {"symbols", loaded_.program.symbols()}};
    report_["inputs"] = Json::object();
  }

  Interpretation load_interp(const std::string& path, const char* key) {
    auto i = parse_interpretation(read_file(path), loaded_.program.kind());
    require_matches(loaded_.program, i);
    report_["inputs"][key] = {{"path", path}, {"interpretation", to_json(i)}};
    return i;
  }

  int check_model() {
    const Program& p = loaded_.program;
    const auto i = load_interp(opt_.interp_path, "interp");
    std::vector<std::vector<std::string>> rows;
    Json rules = Json::array();
    bool model = true;
    for (std::size_t r = 0; r < p.rules().size(); ++r) {
      const Rule& rule = p.rules()[r];
      const TruthValue value = rule_value(rule, i);
      const bool ok = leq(rule.weight, value);
      model = model && ok;
      rows.push_back({std::to_string(r + 1), render_rule(rule), table_value(value),
                      table_value(rule.weight), ok ? "yes" : "no"});
      rules.push_back({{"rule", r + 1},
                       {"value", to_json(value)},
                       {"weight", to_json(rule.weight)},
                       {"satisfied", ok}});
    }
    print_table(out_, {"#", "rule", "value", "weight", "satisfied"}, rows);
    out_ << "model: " << (model ? "yes" : "no") << '\n';
    report_["rules"] = std::move(rules);
    report_["verdict"] = model;
    return model ? exit_ok : exit_negative;
  }

  int tp_command() {
    const Program& p = loaded_.program;
    const auto start = opt_.interp_path.empty() ? Interpretation::bottom(p)
                                                : load_interp(opt_.interp_path, "interp");
    if (!opt_.iterate) {
      if (opt_.interp_path.empty()) throw CLI::RequiredError("--interp");
      const auto next = tp(p, start);
      std::vector<std::vector<std::string>> rows;
      for (std::size_t k = 0; k < next.size(); ++k) {
        rows.push_back({next.symbols()[k], table_value(start.values()[k]),
                        table_value(next.values()[k])});
      }
      print_table(out_, {"symbol", "I", "T_P(I)"}, rows);
      report_["result"] = to_json(next);
      return exit_ok;
    }
    const auto trace = iterate_tp(p, start, config());
    print_trace(trace);
    report_["trace"] = to_json(trace);
    report_["verdict"] = trace.converged;
    if (!trace.converged) {
      err_ << "error: T_P iteration did not converge within " << opt_.max_iterations
           << " steps\n";
      return exit_budget;
    }
    return exit_ok;
  }

  void print_trace(const FixpointTrace& trace) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) labels.push_back(std::to_string(k));
    print_interpretations(out_, "iter", labels, trace.iterates);
    out_ << "converged: " << (trace.converged ? "yes" : "no") << " after " << trace.steps()
         << " steps (residual " << table_number(trace.residual) << ")\n";
  }

  int reduct_command() {
    const auto i = load_interp(opt_.interp_path, "interp");
    const Program r = reduct(loaded_.program, i);
    const std::string text = render_program(r);
    out_ << text;
    report_["reduct"] = text;
    return exit_ok;
  }

  int stable_command() {
    const int modes = (opt_.check_path.empty() ? 0 : 1) + (opt_.search ? 1 : 0) +
                      (opt_.brute > 0 ? 1 : 0);
    if (modes != 1) throw CLI::ValidationError("stable", "give exactly one of --check, --search, --brute");
    if (!opt_.check_path.empty()) return stable_check();
    if (opt_.search) return stable_search_command();
    return stable_brute();
  }

  int stable_check() {
    const auto i = load_interp(opt_.check_path, "check");
    const auto check = check_stable(loaded_.program, i, config());
    print_interpretations(out_, "", {"I", "lfp(T_{P_I})"}, {i, check.least_model_of_reduct});
    out_ << "distance: " << table_number(check.distance) << '\n';
    if (!check.converged) {
      out_ << "stable: unknown\n";
      err_ << "error: reduct fixpoint did not converge within " << opt_.max_iterations
           << " steps\n";
      report_["verdict"] = nullptr;
      return exit_budget;
    }
    out_ << "stable: " << (check.stable ? "yes" : "no") << '\n';
    report_["verdict"] = check.stable;
    report_["distance"] = check.distance;
    report_["least_model_of_reduct"] = to_json(check.least_model_of_reduct);
    return check.stable ? exit_ok : exit_negative;
  }

  int stable_search_command() {
    std::uint64_t seed = opt_.seed;
    if (const char* env = std::getenv("MANLP_SEED")) {
      try {
        seed = std::stoull(env);
      } catch (const std::exception&) {
        throw CLI::ValidationError("MANLP_SEED", "not an unsigned integer");
      }
    }
    report_["inputs"]["seed"] = seed;
    const auto cfg = config();
    const auto starts = default_starts(loaded_.program, seed);
    const auto result = stable_search(loaded_.program, cfg, starts);
    const auto models = result.distinct(default_check_tolerance);

    std::vector<std::string> labels;
    for (std::size_t k = 0; k < models.size(); ++k) labels.push_back(std::to_string(k + 1));
    print_interpretations(out_, "model", labels, models);
    const auto& d = result.diagnostics;
    out_ << "starts: " << d.starts << ", converged: " << d.converged
         << ", non-converged: " << d.non_converged << " (cycles: " << d.cycles
         << "), rejected: " << d.rejected << '\n';
    out_ << "stable models found: " << models.size() << '\n';

    Json jm = Json::array();
    for (const auto& m : models) jm.push_back(to_json(m));
    report_["models"] = std::move(jm);
    Json traces = Json::array();
    for (const auto& m : result.models) {
      Json t = to_json(m.trace);
      t["start"] = m.start_index;
      traces.push_back(std::move(t));
    }
    report_["traces"] = std::move(traces);
    report_["diagnostics"] = {{"starts", d.starts},
                              {"converged", d.converged},
                              {"non_converged", d.non_converged},
                              {"cycles", d.cycles},
                              {"rejected", d.rejected}};
    report_["verdict"] = !models.empty();
    if (!models.empty()) return exit_ok;
    return d.non_converged > 0 ? exit_budget : exit_negative;
  }

  int stable_brute() {
    const GridSpec grid{opt_.brute, opt_.max_points};
    report_["inputs"]["grid"] = {{"resolution", grid.resolution}, {"max_points", grid.max_points}};
    const auto result = brute_force_stable(loaded_.program, grid, config());
    std::vector<std::string> labels;
    std::vector<Interpretation> reps;
    Json clusters = Json::array();
    for (std::size_t k = 0; k < result.clusters.size(); ++k) {
      const auto& c = result.clusters[k];
      labels.push_back(std::to_string(k + 1) + " (" + std::to_string(c.members.size()) + ")");
      reps.push_back(c.representative);
      clusters.push_back(
          {{"representative", to_json(c.representative)}, {"members", c.members.size()}});
    }
    print_interpretations(out_, "cluster", labels, reps);
    out_ << "grid points: " << result.points << ", accepted: " << result.accepted
         << ", undecided: " << result.undecided << '\n';
    out_ << "clusters: " << result.clusters.size() << '\n';
    report_["clusters"] = std::move(clusters);
    report_["models"] = Json::array();
    for (const auto& r : reps) report_["models"].push_back(to_json(r));
    report_["verdict"] = !reps.empty();
    return reps.empty() ? exit_negative : exit_ok;
  }

  int cert_command() {
    const auto report = certify(loaded_.program);
    report_["certificate"] = to_json(report);
    if (!report.eligible) {
      out_ << "eligible: no\n";
      for (const auto& v : report.violations) {
        out_ << "  " << (v.rule == Violation::npos ? std::string("program")
                                                    : "rule " + std::to_string(v.rule + 1))
             << ": " << v.reason << '\n';
      }
      report_["verdict"] = nullptr;
      return exit_negative;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.per_rule) {
      rows.push_back({std::to_string(r.rule + 1), render_rule(loaded_.program.rules()[r.rule]),
                      table_number(r.lambda1), table_number(r.lambda2),
                      r.passes ? "pass" : "fail"});
    }
    print_table(out_, {"#", "rule", "lambda1", "lambda2", "result"}, rows);
    out_ << "global Lipschitz: " << table_number(report.global_lipschitz) << '\n';
    out_ << "verdict: " << (*report.verdict ? "unique stable model" : "not certified") << '\n';
    report_["verdict"] = *report.verdict;
    if (!*report.verdict) return exit_negative;
    if (!opt_.solve) return exit_ok;

    const auto solution = solve_unique(loaded_.program, config());
    print_trace(solution.trace);
    out_ << "effective iterations: " << solution.trace.effective_steps(opt_.tol) << '\n';
    print_interpretations(out_, "", {"model"}, {solution.model});
    report_["trace"] = to_json(solution.trace);
    report_["models"] = Json::array({to_json(solution.model)});
    return exit_ok;
  }

  void write_json() {
    if (opt_.json_path.empty()) return;
    std::ofstream f(opt_.json_path, std::ios::binary);
    if (!f) throw Error("cannot write " + opt_.json_path);
    f << report_.dump(2) << '\n';
  }

  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
  Loaded loaded_;
  Json report_;
};

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Multi-adjoint normal logic programs: models, stable models, uniqueness"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--lattice", opt.lattice, "Truth-value lattice of the program")
      ->check(CLI::IsMember({"auto", "unit", "interval"}));
  app.add_option("--json", opt.json_path, "Write a structured report to this path");
  app.add_flag("--timing", opt.timing, "Report wall-clock time");

  auto add_program = [&](CLI::App* sub) {
    sub->add_option("program", opt.program_path, ".mnlp program file")->required();
  };
  auto add_fixpoint = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tol, "Fixpoint tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max", opt.max_iterations, "Fixpoint iteration budget")
        ->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check-model", "Rule values and model verdict");
  add_program(check);
  check->add_option("--interp", opt.interp_path, "Interpretation file")->required();

  auto* tpc = app.add_subcommand("tp", "Apply or iterate the immediate consequence operator");
  add_program(tpc);
  tpc->add_option("--interp", opt.interp_path, "Interpretation file");
  tpc->add_flag("--iterate", opt.iterate, "Iterate to a fixpoint");
  add_fixpoint(tpc);

  auto* red = app.add_subcommand("reduct", "Print the reduct of the program");
  add_program(red);
  red->add_option("--interp", opt.interp_path, "Interpretation file")->required();

  auto* stable = app.add_subcommand("stable", "Check or search for stable models");
  add_program(stable);
  auto* o_check = stable->add_option("--check", opt.check_path, "Interpretation to verify");
  auto* o_search = stable->add_flag("--search", opt.search, "R-iteration from seeded starts");
  auto* o_brute =
      stable->add_option("--brute", opt.brute, "Grid oracle at resolution N")
          ->check(CLI::PositiveNumber);
  o_check->excludes(o_search)->excludes(o_brute);
  o_search->excludes(o_brute);
  stable->add_option("--seed", opt.seed, "Seed for the random starts");
  stable->add_option("--max-points", opt.max_points, "Grid oracle budget");
  add_fixpoint(stable);

  auto* cert = app.add_subcommand("cert", "Uniqueness certificate");
  add_program(cert);
  cert->add_flag("--solve", opt.solve, "Compute the unique stable model when certified");
  add_fixpoint(cert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Runner runner(opt, out, err);
    return runner.run(command);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return exit_budget;
  } catch (const UncertifiedError& e) {
    err << "error: " << e.what() << '\n';
    return exit_negative;
  } catch (const ParseError& e) {
    err << "error: " << e.message() << " (line " << e.line() << ", column " << e.column()
        << ")\n";
    return exit_usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const SymbolMismatch& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_budget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace manlp::cli
