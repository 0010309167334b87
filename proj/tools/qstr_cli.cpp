// qstr: command-line front end over the C interface of libqstr.
//
// Exit codes: 0 success / consistent, 1 inconsistent / no scenario /
// contradiction / invalid calculus, 2 usage, parse or file errors.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qstr/qstr.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_inconsistent = 1;
constexpr int exit_usage = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(qstr_status s) {
  switch (s) {
  case QSTR_OK:
    return exit_ok;
  case QSTR_INCONSISTENT:
  case QSTR_E_NO_SCENARIO:
  case QSTR_E_CONTRADICTION:
    return exit_inconsistent;
  default:
    return exit_usage;
  }
}

void check(qstr_status s) {
  if (s != QSTR_OK)
    throw Failure{exit_code_for(s), qstr_last_error()};
}

struct NetworkDeleter {
  void operator()(qstr_network *n) const { qstr_network_free(n); }
};
struct CalculusDeleter {
  void operator()(qstr_calculus *c) const { qstr_calculus_free(c); }
};
struct ReportDeleter {
  void operator()(qstr_report *r) const { qstr_report_free(r); }
};
struct ListDeleter {
  void operator()(qstr_scenario_list *l) const { qstr_scenario_list_free(l); }
};

using Network = std::unique_ptr<qstr_network, NetworkDeleter>;
using Calculus = std::unique_ptr<qstr_calculus, CalculusDeleter>;
using Report = std::unique_ptr<qstr_report, ReportDeleter>;
using ScenarioList = std::unique_ptr<qstr_scenario_list, ListDeleter>;

std::string take(char *s) {
  std::string out = s ? s : "";
  qstr_string_free(s);
  return out;
}

// Shortest round-trip text, matching the network file writer.
std::string number(double p) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p);
  return std::string(buf, ptr);
}

struct RunConfig {
  std::string input;
  std::string second; // --refinement / --background file
  std::string calculus_override;
  std::string output;
  std::string format;
  std::size_t limit = 0;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::size_t vars = 5;
  double density = 0.5;
  std::size_t label_size = 2;
  std::string gen_calculus = "ia";
  bool json = false;
  bool closed = false;
  int verbosity = 0;
};

// What a subcommand produced: text for stdout (or --output) and exit code.
struct Outcome {
  std::string text;
  int code = exit_ok;
};

class Session {
public:
  explicit Session(const RunConfig &cfg) : cfg_(cfg) {
    if (const char *dir = std::getenv("QSTR_CALCULUS_PATH"))
      calculus_dir_ = dir;
    if (!cfg.calculus_override.empty())
      override_ = load_calculus(cfg.calculus_override);
  }

  static Calculus load_calculus(const std::string &name_or_path) {
    qstr_calculus *c = nullptr;
    std::error_code ec;
    if (std::filesystem::is_regular_file(name_or_path, ec))
      check(qstr_calculus_load(name_or_path.c_str(), &c));
    else
      check(qstr_calculus_builtin(name_or_path.c_str(), &c));
    return Calculus(c);
  }

  Network load(const std::string &path) {
    qstr_network *n = nullptr;
    check(qstr_network_load(
        path.c_str(), calculus_dir_.empty() ? nullptr : calculus_dir_.c_str(),
        override_.get(), &n));
    Network net(n);
    if (!qstr_network_closure_decides(net.get()) && !caveat_shown_) {
      caveat_shown_ = true;
      std::cerr << "note: closure is not known to decide satisfiability for "
                   "calculus '"
                << qstr_network_calculus_name(net.get())
                << "'; results are closure-consistent only\n";
    }
    return net;
  }

  const RunConfig &config() const { return cfg_; }

private:
  const RunConfig &cfg_;
  std::string calculus_dir_;
  Calculus override_;
  bool caveat_shown_ = false;
};

std::uint64_t constraint(const qstr_network *net, std::size_t i, std::size_t j) {
  std::uint64_t bits = 0;
  check(qstr_network_constraint(net, i, j, &bits));
  return bits;
}

std::uint64_t universal(const qstr_network *net) {
  const std::size_t b = qstr_network_relation_count(net);
  return b == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << b) - 1;
}

std::vector<std::string> names_of(const qstr_network *net, std::uint64_t bits) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < qstr_network_relation_count(net); ++k)
    if (bits & (std::uint64_t{1} << k))
      out.emplace_back(qstr_network_relation_name(net, k));
  return out;
}

std::string var(const qstr_network *net, std::size_t i) {
  return qstr_network_variable(net, i);
}

// "a b ( r1 r2 )" for every constrained pair i < j.
std::string constraint_lines(const qstr_network *net) {
  std::string out;
  const std::size_t n = qstr_network_size(net);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto bits = constraint(net, i, j);
      if (bits == universal(net))
        continue;
      out += var(net, i) + " " + var(net, j) + " (";
      for (const auto &r : names_of(net, bits))
        out += " " + r;
      out += " )\n";
    }
  return out;
}

Json constraints_json(const qstr_network *net) {
  Json out = Json::array();
  const std::size_t n = qstr_network_size(net);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto bits = constraint(net, i, j);
      if (bits == universal(net))
        continue;
      out.push_back({{"from", var(net, i)},
                     {"to", var(net, j)},
                     {"relations", names_of(net, bits)}});
    }
  return out;
}

Json network_json(const qstr_network *net) {
  Json j;
  j["name"] = qstr_network_name(net);
  j["calculus"] = qstr_network_calculus_name(net);
  Json vars = Json::array();
  for (std::size_t i = 0; i < qstr_network_size(net); ++i)
    vars.push_back(var(net, i));
  j["variables"] = vars;
  j["constraints"] = constraints_json(net);

  Json probs = Json::array();
  const std::size_t n = qstr_network_size(net);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Json dist = Json::object();
      bool present = false;
      for (std::size_t k = 0; k < qstr_network_relation_count(net); ++k) {
        double p = 0.0;
        int has = 0;
        check(qstr_network_edge_probability(net, a, b, k, &p, &has));
        present = has != 0;
        if (has && p > 0.0)
          dist[qstr_network_relation_name(net, k)] = p;
      }
      if (present)
        probs.push_back(
            {{"from", var(net, a)}, {"to", var(net, b)}, {"distribution", dist}});
    }
  j["probabilities"] = probs;

  Json labels = Json::array();
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t count = qstr_network_label_count(net, v);
    if (count == 0)
      continue;
    Json entries = Json::array();
    for (std::size_t k = 0; k < count; ++k) {
      const char *label = nullptr;
      double p = 0.0;
      check(qstr_network_label(net, v, k, &label, &p));
      entries.push_back({{"label", label}, {"probability", p}});
    }
    labels.push_back({{"variable", var(net, v)}, {"labels", entries}});
  }
  j["labels"] = labels;
  return j;
}

std::string write(const qstr_network *net) {
  char *text = nullptr;
  check(qstr_network_write(net, &text));
  return take(text);
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

std::string report_text(const qstr_report *r) {
  const qstr_network *ref = qstr_report_refinement(r);
  std::string out;
  for (std::size_t k = 0; k < qstr_report_edge_count(r); ++k) {
    std::size_t i = 0, j = 0, rel = 0;
    double p = 0.0;
    check(qstr_report_edge(r, k, &i, &j, &rel, &p));
    out += "edge " + var(ref, i) + " " + var(ref, j) + " " +
           qstr_network_relation_name(ref, rel) + " " + number(p) + "\n";
  }
  out += "robustness " + number(qstr_report_robustness(r)) + "\n";
  out += std::string("satisfiable ") +
         (qstr_report_satisfiable(r) ? "true" : "false") + "\n";
  return out;
}

void report_json(const qstr_report *r, Json &j) {
  const qstr_network *ref = qstr_report_refinement(r);
  j["robustness"] = qstr_report_robustness(r);
  j["satisfiable"] = qstr_report_satisfiable(r) != 0;
  Json edges = Json::array();
  for (std::size_t k = 0; k < qstr_report_edge_count(r); ++k) {
    std::size_t a = 0, b = 0, rel = 0;
    double p = 0.0;
    check(qstr_report_edge(r, k, &a, &b, &rel, &p));
    edges.push_back({{"from", var(ref, a)},
                     {"to", var(ref, b)},
                     {"relation", qstr_network_relation_name(ref, rel)},
                     {"probability", p}});
  }
  j["edges"] = edges;
  Json warnings = Json::array();
  for (std::size_t k = 0; k < qstr_report_warning_count(r); ++k)
    warnings.push_back(qstr_report_warning(r, k));
  j["warnings"] = warnings;
}

void print_warnings(const qstr_report *r) {
  for (std::size_t k = 0; k < qstr_report_warning_count(r); ++k)
    std::cerr << "warning: " << qstr_report_warning(r, k) << "\n";
}

Outcome run_check(Session &s) {
  const auto &cfg = s.config();
  Network net = s.load(cfg.input);
  qstr_network *closed = nullptr;
  std::size_t revisions = 0;
  const qstr_status st = qstr_check(net.get(), &closed, &revisions);
  if (st != QSTR_OK && st != QSTR_INCONSISTENT)
    check(st);
  Network closed_net(closed);
  const bool ok = st == QSTR_OK;
  Outcome out;
  out.code = ok ? exit_ok : exit_inconsistent;
  if (cfg.json) {
    Json j;
    j["command"] = "check";
    j["consistent"] = ok;
    j["revisions"] = revisions;
    j["closure_decides"] = qstr_network_closure_decides(net.get()) != 0;
    if (cfg.closed)
      j["closed_network"] = network_json(closed_net.get());
    out.text = dump(j);
  } else {
    out.text = std::string(ok ? "CONSISTENT" : "INCONSISTENT") + "\n" +
               "revisions " + std::to_string(revisions) + "\n";
    if (cfg.closed)
      out.text += write(closed_net.get());
  }
  return out;
}

Outcome run_solve(Session &s) {
  const auto &cfg = s.config();
  Network net = s.load(cfg.input);
  qstr_network *scenario = nullptr;
  const qstr_status st = qstr_solve(net.get(), &scenario);
  if (st != QSTR_OK && st != QSTR_INCONSISTENT)
    check(st);
  Network sc(scenario);
  Outcome out;
  out.code = sc ? exit_ok : exit_inconsistent;
  if (cfg.json) {
    Json j;
    j["command"] = "solve";
    j["satisfiable"] = sc != nullptr;
    j["closure_decides"] = qstr_network_closure_decides(net.get()) != 0;
    j["scenario"] = sc ? network_json(sc.get()) : Json(nullptr);
    out.text = dump(j);
  } else {
    out.text = sc ? "SAT\n" + write(sc.get()) : "UNSAT\n";
  }
  return out;
}

Outcome run_scenarios(Session &s) {
  const auto &cfg = s.config();
  Network net = s.load(cfg.input);
  qstr_scenario_list *list = nullptr;
  check(qstr_enumerate(net.get(), cfg.limit, cfg.jobs, &list));
  ScenarioList scenarios(list);
  const std::size_t count = qstr_scenario_list_size(list);
  Outcome out;
  out.code = count > 0 ? exit_ok : exit_inconsistent;
  if (cfg.json) {
    Json j;
    j["command"] = "scenarios";
    j["count"] = count;
    j["limit"] = cfg.limit == 0 ? Json(nullptr) : Json(cfg.limit);
    Json arr = Json::array();
    for (std::size_t k = 0; k < count; ++k)
      arr.push_back(constraints_json(qstr_scenario_list_at(list, k)));
    j["scenarios"] = arr;
    out.text = dump(j);
  } else {
    out.text = "scenarios " + std::to_string(count) + "\n";
    for (std::size_t k = 0; k < count; ++k)
      out.text += "# scenario " + std::to_string(k + 1) + "\n" +
                  constraint_lines(qstr_scenario_list_at(list, k));
  }
  return out;
}

Outcome run_probs(Session &s) {
  const auto &cfg = s.config();
  Network net = s.load(cfg.input);
  qstr_network *derived = nullptr;
  check(qstr_edge_probabilities(net.get(), &derived));
  Network probs(derived);
  const std::size_t n = qstr_network_size(derived);
  const std::size_t b = qstr_network_relation_count(derived);
  const std::uint64_t total = qstr_network_scenario_total(derived);

  Outcome out;
  Json edges = Json::array();
  std::string text = "scenarios " + std::to_string(total) + "\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Json dist = Json::object();
      Json counts = Json::object();
      std::string line = "prob " + var(derived, i) + " " + var(derived, j) + " {";
      for (std::size_t k = 0; k < b; ++k) {
        double p = 0.0;
        int present = 0;
        std::uint64_t c = 0;
        check(qstr_network_edge_probability(derived, i, j, k, &p, &present));
        check(qstr_network_scenario_count(derived, i, j, k, &c));
        if (c == 0)
          continue;
        const std::string name = qstr_network_relation_name(derived, k);
        dist[name] = p;
        counts[name] = c;
        line += " " + name + ":" + number(p);
      }
      text += line + " }\n";
      edges.push_back({{"from", var(derived, i)},
                       {"to", var(derived, j)},
                       {"probabilities", dist},
                       {"counts", counts}});
    }
  if (cfg.json) {
    Json j;
    j["command"] = "probs";
    j["scenario_count"] = total;
    j["edges"] = edges;
    out.text = dump(j);
  } else {
    out.text = text;
  }
  return out;
}

// The network whose probabilities are used, optionally narrowed by a
// background network for the feasible space.
Outcome run_robustness(Session &s) {
  const auto &cfg = s.config();
  Network net = s.load(cfg.input);
  Network refinement = s.load(cfg.second);
  qstr_report *report = nullptr;
  check(qstr_robustness(net.get(), refinement.get(), &report));
  Report r(report);
  print_warnings(report);
  Outcome out;
  if (cfg.json) {
    Json j;
    j["command"] = "robustness";
    report_json(report, j);
    out.text = dump(j);
  } else {
    out.text = report_text(report);
  }
  return out;
}

Outcome run_maxrobust(Session &s) {
  const auto &cfg = s.config();
  Network net = s.load(cfg.input);
  Network feasible;
  if (!cfg.second.empty()) {
    Network background = s.load(cfg.second);
    qstr_network *combined = nullptr;
    check(qstr_network_intersect(net.get(), background.get(), &combined));
    feasible.reset(combined);
  }
  qstr_report *report = nullptr;
  const qstr_status st = qstr_max_robust(net.get(), feasible.get(), &report);
  if (st != QSTR_OK && st != QSTR_INCONSISTENT)
    check(st);
  Report r(report);
  Outcome out;
  out.code = r ? exit_ok : exit_inconsistent;
  if (r)
    print_warnings(report);
  if (cfg.json) {
    Json j;
    j["command"] = "maxrobust";
    j["found"] = r != nullptr;
    if (r) {
      report_json(report, j);
      j["scenario"] = network_json(qstr_report_refinement(report));
    }
    out.text = dump(j);
  } else if (r) {
    out.text = "FOUND\n" + report_text(report) +
               constraint_lines(qstr_report_refinement(report));
  } else {
    out.text = "UNSAT\n";
  }
  return out;
}

Outcome run_rectify(Session &s) {
  const auto &cfg = s.config();
  Network net = s.load(cfg.input);
  Network background = s.load(cfg.second);
  qstr_network *result = nullptr;
  check(qstr_rectify(net.get(), background.get(), &result));
  Network rectified(result);
  Outcome out;
  if (cfg.json) {
    Json j;
    j["command"] = "rectify";
    j["network"] = network_json(result);
    out.text = dump(j);
  } else {
    out.text = write(result);
  }
  return out;
}

Outcome run_export(Session &s) {
  const auto &cfg = s.config();
  Network net = s.load(cfg.input);
  char *text = nullptr;
  check(qstr_network_export(net.get(), cfg.format.c_str(), &text));
  Outcome out;
  out.text = take(text);
  if (cfg.json) {
    Json j;
    j["command"] = "export";
    j["format"] = cfg.format;
    j["text"] = out.text;
    out.text = dump(j);
  }
  return out;
}

Outcome run_validate(Session &s) {
  const auto &cfg = s.config();
  qstr_calculus *c = nullptr;
  check(qstr_calculus_load(cfg.input.c_str(), &c));
  Calculus calc(c);
  std::size_t count = 0;
  char *report = nullptr;
  check(qstr_calculus_validate(c, &count, &report));
  const std::string text = take(report);
  Outcome out;
  out.code = count == 0 ? exit_ok : exit_inconsistent;
  if (cfg.json) {
    Json j;
    j["command"] = "validate-calculus";
    j["calculus"] = qstr_calculus_name(c);
    j["relations"] = qstr_calculus_size(c);
    j["valid"] = count == 0;
    Json violations = Json::array();
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);)
      violations.push_back(line);
    j["violations"] = violations;
    out.text = dump(j);
  } else {
    out.text = std::string(count == 0 ? "valid" : "invalid") + ": calculus " +
               qstr_calculus_name(c) + " (" +
               std::to_string(qstr_calculus_size(c)) + " base relations, " +
               std::to_string(count) + " violations)\n" + text;
  }
  (void)s;
  return out;
}

Outcome run_gen(Session &s) {
  const auto &cfg = s.config();
  Calculus calc = Session::load_calculus(cfg.gen_calculus);
  qstr_network *net = nullptr;
  check(qstr_network_generate(calc.get(), cfg.vars, cfg.density,
                              cfg.label_size, cfg.seed, &net));
  Network generated(net);
  Outcome out;
  if (cfg.json) {
    Json j;
    j["command"] = "gen";
    j["seed"] = cfg.seed;
    j["network"] = network_json(net);
    out.text = dump(j);
  } else {
    out.text = write(net);
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"qstr: qualitative spatio-temporal constraint reasoning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qstr_version()));

  RunConfig cfg;
  auto common = [&](CLI::App *sub) {
    sub->add_flag("--json", cfg.json, "Machine-readable JSON output");
    sub->add_option("-o,--output", cfg.output, "Write output to FILE");
    sub->add_option("--calculus", cfg.calculus_override,
                    "Calculus file or built-in name used for all networks");
    sub->add_flag("-v,--verbose", cfg.verbosity, "Progress on stderr");
  };
  auto input = [&](CLI::App *sub) {
    sub->add_option("network", cfg.input, "Network file")
        ->required()
        ->check(CLI::ExistingFile);
  };

  auto *check_cmd =
      app.add_subcommand("check", "Algebraic closure; CONSISTENT or INCONSISTENT");
  input(check_cmd);
  common(check_cmd);
  check_cmd->add_flag("--closed", cfg.closed, "Also print the closed network");

  auto *solve_cmd = app.add_subcommand("solve", "Find one scenario");
  input(solve_cmd);
  common(solve_cmd);

  auto *scen_cmd = app.add_subcommand("scenarios", "Enumerate scenarios");
  input(scen_cmd);
  common(scen_cmd);
  scen_cmd->add_option("--limit", cfg.limit, "Stop after K scenarios")
      ->check(CLI::PositiveNumber);
  scen_cmd->add_option("--jobs", cfg.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);

  auto *probs_cmd =
      app.add_subcommand("probs", "Scenario-derived edge probabilities");
  input(probs_cmd);
  common(probs_cmd);

  auto *rob_cmd =
      app.add_subcommand("robustness", "Robustness of an atomic refinement");
  input(rob_cmd);
  common(rob_cmd);
  rob_cmd->add_option("--refinement", cfg.second, "Atomic refinement network")
      ->required()
      ->check(CLI::ExistingFile);

  auto *max_cmd =
      app.add_subcommand("maxrobust", "Most robust satisfiable scenario");
  input(max_cmd);
  common(max_cmd);
  max_cmd->add_option("--background", cfg.second,
                      "Background knowledge restricting the scenarios")
      ->check(CLI::ExistingFile);

  auto *rect_cmd = app.add_subcommand(
      "rectify", "Prune evidence against background knowledge");
  input(rect_cmd);
  common(rect_cmd);
  rect_cmd->add_option("--background", cfg.second, "Background knowledge")
      ->required()
      ->check(CLI::ExistingFile);

  auto *exp_cmd = app.add_subcommand("export", "DOT, ASP facts or NeurASP atoms");
  input(exp_cmd);
  common(exp_cmd);
  exp_cmd->add_option("--format", cfg.format, "neurasp, asp or dot")
      ->required()
      ->check(CLI::IsMember({"neurasp", "asp", "dot"}));

  auto *val_cmd =
      app.add_subcommand("validate-calculus", "Check a calculus definition file");
  val_cmd->add_option("file", cfg.input, "Calculus file")
      ->required()
      ->check(CLI::ExistingFile);
  common(val_cmd);

  auto *gen_cmd = app.add_subcommand("gen", "Random model-A network");
  common(gen_cmd);
  gen_cmd->add_option("-n,--vars", cfg.vars, "Number of variables")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("-d,--density", cfg.density,
                      "Probability that a pair is constrained")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("-l,--label-size", cfg.label_size,
                      "Base relations per constrained pair")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", cfg.seed, "Random seed");
  gen_cmd->add_option("--base", cfg.gen_calculus,
                      "Calculus (built-in name or file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    Session session(cfg);
    Outcome out;
    if (*check_cmd)
      out = run_check(session);
    else if (*solve_cmd)
      out = run_solve(session);
    else if (*scen_cmd)
      out = run_scenarios(session);
    else if (*probs_cmd)
      out = run_probs(session);
    else if (*rob_cmd)
      out = run_robustness(session);
    else if (*max_cmd)
      out = run_maxrobust(session);
    else if (*rect_cmd)
      out = run_rectify(session);
    else if (*exp_cmd)
      out = run_export(session);
    else if (*val_cmd)
      out = run_validate(session);
    else if (*gen_cmd)
      out = run_gen(session);

    if (cfg.output.empty()) {
      std::cout << out.text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file)
        throw Failure{exit_usage, "cannot write " + cfg.output};
      file << out.text;
    }
    if (cfg.verbosity > 0)
      std::cerr << "exit " << out.code << "\n";
    return out.code;
  } catch (const Failure &f) {
    std::cerr << "qstr: error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception &e) {
    std::cerr << "qstr: error: " << e.what() << "\n";
    return exit_usage;
  }
}
