#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lwp/constants.hpp"
#include "lwp/oplab.hpp"
#include "lwp/perturb.hpp"

namespace lwp::cli {

using nlohmann::json;

namespace {

json to_json(const CaseConstants& k) {
  return json{{"p", k.p},         {"C_p", k.C},         {"M_p", k.M},
              {"D_p", k.D},       {"delta_p", k.delta}, {"lambda_p", k.lambda},
              {"gamma_p", k.gamma}, {"rho_p", k.rho}};
}

json to_json(const CheckResult& c) {
  return json{{"name", c.name}, {"pass", c.pass}, {"margin", c.margin}};
}

json to_json(const Case1Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return json{{"p", r.p},
              {"lambda_used", r.lambda_used},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"holds", r.holds},
              {"psi2_interval", r.psi2_interval},
              {"checks", checks}};
}

json to_json(const CounterexampleReport& r) {
  return json{{"p", r.p},
              {"norm_y", r.norm_y},
              {"min_margin", r.min_margin},
              {"argmin_lambda", r.argmin_lambda},
              {"holds", r.holds}};
}

json to_json(const EndToEndReport& r) {
  json trials = json::array();
  for (const auto& t : r.results) {
    trials.push_back(json{{"index", t.index},
                          {"pass", t.pass},
                          {"failure", t.failure},
                          {"min_margin", t.min_margin}});
  }
  return json{{"p", r.p},       {"seed", r.seed},
              {"trials", r.trials}, {"m_max", r.m_max},
              {"passes", r.passes}, {"rho_p", r.rho},
              {"min_margin", r.min_margin}, {"results", trials}};
}

json to_json(const SimpleFunction& f) {
  json cells = json::array();
  const auto& cs = f.partition().cells();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    cells.push_back(json{{"label", cs[i].label},
                         {"measure", cs[i].measure},
                         {"value", f.values()[i]}});
  }
  return cells;
}

struct Options {
  double p = 3.0;
  std::string weight = "lp";
  std::string cells;
  int trials = 1000;
  int m_max = 8;
  int n = 64;
  int restarts = 32;
  double delta = 0.05;
  double lambda_min = -2.0, lambda_max = 2.0, lambda_step = 1e-3;
  std::string op = "ia";
  std::uint64_t seed = kDefaultSeed;
  std::string output;
  std::string format = "json";
};

json config_json(const std::string& command, const Options& o) {
  return json{{"command", command}, {"p", o.p},
              {"weight", o.weight}, {"cells", o.cells},
              {"trials", o.trials}, {"m_max", o.m_max},
              {"n", o.n},           {"restarts", o.restarts},
              {"delta", o.delta},   {"seed", o.seed},
              {"format", o.format}};
}

// Flatten a report into key,value CSV rows; array-valued fields become
// one row per element with indexed keys.
void write_csv(const json& doc, std::ostream& out) {
  out << "key,value\n";
  std::function<void(const json&, const std::string&)> walk =
      [&](const json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it) {
            walk(it.value(), prefix.empty() ? it.key()
                                            : prefix + "." + it.key());
          }
        } else if (node.is_array()) {
          for (std::size_t i = 0; i < node.size(); ++i) {
            walk(node[i], prefix + "[" + std::to_string(i) + "]");
          }
        } else {
          out << prefix << "," << node.dump() << "\n";
        }
      };
  walk(doc, "");
}

void emit(const json& doc, const Options& o, std::ostream& out,
          std::ostream& err) {
  std::ostringstream body;
  if (o.format == "csv") {
    write_csv(doc, body);
  } else {
    body << doc.dump(2) << "\n";
  }
  if (o.output.empty() || o.output == "-") {
    out << body.str();
    return;
  }
  std::filesystem::path path(o.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("LWP_OUTPUT_DIR")) {
      path = std::filesystem::path(dir) / path;
    }
  }
  std::ofstream file(path);
  if (!file) {
    err << "cannot open output file " << path << "\n";
    throw Error("output file not writable");
  }
  file << body.str();
}

LorentzSpace make_space(const Options& o) {
  Weight w = parse_weight_spec(o.weight);
  return LorentzSpace(o.p, std::move(w));
}

}  // namespace

SimpleFunction parse_cells(const std::string& spec) {
  std::vector<std::tuple<std::string, double, double>> cells;
  std::size_t pos = 0;
  int index = 0;
  auto number = [&](const char* what) {
    std::size_t used = 0;
    double out = 0.0;
    try {
      out = std::stod(spec.substr(pos), &used);
    } catch (const std::exception&) {
      throw ParseError(std::string("expected ") + what + " at position " +
                       std::to_string(pos) + " in cell spec '" + spec + "'");
    }
    pos += used;
    return out;
  };
  while (true) {
    const double value = number("a value");
    if (pos >= spec.size() || spec[pos] != '@') {
      throw ParseError("expected '@' at position " + std::to_string(pos) +
                       " in cell spec '" + spec + "'");
    }
    ++pos;
    const double measure = number("a measure");
    cells.emplace_back("c" + std::to_string(index++), measure, value);
    if (pos == spec.size()) break;
    if (spec[pos] != ',') {
      throw ParseError("expected ',' at position " + std::to_string(pos) +
                       " in cell spec '" + spec + "'");
    }
    ++pos;
  }
  return SimpleFunction::build(cells);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Lorentz-space norm machinery and projection-bound checks"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", o.output, "Output path ('-' for stdout)");
    cmd->add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* c_constants = app.add_subcommand(
      "constants", "Constant bundle C_p..rho_p for p > 2");
  c_constants->add_option("--p", o.p, "exponent, p > 2")->required();
  add_common(c_constants);

  CLI::App* c_norm =
      app.add_subcommand("norm", "Lorentz norm of a simple function");
  c_norm->add_option("--p", o.p, "exponent")->required();
  c_norm->add_option("--weight", o.weight, "weight spec");
  c_norm->add_option("--cells", o.cells, "v@m,v@m,... cell list")->required();
  add_common(c_norm);

  CLI::App* c_perturb = app.add_subcommand(
      "perturb", "Ratio-exclusion perturbation of a coefficient set");
  c_perturb->add_option("--delta", o.delta, "delta in (0, 1/8)")->required();
  c_perturb->add_option("--cells", o.cells, "v@m,v@m,... cell list")
      ->required();
  c_perturb->add_option("--p", o.p, "exponent for norms in the report");
  c_perturb->add_option("--weight", o.weight, "weight spec");
  add_common(c_perturb);

  CLI::App* c_case1 = app.add_subcommand(
      "verify-case1", "One-instance inequality pipeline (perturbs first)");
  c_case1->add_option("--p", o.p, "exponent, p > 2")->required();
  c_case1->add_option("--weight", o.weight, "weight spec");
  c_case1->add_option("--cells", o.cells, "v@m,v@m,... cell list")->required();
  add_common(c_case1);

  CLI::App* c_cex = app.add_subcommand(
      "counterexample", "p < 2 obstruction scan over a lambda grid");
  c_cex->add_option("--p", o.p, "exponent in [1, 2)")->required();
  c_cex->add_option("--lambda-min", o.lambda_min, "grid start");
  c_cex->add_option("--lambda-max", o.lambda_max, "grid end");
  c_cex->add_option("--lambda-step", o.lambda_step, "grid step");
  add_common(c_cex);

  CLI::App* c_e2e = app.add_subcommand(
      "end-to-end", "Random-instance sweep of the full inequality chain");
  c_e2e->add_option("--p", o.p, "exponent, p > 2")->required();
  c_e2e->add_option("--weight", o.weight, "weight spec");
  c_e2e->add_option("--trials", o.trials, "trial count");
  c_e2e->add_option("--m-max", o.m_max, "max cells per instance");
  c_e2e->add_option("--seed", o.seed, "master seed");
  add_common(c_e2e);

  CLI::App* c_opnorm = app.add_subcommand(
      "opnorm", "Operator-norm lower-bound search on the dyadic grid");
  c_opnorm->add_option("--p", o.p, "exponent")->required();
  c_opnorm->add_option("--weight", o.weight, "weight spec");
  c_opnorm->add_option("--n", o.n, "grid cells (power of two)");
  c_opnorm->add_option("--restarts", o.restarts, "restart count");
  c_opnorm->add_option("--seed", o.seed, "seed");
  c_opnorm->add_option("--op", o.op, "operator: ia (I-A), a, id")
      ->check(CLI::IsMember({"ia", "a", "id"}));
  add_common(c_opnorm);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    json report;
    int exit_code = 0;

    if (c_constants->parsed()) {
      report = json{{"schema", 1},
                    {"config", config_json("constants", o)},
                    {"constants", to_json(case_constants(o.p))}};
    } else if (c_norm->parsed()) {
      const LorentzSpace space = make_space(o);
      const SimpleFunction f = parse_cells(o.cells);
      json violations = json::array();
      for (const auto& v : space.weight().validate().violations) {
        violations.push_back(v);
      }
      report = json{{"schema", 1},
                    {"config", config_json("norm", o)},
                    {"norm", lorentz_norm(space, f)},
                    {"weight_violations", violations}};
    } else if (c_perturb->parsed()) {
      const SimpleFunction f = parse_cells(o.cells);
      auto [ddot, trace] = make_ddot(f, o.delta);
      json rounds = json::array();
      for (const auto& r : trace.rounds) {
        rounds.push_back(json{{"k", r.k},
                              {"s_set", r.s_set},
                              {"coefficients", r.coefficients}});
      }
      report = json{{"schema", 1},
                    {"config", config_json("perturb", o)},
                    {"eta", trace.eta},
                    {"order", trace.order},
                    {"rounded", trace.rounded},
                    {"rounds", rounds},
                    {"fragile", trace.fragile},
                    {"result", to_json(ddot)}};
    } else if (c_case1->parsed()) {
      const LorentzSpace space = make_space(o);
      const CaseConstants consts = case_constants(o.p);
      SimpleFunction x = parse_cells(o.cells);
      {
        const double nx = lorentz_norm(space, x);
        std::vector<double> vals = x.values();
        for (double& v : vals) v /= nx;
        x = x.with_values(std::move(vals));
      }
      auto [ddot, trace] = make_ddot(x, consts.delta);
      const Case1Report r = verify_case1(ddot, space, consts);
      bool all = r.holds;
      for (const auto& c : r.checks) all = all && c.pass;
      exit_code = all ? 0 : 1;
      report = json{{"schema", 1},
                    {"config", config_json("verify-case1", o)},
                    {"constants", to_json(consts)},
                    {"report", to_json(r)}};
    } else if (c_cex->parsed()) {
      std::vector<double> grid;
      for (double lam = o.lambda_min; lam <= o.lambda_max + 1e-15;
           lam += o.lambda_step) {
        grid.push_back(lam);
      }
      const CounterexampleReport r = counterexample_check(o.p, grid);
      exit_code = r.holds ? 0 : 1;
      report = json{{"schema", 1},
                    {"config", config_json("counterexample", o)},
                    {"report", to_json(r)}};
    } else if (c_e2e->parsed()) {
      const LorentzSpace space = make_space(o);
      const EndToEndReport r =
          end_to_end(o.p, space, o.trials, o.seed, o.m_max);
      exit_code = (r.passes == r.trials) ? 0 : 1;
      report = json{{"schema", 1},
                    {"config", config_json("end-to-end", o)},
                    {"report", to_json(r)}};
    } else if (c_opnorm->parsed()) {
      const LorentzSpace space = make_space(o);
      const DyadicGrid grid(o.n);
      OperatorMatrix T = OperatorMatrix::identity(grid);
      if (o.op == "ia") T = rank_one_A(grid).subtract_from_identity();
      if (o.op == "a") T = rank_one_A(grid);
      const OpNormResult r =
          op_norm_estimate(space, T, o.restarts, 1e-8, o.seed);
      report = json{{"schema", 1},
                    {"config", config_json("opnorm", o)},
                    {"op", o.op},
                    {"estimate", r.estimate},
                    {"margin_over_one", r.estimate - 1.0},
                    {"witness", r.witness}};
    }

    emit(report, o, out, err);
    return exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lwp::cli
