// chowlab: command-line front end for the model algebra.
//
// Exit status: 0 when every check passes, 1 when a check fails (or an
// expression cannot be evaluated), 2 for configuration or usage errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "chow/config.hpp"
#include "chow/errors.hpp"
#include "chow/expr.hpp"
#include "chow/jacobian.hpp"
#include "chow/operators.hpp"
#include "chow/subring.hpp"
#include "chow/suites.hpp"

namespace {

using namespace chow;

struct CommonOptions {
  std::string config;
  int g = 0;
};

RunConfig resolve_config(const CommonOptions& opt) {
  if (opt.config.empty()) return RunConfig::defaults(opt.g ? opt.g : 2);
  RunConfig cfg = load_config(opt.config);
  if (opt.g && opt.g != cfg.ctx.g())
    throw ConfigError("--g " + std::to_string(opt.g) + " conflicts with g = " + std::to_string(cfg.ctx.g()) +
                      " in " + opt.config);
  return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--g", opt.g, "dimension of the abelian variety (without --config: built-in defaults)")
      ->check(CLI::Range(1, 6));
}

int cmd_verify(const CommonOptions& opt, const std::string& suite, const std::string& report_path, bool json) {
  const RunConfig cfg = resolve_config(opt);
  if (!suite.empty() &&
      std::find(kSuiteNames.begin(), kSuiteNames.end(), suite) == kSuiteNames.end())
    throw ConfigError("unknown suite '" + suite + "'");
  const Report report = run_suites(cfg, suite);
  if (json) {
    std::cout << report.to_json(cfg.ctx.g());
  } else {
    std::cout << report.to_table();
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw ConfigError("cannot write report to " + report_path);
    out << report.to_json(cfg.ctx.g());
  }
  return report.all_passed() ? 0 : 1;
}

int cmd_eval(const CommonOptions& opt, const std::string& text) {
  const RunConfig cfg = resolve_config(opt);
  const ExprPtr e = parse_expr(text);
  std::cout << format_value(eval(*e, cfg)) << "\n";
  return 0;
}

int cmd_order(const CommonOptions& opt, const std::string& text, const std::string& product) {
  const RunConfig cfg = resolve_config(opt);
  const ExprPtr e = parse_expr(text);
  const Value v = eval(*e, cfg);
  const auto* a = std::get_if<ExtClass>(&v);
  if (!a) throw EvalError("order needs a class, got a scalar");
  const int k = product == "pon" ? diff_order(op_mul_cup(*a), Product::pontryagin)
                                 : diff_order(op_mul_pontryagin(*a), Product::cup);
  std::cout << k << "\n";
  return 0;
}

std::vector<std::string> read_generator_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read generators file " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

void print_stability(const StabilityReport& rep) {
  std::cout << "cup-closed: " << (rep.cup_closed ? "yes" : "no") << "\n";
  std::cout << "pontryagin-closed: " << (rep.pontryagin_closed ? "yes" : "no") << "\n";
  for (const auto& [name, ok] : rep.fourier) std::cout << "F_" << name << "-stable: " << (ok ? "yes" : "no") << "\n";
  if (rep.counterexample) std::cout << "counterexample: " << *rep.counterexample << "\n";
}

void print_basis(const ModelContext& ctx, const Subspace& s) {
  for (const auto& v : s.basis()) std::cout << "  " << format_class(ExtClass::from_vector(ctx, v)) << "\n";
}

int cmd_subring(const CommonOptions& opt, const std::string& mode, const std::string& generators) {
  const RunConfig cfg = resolve_config(opt);
  const ModelContext& ctx = cfg.ctx;
  const std::span<const NamedPolarization> pols(cfg.polarizations);
  if (mode == "qt") {
    SubringState qt = qt_ring(ctx);
    std::cout << "QT dimension: " << qt.space.rank() << "\n";
    const StabilityReport rep = check_stability(qt, pols);
    print_stability(rep);
    return rep.all() ? 0 : 1;
  }
  Subspace v(ctx.dim());
  if (generators.empty()) {
    v.insert(cfg.reference_polarization().pol->cls().to_vector());
  } else {
    for (const auto& line : read_generator_lines(generators)) {
      const Value val = eval(*parse_expr(line), cfg);
      const auto* c = std::get_if<ExtClass>(&val);
      if (!c) throw ConfigError("generator '" + line + "' is not a class");
      v.insert(c->to_vector());
    }
  }
  const GradedLie lie = build_lie(ctx, pols);
  const SaturationResult sat = saturate(v, lie);
  std::cout << "Lie algebra dimension: " << lie.dimension() << "\n";
  std::cout << "saturated rank: " << sat.space.rank() << " after " << sat.iterations << " iteration(s)\n";
  print_basis(ctx, sat.space);
  SubringState ring = pontryagin_subalgebra(ctx, subspace_join(sat.space, degree_subspace(ctx, ctx.generator_count() - 2)));
  std::cout << "R dimension: " << ring.space.rank() << "\n";
  const StabilityReport rep = check_stability(ring, pols);
  print_stability(rep);
  return rep.all() ? 0 : 1;
}

int cmd_jacobian(const std::string& mode, int n) {
  if (mode == "bracket") {
    for (int s = 0; s <= n; ++s)
      for (int t = 0; s + t <= n; ++t)
        std::cout << "{x" << s << ",x" << t << "} = " << to_string(bracket_gen(n, s, t)) << "\n";
    return 0;
  }
  if (mode == "mn-check") {
    bool ok = true;
    for (long m = -3; m <= 3; ++m)
      for (long k = -3; k <= 3; ++k) {
        if (m == 0 || k == 0) continue;
        const bool holds = check_mn_identity(n, m, k);
        ok = ok && holds;
        std::cout << "m=" << m << " n=" << k << " " << (holds ? "pass" : "fail") << "\n";
      }
    return ok ? 0 : 1;
  }
  const auto w = jordan_failure_witness(n);
  if (!w) {
    std::cout << "no violation among generator pairs up to N = " << n << "\n";
    return 1;
  }
  std::cout << "x = " << to_string(w->x) << "\n"
            << "y = " << to_string(w->y) << "\n"
            << "{{x,y},{x,x}} = " << to_string(w->lhs) << "\n"
            << "{x,{y,{x,x}}} = " << to_string(w->rhs) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Fourier, Pontryagin and Lefschetz structures on abelian-variety models"};
  app.require_subcommand(1);

  CommonOptions verify_opt, eval_opt, order_opt, subring_opt;
  std::string suite, report_path, expr_text, order_text, product = "pon", subring_mode, generators, jac_mode;
  bool json = false;
  int n_trunc = 8;

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify, verify_opt);
  verify->add_option("--suite", suite, "run a single suite");
  verify->add_option("--report", report_path, "write the JSON report to this file");
  verify->add_flag("--json", json, "print the JSON report instead of the table");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression");
  add_common(eval_cmd, eval_opt);
  eval_cmd->add_option("expr", expr_text, "expression")->required();

  auto* order = app.add_subcommand("order", "differential-operator order of a multiplication operator");
  add_common(order, order_opt);
  order->add_option("expr", order_text, "class a")->required();
  order->add_option("--product", product, "pon: order of a. for *, cup: order of a* for .")
      ->check(CLI::IsMember({"cup", "pon"}))
      ->required();

  auto* subring = app.add_subcommand("subring", "quasitautological ring or saturation");
  add_common(subring, subring_opt);
  subring->add_option("mode", subring_mode, "qt or saturate")->check(CLI::IsMember({"qt", "saturate"}))->required();
  subring->add_option("--generators", generators, "file with one generator expression per line")
      ->check(CLI::ExistingFile);

  int defaults_g = 2;
  auto* defaults = app.add_subcommand("defaults", "print the built-in configuration as JSON");
  defaults->add_option("--g", defaults_g, "dimension of the abelian variety")->check(CLI::Range(1, 6));

  auto* jac = app.add_subcommand("jacobian", "truncated tautological algebra of a Jacobian");
  jac->add_option("mode", jac_mode, "bracket, mn-check or witness")
      ->check(CLI::IsMember({"bracket", "mn-check", "witness"}))
      ->required();
  jac->add_option("--N", n_trunc, "truncation bound")->check(CLI::Range(4, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(verify_opt, suite, report_path, json);
    if (*eval_cmd) return cmd_eval(eval_opt, expr_text);
    if (*order) return cmd_order(order_opt, order_text, product);
    if (*subring) return cmd_subring(subring_opt, subring_mode, generators);
    if (*defaults) {
      std::cout << config_to_json(RunConfig::defaults(defaults_g));
      return 0;
    }
    if (*jac) return cmd_jacobian(jac_mode, n_trunc);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
