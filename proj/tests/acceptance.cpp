// Acceptance gate: one line per criterion, exact checks, wall-clock budgets.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chow/config.hpp"
#include "chow/expr.hpp"
#include "chow/report.hpp"
#include "chow/suites.hpp"

namespace {

using namespace chow;

struct Outcome {
  std::vector<std::string> problems;
  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::size_t count_anchor(const Report& r, const std::string& anchor, Status s) {
  std::size_t n = 0;
  for (const auto& rec : r.records())
    if (rec.anchor == anchor && rec.status == s) ++n;
  return n;
}

bool has_record(const Report& r, const std::string& anchor, const std::string& params_part) {
  for (const auto& rec : r.records())
    if (rec.anchor == anchor && rec.status == Status::pass && rec.params.find(params_part) != std::string::npos)
      return true;
  return false;
}

void require_clean(Outcome& out, const Report& r, const std::string& label) {
  for (const auto& rec : r.records())
    if (rec.status == Status::fail)
      out.problems.push_back(label + ": " + rec.anchor + " [" + rec.params + "]" +
                             (rec.counterexample ? " " + *rec.counterexample : std::string()));
  out.require(r.count(Status::pass) > 0, label + ": no checks ran");
}

Report suite_at(const char* suite, int g) { return run_suite(suite, RunConfig::defaults(g)); }

Outcome criterion_sl2() {
  Outcome out;
  for (int g = 1; g <= 4; ++g) {
    const RunConfig cfg = RunConfig::defaults(g);
    out.require(cfg.polarizations.size() >= 3, "g=" + std::to_string(g) + ": fewer than 3 polarizations");
    const Report r = run_suite("sl2", cfg);
    require_clean(out, r, "g=" + std::to_string(g));
    out.require(r.count(Status::pass) == 3 * cfg.polarizations.size(), "g=" + std::to_string(g) + ": relation count");
  }
  return out;
}

Outcome criterion_exp_lem() {
  Outcome out;
  for (int g = 1; g <= 4; ++g) {
    const RunConfig cfg = RunConfig::defaults(g);
    const Report r = run_suite("exp-lem", cfg);
    require_clean(out, r, "g=" + std::to_string(g));
    out.require(r.count(Status::pass) == cfg.polarizations.size(), "g=" + std::to_string(g) + ": polarization count");
  }
  return out;
}

Outcome criterion_fourier() {
  Outcome out;
  for (int g = 1; g <= 4; ++g) {
    const Report r = suite_at("fourier", g);
    require_clean(out, r, "g=" + std::to_string(g));
    const char* mode = g <= 3 ? "exhaustive" : "pairs=500 random";
    out.require(has_record(r, "F_d(x*y) = chi F_d(x) F_d(y)", mode), "g=" + std::to_string(g) + ": exchange coverage");
    for (const char* anchor : {"F_d e F_d^-1 = -f", "F_d f F_d^-1 = -e", "F_d h F_d^-1 = -h", "F_d^2 = (-1)^g [-1]^*"})
      out.require(count_anchor(r, anchor, Status::pass) >= 3, "g=" + std::to_string(g) + ": " + anchor);
  }
  return out;
}

Outcome criterion_diff_order() {
  Outcome out;
  for (int g = 1; g <= 3; ++g) {
    const RunConfig cfg = RunConfig::defaults(g);
    const Report r = run_suite("diff-order", cfg);
    require_clean(out, r, "g=" + std::to_string(g));
    for (int k = 0; k <= 2 * g; k += 2) {
      const std::string p = "k=" + std::to_string(k) + " classes=" + std::to_string(cfg.ctx.basis_of_degree(k).size());
      out.require(has_record(r, "order of L_a for * is k", p), "g=" + std::to_string(g) + " " + p + ": Pontryagin");
      out.require(has_record(r, "order of Lambda_a for . is 2g-k", p), "g=" + std::to_string(g) + " " + p + ": cup");
    }
  }
  return out;
}

Outcome criterion_sl2_lem() {
  Outcome out;
  for (int g = 1; g <= 3; ++g) {
    const Report r = suite_at("sl2-lem", g);
    require_clean(out, r, "g=" + std::to_string(g));
    out.require(count_anchor(r, "L_{F_d(a)} = c ad(e)^{2g-k}(Lambda_a), c != 0", Status::pass) >= std::size_t(g + 1),
                "g=" + std::to_string(g) + ": degree coverage");
  }
  return out;
}

Outcome criterion_biext() {
  Outcome out;
  for (int g = 1; g <= 3; ++g) {
    const Report r = suite_at("biext", g);
    require_clean(out, r, "g=" + std::to_string(g));
    const std::string mode = g <= 2 ? "exhaustive" : "triples=200 random";
    out.require(has_record(r, "{x*y,z} = x*{y,z} + y*{x,z}", mode), "g=" + std::to_string(g) + ": triple coverage");
    out.require(has_record(r, "{x,y} = d.(x*y) - (d.x)*y - (d.y)*x", g <= 2 ? "exhaustive" : "random"),
                "g=" + std::to_string(g) + ": pair coverage");
  }
  return out;
}

Outcome criterion_ns_jordan() {
  Outcome out;
  for (int g = 1; g <= 3; ++g) {
    const RunConfig cfg = RunConfig::defaults(g);
    const Report r = run_suite("ns-jordan", cfg);
    const std::string label = "g=" + std::to_string(g);
    require_clean(out, r, label);
    out.require(has_record(r, "L(1) = d", "polarization=d"), label + ": L(1) = d");
    out.require(has_record(r, "N(f)^2 = det f", "endos=" + std::to_string(100 + cfg.endomorphisms.size())),
                label + ": 100 random endomorphisms");
    out.require(count_anchor(r, "F_d(e^{L f}) = N(f) e^{L(-f^-1)}", Status::pass) >= 5, label + ": invertible f");
    const std::size_t lib = cfg.endomorphisms.size();
    out.require(count_anchor(r, "{F L f1, F L f2} = (-1)^g chi F L(f1 f2 + f2 f1)", Status::pass) == lib * (lib + 1) / 2,
                label + ": Jordan product over the library");
    for (const char* t : {"t=1", "t=-1", "t=1/2", "t=-1/2", "t=2"})
      out.require(count_anchor(r, "t-deformed generating series", Status::pass) > 0 &&
                      has_record(r, "t-deformed generating series", t),
                  label + ": deformed series at " + t);
    out.require(count_anchor(r, "Jordan identity for quadratic f", Status::pass) >= 2, label + ": quadratic f");
    out.require(has_record(r, "Jordan identity for quadratic f", "y=50"), label + ": 50 random y");
    if (g == 2) {
      const Matrix& a = cfg.endomorphism("swap").endo.matrix();
      const Matrix& b = cfg.endomorphism("split").endo.matrix();
      out.require(!(a * b == b * a), "swap and split commute");
      out.require(has_record(r, "{F L f1, F L f2} = (-1)^g chi F L(f1 f2 + f2 f1)", "f1=swap f2=split"),
                  "non-commuting pair");
    }
  }
  return out;
}

Outcome criterion_jacobian() {
  Outcome out;
  const RunConfig cfg = RunConfig::defaults(2);
  out.require(cfg.jacobian.n == 8, "N != 8");
  const Report r = run_suite("jacobian", cfg);
  require_clean(out, r, "jacobian");
  out.require(count_anchor(r, "{x_s,x_t} = -C(s+t+2,s+1) x_{s+t}", Status::pass) == 45, "bracket table size");
  out.require(count_anchor(r, "{[m]_*C,[n]_*C} = -mn([m+n]_*C - [m]_*C - [n]_*C)", Status::pass) == 36, "m, n grid");
  out.require(has_record(r, "Leibniz expansion independent of order", "N=6"), "Leibniz at N = 6");
  out.require(has_record(r, "search reproduces the stored witness", "N=8"), "witness search");
  out.require(has_record(r, "stored witness violates the Jordan identity", "N=8"), "witness replay");
  return out;
}

Outcome criterion_subring() {
  Outcome out;
  for (int g = 1; g <= 3; ++g) {
    const Report r = suite_at("subring", g);
    const std::string label = "g=" + std::to_string(g);
    require_clean(out, r, label);
    out.require(count_anchor(r, "QT is cup-closed, Pontryagin-closed and F_d-stable", Status::pass) == 1, label + ": QT");
    out.require(count_anchor(r, "cup algebra of H^2 inside QT", Status::pass) == 1, label + ": divisors");
    out.require(count_anchor(r, "M_* QT inside QT", Status::pass) >= 3, label + ": pushforwards");
    out.require(count_anchor(r, "M^* QT inside QT", Status::pass) >= 3, label + ": pullbacks");
    out.require(count_anchor(r, "saturation terminates, is monotone and idempotent", Status::pass) >= 5,
                label + ": saturation fixtures");
    out.require(count_anchor(r, "R = Q[0] + W + W*W + ... is cup-closed and F_d-stable", Status::pass) >= 5,
                label + ": saturated rings");
  }
  return out;
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(CHOWLAB_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Outcome criterion_cli() {
  Outcome out;
  const RunConfig cfg = RunConfig::defaults(2);
  const std::string expected = format_class(cfg.reference_polarization().pol->exp_minus_d());
  out.require(expected == "one - a1 . b1 - a2 . b2 + pt", "canonical e^-d is " + expected);
  const Run e = run_cli("eval 'F(d, exp(d))'");
  out.require(e.status == 0 && e.out == expected + "\n", "eval printed '" + e.out + "'");
  for (const char* name : {"default.json", "g1.json", "g3.json"}) {
    const Run v = run_cli(std::string("verify --config ") + CHOW_CONFIG_DIR + "/" + name);
    out.require(v.status == 0, std::string("verify ") + name + " exited " + std::to_string(v.status));
  }
  const Run bad = run_cli(std::string("verify --config ") + CHOW_FIXTURE_DIR + "/corrupted_binomial.json");
  out.require(bad.status == 1, "corrupted fixture exited " + std::to_string(bad.status));
  out.require(bad.out.find("counterexample: table = -9*x3; computed = -10*x3") != std::string::npos,
              "corrupted fixture did not report the bad entry");
  return out;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "sl2 relations, g = 1..4", 30, criterion_sl2},
      {2, "(-1)^g F_d = exp(e) exp(-f) exp(e), g = 1..4", 30, criterion_exp_lem},
      {3, "Fourier laws, g = 1..4", 120, criterion_fourier},
      {4, "differential-operator order table, g = 1..3", 300, criterion_diff_order},
      {5, "lowest-weight proportionality, g = 1..3", 120, criterion_sl2_lem},
      {6, "bracket biderivation and biextension identity, g = 1..3", 120, criterion_biext},
      {7, "Neron-Severi Jordan structure, g = 1..3", 120, criterion_ns_jordan},
      {8, "Jacobian tautological model, N = 8", 60, criterion_jacobian},
      {9, "Fourier-stable subrings, g = 1..3", 300, criterion_subring},
      {10, "command-line interface", 10, criterion_cli},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      std::ostringstream s;
      s << "took " << secs << " s, budget " << c.budget_s << " s";
      o.problems.push_back(s.str());
    }
    const bool ok = o.problems.empty();
    if (!ok) ++failed;
    std::printf("criterion %2d %s  %-58s %8.2f s / %4.0f s\n", c.id, ok ? "PASS" : "FAIL", c.title, secs, c.budget_s);
    for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
