#include "chow/suites.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "chow/errors.hpp"
#include "chow/expr.hpp"
#include "chow/jacobian.hpp"
#include "chow/ns_jordan.hpp"
#include "chow/operators.hpp"
#include "chow/subring.hpp"

namespace chow {

namespace {

std::string pair_text(const ExtClass& lhs, const ExtClass& rhs) {
  return "lhs = " + format_class(lhs) + "; rhs = " + format_class(rhs);
}

std::string pair_text(const TautPoly& lhs, const TautPoly& rhs) {
  return "lhs = " + to_string(lhs) + "; rhs = " + to_string(rhs);
}

std::string pol_param(const NamedPolarization& p) { return "polarization=" + p.name; }

std::mt19937_64 suite_rng(const RunConfig& cfg, std::string_view suite) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.samples.seed), static_cast<std::uint32_t>(cfg.samples.seed >> 32),
                    static_cast<std::uint32_t>(std::hash<std::string_view>{}(suite))};
  return std::mt19937_64(seq);
}

Mask pick(const std::vector<Mask>& v, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

ExtClass random_in_degree(const ModelContext& ctx, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  ExtClass x(ctx);
  for (Mask m : ctx.basis_of_degree(k)) x.add_term(m, Rational(coeff(rng)));
  return x;
}

ExtClass power_of(const ExtClass& x, int n) {
  ExtClass out = ExtClass::unit(x.context());
  for (int i = 0; i < n; ++i) out = wedge(out, x);
  return out;
}

std::string basis_name(const ModelContext& ctx, Mask m) { return format_class(ExtClass::basis(ctx, m)); }

// ---------------------------------------------------------------------- sl2

void suite_sl2(const RunConfig& cfg, Report& r) {
  for (const auto& p : cfg.polarizations) {
    const Sl2Triple t = sl2_of(*p.pol);
    r.add("sl2", "[e,f] = h", pol_param(p), commutator(t.e, t.f) == t.h);
    r.add("sl2", "[h,e] = 2e", pol_param(p), commutator(t.h, t.e) == Rational(2) * t.e);
    r.add("sl2", "[h,f] = -2f", pol_param(p), commutator(t.h, t.f) == Rational(-2) * t.f);
  }
}

void suite_exp_lem(const RunConfig& cfg, Report& r) {
  const int g = cfg.ctx.g();
  for (const auto& p : cfg.polarizations) {
    const Sl2Triple t = sl2_of(*p.pol);
    const LinOp rhs = exp_nilpotent(t.e) * exp_nilpotent(Rational(-1) * t.f) * exp_nilpotent(t.e);
    const LinOp f = fourier_op(*p.pol);
    r.add("exp-lem", "(-1)^g F_d = exp(e) exp(-f) exp(e)", pol_param(p), (g % 2 ? Rational(-1) * f : f) == rhs);
  }
}

// ------------------------------------------------------------------ fourier

void suite_fourier(const RunConfig& cfg, Report& r) {
  const ModelContext& ctx = cfg.ctx;
  const int g = ctx.g();
  auto rng = suite_rng(cfg, "fourier");
  const std::vector<Mask> even = ctx.even_basis();
  for (const auto& p : cfg.polarizations) {
    const Polarization& pol = *p.pol;
    const LinOp f = fourier_op(pol);
    const LinOp finv = fourier_inverse_op(pol);
    const LinOp sign_m1 = g % 2 ? Rational(-1) * minus_one_op(ctx) : minus_one_op(ctx);
    r.add("fourier", "F_d^2 = (-1)^g [-1]^*", pol_param(p), f * f == sign_m1);
    r.add("fourier", "F_d^-1 F_d = id", pol_param(p), finv * f == LinOp::identity(ctx));

    std::optional<std::string> bad;
    std::size_t checked = 0;
    auto exchange = [&](Mask a, Mask b) {
      const ExtClass x = ExtClass::basis(ctx, a);
      const ExtClass y = ExtClass::basis(ctx, b);
      const ExtClass lhs = fourier(pol, pontryagin(x, y));
      const ExtClass rhs = pol.chi() * wedge(fourier(pol, x), fourier(pol, y));
      ++checked;
      if (!(lhs == rhs) && !bad)
        bad = "x = " + basis_name(ctx, a) + ", y = " + basis_name(ctx, b) + ": " + pair_text(lhs, rhs);
    };
    std::string mode;
    if (g <= 3) {
      for (Mask a : even)
        for (Mask b : even) exchange(a, b);
      mode = "exhaustive";
    } else {
      for (int i = 0; i < cfg.samples.pairs; ++i) exchange(pick(even, rng), pick(even, rng));
      mode = "random";
    }
    r.add("fourier", "F_d(x*y) = chi F_d(x) F_d(y)",
          pol_param(p) + " pairs=" + std::to_string(checked) + " " + mode, !bad, bad);

    const Sl2Triple t = sl2_of(pol);
    r.add("fourier", "F_d e F_d^-1 = -f", pol_param(p), f * t.e * finv == Rational(-1) * t.f);
    r.add("fourier", "F_d f F_d^-1 = -e", pol_param(p), f * t.f * finv == Rational(-1) * t.e);
    r.add("fourier", "F_d h F_d^-1 = -h", pol_param(p), f * t.h * finv == Rational(-1) * t.h);

    const ExtClass fe = fourier(pol, pol.exp_d());
    r.add("fourier", "F_d(e^d) = e^-d", pol_param(p), fe == pol.exp_minus_d(), pair_text(fe, pol.exp_minus_d()));
  }
}

// --------------------------------------------------------------- diff order

void suite_diff_order(const RunConfig& cfg, Report& r) {
  const ModelContext& ctx = cfg.ctx;
  const int top = ctx.generator_count();
  for (int k = 0; k <= top; k += 2) {
    std::vector<Mask> classes = ctx.basis_of_degree(k);
    if (ctx.g() >= 4) classes.resize(1);
    std::optional<std::string> bad_pon, bad_cup;
    for (Mask m : classes) {
      const ExtClass a = ExtClass::basis(ctx, m);
      const int pon = diff_order(op_mul_cup(a), Product::pontryagin);
      const int cup = diff_order(op_mul_pontryagin(a), Product::cup);
      if (pon != k && !bad_pon) bad_pon = "a = " + basis_name(ctx, m) + ": order " + std::to_string(pon);
      if (cup != top - k && !bad_cup) bad_cup = "a = " + basis_name(ctx, m) + ": order " + std::to_string(cup);
    }
    const std::string params = "k=" + std::to_string(k) + " classes=" + std::to_string(classes.size());
    r.add("diff-order", "order of L_a for * is k", params, !bad_pon, bad_pon);
    r.add("diff-order", "order of Lambda_a for . is 2g-k", params, !bad_cup, bad_cup);
  }
}

// ------------------------------------------------------------------ sl2-lem

void suite_sl2_lem(const RunConfig& cfg, Report& r) {
  const ModelContext& ctx = cfg.ctx;
  auto rng = suite_rng(cfg, "sl2-lem");
  for (const auto& p : cfg.polarizations) {
    if (ctx.g() >= 3 && p.name != cfg.reference) continue;
    for (int k = 0; k <= ctx.generator_count(); k += 2) {
      std::vector<Mask> classes = ctx.basis_of_degree(k);
      if (ctx.g() >= 4) {
        std::shuffle(classes.begin(), classes.end(), rng);
        classes.resize(std::min<std::size_t>(classes.size(), 3));
      }
      std::optional<std::string> bad;
      for (Mask m : classes) {
        const auto res = check_sl2_lowest_weight(*p.pol, ExtClass::basis(ctx, m));
        if (!res.holds && !bad) bad = "a = " + basis_name(ctx, m);
      }
      r.add("sl2-lem", "L_{F_d(a)} = c ad(e)^{2g-k}(Lambda_a), c != 0",
            pol_param(p) + " k=" + std::to_string(k) + " classes=" + std::to_string(classes.size()), !bad, bad);
    }
  }
}

// -------------------------------------------------------------------- biext

void suite_biext(const RunConfig& cfg, Report& r) {
  const ModelContext& ctx = cfg.ctx;
  const int g = ctx.g();
  auto rng = suite_rng(cfg, "biext");
  const std::vector<Mask> even = ctx.even_basis();
  for (const auto& p : cfg.polarizations) {
    const Polarization& pol = *p.pol;
    const ExtClass& d = pol.cls();

    std::optional<std::string> bad_bider, bad_id, bad_sym;
    std::size_t triples = 0, pairs = 0;
    auto bider = [&](Mask a, Mask b, Mask c) {
      const ExtClass x = ExtClass::basis(ctx, a), y = ExtClass::basis(ctx, b), z = ExtClass::basis(ctx, c);
      const ExtClass lhs = bracket_xi(pol, pontryagin(x, y), z);
      const ExtClass rhs = pontryagin(x, bracket_xi(pol, y, z)) + pontryagin(y, bracket_xi(pol, x, z));
      ++triples;
      if (!(lhs == rhs) && !bad_bider)
        bad_bider = "x = " + basis_name(ctx, a) + ", y = " + basis_name(ctx, b) + ", z = " + basis_name(ctx, c) +
                    ": " + pair_text(lhs, rhs);
    };
    auto ident = [&](Mask a, Mask b) {
      const ExtClass x = ExtClass::basis(ctx, a), y = ExtClass::basis(ctx, b);
      const ExtClass lhs = bracket_xi(pol, x, y);
      const ExtClass rhs = wedge(d, pontryagin(x, y)) - pontryagin(wedge(d, x), y) - pontryagin(wedge(d, y), x);
      ++pairs;
      if (!(lhs == rhs) && !bad_id)
        bad_id = "x = " + basis_name(ctx, a) + ", y = " + basis_name(ctx, b) + ": " + pair_text(lhs, rhs);
      if (!(lhs == bracket_xi(pol, y, x)) && !bad_sym)
        bad_sym = "x = " + basis_name(ctx, a) + ", y = " + basis_name(ctx, b);
    };
    std::string mode;
    if (g <= 2) {
      for (Mask a : even)
        for (Mask b : even) {
          ident(a, b);
          for (Mask c : even) bider(a, b, c);
        }
      mode = "exhaustive";
    } else {
      for (int i = 0; i < cfg.samples.triples; ++i) bider(pick(even, rng), pick(even, rng), pick(even, rng));
      for (int i = 0; i < cfg.samples.pairs; ++i) ident(pick(even, rng), pick(even, rng));
      mode = "random";
    }
    r.add("biext", "{x*y,z} = x*{y,z} + y*{x,z}", pol_param(p) + " triples=" + std::to_string(triples) + " " + mode,
          !bad_bider, bad_bider);
    r.add("biext", "{x,y} = d.(x*y) - (d.x)*y - (d.y)*x", pol_param(p) + " pairs=" + std::to_string(pairs) + " " + mode,
          !bad_id, bad_id);
    r.add("biext", "{x,y} = {y,x}", pol_param(p) + " pairs=" + std::to_string(pairs) + " " + mode, !bad_sym, bad_sym);

    const ExtClass v = bracket_xi(pol, ExtClass::point(ctx), ExtClass::unit(ctx));
    r.add("biext", "{pt,one} = 0", pol_param(p), v.is_zero(), format_class(v));
  }
}

// ---------------------------------------------------------------- ns-jordan

void suite_ns_jordan(const RunConfig& cfg, Report& r) {
  const ModelContext& ctx = cfg.ctx;
  const int g = ctx.g();
  auto rng = suite_rng(cfg, "ns-jordan");
  const NamedPolarization& ref = cfg.reference_polarization();
  const Polarization& pol = *ref.pol;
  const auto& lib = cfg.endomorphisms;

  {
    const ExtClass l1 = L_of(Endo::identity(ref.pol));
    r.add("ns-jordan", "L(1) = d", pol_param(ref), l1 == pol.cls(), pair_text(l1, pol.cls()));
  }

  for (const auto& p : cfg.polarizations) {
    const ExtClass power = power_of(p.pol->cls(), g - 1);
    const LinOp lhs = bracket_operator(*p.pol, power);
    const LinOp rhs =
        (factorial(g - 1) * p.pol->chi()) * (grading_operator(ctx) - Rational(g) * LinOp::identity(ctx));
    r.add("ns-jordan", "{d^{g-1}, .} = (g-1)! chi (h - g)", pol_param(p), lhs == rhs);
  }

  {
    std::optional<std::string> bad;
    std::vector<Endo> sample;
    for (int i = 0; i < cfg.samples.random_endos; ++i) sample.push_back(random_symmetric_endo(ref.pol, rng, 3));
    for (const auto& f : lib) sample.push_back(f.endo);
    for (const auto& f : sample) {
      const Rational n = N_of(f);
      const Rational det = determinant(f.matrix());
      if (n * n != det && !bad) bad = "N = " + to_string(n) + ", det = " + to_string(det);
    }
    r.add("ns-jordan", "N(f)^2 = det f", "endos=" + std::to_string(sample.size()), !bad, bad);
  }

  {
    std::vector<std::pair<std::string, Endo>> invertible;
    for (const auto& f : lib)
      if (f.endo.is_invertible()) invertible.emplace_back(f.name, f.endo);
    for (int tries = 0, added = 0; added < 5 && tries < 200; ++tries) {
      Endo f = random_symmetric_endo(ref.pol, rng, 3);
      if (!f.is_invertible()) continue;
      invertible.emplace_back("random" + std::to_string(++added), f);
    }
    for (const auto& [name, f] : invertible) {
      const auto s = fourier_exp_sides(f);
      r.add("ns-jordan", "F_d(e^{L f}) = N(f) e^{L(-f^-1)}", "f=" + name, s.holds(), pair_text(s.lhs, s.rhs));
    }
  }

  const Rational ts[] = {Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2), Rational(2)};
  for (std::size_t i = 0; i < lib.size(); ++i)
    for (std::size_t j = i; j < lib.size(); ++j) {
      const Endo& f1 = lib[i].endo;
      const Endo& f2 = lib[j].endo;
      const std::string params = "f1=" + lib[i].name + " f2=" + lib[j].name;
      const auto jp = jordan_product_sides(f1, f2);
      r.add("ns-jordan", "{F L f1, F L f2} = (-1)^g chi F L(f1 f2 + f2 f1)", params, jp.holds(),
            pair_text(jp.lhs, jp.rhs));
      const auto gs = generating_series_sides(f1, f2);
      r.add("ns-jordan", "{F e^{L f1}, F e^{L f2}} generating series", params, gs.holds(), pair_text(gs.lhs, gs.rhs));
      for (const Rational& t : ts) {
        const std::string tp = params + " t=" + to_string(t);
        try {
          const auto ds = deformed_series_sides(f1, f2, t);
          r.add("ns-jordan", "t-deformed generating series", tp, ds.holds(), pair_text(ds.lhs, ds.rhs));
        } catch (const SingularMatrix&) {
          r.add(CheckRecord{"ns-jordan", "t-deformed generating series", tp + " (singular at t)", Status::skip, {}});
        }
      }
      const ExtClass x = fourier(pol, exp_class(L_of(f1)));
      const ExtClass y = fourier(pol, exp_class(L_of(f2)));
      const int bound = 2 * g + 1;
      std::vector<Rational> points;
      for (int k = 1; static_cast<int>(points.size()) < bound; ++k) {
        points.push_back(Rational(k));
        points.push_back(Rational(-k));
      }
      const ExtClass coeff = t_coefficient_by_interpolation(pol, x, y, points);
      const ExtClass br = bracket_xi(pol, x, y);
      r.add("ns-jordan", "t-coefficient of the deformed product = bracket", params, coeff == br, pair_text(coeff, br));
    }

  int quadratic = 0;
  for (const auto& f : lib) {
    if (!quadratic_relation(f.endo.matrix())) continue;
    ++quadratic;
    std::optional<std::string> bad;
    for (int i = 0; i < cfg.samples.jordan_y; ++i) {
      const ExtClass y = random_in_degree(ctx, ctx.generator_count() - 2, rng);
      const auto s = jordan_identity_sides(f.endo, y);
      if (!s.holds() && !bad) bad = "y = " + format_class(y) + ": " + pair_text(s.lhs, s.rhs);
    }
    r.add("ns-jordan", "Jordan identity for quadratic f", "f=" + f.name + " y=" + std::to_string(cfg.samples.jordan_y),
          !bad, bad);
  }
  if (quadratic == 0)
    r.add(CheckRecord{"ns-jordan", "Jordan identity for quadratic f", "no quadratic endomorphism configured",
                      Status::skip, {}});
}

// ----------------------------------------------------------------- jacobian

std::vector<TautPoly::Exponents> monomials(int n, int max_weight, int max_x0) {
  std::vector<TautPoly::Exponents> out;
  TautPoly::Exponents e(n + 1, 0);
  std::function<void(int, int)> rec = [&](int s, int rem) {
    if (s > n) {
      out.push_back(e);
      return;
    }
    const int cap = s == 0 ? max_x0 : rem / s;
    for (int k = 0; k <= cap; ++k) {
      e[s] = k;
      rec(s + 1, s == 0 ? rem : rem - k * s);
    }
    e[s] = 0;
  };
  rec(0, max_weight);
  return out;
}

void suite_jacobian(const RunConfig& cfg, Report& r) {
  const int n = cfg.jacobian.n;
  const std::string np = "N=" + std::to_string(n);

  for (const auto& entry : cfg.jacobian.bracket_table) {
    const TautPoly expected = parse_taut_poly(n, entry.value);
    const TautPoly got = bracket_gen(n, entry.s, entry.t);
    r.add("jacobian", "{x_s,x_t} = -C(s+t+2,s+1) x_{s+t}",
          "s=" + std::to_string(entry.s) + " t=" + std::to_string(entry.t), got == expected,
          "table = " + to_string(expected) + "; computed = " + to_string(got));
  }

  {
    std::optional<std::string> bad;
    for (int s = 0; s <= n; ++s)
      for (int t = 0; s + t <= n; ++t)
        if (!(bracket_gen(n, s, t) == bracket_gen(n, t, s)) && !bad)
          bad = "s=" + std::to_string(s) + " t=" + std::to_string(t);
    r.add("jacobian", "{x_s,x_t} = {x_t,x_s}", np, !bad, bad);
  }

  for (long m = -3; m <= 3; ++m)
    for (long k = -3; k <= 3; ++k) {
      if (m == 0 || k == 0) continue;
      const auto s = mn_identity_sides(n, m, k);
      r.add("jacobian", "{[m]_*C,[n]_*C} = -mn([m+n]_*C - [m]_*C - [n]_*C)",
            np + " m=" + std::to_string(m) + " n=" + std::to_string(k), s.holds(), pair_text(s.lhs, s.rhs));
    }

  {
    std::optional<std::string> bad;
    std::size_t count = 0;
    for (long m = -3; m <= 3; ++m)
      for (long k = -3; k <= 3; ++k)
        for (int s = 0; s <= n; ++s)
          for (int t = 0; s + t <= n; ++t) {
            const TautPoly lhs = bracket(push_m(m, TautPoly::var(n, s)), push_m(k, TautPoly::var(n, t)));
            const TautPoly rhs = (power(Rational(m), s + 2) * power(Rational(k), t + 2)) * bracket_gen(n, s, t);
            ++count;
            if (!(lhs == rhs) && !bad) bad = "m=" + std::to_string(m) + " n=" + std::to_string(k) + " s=" +
                                             std::to_string(s) + " t=" + std::to_string(t) + ": " + pair_text(lhs, rhs);
          }
    r.add("jacobian", "{[m]_*x_s,[n]_*x_t} = m^{s+2} n^{t+2} {x_s,x_t}", np + " cases=" + std::to_string(count), !bad,
          bad);
  }

  {
    const int w = std::min(n, 6);
    const auto monos = monomials(w, w, 2);
    std::optional<std::string> bad;
    std::size_t count = 0;
    for (const auto& a : monos)
      for (const auto& b : monos) {
        if (TautPoly::s_weight(a) + TautPoly::s_weight(b) > w) continue;
        TautPoly p(w), q(w);
        p.add_term(a, Rational(1));
        q.add_term(b, Rational(1));
        const TautPoly direct = bracket(p, q);
        const TautPoly first = bracket_leibniz(p, q, LeibnizOrder::first_argument);
        const TautPoly second = bracket_leibniz(p, q, LeibnizOrder::second_argument);
        ++count;
        if (!(first == second && first == direct && direct == bracket(q, p)) && !bad)
          bad = "P = " + to_string(p) + ", Q = " + to_string(q) + ": " + pair_text(first, second);
      }
    r.add("jacobian", "Leibniz expansion independent of order", "N=" + std::to_string(w) + " pairs=" + std::to_string(count),
          !bad, bad);
  }

  {
    const int w = std::min(n, 6);
    const auto monos = monomials(w, w, 1);
    std::optional<std::string> bad;
    std::size_t count = 0;
    for (const auto& a : monos)
      for (const auto& b : monos) {
        if (TautPoly::s_weight(a) + TautPoly::s_weight(b) > w) continue;
        for (const auto& c : monos) {
          if (TautPoly::s_weight(a) + TautPoly::s_weight(b) + TautPoly::s_weight(c) > w) continue;
          TautPoly p(w), q(w), s(w);
          p.add_term(a, Rational(1));
          q.add_term(b, Rational(1));
          s.add_term(c, Rational(1));
          const TautPoly lhs = bracket(pontryagin_mul(p, q), s);
          const TautPoly rhs = pontryagin_mul(p, bracket(q, s)) + pontryagin_mul(q, bracket(p, s));
          ++count;
          if (!(lhs == rhs) && !bad) bad = to_string(p) + ", " + to_string(q) + ", " + to_string(s);
        }
      }
    r.add("jacobian", "{P*Q,R} = P*{Q,R} + Q*{P,R}", "N=" + std::to_string(w) + " triples=" + std::to_string(count), !bad,
          bad);
  }

  {
    const auto found = jordan_failure_witness(n);
    r.add("jacobian", "Jordan identity fails for some x_s, x_t", np, found.has_value(),
          std::string("no violation among generator pairs"));
    if (found && cfg.jacobian.witness) {
      const WitnessFixture& fx = *cfg.jacobian.witness;
      const TautPoly x = parse_taut_poly(n, fx.x), y = parse_taut_poly(n, fx.y);
      const TautPoly lhs = parse_taut_poly(n, fx.lhs), rhs = parse_taut_poly(n, fx.rhs);
      const bool same = found->x == x && found->y == y && found->lhs == lhs && found->rhs == rhs;
      r.add("jacobian", "search reproduces the stored witness", np, same,
            "found x = " + to_string(found->x) + ", y = " + to_string(found->y) + ": " +
                pair_text(found->lhs, found->rhs));
      const auto sides = jordan_sides(x, y);
      const bool replay = sides.lhs == lhs && sides.rhs == rhs && !(lhs == rhs);
      r.add("jacobian", "stored witness violates the Jordan identity", np + " x=" + fx.x + " y=" + fx.y, replay,
            pair_text(sides.lhs, sides.rhs));
    }
  }
}

// ------------------------------------------------------------------ subring

void suite_subring(const RunConfig& cfg, Report& r) {
  const ModelContext& ctx = cfg.ctx;
  const int g = ctx.g();
  const int top = ctx.generator_count();
  auto rng = suite_rng(cfg, "subring");
  const std::span<const NamedPolarization> pols(cfg.polarizations);

  SubringState qt = qt_ring(ctx);
  const StabilityReport st = check_stability(qt, pols);
  r.add("subring", "QT is cup-closed, Pontryagin-closed and F_d-stable",
        "dim=" + std::to_string(qt.space.rank()) + " polarizations=" + std::to_string(pols.size()), st.all(),
        st.counterexample);

  const Subspace divisors = cup_subalgebra(ctx, degree_subspace(ctx, 2));
  r.add("subring", "cup algebra of H^2 inside QT", "dim=" + std::to_string(divisors.rank()), qt.space.contains(divisors));

  {
    const std::size_t n = static_cast<std::size_t>(top);
    std::vector<std::pair<std::string, Matrix>> maps;
    maps.emplace_back("2I", Matrix::scalar(n, Rational(2)));
    maps.emplace_back("-I", Matrix::scalar(n, Rational(-1)));
    std::uniform_int_distribution<int> dist(-2, 2);
    for (int k = 1; k <= 2; ++k) {
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
      maps.emplace_back("random" + std::to_string(k), std::move(m));
    }
    for (const auto& [name, m] : maps) {
      r.add("subring", "M_* QT inside QT", "M=" + name, is_invariant(qt.space, pushforward_op(ctx, m).matrix()));
      r.add("subring", "M^* QT inside QT", "M=" + name, is_invariant(qt.space, pullback_op(ctx, m).matrix()));
    }
  }

  const GradedLie lie = build_lie(ctx, pols);
  {
    bool ok = true;
    for (const auto& [w, basis] : lie.components())
      if (w % 2 || w < -top || w > top) ok = false;
    const Subspace g0 = [&] {
      Subspace s(ctx.dim() * ctx.dim());
      for (const auto& m : lie.zero()) s.insert(m.flatten());
      return s;
    }();
    ok = ok && g0.contains(grading_operator(ctx).matrix().flatten());
    r.add("subring", "ad(h)-weights even in [-2g,2g], h in g_0", "dim=" + std::to_string(lie.dimension()), ok);
  }

  std::vector<std::pair<std::string, Subspace>> fixtures;
  fixtures.emplace_back("zero", Subspace(ctx.dim()));
  {
    Subspace s(ctx.dim());
    s.insert(ExtClass::point(ctx).to_vector());
    fixtures.emplace_back("pt", std::move(s));
  }
  {
    Subspace s(ctx.dim());
    s.insert(cfg.reference_polarization().pol->cls().to_vector());
    fixtures.emplace_back("d", std::move(s));
  }
  {
    Subspace s(ctx.dim());
    s.insert(random_in_degree(ctx, 2, rng).to_vector());
    fixtures.emplace_back("random line in H^2", std::move(s));
  }
  {
    Subspace s(ctx.dim());
    s.insert(random_in_degree(ctx, top - 2, rng).to_vector());
    fixtures.emplace_back("random line in H^{2g-2}", std::move(s));
  }
  {
    Subspace s(ctx.dim());
    s.insert((random_in_degree(ctx, 2, rng) + random_in_degree(ctx, std::min(4, top), rng)).to_vector());
    fixtures.emplace_back("mixed-degree line", std::move(s));
  }
  const Subspace qt_gen = degree_subspace(ctx, top - 2);
  for (const auto& [name, v] : fixtures) {
    const SaturationResult sat = saturate(v, lie);
    const bool bounded = sat.iterations <= ctx.dim();
    const bool monotone = sat.space.contains(v);
    const bool idempotent = saturate(sat.space, lie).space == sat.space;
    r.add("subring", "saturation terminates, is monotone and idempotent",
          "V=" + name + " rank=" + std::to_string(sat.space.rank()) + " iterations=" + std::to_string(sat.iterations),
          bounded && monotone && idempotent);
    SubringState ring = pontryagin_subalgebra(ctx, subspace_join(sat.space, qt_gen));
    const StabilityReport rs = check_stability(ring, pols);
    r.add("subring", "R = Q[0] + W + W*W + ... is cup-closed and F_d-stable",
          "V=" + name + " dim=" + std::to_string(ring.space.rank()), rs.all(), rs.counterexample);
  }

  {
    const NamedPolarization& ref = cfg.reference_polarization();
    const ExtClass power = power_of(ref.pol->cls(), g - 1);
    const Subspace full = subspace_join(degree_subspace(ctx, top), degree_subspace(ctx, top - 2));
    Subspace small(ctx.dim());
    small.insert(ExtClass::point(ctx).to_vector());
    small.insert(power.to_vector());
    Subspace line(ctx.dim());
    line.insert(power.to_vector());
    for (const auto& [name, v] : {std::pair<std::string, Subspace>{"H^{2g} + H^{2g-2}", full},
                                  std::pair<std::string, Subspace>{"Q[0] + Q d^{g-1}", small}}) {
      const PonLemReport rep = check_pon_lem(v, ref);
      const bool ok = rep.hypotheses_hold() && rep.conclusion && rep.conclusion->all();
      r.add("subring", "closure hypotheses imply a Fourier-stable subring", "V=" + name, ok,
            rep.conclusion ? rep.conclusion->counterexample : std::optional<std::string>("hypotheses fail"));
    }
    const PonLemReport rep = check_pon_lem(line, ref);
    r.add("subring", "hypothesis check flags d.V not inside V", "V=Q d^{g-1}", !rep.d_stable && !rep.conclusion);
  }
}

using SuiteFn = void (*)(const RunConfig&, Report&);

SuiteFn lookup(std::string_view name) {
  if (name == "sl2") return suite_sl2;
  if (name == "exp-lem") return suite_exp_lem;
  if (name == "fourier") return suite_fourier;
  if (name == "diff-order") return suite_diff_order;
  if (name == "sl2-lem") return suite_sl2_lem;
  if (name == "biext") return suite_biext;
  if (name == "ns-jordan") return suite_ns_jordan;
  if (name == "jacobian") return suite_jacobian;
  if (name == "subring") return suite_subring;
  throw ConfigError("unknown suite '" + std::string(name) + "'");
}

}  // namespace

Report run_suite(std::string_view name, const RunConfig& cfg) {
  const SuiteFn fn = lookup(name);
  Report r;
  fn(cfg, r);
  return r;
}

Report run_suites(const RunConfig& cfg, std::string_view only) {
  Report out;
  if (!only.empty()) return run_suite(only, cfg);
  if (cfg.suites.empty()) {
    for (auto name : kSuiteNames) out.merge(run_suite(name, cfg));
  } else {
    for (const auto& name : cfg.suites) out.merge(run_suite(name, cfg));
  }
  return out;
}

}  // namespace chow
