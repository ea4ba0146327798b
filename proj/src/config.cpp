#include "chow/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chow/errors.hpp"
#include "chow/jacobian.hpp"

namespace chow {

using nlohmann::json;

const NamedPolarization& RunConfig::polarization(std::string_view name) const {
  for (const auto& p : polarizations)
    if (p.name == name) return p;
  throw ConfigError("unknown polarization '" + std::string(name) + "'");
}

const NamedEndo& RunConfig::endomorphism(std::string_view name) const {
  for (const auto& e : endomorphisms)
    if (e.name == name) return e;
  throw ConfigError("unknown endomorphism '" + std::string(name) + "'");
}

Matrix perturbed_form(const ModelContext& ctx, int k) {
  const std::size_t n = static_cast<std::size_t>(ctx.generator_count());
  const Matrix base = Polarization::standard(ctx).form();
  for (int shift = 0;; ++shift) {
    Matrix e = base;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const long v = static_cast<long>((i + 2 * j + static_cast<std::size_t>(k + shift)) % 3) - 1;
        e(i, j) += v;
        e(j, i) -= v;
      }
    if (ctx.g() == 1) e = Rational(k + 1) * base;
    try {
      Polarization p(ctx, e);
      return e;
    } catch (const DegeneratePolarization&) {
    }
  }
}

namespace {

std::vector<BracketEntry> default_bracket_table(int n) {
  std::vector<BracketEntry> table;
  for (int s = 0; s <= n; ++s)
    for (int t = 0; s + t <= n; ++t) table.push_back({s, t, to_string(bracket_gen(n, s, t))});
  return table;
}

Matrix swap_first_factors(const ModelContext& ctx) {
  const int g = ctx.g();
  Matrix m = Matrix::identity(static_cast<std::size_t>(2 * g));
  for (int base : {0, g}) {
    m(base, base) = 0;
    m(base + 1, base + 1) = 0;
    m(base, base + 1) = 1;
    m(base + 1, base) = 1;
  }
  return m;
}

Matrix split_first_factor(const ModelContext& ctx) {
  const int g = ctx.g();
  Matrix m = Matrix::scalar(static_cast<std::size_t>(2 * g), Rational(-1));
  m(0, 0) = 1;
  m(g, g) = 1;
  return m;
}

}  // namespace

RunConfig RunConfig::defaults(int g) {
  RunConfig cfg(ModelContext::make(g));
  const ModelContext& ctx = cfg.ctx;
  cfg.polarizations.push_back({"d", std::make_shared<const Polarization>(Polarization::standard(ctx))});
  for (int k = 1; k <= 2; ++k)
    cfg.polarizations.push_back(
        {"d" + std::to_string(k), std::make_shared<const Polarization>(ctx, perturbed_form(ctx, k))});
  const auto& ref = cfg.polarizations.front().pol;
  const std::size_t n = static_cast<std::size_t>(ctx.generator_count());
  cfg.endomorphisms.push_back({"id", Endo::identity(ref)});
  cfg.endomorphisms.push_back({"two", Endo::scalar(ref, Rational(2))});
  if (g >= 2) {
    cfg.endomorphisms.push_back({"swap", Endo::make(ref, swap_first_factors(ctx))});
    cfg.endomorphisms.push_back({"split", Endo::make(ref, split_first_factor(ctx))});
  } else {
    Matrix m = Matrix::scalar(n, Rational(-3));
    cfg.endomorphisms.push_back({"minus_three", Endo::make(ref, m)});
  }
  {
    // E^{-1} S for a fixed integral antisymmetric S: Rosati-symmetric, no special eigenvalues.
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        s(i, j) = static_cast<long>((3 * i + 5 * j) % 7) - 3;
        s(j, i) = -s(i, j);
      }
    cfg.endomorphisms.push_back({"generic", Endo::make(ref, inverse(ref->form()) * s)});
  }
  cfg.jacobian.bracket_table = default_bracket_table(cfg.jacobian.n);
  cfg.jacobian.witness = WitnessFixture{"x1", "x0", "-180*x3", "-240*x3"};
  return cfg;
}

namespace {

Rational entry_value(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + ": matrix entries must be integers or rational strings");
}

Matrix read_matrix(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) throw ConfigError(where + ": expected a " + std::to_string(n) + " x " + std::to_string(n) + " matrix");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n)
      throw ConfigError(where + ": row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = entry_value(j[i][k], where);
  }
  return m;
}

template <class T>
T field_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

bool reserved_name(const std::string& name) {
  static const char* const kReserved[] = {"one", "pt", "exp", "F", "bracket", "push", "pull", "L", "N", "order_cup", "order_pon"};
  for (const char* r : kReserved)
    if (name == r) return true;
  if (name.size() >= 2 && (name[0] == 'a' || name[0] == 'b') &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return true;
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return true;
  return !std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void require_positive(int v, const std::string& where) {
  if (v < 0) throw ConfigError(where + " must be non-negative");
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (field_or<std::string>(j, "schema", "", "config") != kConfigSchema)
    throw ConfigError("config schema must be \"" + std::string(kConfigSchema) + "\"");
  if (!j.contains("g") || !j["g"].is_number_integer()) throw ConfigError("config.g must be an integer");
  const int g = j["g"].get<int>();
  if (g < 1 || g > 6) throw ConfigError("config.g must be between 1 and 6");

  RunConfig cfg(ModelContext::make(g));
  const ModelContext& ctx = cfg.ctx;
  const std::size_t n = static_cast<std::size_t>(ctx.generator_count());

  if (!j.contains("polarizations") || !j["polarizations"].is_object() || j["polarizations"].empty())
    throw ConfigError("config.polarizations must be a non-empty object");
  for (const auto& [name, value] : j["polarizations"].items()) {
    const std::string where = "polarization '" + name + "'";
    if (reserved_name(name)) throw ConfigError(where + ": name is reserved or not an identifier");
    Matrix form = value.is_string() && value.get<std::string>() == "standard" ? Polarization::standard(ctx).form()
                                                                             : read_matrix(value, n, where);
    if (!form.is_antisymmetric()) throw ConfigError(where + " is not antisymmetric");
    try {
      cfg.polarizations.push_back({name, std::make_shared<const Polarization>(ctx, std::move(form))});
    } catch (const Error& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }

  cfg.reference = field_or<std::string>(j, "reference", "d", "config");
  const auto& ref = cfg.reference_polarization().pol;

  if (j.contains("endomorphisms")) {
    if (!j["endomorphisms"].is_object()) throw ConfigError("config.endomorphisms must be an object");
    for (const auto& [name, value] : j["endomorphisms"].items()) {
      const std::string where = "endomorphism '" + name + "'";
      if (reserved_name(name)) throw ConfigError(where + ": name is reserved or not an identifier");
      try {
        if (value.is_string() && value.get<std::string>() == "identity") {
          cfg.endomorphisms.push_back({name, Endo::identity(ref)});
        } else {
          cfg.endomorphisms.push_back({name, Endo::make(ref, read_matrix(value, n, where))});
        }
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
  }

  if (j.contains("jacobian")) {
    const json& jac = j["jacobian"];
    if (!jac.is_object()) throw ConfigError("config.jacobian must be an object");
    cfg.jacobian.n = field_or<int>(jac, "N", 8, "jacobian");
    if (cfg.jacobian.n < 4) throw ConfigError("jacobian.N must be at least 4");
    if (jac.contains("bracket_table")) {
      if (!jac["bracket_table"].is_array()) throw ConfigError("jacobian.bracket_table must be an array");
      for (const auto& row : jac["bracket_table"]) {
        BracketEntry e{field_or<int>(row, "s", -1, "bracket_table"), field_or<int>(row, "t", -1, "bracket_table"),
                       field_or<std::string>(row, "value", "", "bracket_table")};
        if (e.s < 0 || e.t < 0 || e.value.empty()) throw ConfigError("bracket_table rows need s, t and value");
        try {
          parse_taut_poly(cfg.jacobian.n, e.value);
        } catch (const ParseError& err) {
          throw ConfigError("bracket_table value '" + e.value + "': " + err.what());
        }
        cfg.jacobian.bracket_table.push_back(std::move(e));
      }
    }
    if (jac.contains("witness")) {
      const json& w = jac["witness"];
      WitnessFixture fx{field_or<std::string>(w, "x", "", "witness"), field_or<std::string>(w, "y", "", "witness"),
                        field_or<std::string>(w, "lhs", "", "witness"), field_or<std::string>(w, "rhs", "", "witness")};
      for (const auto* text : {&fx.x, &fx.y, &fx.lhs, &fx.rhs}) {
        try {
          parse_taut_poly(cfg.jacobian.n, *text);
        } catch (const ParseError& err) {
          throw ConfigError("witness polynomial '" + *text + "': " + err.what());
        }
      }
      cfg.jacobian.witness = std::move(fx);
    }
  }

  if (j.contains("samples")) {
    const json& s = j["samples"];
    cfg.samples.seed = field_or<std::uint64_t>(s, "seed", cfg.samples.seed, "samples");
    cfg.samples.pairs = field_or<int>(s, "pairs", cfg.samples.pairs, "samples");
    cfg.samples.triples = field_or<int>(s, "triples", cfg.samples.triples, "samples");
    cfg.samples.random_endos = field_or<int>(s, "random_endos", cfg.samples.random_endos, "samples");
    cfg.samples.jordan_y = field_or<int>(s, "jordan_y", cfg.samples.jordan_y, "samples");
    require_positive(cfg.samples.pairs, "samples.pairs");
    require_positive(cfg.samples.triples, "samples.triples");
    require_positive(cfg.samples.random_endos, "samples.random_endos");
    require_positive(cfg.samples.jordan_y, "samples.jordan_y");
  }

  if (j.contains("suites")) {
    cfg.suites = field_or<std::vector<std::string>>(j, "suites", {}, "config");
    for (const auto& s : cfg.suites)
      if (std::find(kSuiteNames.begin(), kSuiteNames.end(), s) == kSuiteNames.end()) throw ConfigError("unknown suite '" + s + "'");
  }
  return cfg;
}

namespace {

nlohmann::ordered_json matrix_json(const Matrix& m) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const Rational& q = m(i, k);
      if (q.get_den() == 1 && q.get_num().fits_slong_p())
        row.push_back(q.get_num().get_si());
      else
        row.push_back(to_string(q));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema"] = kConfigSchema;
  j["g"] = cfg.ctx.g();
  j["reference"] = cfg.reference;
  const Matrix standard = Polarization::standard(cfg.ctx).form();
  auto& pols = j["polarizations"] = nlohmann::ordered_json::object();
  for (const auto& p : cfg.polarizations)
    pols[p.name] = p.pol->form() == standard ? nlohmann::ordered_json("standard") : matrix_json(p.pol->form());
  auto& endos = j["endomorphisms"] = nlohmann::ordered_json::object();
  const Matrix id = Matrix::identity(static_cast<std::size_t>(cfg.ctx.generator_count()));
  for (const auto& e : cfg.endomorphisms)
    endos[e.name] = e.endo.matrix() == id ? nlohmann::ordered_json("identity") : matrix_json(e.endo.matrix());
  auto& jac = j["jacobian"];
  jac["N"] = cfg.jacobian.n;
  jac["bracket_table"] = nlohmann::ordered_json::array();
  for (const auto& b : cfg.jacobian.bracket_table)
    jac["bracket_table"].push_back({{"s", b.s}, {"t", b.t}, {"value", b.value}});
  if (cfg.jacobian.witness) {
    const auto& w = *cfg.jacobian.witness;
    jac["witness"] = {{"x", w.x}, {"y", w.y}, {"lhs", w.lhs}, {"rhs", w.rhs}};
  }
  j["samples"] = {{"seed", cfg.samples.seed},
                  {"pairs", cfg.samples.pairs},
                  {"triples", cfg.samples.triples},
                  {"random_endos", cfg.samples.random_endos},
                  {"jordan_y", cfg.samples.jordan_y}};
  if (!cfg.suites.empty()) j["suites"] = cfg.suites;
  return j.dump(2) + "\n";
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace chow
