#include <doctest.h>

#include <json.hpp>

#include "chow/config.hpp"
#include "chow/errors.hpp"
#include "chow/suites.hpp"

using namespace chow;
using nlohmann::json;

namespace {

const std::string kConfigs = CHOW_CONFIG_DIR;
const std::string kFixtures = CHOW_FIXTURE_DIR;

json minimal() {
  return json{{"schema", "chowlab-config/1"}, {"g", 2}, {"polarizations", {{"d", "standard"}}}};
}

std::string config_error(const json& j) {
  try {
    parse_config(j.dump());
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults survive a serialization round trip") {
  for (int g = 1; g <= 4; ++g) {
    const RunConfig cfg = RunConfig::defaults(g);
    const std::string text = config_to_json(cfg);
    const RunConfig back = parse_config(text);
    CHECK(json::parse(config_to_json(back)) == json::parse(text));
    CHECK(back.polarizations.size() == 3);
    CHECK(back.jacobian.bracket_table.size() == 45);
  }
}

TEST_CASE("shipped configs match the built-in defaults") {
  const std::pair<const char*, int> files[] = {{"/g1.json", 1}, {"/default.json", 2}, {"/g3.json", 3}};
  for (const auto& [name, g] : files) {
    INFO(name);
    const RunConfig cfg = load_config(kConfigs + name);
    CHECK(cfg.ctx.g() == g);
    CHECK(json::parse(config_to_json(cfg)) == json::parse(config_to_json(RunConfig::defaults(g))));
  }
}

TEST_CASE("minimal config gets default settings") {
  const RunConfig cfg = parse_config(minimal().dump());
  CHECK(cfg.reference == "d");
  CHECK(cfg.endomorphisms.empty());
  CHECK(cfg.jacobian.n == 8);
  CHECK(cfg.samples.pairs == 500);
  CHECK(cfg.suites.empty());
  CHECK(cfg.reference_polarization().pol->chi() == 1);
  CHECK_THROWS_AS(cfg.polarization("nope"), ConfigError);
  CHECK_THROWS_AS(cfg.endomorphism("nope"), ConfigError);
}

TEST_CASE("rational matrix entries") {
  json j = minimal();
  j["g"] = 1;
  j["polarizations"]["half"] = json::array({json::array({0, "1/2"}), json::array({"-1/2", 0})});
  const RunConfig cfg = parse_config(j.dump());
  CHECK(cfg.polarization("half").pol->chi() == Rational(1, 2));
}

TEST_CASE("configuration errors name the offending field") {
  CHECK(config_error(json::parse(R"({"schema": "other", "g": 2})")).find("schema") != std::string::npos);

  json j = minimal();
  j["g"] = 7;
  CHECK(config_error(j).find("g") != std::string::npos);

  j = minimal();
  j["polarizations"]["pt"] = "standard";
  CHECK(config_error(j).find("'pt'") != std::string::npos);

  j = minimal();
  j["polarizations"]["a1"] = "standard";
  CHECK(config_error(j).find("'a1'") != std::string::npos);

  j = minimal();
  j["polarizations"]["z"] = json::array({json::array({0, 0, 0, 0}), json::array({0, 0, 0, 0}),
                                          json::array({0, 0, 0, 0}), json::array({0, 0, 0, 0})});
  CHECK(config_error(j).find("'z'") != std::string::npos);

  j = minimal();
  j["polarizations"]["z"] = json::array({json::array({0, 1})});
  CHECK(config_error(j).find("4 x 4") != std::string::npos);

  j = minimal();
  j["reference"] = "missing";
  CHECK(config_error(j).find("missing") != std::string::npos);

  j = minimal();
  j["endomorphisms"]["f"] = json::array({json::array({1, 0, 0, 0}), json::array({0, 1, 0, 0}),
                                          json::array({0, 0, 2, 0}), json::array({0, 0, 0, 2})});
  CHECK(config_error(j).find("endomorphism 'f'") != std::string::npos);

  j = minimal();
  j["jacobian"] = {{"N", 3}};
  CHECK(config_error(j).find("jacobian.N") != std::string::npos);

  j = minimal();
  j["jacobian"] = {{"bracket_table", json::array({{{"s", 0}, {"t", 0}, {"value", "-2*y0"}}})}};
  CHECK(config_error(j).find("-2*y0") != std::string::npos);

  j = minimal();
  j["suites"] = json::array({"sl2", "bogus"});
  CHECK(config_error(j).find("bogus") != std::string::npos);

  j = minimal();
  j["samples"] = {{"pairs", -1}};
  CHECK(config_error(j).find("samples.pairs") != std::string::npos);

  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(load_config(kFixtures + "/does_not_exist.json"), ConfigError);
}

TEST_CASE("fixtures") {
  try {
    load_config(kFixtures + "/not_antisymmetric.json");
    FAIL("expected a configuration error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()) == "polarization 'bad' is not antisymmetric");
  }

  const RunConfig corrupted = load_config(kFixtures + "/corrupted_binomial.json");
  CHECK(corrupted.suites == std::vector<std::string>{"jacobian"});
  const Report r = run_suites(corrupted);
  CHECK(r.count(Status::fail) == 1);
  for (const auto& rec : r.records())
    if (rec.status == Status::fail) {
      CHECK(rec.params == "s=1 t=2");
      CHECK(rec.counterexample == std::optional<std::string>("table = -9*x3; computed = -10*x3"));
    }
}
