#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "chemowave/config.hpp"
#include "chemowave/errors.hpp"

using namespace chemowave;

namespace {

const char* kMinimal = R"(
# comment line
name = demo   # trailing comment
[grid]
x_min = 0
x_max = 100
n_nodes = 1001
[model]
D = 0.5
mu = 2
xi = 0.75
[scheme]
t_end = 10
snapshot_interval = 2
policy = serial
[initial]
kind = piecewise_constant
jump_at = 20
u_left = 2
u_right = 1
v_left = 0
v_right = 1
)";

}  // namespace

TEST_CASE("key-value parsing") {
  const KeyValueConfig kv = KeyValueConfig::parse(kMinimal);
  CHECK(kv.get_string("name") == "demo");
  CHECK(kv.get_double("grid.n_nodes") == 1001.0);
  CHECK(kv.get_double("grid.missing", 4.5) == 4.5);
  CHECK_THROWS_AS(kv.get_double("grid.missing"), ConfigError);
  CHECK_THROWS_AS(kv.get_double("name"), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::parse("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::parse("[grid\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::parse("just words\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::parse("flag = maybe\n").get_bool("flag", false), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/dir/x.cfg"), IoError);
}

TEST_CASE("scenario from a minimal file") {
  const ScenarioConfig c = scenario_from_config(KeyValueConfig::parse(kMinimal));
  CHECK(c.name == "demo");
  CHECK(c.seed_label == "demo");
  CHECK(c.grid == GridSpec(0.0, 100.0, 1001));
  CHECK(c.params.D == 0.5);
  CHECK(c.params.chi == doctest::Approx(1.5));
  CHECK(c.scheme.policy == ExecPolicy::serial);
  CHECK(c.scheme.cfl == 0.4);
  CHECK(c.scheme.diffusion_theta == 0.5);
  CHECK(c.initial.kind == InitialKind::piecewise_constant);
  CHECK(c.initial.at("jump_at") == 20.0);
  CHECK_FALSE(c.declared_states.has_value());
  CHECK(c.mollify_delta == 0.0);
}

TEST_CASE("config errors") {
  const std::string base = kMinimal;
  CHECK_THROWS_AS(scenario_from_config(KeyValueConfig::parse(base + "typo_key = 3\n")), ConfigError);
  CHECK_THROWS_AS(scenario_from_config(KeyValueConfig::parse(base + "[model]\nchi = 9\n")), ConfigError);
  CHECK_THROWS_AS(scenario_from_config(KeyValueConfig::parse(base + "[extra]\nkind = 1\n")), ConfigError);
  std::string bad_kind = base;
  bad_kind.replace(bad_kind.find("piecewise_constant"), 18, "sawtooth");
  CHECK_THROWS_AS(scenario_from_config(KeyValueConfig::parse(bad_kind)), ConfigError);
  std::string bad_grid = base;
  bad_grid.replace(bad_grid.find("n_nodes = 1001"), 14, "n_nodes = 3");
  CHECK_THROWS_AS(scenario_from_config(KeyValueConfig::parse(bad_grid)), ConfigError);
  CHECK_THROWS_AS(scenario_from_config(KeyValueConfig::parse(base + "mollify_delta = -1\n")), ConfigError);
  CHECK_THROWS_AS(initial_kind_from_string("nope"), ConfigError);
}

TEST_CASE("declared states are completed when v_minus is omitted") {
  const ScenarioConfig c = scenario_from_config(
      KeyValueConfig::parse(std::string(kMinimal) + "[states]\nu_minus = 2\nu_plus = 1\nv_plus = 1\n"));
  REQUIRE(c.declared_states.has_value());
  // chi = 1.5 here, so v- = v+ + (u+ - u-)/s with s the positive root.
  const double s = (-1.5 + std::sqrt(1.5 * 1.5 + 4 * 1.5 * 2)) / 2;
  CHECK(c.declared_states->v_minus == doctest::Approx(1.0 - 1.0 / s));
}

TEST_CASE("echo parses back to the same scenario") {
  const ScenarioConfig c = scenario_from_config(KeyValueConfig::parse(
      std::string(kMinimal) + "[probe]\ncenter = 20\nhalfwidth = 4\nreference_run = true\n"));
  std::string text;
  for (const auto& [k, v] : c.echo()) text += k + " = " + v + "\n";
  const ScenarioConfig d = scenario_from_config(KeyValueConfig::parse(text));
  CHECK(d.echo() == c.echo());
  CHECK(d.reference_run);
}

TEST_CASE("sweep axes") {
  ScenarioConfig c = scenario_from_config(KeyValueConfig::parse(kMinimal));
  c.apply_axis("n_nodes", 2001);
  CHECK(c.grid.n_nodes() == 2001);
  c.apply_axis("cfl", 0.2);
  CHECK(c.scheme.cfl == 0.2);
  CHECK_THROWS_AS(c.apply_axis("cfl", 2.0), ConfigError);
  c.apply_axis("mollify_delta", 1.5);
  CHECK(c.mollify_delta == 1.5);
  c.apply_axis("jump_height", 2.0);
  CHECK(c.initial.at("u_left") == 3.0);
  CHECK_THROWS_AS(c.apply_axis("viscosity", 1.0), ConfigError);
}

TEST_CASE("from_file paths resolve against the config directory") {
  const auto dir = std::filesystem::temp_directory_path() / "chemowave_cfg_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "a.cfg");
    os << "[grid]\nx_min = 0\nx_max = 1\nn_nodes = 11\n[scheme]\nt_end = 1\n"
          "[initial]\nkind = from_file\npath = data/snap.dat\n";
  }
  const ScenarioConfig c = load_scenario(dir / "a.cfg");
  CHECK(c.initial.file == dir / "data/snap.dat");
  std::filesystem::remove_all(dir);
}

TEST_CASE("shipped scenario files load") {
  const std::filesystem::path dir = std::filesystem::path(CHEMOWAVE_SOURCE_DIR) / "scenarios";
  for (const char* name : {"fig1_paper", "fig1_consistent", "fig3", "thm21", "thm22"}) {
    CAPTURE(name);
    const ScenarioConfig c = load_scenario(dir / (std::string(name) + ".cfg"));
    CHECK(c.name == name);
    CHECK(c.grid == GridSpec(0.0, 400.0, 4001));
  }
}
