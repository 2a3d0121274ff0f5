#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qet/config.hpp"

using namespace qet;

namespace {

std::vector<std::string> errors_of(const std::string& text, bool strict = true) {
  try {
    parse_config(text, strict);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
  for (const auto& e : errors)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("empty object takes the defaults") {
  const ExperimentConfig c = parse_config("{}");
  CHECK(c.model.n_l == 1);
  CHECK(c.schedule.shape == "trig_sweep");
  CHECK(c.initial_state.kind == InitialStateSpec::Kind::dark);
  CHECK(c.run.dimension_cap == 2'000'000);
  CHECK(c.run.compensate_endpoint_phase);
  CHECK(c.warnings.empty());
}

TEST_CASE("full model section") {
  const ExperimentConfig c = parse_config(R"({
    "model": {"n_l": 8, "n_r": 6, "epsilon": 1.5, "omega_ph": 1.4, "photon_cap": 2,
              "include_stark": true, "stark": {"quantized": 0.1, "left": 0.2, "right": 0.3},
              "picture": "full"},
    "schedule": {"shape": "gaussian_pulses", "total_time": 60, "peak_coupling": 0.5, "width": 8},
    "initial_state": {"kind": "product", "m_l": 2, "m_r": 1, "n_ph": 0},
    "run": {"dt": 0.01, "observables": ["alpha", "photon_population"], "tracked_dark": [1, 2]},
    "seed": 42
  })");
  CHECK(c.model.n_l == 8);
  CHECK(c.model.picture == Picture::full);
  CHECK(c.model.stark.right == 0.3);
  CHECK(c.schedule.width == 8.0);
  CHECK(c.initial_state.product.m_l == 2);
  CHECK(c.run.tracked_dark == std::vector<int>{1, 2});
  CHECK(c.seed == 42);
  const CouplingSchedule s = c.schedule.build(c.model);
  CHECK(s.shape() == CouplingSchedule::Shape::gaussian_pulses);
  CHECK(s.peak() == 0.5);
}

TEST_CASE("dark exciton number is bounded by both ensembles") {
  const auto errs = errors_of(R"({"model": {"n_l": 2, "n_r": 4}, "initial_state": {"kind": "dark", "n": 3}})");
  REQUIRE(errs.size() == 1);
  CHECK(errs[0] == "initial_state.n: value 3 exceeds min(model.n_l = 2, model.n_r = 4)");
}

TEST_CASE("unknown keys suggest the closest name") {
  const std::string text = R"({"model": {"n_l": 2, "gl": 0.5}})";
  const auto errs = errors_of(text);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0] == "model.gl: unknown key (did you mean 'model.g_l'?)");

  const ExperimentConfig lenient = parse_config(text, false);
  REQUIRE(lenient.warnings.size() == 1);
  CHECK(lenient.warnings[0].find("model.g_l") != std::string::npos);
  CHECK(lenient.model.n_l == 2);

  CHECK(errors_of(R"({"zzzzzz": 1})") == std::vector<std::string>{"zzzzzz: unknown key"});
}

TEST_CASE("type mismatches carry their path and are all collected") {
  const auto errs = errors_of(R"({
    "model": {"n_l": "eight", "g_r": [1, 2, 3], "include_stark": 1},
    "run": {"dt": -1, "observables": ["spin"]},
    "schedule": {"shape": "sawtooth"}
  })");
  CHECK(errs.size() == 3);
  CHECK(mentions(errs, "model.n_l: expected"));
  CHECK(mentions(errs, "model.g_r: expected"));
  CHECK(mentions(errs, "model.include_stark: expected boolean"));
  // Range checks wait until every field has the right type.
  CHECK_FALSE(mentions(errs, "schedule.shape"));
}

TEST_CASE("cross-field errors are all reported") {
  const auto errs = errors_of(R"({
    "model": {"n_l": 2, "n_r": 2, "g_l": -1},
    "run": {"dt": -1, "observables": ["spin"]},
    "scan": {"total_times": []}
  })");
  CHECK(mentions(errs, "model.g_l: must be >= 0"));
  CHECK(mentions(errs, "run.dt"));
  CHECK(mentions(errs, "run.observables[0]"));
  CHECK(mentions(errs, "scan.total_times: must not be empty"));
}

TEST_CASE("keys of another initial-state kind are rejected") {
  const auto errs = errors_of(R"({"initial_state": {"kind": "dark", "eta": 0.5}})");
  REQUIRE_FALSE(errs.empty());
  CHECK(mentions(errs, "initial_state.eta"));
}

TEST_CASE("density matrices") {
  const ExperimentConfig c = parse_config(R"({
    "model": {"n_l": 2, "n_r": 2},
    "initial_state": {"kind": "density", "rho": [[0.5, 0.5], [0.5, [0.5, 0.0]]]}
  })");
  CHECK(c.initial_state.rho.rows() == 2);
  CHECK(c.initial_state.rho(1, 0) == cplx(0.5));
  CHECK(mentions(errors_of(R"({"initial_state": {"kind": "density", "rho": [[1, 0]]}})"),
                 "initial_state.rho"));
  CHECK(mentions(errors_of(R"({"model": {"n_l": 1}, "initial_state": {"kind": "density",
                              "rho": [[1, 0, 0], [0, 0, 0], [0, 0, 0]]}})"),
                 "initial_state.rho: has n_max = 2"));
}

TEST_CASE("piecewise tables") {
  const ExperimentConfig c =
      parse_config(R"({"schedule": {"shape": "piecewise_table", "table": [[0, 0, 1], [4, 1, 0]]}})");
  CHECK(c.schedule.total_time == 4.0);
  CHECK(c.schedule.build(c.model).at(2.0).g_l == doctest::Approx(0.5));
  CHECK(mentions(errors_of(R"({"schedule": {"shape": "piecewise_table", "table": [[1, 0, 1], [4, 1, 0]]}})"),
                 "schedule.table[0]"));
  CHECK(mentions(errors_of(R"({"schedule": {"table": [[0, 0, 1], [4, 1, 0]]}})"), "schedule.table"));
}

TEST_CASE("malformed JSON") {
  const auto errs = errors_of("{\"model\": ");
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].rfind("<input>: malformed JSON", 0) == 0);
  CHECK(mentions(errors_of("[1, 2]"), "expected object"));
}

TEST_CASE("file errors name the file") {
  const std::string path = "test_config_bad.json";
  {
    std::ofstream f(path);
    f << R"({"model": {"n_l": 0}})";
  }
  try {
    parse_config_file(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    for (const auto& msg : e.errors()) CHECK(msg.rfind(path + ": ", 0) == 0);
    CHECK(mentions(e.errors(), "model.n_l: must be >= 1"));
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_config_file("does/not/exist.json"), ConfigError);
}

TEST_CASE("property: normalized output parses back to itself") {
  const std::vector<std::string> inputs = {
      "{}",
      R"({"model": {"n_l": 3, "n_r": 5, "g_l": 0.2, "picture": "full"}, "seed": 7})",
      R"({"schedule": {"shape": "gaussian_pulses", "center_l": 30, "center_r": 20},
          "initial_state": {"kind": "coherent", "eta": 0.3},
          "run": {"thresholds": {"min_fidelity": 0.9, "max_photon": 0.1}}})",
      R"({"model": {"n_l": 2, "n_r": 2}, "initial_state": {"kind": "density", "rho": [[0.5, [0, 0.5]], [[0, -0.5], 0.5]]},
          "raman": {"omega_left": [0.1, 0.2], "side": "right"}})",
      R"({"schedule": {"shape": "piecewise_table", "table": [[0, 0, 1], [2, 0.5, 0.5], [4, 1, 0]]}})",
      R"({"model": {"g_l": 0.3}, "schedule": {"shape": "constant", "total_time": 5},
          "darkcheck": {"random_alphas": 3}, "bosonic_check": {"n_atoms": [4, 8]}})",
  };
  for (const auto& text : inputs) {
    const nlohmann::json once = to_json(parse_config(text));
    const nlohmann::json twice = to_json(parse_config(once.dump()));
    CHECK(once == twice);
  }
}

TEST_CASE("observable names") {
  CHECK(parse_observable("photon_population") == Observable::photon_population);
  CHECK(parse_observable("left_lowering") == Observable::left_lowering);
  CHECK_THROWS_AS(parse_observable("spin"), std::invalid_argument);
}
