#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qet/operators.hpp"
#include "qet/schedule.hpp"

using namespace qet;

TEST_CASE("trig sweep endpoints and midpoint") {
  const auto s = CouplingSchedule::trig_sweep(50.0, 2.0);
  CHECK(s.at(0.0).g_l == 0.0);
  CHECK(s.at(0.0).g_r == 2.0);
  CHECK(s.at(50.0).g_l == 2.0);
  CHECK(s.at(50.0).g_r == 0.0);
  CHECK(mixing_angle(s.at(0.0).g_l, s.at(0.0).g_r, 4, 4) == 0.0);
  CHECK(mixing_angle(s.at(50.0).g_l, s.at(50.0).g_r, 4, 4) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  const Couplings mid = s.at(25.0);
  CHECK(mixing_angle(mid.g_l, mid.g_r, 6, 6) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));
  CHECK(s.peak() == 2.0);
  CHECK_FALSE(s.time_independent());
}

TEST_CASE("linear ramp") {
  const auto s = CouplingSchedule::linear_ramp(10.0, 1.0);
  CHECK(s.at(0.0).g_l == 0.0);
  CHECK(s.at(0.0).g_r == 1.0);
  CHECK(s.at(2.5).g_l == doctest::Approx(0.25));
  CHECK(s.at(2.5).g_r == doctest::Approx(0.75));
  CHECK(s.at(10.0).g_r == 0.0);
}

TEST_CASE("gaussian pulses default to counterintuitive order") {
  const auto s = CouplingSchedule::gaussian_pulses(60.0, 1.5);
  CHECK(s.gaussian().width == doctest::Approx(10.0));
  CHECK(s.gaussian().center_r < s.gaussian().center_l);
  CHECK(s.at(24.0).g_r == doctest::Approx(1.5));
  CHECK(s.at(36.0).g_l == doctest::Approx(1.5));
  CHECK(s.at(0.0).g_r > s.at(0.0).g_l);
  CHECK(s.at(60.0).g_l > s.at(60.0).g_r);
  CHECK(s.at(34.0).g_l == doctest::Approx(1.5 * std::exp(-4.0 / 200.0)).epsilon(1e-14));
}

TEST_CASE("piecewise table interpolates linearly") {
  const auto s = CouplingSchedule::piecewise_table({{0.0, 0.0, 1.0}, {2.0, 1.0, 1.0}, {6.0, 1.0, 0.0}});
  CHECK(s.total_time() == 6.0);
  CHECK(s.peak() == 1.0);
  CHECK(s.at(1.0).g_l == doctest::Approx(0.5));
  CHECK(s.at(4.0).g_r == doctest::Approx(0.5));
  CHECK(s.at(6.0).g_r == 0.0);
  CHECK_THROWS_AS(CouplingSchedule::piecewise_table({{0.0, 1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(CouplingSchedule::piecewise_table({{1.0, 1.0, 1.0}, {2.0, 1.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CouplingSchedule::piecewise_table({{0.0, 1.0, 1.0}, {0.0, 1.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CouplingSchedule::piecewise_table({{0.0, -1.0, 1.0}, {1.0, 1.0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("constant schedule") {
  const auto s = CouplingSchedule::constant(3.0, 0.2, 0.7);
  CHECK(s.time_independent());
  CHECK(s.at(1.7).g_l == 0.2);
  CHECK(s.at(1.7).g_r == 0.7);
  CHECK(s.peak() == 0.7);
}

TEST_CASE("domain and argument errors") {
  const auto s = CouplingSchedule::trig_sweep(10.0, 1.0);
  CHECK_THROWS_AS(s.at(-0.1), DomainError);
  CHECK_THROWS_AS(s.at(10.1), DomainError);
  CHECK_NOTHROW(s.at(10.0 + 1e-13));
  CHECK_THROWS_AS(CouplingSchedule::trig_sweep(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CouplingSchedule::trig_sweep(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(CouplingSchedule::constant(1.0, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CouplingSchedule::parse_shape("sawtooth"), std::invalid_argument);
  CHECK(CouplingSchedule::parse_shape("gaussian_pulses") == CouplingSchedule::Shape::gaussian_pulses);
}

TEST_CASE("stretching keeps the shape") {
  const auto g = CouplingSchedule::gaussian_pulses(60.0, 1.0);
  const auto g2 = g.with_total_time(120.0);
  CHECK(g2.total_time() == 120.0);
  const auto t = CouplingSchedule::piecewise_table({{0.0, 0.0, 1.0}, {4.0, 1.0, 0.0}});
  const auto t2 = t.with_total_time(8.0);
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    CHECK(g2.at(120.0 * x).g_l == doctest::Approx(g.at(60.0 * x).g_l).epsilon(1e-14));
    CHECK(g2.at(120.0 * x).g_r == doctest::Approx(g.at(60.0 * x).g_r).epsilon(1e-14));
    CHECK(t2.at(8.0 * x).g_l == doctest::Approx(t.at(4.0 * x).g_l).epsilon(1e-14));
  }
}

TEST_CASE("property: couplings are nonnegative and continuous") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<CouplingSchedule> all = {
      CouplingSchedule::linear_ramp(7.0, 1.3), CouplingSchedule::trig_sweep(7.0, 1.3),
      CouplingSchedule::gaussian_pulses(7.0, 1.3),
      CouplingSchedule::piecewise_table({{0.0, 0.0, 1.0}, {3.0, 0.5, 0.5}, {7.0, 1.3, 0.0}})};
  for (const auto& s : all) {
    for (int i = 0; i < 500; ++i) {
      const double t = 7.0 * u(rng);
      const Couplings a = s.at(t);
      CHECK(a.g_l >= 0.0);
      CHECK(a.g_r >= 0.0);
      CHECK(a.g_l <= s.peak() + 1e-15);
      const double t2 = std::min(7.0, t + 1e-7);
      const Couplings b = s.at(t2);
      CHECK(std::abs(a.g_l - b.g_l) < 1e-6);
      CHECK(std::abs(a.g_r - b.g_r) < 1e-6);
      if (s.shape() != CouplingSchedule::Shape::piecewise_table && t > 0.0 && t < 7.0)
        CHECK(a.g_l + a.g_r > 0.0);
    }
  }
}
