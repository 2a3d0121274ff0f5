#include "qet/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qet/types.hpp"

namespace qet {

namespace {

void require_duration(double total_time) {
  if (!(total_time > 0.0) || !std::isfinite(total_time))
    throw std::invalid_argument("schedule total_time must be positive and finite");
}

void require_peak(double peak) {
  if (!(peak >= 0.0) || !std::isfinite(peak))
    throw std::invalid_argument("schedule peak coupling must be nonnegative and finite");
}

}  // namespace

CouplingSchedule CouplingSchedule::constant(double total_time, double g_l, double g_r) {
  require_duration(total_time);
  if (!(g_l >= 0.0) || !(g_r >= 0.0)) throw std::invalid_argument("couplings must be >= 0");
  CouplingSchedule s;
  s.shape_ = Shape::constant;
  s.total_time_ = total_time;
  s.fixed_ = {g_l, g_r};
  s.peak_ = std::max(g_l, g_r);
  return s;
}

CouplingSchedule CouplingSchedule::linear_ramp(double total_time, double peak) {
  require_duration(total_time);
  require_peak(peak);
  CouplingSchedule s;
  s.shape_ = Shape::linear_ramp;
  s.total_time_ = total_time;
  s.peak_ = peak;
  return s;
}

CouplingSchedule CouplingSchedule::trig_sweep(double total_time, double peak) {
  CouplingSchedule s = linear_ramp(total_time, peak);
  s.shape_ = Shape::trig_sweep;
  return s;
}

CouplingSchedule CouplingSchedule::gaussian_pulses(double total_time, double peak) {
  return gaussian_pulses(total_time, peak, {total_time / 6.0, 0.6 * total_time, 0.4 * total_time});
}

CouplingSchedule CouplingSchedule::gaussian_pulses(double total_time, double peak,
                                                   Gaussian shape) {
  CouplingSchedule s = linear_ramp(total_time, peak);
  if (!(shape.width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  s.shape_ = Shape::gaussian_pulses;
  s.gaussian_ = shape;
  return s;
}

CouplingSchedule CouplingSchedule::piecewise_table(std::vector<Knot> knots) {
  if (knots.size() < 2) throw std::invalid_argument("piecewise table needs at least two knots");
  if (knots.front().t != 0.0) throw std::invalid_argument("piecewise table must start at t = 0");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i].g_l >= 0.0) || !(knots[i].g_r >= 0.0))
      throw std::invalid_argument("piecewise table couplings must be >= 0");
    if (i > 0 && !(knots[i].t > knots[i - 1].t))
      throw std::invalid_argument("piecewise table times must be strictly increasing");
  }
  CouplingSchedule s;
  s.shape_ = Shape::piecewise_table;
  s.total_time_ = knots.back().t;
  for (const Knot& k : knots) s.peak_ = std::max({s.peak_, k.g_l, k.g_r});
  s.knots_ = std::move(knots);
  return s;
}

std::string CouplingSchedule::shape_name() const {
  switch (shape_) {
    case Shape::constant: return "constant";
    case Shape::linear_ramp: return "linear_ramp";
    case Shape::trig_sweep: return "trig_sweep";
    case Shape::gaussian_pulses: return "gaussian_pulses";
    case Shape::piecewise_table: return "piecewise_table";
  }
  return "unknown";
}

CouplingSchedule::Shape CouplingSchedule::parse_shape(const std::string& name) {
  if (name == "constant") return Shape::constant;
  if (name == "linear_ramp") return Shape::linear_ramp;
  if (name == "trig_sweep") return Shape::trig_sweep;
  if (name == "gaussian_pulses") return Shape::gaussian_pulses;
  if (name == "piecewise_table") return Shape::piecewise_table;
  throw std::invalid_argument("unknown schedule shape '" + name + "'");
}

Couplings CouplingSchedule::at(double t) const {
  const double slack = 1e-12 * std::max(1.0, total_time_);
  if (!(t >= -slack && t <= total_time_ + slack))
    throw DomainError("t = " + std::to_string(t) + " outside schedule domain [0, " +
                      std::to_string(total_time_) + "]");
  t = std::clamp(t, 0.0, total_time_);
  const double x = t / total_time_;
  switch (shape_) {
    case Shape::constant:
      return fixed_;
    case Shape::linear_ramp:
      return {peak_ * x, peak_ * (1.0 - x)};
    case Shape::trig_sweep: {
      const double theta = 0.5 * std::numbers::pi * x;
      // cos(pi/2) is not exactly zero; pin the endpoint.
      return {peak_ * std::sin(theta), x == 1.0 ? 0.0 : peak_ * std::cos(theta)};
    }
    case Shape::gaussian_pulses: {
      const double w2 = 2.0 * gaussian_.width * gaussian_.width;
      const double dl = t - gaussian_.center_l;
      const double dr = t - gaussian_.center_r;
      return {peak_ * std::exp(-dl * dl / w2), peak_ * std::exp(-dr * dr / w2)};
    }
    case Shape::piecewise_table: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                 [](double v, const Knot& k) { return v < k.t; });
      if (it == knots_.end()) return {knots_.back().g_l, knots_.back().g_r};
      const Knot& hi = *it;
      const Knot& lo = *(it - 1);
      const double w = (t - lo.t) / (hi.t - lo.t);
      return {lo.g_l + w * (hi.g_l - lo.g_l), lo.g_r + w * (hi.g_r - lo.g_r)};
    }
  }
  return {};
}

CouplingSchedule CouplingSchedule::with_total_time(double total_time) const {
  require_duration(total_time);
  CouplingSchedule s = *this;
  const double k = total_time / total_time_;
  s.total_time_ = total_time;
  s.gaussian_.width *= k;
  s.gaussian_.center_l *= k;
  s.gaussian_.center_r *= k;
  for (Knot& knot : s.knots_) knot.t *= k;
  return s;
}

}  // namespace qet
