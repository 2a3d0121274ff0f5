#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qet {

struct Couplings {
  double g_l = 0.0;
  double g_r = 0.0;
};

/// Time-dependent effective couplings g_l(t), g_r(t) on [0, T].
///
/// Shapes:
///   constant        fixed (g_l, g_r)
///   linear_ramp     g_l = g t/T, g_r = g (1 - t/T)
///   trig_sweep      g_l = g sin(pi t / 2T), g_r = g cos(pi t / 2T)
///   gaussian_pulses g_s = g exp(-(t - c_s)^2 / 2 w^2), g_r peaking first
///   piecewise_table linear interpolation between (t, g_l, g_r) knots
class CouplingSchedule {
 public:
  enum class Shape { constant, linear_ramp, trig_sweep, gaussian_pulses, piecewise_table };

  struct Gaussian {
    double width;
    double center_l;
    double center_r;
  };
  struct Knot {
    double t;
    double g_l;
    double g_r;
  };

  static CouplingSchedule constant(double total_time, double g_l, double g_r);
  static CouplingSchedule linear_ramp(double total_time, double peak);
  static CouplingSchedule trig_sweep(double total_time, double peak);
  /// Defaults: width T/6, g_r centred at 0.4 T, g_l at 0.6 T.
  static CouplingSchedule gaussian_pulses(double total_time, double peak);
  static CouplingSchedule gaussian_pulses(double total_time, double peak, Gaussian shape);
  static CouplingSchedule piecewise_table(std::vector<Knot> knots);

  Shape shape() const { return shape_; }
  std::string shape_name() const;
  double total_time() const { return total_time_; }
  /// Largest coupling the schedule reaches.
  double peak() const { return peak_; }
  bool time_independent() const { return shape_ == Shape::constant; }

  const Gaussian& gaussian() const { return gaussian_; }
  const std::vector<Knot>& knots() const { return knots_; }

  /// Throws DomainError for t outside [0, T] (1e-12 relative slack).
  Couplings at(double t) const;

  /// Same family stretched to a new duration (Gaussian centres and widths and
  /// table knots scale proportionally).
  CouplingSchedule with_total_time(double total_time) const;

  static Shape parse_shape(const std::string& name);

 private:
  CouplingSchedule() = default;

  Shape shape_ = Shape::constant;
  double total_time_ = 0.0;
  double peak_ = 0.0;
  Couplings fixed_;
  Gaussian gaussian_{};
  std::vector<Knot> knots_;
};

}  // namespace qet
