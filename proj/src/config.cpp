#include "qet/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace qet {

using nlohmann::json;

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += '\n';
    out += l;
  }
  return out;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string type_name(const json& v) {
  if (v.is_number_integer()) return "integer";
  return v.type_name();
}

struct Context {
  bool strict = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  void error(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }
};

/// One JSON object being read; remembers which keys were consumed so the
/// leftovers can be reported as unknown.
class Section {
 public:
  Section(Context& ctx, const json* node, std::string path)
      : ctx_(ctx), node_(node), path_(std::move(path)) {
    if (node_ && !node_->is_object()) {
      ctx_.error(path_.empty() ? "<root>" : path_, "expected object, got " + type_name(*node_));
      node_ = nullptr;
    }
  }

  std::string path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void error(const std::string& p, const std::string& msg) { ctx_.error(p, msg); }

  bool has(const std::string& key) const { return node_ && node_->contains(key); }

  const json* raw(const std::string& key) {
    known_.insert(key);
    if (!node_) return nullptr;
    auto it = node_->find(key);
    return it == node_->end() ? nullptr : &*it;
  }

  Section child(const std::string& key) { return Section(ctx_, raw(key), path(key)); }

  void number(const std::string& key, double& out) {
    if (const json* v = raw(key)) read_number(*v, path(key), out);
  }
  void number(const std::string& key, std::optional<double>& out) {
    if (const json* v = raw(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      double x = 0.0;
      if (read_number(*v, path(key), x)) out = x;
    }
  }
  void integer(const std::string& key, int& out) {
    if (const json* v = raw(key)) read_int(*v, path(key), out);
  }
  void size(const std::string& key, std::size_t& out) {
    if (const json* v = raw(key)) {
      if (!v->is_number_unsigned()) {
        ctx_.error(path(key), "expected nonnegative integer, got " + type_name(*v));
        return;
      }
      out = v->get<std::size_t>();
    }
  }
  void boolean(const std::string& key, bool& out) {
    if (const json* v = raw(key)) {
      if (!v->is_boolean())
        ctx_.error(path(key), "expected boolean, got " + type_name(*v));
      else
        out = v->get<bool>();
    }
  }
  void string(const std::string& key, std::string& out) {
    if (const json* v = raw(key)) {
      if (!v->is_string())
        ctx_.error(path(key), "expected string, got " + type_name(*v));
      else
        out = v->get<std::string>();
    }
  }
  void complex(const std::string& key, cplx& out) {
    if (const json* v = raw(key)) read_complex(*v, path(key), out);
  }
  void numbers(const std::string& key, std::vector<double>& out) {
    if (const json* v = raw(key)) read_list(*v, path(key), out, [&](const json& e, const std::string& p, double& x) {
      return read_number(e, p, x);
    });
  }
  void integers(const std::string& key, std::vector<int>& out) {
    if (const json* v = raw(key)) read_list(*v, path(key), out, [&](const json& e, const std::string& p, int& x) {
      return read_int(e, p, x);
    });
  }
  void strings(const std::string& key, std::vector<std::string>& out) {
    if (const json* v = raw(key))
      read_list(*v, path(key), out, [&](const json& e, const std::string& p, std::string& x) {
        if (!e.is_string()) {
          ctx_.error(p, "expected string, got " + type_name(e));
          return false;
        }
        x = e.get<std::string>();
        return true;
      });
  }

  bool read_number(const json& v, const std::string& p, double& out) {
    if (!v.is_number()) {
      ctx_.error(p, "expected number, got " + type_name(v));
      return false;
    }
    out = v.get<double>();
    return true;
  }
  bool read_int(const json& v, const std::string& p, int& out) {
    if (!v.is_number_integer()) {
      ctx_.error(p, "expected integer, got " + type_name(v));
      return false;
    }
    const auto x = v.get<long long>();
    if (x < -2147483647LL || x > 2147483647LL) {
      ctx_.error(p, "integer out of range");
      return false;
    }
    out = static_cast<int>(x);
    return true;
  }
  /// A number or a [re, im] pair.
  bool read_complex(const json& v, const std::string& p, cplx& out) {
    if (v.is_number()) {
      out = {v.get<double>(), 0.0};
      return true;
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      out = {v[0].get<double>(), v[1].get<double>()};
      return true;
    }
    ctx_.error(p, "expected number or [re, im], got " + type_name(v));
    return false;
  }

  template <class T, class F>
  void read_list(const json& v, const std::string& p, std::vector<T>& out, F&& item) {
    if (!v.is_array()) {
      ctx_.error(p, "expected array, got " + type_name(v));
      return;
    }
    std::vector<T> parsed;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      T x{};
      ok = item(v[i], p + "[" + std::to_string(i) + "]", x) && ok;
      parsed.push_back(x);
    }
    if (ok) out = std::move(parsed);
  }

  /// Reports keys that were never read.
  void finish() {
    if (!node_) return;
    for (auto it = node_->begin(); it != node_->end(); ++it) {
      if (known_.count(it.key())) continue;
      std::string msg = "unknown key";
      std::string best;
      std::size_t best_d = 3;
      for (const auto& k : known_) {
        const std::size_t d = edit_distance(it.key(), k);
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      if (!best.empty()) msg += " (did you mean '" + path(best) + "'?)";
      if (ctx_.strict)
        ctx_.error(path(it.key()), msg);
      else
        ctx_.warnings.push_back(path(it.key()) + ": " + msg + ", ignored");
    }
  }

 private:
  Context& ctx_;
  const json* node_;
  std::string path_;
  std::set<std::string> known_;
};

const char* kind_name(InitialStateSpec::Kind k) {
  switch (k) {
    case InitialStateSpec::Kind::product: return "product";
    case InitialStateSpec::Kind::dark: return "dark";
    case InitialStateSpec::Kind::coherent: return "coherent";
    case InitialStateSpec::Kind::density: return "density";
  }
  return "dark";
}

const char* observable_name(Observable o) {
  switch (o) {
    case Observable::alpha: return "alpha";
    case Observable::dark_population: return "dark_population";
    case Observable::photon_population: return "photon_population";
    case Observable::exciton_number: return "exciton_number";
    case Observable::left_population: return "left_population";
    case Observable::right_population: return "right_population";
    case Observable::left_lowering: return "left_lowering";
  }
  return "alpha";
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

void parse_model(Section s, ModelParams& m) {
  s.integer("n_l", m.n_l);
  s.integer("n_r", m.n_r);
  s.number("epsilon", m.epsilon);
  s.number("omega_ph", m.omega_ph);
  s.number("g_l", m.g_l);
  s.number("g_r", m.g_r);
  s.integer("photon_cap", m.photon_cap);
  s.boolean("include_stark", m.include_stark);
  {
    Section st = s.child("stark");
    st.number("quantized", m.stark.quantized);
    st.number("left", m.stark.left);
    st.number("right", m.stark.right);
    st.finish();
  }
  std::string picture = m.picture == Picture::full ? "full" : "interaction";
  s.string("picture", picture);
  if (picture == "full")
    m.picture = Picture::full;
  else if (picture == "interaction")
    m.picture = Picture::interaction;
  else
    s.error(s.path("picture"), "must be 'full' or 'interaction' (got '" + picture + "')");
  s.finish();
}

void parse_schedule(Section s, ScheduleSpec& sc) {
  s.string("shape", sc.shape);
  s.number("total_time", sc.total_time);
  s.number("peak_coupling", sc.peak_coupling);
  s.number("width", sc.width);
  s.number("center_l", sc.center_l);
  s.number("center_r", sc.center_r);
  if (const json* t = s.raw("table")) {
    std::vector<CouplingSchedule::Knot> knots;
    s.read_list(*t, s.path("table"), knots,
                [&](const json& e, const std::string& p, CouplingSchedule::Knot& k) {
                  std::vector<double> row;
                  s.read_list(e, p, row, [&](const json& x, const std::string& q, double& d) {
                    return s.read_number(x, q, d);
                  });
                  if (row.size() != 3) {
                    s.error(p, "expected [t, g_l, g_r]");
                    return false;
                  }
                  k = {row[0], row[1], row[2]};
                  return true;
                });
    sc.table = std::move(knots);
    if (!s.has("total_time") && !sc.table.empty()) sc.total_time = sc.table.back().t;
  }
  s.finish();
}

void parse_initial(Section s, InitialStateSpec& in, Context& ctx) {
  std::string kind = kind_name(in.kind);
  s.string("kind", kind);
  if (kind == "product")
    in.kind = InitialStateSpec::Kind::product;
  else if (kind == "dark")
    in.kind = InitialStateSpec::Kind::dark;
  else if (kind == "coherent")
    in.kind = InitialStateSpec::Kind::coherent;
  else if (kind == "density")
    in.kind = InitialStateSpec::Kind::density;
  else
    ctx.error(s.path("kind"), "must be one of product, dark, coherent, density (got '" + kind + "')");

  const std::vector<std::pair<std::string, InitialStateSpec::Kind>> owners = {
      {"m_l", InitialStateSpec::Kind::product}, {"m_r", InitialStateSpec::Kind::product},
      {"n_ph", InitialStateSpec::Kind::product}, {"n", InitialStateSpec::Kind::dark},
      {"eta", InitialStateSpec::Kind::coherent}, {"rho", InitialStateSpec::Kind::density}};
  for (const auto& [key, owner] : owners)
    if (s.has(key) && owner != in.kind)
      ctx.error(s.path(key), std::string("not used by kind '") + kind_name(in.kind) + "'");

  s.integer("m_l", in.product.m_l);
  s.integer("m_r", in.product.m_r);
  s.integer("n_ph", in.product.n_ph);
  s.integer("n", in.n);
  s.number("eta", in.eta);
  if (const json* r = s.raw("rho")) {
    std::vector<std::vector<cplx>> rows;
    s.read_list(*r, s.path("rho"), rows,
                [&](const json& e, const std::string& p, std::vector<cplx>& row) {
                  bool ok = true;
                  s.read_list(e, p, row, [&](const json& x, const std::string& q, cplx& z) {
                    return ok = s.read_complex(x, q, z) && ok;
                  });
                  return ok && e.is_array();
                });
    const std::size_t n = rows.size();
    bool square = n > 0;
    for (const auto& row : rows) square = square && row.size() == n;
    if (!square) {
      ctx.error(s.path("rho"), "must be a nonempty square matrix");
    } else {
      in.rho.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          in.rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  s.finish();
}

void parse_run(Section s, RunSpec& r) {
  s.number("dt", r.dt);
  s.number("norm_tolerance", r.norm_tolerance);
  s.number("step_tolerance", r.step_tolerance);
  s.integer("max_refinement", r.max_refinement);
  s.integer("record_every", r.record_every);
  s.strings("observables", r.observables);
  s.integers("tracked_dark", r.tracked_dark);
  s.boolean("compensate_endpoint_phase", r.compensate_endpoint_phase);
  s.size("dimension_cap", r.dimension_cap);
  {
    Section t = s.child("thresholds");
    t.number("min_fidelity", r.thresholds.min_fidelity);
    t.number("max_photon", r.thresholds.max_photon);
    t.number("max_darkness", r.thresholds.max_darkness);
    t.number("max_deviation", r.thresholds.max_deviation);
    t.number("monotone_tolerance", r.thresholds.monotone_tolerance);
    t.number("normalization_tolerance", r.thresholds.normalization_tolerance);
    t.finish();
  }
  s.finish();
}

void check(Context& ctx, bool ok, const std::string& path, const std::string& msg) {
  if (!ok) ctx.error(path, msg);
}

void check_finite(Context& ctx, double v, const std::string& path) {
  check(ctx, std::isfinite(v), path, "must be finite");
}

void validate(const ExperimentConfig& c, Context& ctx) {
  const ModelParams& m = c.model;
  check(ctx, m.n_l >= 1, "model.n_l", "must be >= 1");
  check(ctx, m.n_r >= 1, "model.n_r", "must be >= 1");
  check(ctx, m.photon_cap >= 0, "model.photon_cap", "must be >= 0");
  check(ctx, m.g_l >= 0.0, "model.g_l", "must be >= 0");
  check(ctx, m.g_r >= 0.0, "model.g_r", "must be >= 0");
  check_finite(ctx, m.epsilon, "model.epsilon");
  check_finite(ctx, m.omega_ph, "model.omega_ph");
  check_finite(ctx, m.g_l, "model.g_l");
  check_finite(ctx, m.g_r, "model.g_r");
  check_finite(ctx, m.stark.quantized, "model.stark.quantized");
  check_finite(ctx, m.stark.left, "model.stark.left");
  check_finite(ctx, m.stark.right, "model.stark.right");
  const int n_min = std::min(m.n_l, m.n_r);
  const std::string n_min_text = "min(model.n_l = " + std::to_string(m.n_l) +
                                 ", model.n_r = " + std::to_string(m.n_r) + ")";

  const ScheduleSpec& s = c.schedule;
  bool shape_ok = true;
  try {
    CouplingSchedule::parse_shape(s.shape);
  } catch (const std::invalid_argument&) {
    shape_ok = false;
    ctx.error("schedule.shape", "unknown shape '" + s.shape +
                                    "' (constant, linear_ramp, trig_sweep, gaussian_pulses, "
                                    "piecewise_table)");
  }
  check(ctx, std::isfinite(s.total_time) && s.total_time > 0.0, "schedule.total_time",
        "must be finite and > 0");
  check(ctx, std::isfinite(s.peak_coupling) && s.peak_coupling >= 0.0, "schedule.peak_coupling",
        "must be finite and >= 0");
  if (s.width) check(ctx, std::isfinite(*s.width) && *s.width > 0.0, "schedule.width", "must be > 0");
  if (s.center_l) check_finite(ctx, *s.center_l, "schedule.center_l");
  if (s.center_r) check_finite(ctx, *s.center_r, "schedule.center_r");
  if (shape_ok && s.shape == "piecewise_table") {
    if (s.table.size() < 2) {
      ctx.error("schedule.table", "piecewise_table needs at least 2 knots");
    } else {
      check(ctx, s.table.front().t == 0.0, "schedule.table[0]", "first knot must be at t = 0");
      for (std::size_t i = 0; i < s.table.size(); ++i) {
        const auto& k = s.table[i];
        const std::string p = "schedule.table[" + std::to_string(i) + "]";
        check(ctx, std::isfinite(k.t) && std::isfinite(k.g_l) && std::isfinite(k.g_r), p,
              "must be finite");
        check(ctx, k.g_l >= 0.0 && k.g_r >= 0.0, p, "couplings must be >= 0");
        if (i > 0) check(ctx, k.t > s.table[i - 1].t, p, "knot times must increase");
      }
      check(ctx, s.total_time == s.table.back().t, "schedule.total_time",
            "must equal the last knot time of schedule.table");
    }
  } else if (!s.table.empty()) {
    ctx.error("schedule.table", "only used by shape 'piecewise_table'");
  }
  if (shape_ok && s.shape == "constant")
    check(ctx, m.g_l > 0.0 || m.g_r > 0.0, "schedule.shape",
          "constant schedule needs model.g_l or model.g_r > 0");

  const InitialStateSpec& in = c.initial_state;
  switch (in.kind) {
    case InitialStateSpec::Kind::product:
      check(ctx, in.product.m_l >= 0 && in.product.m_l <= m.n_l, "initial_state.m_l",
            "must lie in [0, model.n_l = " + std::to_string(m.n_l) + "]");
      check(ctx, in.product.m_r >= 0 && in.product.m_r <= m.n_r, "initial_state.m_r",
            "must lie in [0, model.n_r = " + std::to_string(m.n_r) + "]");
      check(ctx, in.product.n_ph >= 0 && in.product.n_ph <= m.photon_cap, "initial_state.n_ph",
            "must lie in [0, model.photon_cap = " + std::to_string(m.photon_cap) + "]");
      break;
    case InitialStateSpec::Kind::dark:
      check(ctx, in.n >= 0, "initial_state.n", "must be >= 0");
      check(ctx, in.n <= n_min, "initial_state.n",
            "value " + std::to_string(in.n) + " exceeds " + n_min_text);
      break;
    case InitialStateSpec::Kind::coherent:
      check(ctx, std::isfinite(in.eta) && in.eta >= 0.0, "initial_state.eta",
            "must be finite and >= 0");
      break;
    case InitialStateSpec::Kind::density:
      if (in.rho.rows() == 0) {
        ctx.error("initial_state.rho", "required for kind 'density'");
      } else {
        check(ctx, in.rho.allFinite(), "initial_state.rho", "must be finite");
        check(ctx, in.rho.rows() - 1 <= n_min, "initial_state.rho",
              "has n_max = " + std::to_string(in.rho.rows() - 1) + " exceeding " + n_min_text);
      }
      break;
  }

  const RunSpec& r = c.run;
  check(ctx, std::isfinite(r.dt) && r.dt >= 0.0, "run.dt", "must be finite and >= 0 (0 = automatic)");
  check(ctx, r.norm_tolerance > 0.0, "run.norm_tolerance", "must be > 0");
  check(ctx, r.step_tolerance > 0.0, "run.step_tolerance", "must be > 0");
  check(ctx, r.max_refinement >= 0, "run.max_refinement", "must be >= 0");
  check(ctx, r.record_every >= 1, "run.record_every", "must be >= 1");
  check(ctx, r.dimension_cap >= 1, "run.dimension_cap", "must be >= 1");
  for (std::size_t i = 0; i < r.observables.size(); ++i) {
    try {
      parse_observable(r.observables[i]);
    } catch (const std::invalid_argument& e) {
      ctx.error("run.observables[" + std::to_string(i) + "]", e.what());
    }
  }
  for (std::size_t i = 0; i < r.tracked_dark.size(); ++i)
    check(ctx, r.tracked_dark[i] >= 0, "run.tracked_dark[" + std::to_string(i) + "]", "must be >= 0");
  const Thresholds& t = r.thresholds;
  if (t.min_fidelity)
    check(ctx, *t.min_fidelity >= 0.0 && *t.min_fidelity <= 1.0, "run.thresholds.min_fidelity",
          "must lie in [0, 1]");
  if (t.max_photon) check(ctx, *t.max_photon >= 0.0, "run.thresholds.max_photon", "must be >= 0");
  if (t.max_darkness)
    check(ctx, *t.max_darkness >= 0.0, "run.thresholds.max_darkness", "must be >= 0");
  if (t.max_deviation)
    check(ctx, *t.max_deviation >= 0.0, "run.thresholds.max_deviation", "must be >= 0");
  if (t.monotone_tolerance)
    check(ctx, *t.monotone_tolerance >= 0.0, "run.thresholds.monotone_tolerance", "must be >= 0");
  check(ctx, t.normalization_tolerance > 0.0, "run.thresholds.normalization_tolerance",
        "must be > 0");

  check(ctx, !c.scan.total_times.empty(), "scan.total_times", "must not be empty");
  for (std::size_t i = 0; i < c.scan.total_times.size(); ++i)
    check(ctx, std::isfinite(c.scan.total_times[i]) && c.scan.total_times[i] > 0.0,
          "scan.total_times[" + std::to_string(i) + "]", "must be finite and > 0");
  check(ctx, c.scan.n >= 0 && c.scan.n <= n_min, "scan.n",
        "value " + std::to_string(c.scan.n) + " must lie in [0, " + n_min_text + "]");
  check(ctx, c.scan.target_fidelity > 0.0 && c.scan.target_fidelity <= 1.0, "scan.target_fidelity",
        "must lie in (0, 1]");

  for (std::size_t i = 0; i < c.darkcheck.n_atoms.size(); ++i)
    check(ctx, c.darkcheck.n_atoms[i] >= 1, "darkcheck.n_atoms[" + std::to_string(i) + "]",
          "must be >= 1");
  for (std::size_t i = 0; i < c.darkcheck.n.size(); ++i)
    check(ctx, c.darkcheck.n[i] >= 0, "darkcheck.n[" + std::to_string(i) + "]", "must be >= 0");
  for (std::size_t i = 0; i < c.darkcheck.alpha.size(); ++i)
    check(ctx, c.darkcheck.alpha[i] >= 0.0 && c.darkcheck.alpha[i] <= std::numbers::pi / 2,
          "darkcheck.alpha[" + std::to_string(i) + "]", "must lie in [0, pi/2]");
  check(ctx, c.darkcheck.random_alphas >= 0, "darkcheck.random_alphas", "must be >= 0");

  const AnalyticSpec& a = c.analytic;
  for (auto [v, p] : {std::pair{a.omega, "analytic.omega"}, {a.epsilon, "analytic.epsilon"},
                      {a.alpha, "analytic.alpha"}})
    check_finite(ctx, v, p);
  check(ctx, std::isfinite(a.g) && a.g >= 0.0, "analytic.g", "must be finite and >= 0");
  check(ctx, std::isfinite(a.t_max) && a.t_max >= 0.0, "analytic.t_max", "must be finite and >= 0");
  check(ctx, a.samples >= 2, "analytic.samples", "must be >= 2");

  const BosonicCheckSpec& b = c.bosonic_check;
  check(ctx, std::isfinite(b.eta) && b.eta >= 0.0, "bosonic_check.eta", "must be finite and >= 0");
  check(ctx, b.fock_cap >= 0, "bosonic_check.fock_cap", "must be >= 0");
  for (std::size_t i = 0; i < b.n_atoms.size(); ++i)
    check(ctx, b.n_atoms[i] >= 1, "bosonic_check.n_atoms[" + std::to_string(i) + "]", "must be >= 1");
  check(ctx, std::isfinite(b.t_max) && b.t_max >= 0.0, "bosonic_check.t_max",
        "must be finite and >= 0");
  check(ctx, b.samples >= 2, "bosonic_check.samples", "must be >= 2");

  const RamanSpec& rs = c.raman;
  check(ctx, std::isfinite(rs.params.detuning) && rs.params.detuning != 0.0, "raman.detuning",
        "must be finite and nonzero; the adiabatic elimination needs a detuned auxiliary level");
  check(ctx, std::isfinite(rs.duration) && rs.duration > 0.0, "raman.duration",
        "must be finite and > 0");
  check(ctx, std::isfinite(rs.dt) && rs.dt > 0.0, "raman.dt", "must be finite and > 0");
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error("invalid configuration:\n" + join_lines(errors)),
      errors_(std::move(errors)) {}

Observable parse_observable(const std::string& name) {
  for (Observable o : {Observable::alpha, Observable::dark_population, Observable::photon_population,
                       Observable::exciton_number, Observable::left_population,
                       Observable::right_population, Observable::left_lowering})
    if (name == observable_name(o)) return o;
  throw std::invalid_argument("unknown observable '" + name + "'");
}

CouplingSchedule ScheduleSpec::build(const ModelParams& model) const {
  switch (CouplingSchedule::parse_shape(shape)) {
    case CouplingSchedule::Shape::constant:
      return CouplingSchedule::constant(total_time, model.g_l, model.g_r);
    case CouplingSchedule::Shape::linear_ramp:
      return CouplingSchedule::linear_ramp(total_time, peak_coupling);
    case CouplingSchedule::Shape::trig_sweep:
      return CouplingSchedule::trig_sweep(total_time, peak_coupling);
    case CouplingSchedule::Shape::gaussian_pulses:
      return CouplingSchedule::gaussian_pulses(
          total_time, peak_coupling,
          {width.value_or(total_time / 6.0), center_l.value_or(0.6 * total_time),
           center_r.value_or(0.4 * total_time)});
    case CouplingSchedule::Shape::piecewise_table:
      return CouplingSchedule::piecewise_table(table);
  }
  throw std::logic_error("unhandled schedule shape");
}

EvolveOptions RunSpec::evolve_options() const {
  EvolveOptions o;
  o.dt = dt;
  o.norm_tolerance = norm_tolerance;
  o.step_tolerance = step_tolerance;
  o.max_refinement = max_refinement;
  o.record_every = record_every;
  for (const auto& name : observables) o.observables.push_back(parse_observable(name));
  o.tracked_dark = tracked_dark;
  return o;
}

ExperimentConfig parse_config(const std::string& text, bool strict) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("<input>: malformed JSON: ") + e.what()});
  }

  Context ctx;
  ctx.strict = strict;
  ExperimentConfig c;
  Section top(ctx, &root, "");
  parse_model(top.child("model"), c.model);
  parse_schedule(top.child("schedule"), c.schedule);
  parse_initial(top.child("initial_state"), c.initial_state, ctx);
  parse_run(top.child("run"), c.run);
  {
    Section s = top.child("scan");
    s.numbers("total_times", c.scan.total_times);
    s.integer("n", c.scan.n);
    s.number("target_fidelity", c.scan.target_fidelity);
    s.finish();
  }
  {
    Section s = top.child("darkcheck");
    s.integers("n_atoms", c.darkcheck.n_atoms);
    s.integers("n", c.darkcheck.n);
    s.numbers("alpha", c.darkcheck.alpha);
    s.integer("random_alphas", c.darkcheck.random_alphas);
    s.finish();
  }
  {
    Section s = top.child("analytic");
    s.number("omega", c.analytic.omega);
    s.number("epsilon", c.analytic.epsilon);
    s.number("g", c.analytic.g);
    s.number("alpha", c.analytic.alpha);
    s.number("t_max", c.analytic.t_max);
    s.integer("samples", c.analytic.samples);
    s.finish();
  }
  {
    Section s = top.child("bosonic_check");
    s.number("eta", c.bosonic_check.eta);
    s.integer("fock_cap", c.bosonic_check.fock_cap);
    s.integers("n_atoms", c.bosonic_check.n_atoms);
    s.number("t_max", c.bosonic_check.t_max);
    s.integer("samples", c.bosonic_check.samples);
    s.finish();
  }
  {
    Section s = top.child("raman");
    s.complex("omega_quantized", c.raman.params.omega_quantized);
    s.complex("omega_left", c.raman.params.omega_left);
    s.complex("omega_right", c.raman.params.omega_right);
    s.number("detuning", c.raman.params.detuning);
    s.number("omega_atomic", c.raman.params.omega_atomic);
    std::string side = to_string(c.raman.side);
    s.string("side", side);
    if (side == "left")
      c.raman.side = Side::left;
    else if (side == "right")
      c.raman.side = Side::right;
    else
      ctx.error("raman.side", "must be 'left' or 'right' (got '" + side + "')");
    s.number("duration", c.raman.duration);
    s.number("dt", c.raman.dt);
    s.finish();
  }
  if (const json* seed = top.raw("seed")) {
    if (!seed->is_number_unsigned())
      ctx.error("seed", "expected nonnegative integer, got " + type_name(*seed));
    else
      c.seed = seed->get<std::uint64_t>();
  }
  top.finish();

  // Cross-field rules only make sense once every field has its type.
  if (ctx.errors.empty()) validate(c, ctx);
  if (!ctx.errors.empty()) throw ConfigError(std::move(ctx.errors));
  c.warnings = std::move(ctx.warnings);
  return c;
}

ExperimentConfig parse_config_file(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open config file"});
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str(), strict);
  } catch (const ConfigError& e) {
    std::vector<std::string> errs;
    for (const auto& msg : e.errors()) errs.push_back(path + ": " + msg);
    throw ConfigError(std::move(errs));
  }
}

json to_json(const ExperimentConfig& c) {
  json j;
  const ModelParams& m = c.model;
  j["model"] = {{"n_l", m.n_l},
                {"n_r", m.n_r},
                {"epsilon", m.epsilon},
                {"omega_ph", m.omega_ph},
                {"g_l", m.g_l},
                {"g_r", m.g_r},
                {"photon_cap", m.photon_cap},
                {"include_stark", m.include_stark},
                {"stark", {{"quantized", m.stark.quantized}, {"left", m.stark.left}, {"right", m.stark.right}}},
                {"picture", m.picture == Picture::full ? "full" : "interaction"}};

  const ScheduleSpec& s = c.schedule;
  json sched = {{"shape", s.shape}, {"total_time", s.total_time}, {"peak_coupling", s.peak_coupling}};
  if (s.width) sched["width"] = *s.width;
  if (s.center_l) sched["center_l"] = *s.center_l;
  if (s.center_r) sched["center_r"] = *s.center_r;
  if (!s.table.empty()) {
    json table = json::array();
    for (const auto& k : s.table) table.push_back({k.t, k.g_l, k.g_r});
    sched["table"] = table;
  }
  j["schedule"] = sched;

  const InitialStateSpec& in = c.initial_state;
  json init = {{"kind", kind_name(in.kind)}};
  switch (in.kind) {
    case InitialStateSpec::Kind::product:
      init["m_l"] = in.product.m_l;
      init["m_r"] = in.product.m_r;
      init["n_ph"] = in.product.n_ph;
      break;
    case InitialStateSpec::Kind::dark: init["n"] = in.n; break;
    case InitialStateSpec::Kind::coherent: init["eta"] = in.eta; break;
    case InitialStateSpec::Kind::density: {
      json rho = json::array();
      for (Eigen::Index r = 0; r < in.rho.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index k = 0; k < in.rho.cols(); ++k) row.push_back(complex_json(in.rho(r, k)));
        rho.push_back(row);
      }
      init["rho"] = rho;
      break;
    }
  }
  j["initial_state"] = init;

  const RunSpec& r = c.run;
  json thr = {{"normalization_tolerance", r.thresholds.normalization_tolerance}};
  if (r.thresholds.min_fidelity) thr["min_fidelity"] = *r.thresholds.min_fidelity;
  if (r.thresholds.max_photon) thr["max_photon"] = *r.thresholds.max_photon;
  if (r.thresholds.max_darkness) thr["max_darkness"] = *r.thresholds.max_darkness;
  if (r.thresholds.max_deviation) thr["max_deviation"] = *r.thresholds.max_deviation;
  if (r.thresholds.monotone_tolerance) thr["monotone_tolerance"] = *r.thresholds.monotone_tolerance;
  j["run"] = {{"dt", r.dt},
              {"norm_tolerance", r.norm_tolerance},
              {"step_tolerance", r.step_tolerance},
              {"max_refinement", r.max_refinement},
              {"record_every", r.record_every},
              {"observables", r.observables},
              {"tracked_dark", r.tracked_dark},
              {"compensate_endpoint_phase", r.compensate_endpoint_phase},
              {"dimension_cap", r.dimension_cap},
              {"thresholds", thr}};

  j["scan"] = {{"total_times", c.scan.total_times},
               {"n", c.scan.n},
               {"target_fidelity", c.scan.target_fidelity}};
  j["darkcheck"] = {{"n_atoms", c.darkcheck.n_atoms},
                    {"n", c.darkcheck.n},
                    {"alpha", c.darkcheck.alpha},
                    {"random_alphas", c.darkcheck.random_alphas}};
  j["analytic"] = {{"omega", c.analytic.omega},   {"epsilon", c.analytic.epsilon},
                   {"g", c.analytic.g},           {"alpha", c.analytic.alpha},
                   {"t_max", c.analytic.t_max},   {"samples", c.analytic.samples}};
  j["bosonic_check"] = {{"eta", c.bosonic_check.eta},
                        {"fock_cap", c.bosonic_check.fock_cap},
                        {"n_atoms", c.bosonic_check.n_atoms},
                        {"t_max", c.bosonic_check.t_max},
                        {"samples", c.bosonic_check.samples}};
  j["raman"] = {{"omega_quantized", complex_json(c.raman.params.omega_quantized)},
                {"omega_left", complex_json(c.raman.params.omega_left)},
                {"omega_right", complex_json(c.raman.params.omega_right)},
                {"detuning", c.raman.params.detuning},
                {"omega_atomic", c.raman.params.omega_atomic},
                {"side", to_string(c.raman.side)},
                {"duration", c.raman.duration},
                {"dt", c.raman.dt}};
  j["seed"] = c.seed;
  return j;
}

}  // namespace qet
