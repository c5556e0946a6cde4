#include "commands.hpp"

#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "presets.hpp"

namespace giantatom::cli {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::string> kTrajectoryColumns = {"gamma_t", "re_ca", "im_ca", "re_cb", "im_cb", "concurrence"};
const std::vector<std::string> kSteadyColumns = {"dde_concurrence", "final_value", "closed_form"};
const std::vector<std::string> kParameterColumns = {"panel", "config", "init", "theta0", "delay", "delta", "phi"};

Cell optional_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

std::size_t sample_stride(double sample_dt, double step) {
  if (sample_dt <= 0.0) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(sample_dt / step)));
}

std::vector<std::vector<Cell>> trajectory_rows(const Trajectory& traj, double sample_dt) {
  std::vector<std::vector<Cell>> rows;
  const std::size_t stride = sample_stride(sample_dt, traj.step);
  for (std::size_t n = 0; n < traj.size(); n += stride) {
    const AmplitudePair& a = traj.amplitudes[n];
    rows.push_back({traj.times[n], a.a.real(), a.a.imag(), a.b.real(), a.b.imag(), concurrence(a)});
  }
  return rows;
}

std::vector<Cell> parameter_cells(const SweepPoint& p) {
  return {p.panel,
          std::string(to_string(p.params.config)),
          std::string(to_string(p.init)),
          p.params.theta0,
          format_delay(p.params.delay),
          p.params.detuning,
          p.params.phi};
}

std::vector<SweepPoint> axis_points(const RunSpec& spec) {
  std::vector<SweepPoint> points;
  for (double v : spec.sweep->values()) {
    SweepPoint p{"sweep", spec.params, spec.init};
    switch (spec.sweep->parameter) {
      case SweepParameter::Theta0:
        p.params.theta0 = v;
        break;
      case SweepParameter::Delay:
        p.params.delay = Delay::finite(v);
        break;
      case SweepParameter::Delta:
        p.params.detuning = v;
        break;
      case SweepParameter::Phi:
        p.params.phi = v;
        p.init = InitKind::Phase;
        break;
    }
    points.push_back(std::move(p));
  }
  return points;
}

std::string phase_label(PhaseClass cls) { return std::string(to_string(cls)); }

}  // namespace

Table simulate_table(const RunSpec& spec) {
  spec.validate();
  const DelayKernel kernel = derive_kernel(layout_for(spec.params.config));
  const Trajectory traj = integrate(spec.params, kernel, spec.initial_state(), spec.t_max, spec.steps_per_delay);
  return {kTrajectoryColumns, trajectory_rows(traj, spec.sample_dt)};
}

SteadyValues evaluate_steady(const SystemParams& params, const InitialState& init, int steps_per_delay,
                             double steady_time) {
  const DelayKernel kernel = derive_kernel(layout_for(params.config));
  SteadyValues out;
  out.dde = concurrence(integrate(params, kernel, init, steady_time, steps_per_delay).back());
  if (!params.delay.is_infinite()) {
    const FinalValue fv = steady_state_numeric(kernel, params, init);
    if (fv.settles()) out.final_value = *fv.concurrence;
  }
  try {
    out.closed_form = steady_state_closed(params, init).value;
  } catch (const NoClosedForm&) {
  }
  return out;
}

Table sweep_table(const RunSpec& spec) {
  spec.validate();
  std::vector<SweepPoint> points;
  SweepKind kind = spec.kind;
  double t_max = spec.t_max;
  double sample_dt = spec.sample_dt;
  if (spec.preset) {
    Preset preset = make_preset(*spec.preset);
    points = std::move(preset.points);
    kind = preset.kind;
    t_max = preset.t_max;
    sample_dt = preset.sample_dt;
  } else if (spec.sweep) {
    points = axis_points(spec);
  } else {
    throw ValidationError("sweep needs --preset or --param/--from/--to/--count");
  }

  Table table;
  table.columns = kParameterColumns;
  const auto& extra = kind == SweepKind::Steady ? kSteadyColumns : kTrajectoryColumns;
  table.columns.insert(table.columns.end(), extra.begin(), extra.end());

  const int spd = spec.steps_per_delay;
  auto blocks = parallel_map(points.size(), [&](std::size_t i) {
    const SweepPoint& p = points[i];
    const InitialState init = make_initial_state(p.init, p.params.phi);
    const std::vector<Cell> prefix = parameter_cells(p);
    std::vector<std::vector<Cell>> rows;
    if (kind == SweepKind::Steady) {
      const SteadyValues v = evaluate_steady(p.params, init, spd);
      std::vector<Cell> row = prefix;
      row.insert(row.end(), {v.dde, optional_cell(v.final_value), optional_cell(v.closed_form)});
      rows.push_back(std::move(row));
    } else {
      const DelayKernel kernel = derive_kernel(layout_for(p.params.config));
      for (auto& r : trajectory_rows(integrate(p.params, kernel, init, t_max, spd), sample_dt)) {
        std::vector<Cell> row = prefix;
        row.insert(row.end(), r.begin(), r.end());
        rows.push_back(std::move(row));
      }
    }
    return rows;
  });
  for (auto& block : blocks) {
    for (auto& row : block) table.rows.push_back(std::move(row));
  }
  return table;
}

CheckResult table1(const Table1Options& options) {
  struct Cellspec {
    Configuration config;
    InitKind init;
    double theta0;
    double delay;
  };
  std::vector<Cellspec> cells;
  for (Configuration config : {Configuration::Separate, Configuration::Braided, Configuration::Nested}) {
    for (InitKind init : {InitKind::Plus, InitKind::Minus}) {
      for (double theta0 : {0.0, 0.5 * kPi, kPi}) {
        cells.push_back({config, init, theta0, 0.0});
        for (double td : options.delays) cells.push_back({config, init, theta0, td});
      }
    }
  }

  struct Computed {
    std::vector<Cell> row;
    bool breach = false;
  };
  auto computed = parallel_map(cells.size(), [&](std::size_t i) {
    const Cellspec& c = cells[i];
    SystemParams params;
    params.config = c.config;
    params.theta0 = c.theta0;
    params.delay = Delay::finite(c.delay);
    const InitialState init = make_initial_state(c.init, 0.0);
    const DelayKernel kernel = derive_kernel(layout_for(c.config));

    std::optional<double> closed;
    std::optional<double> final_value;
    double dde = 0.0;
    double tolerance = 0.0;
    std::string quantity;
    if (c.delay == 0.0) {
      quantity = "C(t=" + format_double(options.markov_time) + ")";
      tolerance = options.markov_tolerance;
      closed = markovian_closed_form(params, init, options.markov_time).concurrence;
      dde = concurrence(integrate(params, kernel, init, options.markov_time, options.steps_per_delay).back());
    } else {
      quantity = "C(inf)";
      tolerance = options.steady_tolerance;
      const SteadyValues v = evaluate_steady(params, init, options.steps_per_delay, options.steady_time);
      closed = v.closed_form;
      final_value = v.final_value;
      dde = v.dde;
    }

    double diff = 0.0;
    const std::optional<double> values[] = {closed, final_value, dde};
    for (const auto& x : values) {
      for (const auto& y : values) {
        if (x && y) diff = std::max(diff, std::abs(*x - *y));
      }
    }
    // A cell without its closed form cannot be checked.
    const bool breach = !closed || diff > tolerance;
    Computed out;
    out.breach = breach;
    out.row = {std::string(to_string(c.config)),
               std::string(to_string(c.init)),
               phase_label(classify_phase(c.theta0)),
               c.theta0,
               c.delay,
               quantity,
               optional_cell(closed),
               optional_cell(final_value),
               dde,
               diff,
               tolerance,
               std::string(breach ? "breach" : "ok")};
    return out;
  });

  CheckResult result;
  result.table.columns = {"config",      "init", "theta_class", "theta0",       "delay",     "quantity",
                          "closed_form", "final_value", "dde", "max_abs_diff", "tolerance", "status"};
  for (auto& c : computed) {
    result.breach = result.breach || c.breach;
    result.table.rows.push_back(std::move(c.row));
  }
  return result;
}

CheckResult oracle_check(const RunSpec& spec, const OracleCheckLimits& limits) {
  spec.validate();
  if (spec.params.delay.is_infinite()) throw ValidationError("oracle-check needs a finite delay");
  spec.grid.validate();
  if (spec.t_max >= 0.5 * spec.grid.recurrence_time()) {
    throw ValidationError("--tmax must stay below half the mode recurrence time " +
                          format_double(spec.grid.recurrence_time()));
  }

  CheckResult result;
  result.table.columns = {"metric", "value", "limit", "status"};
  auto add = [&](std::string metric, const std::optional<double>& value, double limit, bool ok,
                 std::string note = {}) {
    result.breach = result.breach || !ok;
    std::vector<Cell> row = {std::move(metric), optional_cell(value), limit,
                             std::string(ok ? "ok" : (note.empty() ? "breach" : "breach: " + note))};
    result.table.rows.push_back(std::move(row));
  };

  try {
    const double gamma = calibrate(spec.grid);
    add("calibration_relative_error", std::abs(gamma - SystemParams::gamma), limits.calibration,
        std::abs(gamma - SystemParams::gamma) <= limits.calibration);
  } catch (const OracleError& e) {
    add("calibration_relative_error", std::nullopt, limits.calibration, false, e.what());
  }

  try {
    const OracleComparison cmp =
        compare_with_dde(spec.params, spec.grid, spec.initial_state(), spec.t_max, spec.steps_per_delay);
    add("max_norm_drift", cmp.max_norm_drift, limits.norm_drift, cmp.max_norm_drift <= limits.norm_drift);
    add("max_abs_concurrence_difference", cmp.max_abs_dc, limits.concurrence, cmp.max_abs_dc < limits.concurrence);
    add("time_of_max_difference", cmp.at_time, spec.t_max, true);
  } catch (const OracleError& e) {
    add("max_norm_drift", std::nullopt, limits.norm_drift, false, e.what());
  }
  return result;
}

}  // namespace giantatom::cli
