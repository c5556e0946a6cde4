#include "app.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "commands.hpp"
#include "presets.hpp"

namespace giantatom::cli {

namespace {

struct RawOptions {
  std::string config = "separate";
  std::string theta0 = "0";
  std::string delay = "0";
  double delta = 0.0;
  std::string phi = "0";
  std::string init = "plus";
  double t_max = 10.0;
  int steps_per_delay = kDefaultStepsPerDelay;
  std::string output;
  std::string format = "csv";
  double sample_dt = 0.0;
  std::string param;
  std::string from;
  std::string to;
  int count = 0;
  std::string preset;
  std::string kind = "steady";
  int n_modes = ModeGrid{}.n_modes;
  double half_width = ModeGrid{}.half_width;
  std::vector<double> delays = Table1Options{}.delays;
};

void add_system_options(CLI::App& cmd, RawOptions& o) {
  cmd.add_option("--config", o.config, "separate | braided | nested")->capture_default_str();
  cmd.add_option("--theta0", o.theta0, "phase shift k0 d, radians or multiples of pi (e.g. 0.5pi)")
      ->capture_default_str();
  cmd.add_option("--delay", o.delay, "gamma t_d, or inf")->capture_default_str();
  cmd.add_option("--delta", o.delta, "detuning (omega_a - omega_b) / (2 gamma)")->capture_default_str();
  cmd.add_option("--phi", o.phi, "relative phase of the phase initial state")->capture_default_str();
  cmd.add_option("--init", o.init, "plus | minus | phase")->capture_default_str();
  cmd.add_option("--tmax", o.t_max, "final gamma t")->capture_default_str();
  cmd.add_option("--steps-per-delay", o.steps_per_delay, "integration steps per t_d")->capture_default_str();
}

void add_output_options(CLI::App& cmd, RawOptions& o) {
  cmd.add_option("-o,--output", o.output, "output file (default stdout)");
  cmd.add_option("--format", o.format, "csv | json")->capture_default_str();
}

RunSpec build_spec(const RawOptions& o) {
  RunSpec spec;
  const auto config = parse_configuration(o.config);
  if (!config) throw ValidationError("unknown configuration '" + o.config + "' (separate, braided, nested)");
  spec.params.config = *config;
  spec.params.theta0 = parse_angle(o.theta0);
  spec.params.delay = parse_delay(o.delay);
  spec.params.detuning = o.delta;
  spec.params.phi = parse_angle(o.phi);
  spec.init = parse_init(o.init);
  spec.t_max = o.t_max;
  spec.steps_per_delay = o.steps_per_delay;
  spec.output = o.output;
  spec.format = parse_format(o.format);
  spec.sample_dt = o.sample_dt;
  spec.kind = parse_kind(o.kind);
  spec.grid.n_modes = o.n_modes;
  spec.grid.half_width = o.half_width;
  if (!o.preset.empty()) spec.preset = o.preset;
  if (!o.param.empty()) {
    if (o.from.empty() || o.to.empty() || o.count == 0) {
      throw ValidationError("--param needs --from, --to and --count");
    }
    SweepAxis axis;
    axis.parameter = parse_sweep_parameter(o.param);
    const bool angle = axis.parameter == SweepParameter::Theta0 || axis.parameter == SweepParameter::Phi;
    auto bound = [&](const std::string& text) {
      if (angle) return parse_angle(text);
      if (axis.parameter == SweepParameter::Delay) {
        const Delay d = parse_delay(text);
        if (d.is_infinite()) throw ValidationError("delay sweep bounds must be finite");
        return d.value();
      }
      return parse_real(text);
    };
    axis.from = bound(o.from);
    axis.to = bound(o.to);
    axis.count = o.count;
    spec.sweep = axis;
  }
  spec.validate();
  return spec;
}

nlohmann::ordered_json meta(std::string_view command, const RunSpec& spec) {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["spec"] = to_json(spec);
  return m;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two giant atoms in a waveguide: delay-equation dynamics and entanglement"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RawOptions o;
  auto* simulate = app.add_subcommand("simulate", "integrate one trajectory");
  add_system_options(*simulate, o);
  add_output_options(*simulate, o);
  simulate->add_option("--sample-dt", o.sample_dt, "report spacing in gamma t (0: every step)");

  auto* sweep = app.add_subcommand("sweep", "parameter sweep or figure preset");
  add_system_options(*sweep, o);
  add_output_options(*sweep, o);
  sweep->add_option("--param", o.param, "theta0 | delay | delta | phi");
  sweep->add_option("--from", o.from, "first value");
  sweep->add_option("--to", o.to, "last value");
  sweep->add_option("--count", o.count, "number of points (>= 2)");
  std::string preset_help = "figure preset:";
  for (auto name : preset_names()) preset_help += " " + std::string(name);
  sweep->add_option("--preset", o.preset, preset_help);
  sweep->add_option("--kind", o.kind, "steady | trajectory (ignored with --preset)")->capture_default_str();
  sweep->add_option("--sample-dt", o.sample_dt, "report spacing of trajectory sweeps");

  auto* table = app.add_subcommand("table1", "closed forms vs final-value theorem vs long-time integration");
  add_output_options(*table, o);
  table->add_option("--delays", o.delays, "positive delays for the steady-state rows")->capture_default_str();
  table->add_option("--steps-per-delay", o.steps_per_delay, "integration steps per t_d")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle-check", "compare against the discretized-mode oracle");
  add_system_options(*oracle, o);
  add_output_options(*oracle, o);
  oracle->add_option("--modes", o.n_modes, "modes per direction (odd)")->capture_default_str();
  oracle->add_option("--window", o.half_width, "half width W of the mode window in gamma")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (simulate->parsed()) {
      const RunSpec spec = build_spec(o);
      emit(simulate_table(spec), spec.format, spec.output, meta("simulate", spec), out);
      return kExitOk;
    }
    if (sweep->parsed()) {
      const RunSpec spec = build_spec(o);
      emit(sweep_table(spec), spec.format, spec.output, meta("sweep", spec), out);
      return kExitOk;
    }
    if (table->parsed()) {
      Table1Options options;
      options.delays = o.delays;
      options.steps_per_delay = o.steps_per_delay;
      for (double td : options.delays) {
        if (!(td > 0.0) || !std::isfinite(td)) throw ValidationError("--delays must be positive and finite");
      }
      if (options.steps_per_delay <= 0) throw ValidationError("--steps-per-delay must be positive");
      const CheckResult r = table1(options);
      nlohmann::ordered_json m;
      m["command"] = "table1";
      m["version"] = kVersion;
      m["delays"] = options.delays;
      m["steps_per_delay"] = options.steps_per_delay;
      emit(r.table, parse_format(o.format), o.output, m, out);
      if (r.breach) err << "table1: at least one cell exceeds its tolerance\n";
      return r.breach ? kExitBreach : kExitOk;
    }
    if (oracle->parsed()) {
      const RunSpec spec = build_spec(o);
      const CheckResult r = oracle_check(spec);
      emit(r.table, spec.format, spec.output, meta("oracle-check", spec), out);
      if (r.breach) err << "oracle-check: tolerance breach\n";
      return r.breach ? kExitBreach : kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace giantatom::cli
