#pragma once

#include <optional>
#include <vector>

#include "run_spec.hpp"
#include "table.hpp"

namespace giantatom::cli {

Table simulate_table(const RunSpec& spec);

/// Rows come from the preset when one is named, otherwise from the sweep axis.
Table sweep_table(const RunSpec& spec);

struct SteadyValues {
  double dde = 0.0;
  std::optional<double> final_value;
  std::optional<double> closed_form;
};

SteadyValues evaluate_steady(const SystemParams& params, const InitialState& init, int steps_per_delay,
                             double steady_time = kDefaultSteadyTime);

struct Table1Options {
  std::vector<double> delays = {0.2, 0.5, 0.8, 1.0};
  double markov_time = 0.25;
  double steady_time = kDefaultSteadyTime;
  int steps_per_delay = kDefaultStepsPerDelay;
  double markov_tolerance = 1e-6;
  double steady_tolerance = 1e-3;
};

struct CheckResult {
  Table table;
  bool breach = false;
};

CheckResult table1(const Table1Options& options);

struct OracleCheckLimits {
  double calibration = 0.02;
  double norm_drift = kMaxNormDrift;
  double concurrence = 1e-2;
};

/// Calibration, norm drift and oracle-vs-DDE concurrence for the spec's
/// parameters. Throws std::invalid_argument for an infinite delay.
CheckResult oracle_check(const RunSpec& spec, const OracleCheckLimits& limits = {});

}  // namespace giantatom::cli
