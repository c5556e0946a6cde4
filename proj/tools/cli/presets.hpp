#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "run_spec.hpp"

namespace giantatom::cli {

struct SweepPoint {
  std::string panel;
  SystemParams params;
  InitKind init = InitKind::Plus;
};

/// Parameter grid behind one figure.
struct Preset {
  std::string name;
  SweepKind kind = SweepKind::Trajectory;
  double t_max = 10.0;
  double sample_dt = 0.05;
  std::vector<SweepPoint> points;
};

std::vector<std::string_view> preset_names();
/// Throws ValidationError for an unknown name.
Preset make_preset(std::string_view name);

std::vector<double> linspace(double from, double to, int count);

}  // namespace giantatom::cli
