#include "presets.hpp"

#include <numbers>

namespace giantatom::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kThetaPoints = 81;  // theta0 in [0, 4 pi]
constexpr int kDelayPoints = 41;  // gamma t_d in [0, 2]
constexpr double kDelayMax = 2.0;

SystemParams base(Configuration config, double theta0, Delay delay, double delta = 0.0, double phi = 0.0) {
  SystemParams p;
  p.config = config;
  p.theta0 = theta0;
  p.delay = delay;
  p.detuning = delta;
  p.phi = phi;
  return p;
}

// theta0 surfaces at gamma t_d = 0, 0.8 and infinity; left column |+>, right |->.
void theta_surfaces(Preset& out, Configuration config, const std::vector<InitKind>& inits) {
  const Delay delays[] = {Delay::finite(0.0), Delay::finite(0.8), Delay::infinite()};
  const char* panels[3][2] = {{"a", "b"}, {"c", "d"}, {"e", "f"}};
  for (int d = 0; d < 3; ++d) {
    for (std::size_t s = 0; s < inits.size(); ++s) {
      const char* panel = inits.size() == 1 ? panels[d][0] : panels[d][s];
      for (double theta : linspace(0.0, 4.0 * kPi, kThetaPoints)) {
        out.points.push_back({panel, base(config, theta, delays[d]), inits[s]});
      }
    }
  }
}

// Delay surfaces at theta0 = 0, pi/2 and pi.
void delay_surfaces(Preset& out, Configuration config, const std::vector<InitKind>& inits,
                    const std::vector<std::string>& panels) {
  const double thetas[] = {0.0, 0.5 * kPi, kPi};
  std::size_t label = 0;
  for (double theta : thetas) {
    for (InitKind init : inits) {
      const std::string& panel = panels[label++];
      for (double td : linspace(0.0, kDelayMax, kDelayPoints)) {
        out.points.push_back({panel, base(config, theta, Delay::finite(td)), init});
      }
    }
  }
}

// Steady-state curves against the delay for the branches with a surviving
// subradiant component.
void steady_curves(Preset& out, Configuration config) {
  out.kind = SweepKind::Steady;
  const std::pair<double, InitKind> branches[] = {
      {kPi, InitKind::Plus}, {kPi, InitKind::Minus}, {0.0, InitKind::Minus}};
  for (const auto& [theta, init] : branches) {
    for (double td : linspace(0.0, kDelayMax, kDelayPoints)) {
      out.points.push_back({"g", base(config, theta, Delay::finite(td)), init});
    }
  }
}

}  // namespace

std::vector<double> linspace(double from, double to, int count) {
  SweepAxis axis;
  axis.from = from;
  axis.to = to;
  axis.count = count;
  return axis.values();
}

std::vector<std::string_view> preset_names() {
  return {"fig2", "fig3", "fig3g", "fig4", "fig5", "fig5g", "fig6", "fig7"};
}

Preset make_preset(std::string_view name) {
  Preset p;
  p.name = std::string(name);
  const std::vector<InitKind> both = {InitKind::Plus, InitKind::Minus};
  if (name == "fig2") {
    theta_surfaces(p, Configuration::Separate, both);
  } else if (name == "fig3") {
    delay_surfaces(p, Configuration::Separate, both, {"a", "b", "c", "d", "e", "f"});
  } else if (name == "fig3g") {
    steady_curves(p, Configuration::Separate);
  } else if (name == "fig4") {
    theta_surfaces(p, Configuration::Braided, {InitKind::Minus});
    delay_surfaces(p, Configuration::Braided, {InitKind::Minus}, {"b", "d", "f"});
  } else if (name == "fig5") {
    theta_surfaces(p, Configuration::Nested, both);
  } else if (name == "fig5g") {
    steady_curves(p, Configuration::Nested);
  } else if (name == "fig6") {
    const Delay td = Delay::finite(0.03);
    for (double delta : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      p.points.push_back({"a", base(Configuration::Separate, kPi, td, delta), InitKind::Minus});
    }
    for (double delta : {0.0, 0.5, 1.0, 2.0}) {
      p.points.push_back({"b", base(Configuration::Braided, 0.5 * kPi, td, delta), InitKind::Plus});
    }
    for (double delta : {0.0, 0.5, 1.0, 2.0}) {
      p.points.push_back({"c", base(Configuration::Nested, 0.5 * kPi, td, delta), InitKind::Plus});
    }
  } else if (name == "fig7") {
    const Delay td = Delay::finite(0.3);
    const Configuration configs[] = {Configuration::Separate, Configuration::Braided, Configuration::Nested};
    const char* panels[3][2] = {{"a", "b"}, {"c", "d"}, {"e", "f"}};
    for (int c = 0; c < 3; ++c) {
      const double thetas[] = {2.0 * kPi, kPi};
      for (int k = 0; k < 2; ++k) {
        for (double phi : linspace(0.0, 2.0 * kPi, 41)) {
          p.points.push_back({panels[c][k], base(configs[c], thetas[k], td, 0.0, phi), InitKind::Phase});
        }
      }
    }
  } else {
    throw ValidationError("unknown preset '" + std::string(name) + "'");
  }
  return p;
}

}  // namespace giantatom::cli
