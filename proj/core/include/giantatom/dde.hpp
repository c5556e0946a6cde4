#pragma once

#include <optional>
#include <string>
#include <vector>

#include "giantatom/model.hpp"
#include "giantatom/observables.hpp"

namespace giantatom {

inline constexpr int kDefaultStepsPerDelay = 200;
/// Integration horizon used when a long-time value stands in for the steady state.
inline constexpr double kDefaultSteadyTime = 60.0;

/// Single-excitation atomic state at t = 0 with the waveguide in vacuum.
class InitialState {
 public:
  static InitialState plus();
  static InitialState minus();
  /// (|eg> + e^{i phi}|ge>)/sqrt(2)
  static InitialState phase(double phi);
  /// Throws std::invalid_argument unless |ca|^2 + |cb|^2 = 1 within kNormSlack.
  static InitialState custom(Complex ca, Complex cb);

  Complex ca() const { return ca_; }
  Complex cb() const { return cb_; }
  AmplitudePair amplitudes() const { return {ca_, cb_}; }

  /// phi such that cb/ca = e^{i phi}, in [0, 2pi), for equal-weight states.
  std::optional<double> relative_phase() const;

  std::string describe() const;

 private:
  InitialState(Complex ca, Complex cb) : ca_(ca), cb_(cb) {}

  Complex ca_;
  Complex cb_;
};

/// Rotating-frame amplitudes on a uniform grid t_n = n * step.
struct Trajectory {
  SystemParams params;
  double step = 0.0;
  std::vector<double> times;
  std::vector<AmplitudePair> amplitudes;

  std::size_t size() const { return times.size(); }
  const AmplitudePair& back() const { return amplitudes.back(); }
};

struct ConcurrenceSample {
  double gamma_t;
  double concurrence;
};

/// Grid spacing used by integrate(): t_d / steps_per_delay for a positive
/// finite delay, otherwise t_max / (100 steps_per_delay).
double integration_step(const Delay& delay, double t_max, int steps_per_delay);

/// Fourth-order Runge-Kutta solution of the delayed equations of motion by
/// the method of steps. Every retarded argument t - l t_d of a grid point is
/// itself a grid point; stage points in between use cubic Hermite
/// interpolation of the stored values and one-sided derivatives. Retarded
/// terms are switched on for whole steps starting at l t_d, so the history
/// before t = 0 is never read.
///
/// Throws std::invalid_argument for t_max <= 0 or steps_per_delay <= 0.
Trajectory integrate(const SystemParams& params, const DelayKernel& kernel, const InitialState& init,
                     double t_max, int steps_per_delay = kDefaultStepsPerDelay);

std::vector<ConcurrenceSample> concurrence_series(const Trajectory& trajectory);

}  // namespace giantatom
