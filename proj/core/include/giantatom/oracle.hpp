#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "giantatom/dde.hpp"
#include "giantatom/model.hpp"

namespace giantatom {

/// Largest admissible step * half_width.
inline constexpr double kMaxPhasePerStep = 0.1;
/// Largest admissible drift of the total single-excitation probability.
inline constexpr double kMaxNormDrift = 1e-6;

/// Discretized waveguide continuum. Detunings nu_m = -W + m * spacing from the
/// reference frequency omega_0, one copy per propagation direction. Group
/// velocity and k_0 are fixed to 1; positions only enter through the phases
/// x (theta0 + nu t_d).
struct ModeGrid {
  int n_modes = 4001;
  double half_width = 40.0;

  double spacing() const { return 2.0 * half_width / (n_modes - 1); }
  /// Per-mode coupling sqrt(gamma * spacing / (4 pi)); one coupling point
  /// then decays at gamma summed over both directions.
  double coupling() const;
  double detuning(int m) const { return -half_width + m * spacing(); }
  /// Revival time 2 pi / spacing of the discrete spectrum.
  double recurrence_time() const;

  /// Throws std::invalid_argument unless n_modes is odd and at least 3 and
  /// half_width >= 20 gamma.
  void validate() const;
};

struct ModeAmplitudes {
  std::vector<Complex> right;
  std::vector<Complex> left;

  double population() const;
};

/// Normalization drift beyond kMaxNormDrift.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleRun {
  Trajectory trajectory;
  ModeAmplitudes modes;
  double max_norm_drift = 0.0;
};

/// RK4 on the coupled atom and mode amplitudes in the frame rotating at
/// omega_0, starting from the photon vacuum. Amplitudes are reported every
/// report_every steps. Throws std::invalid_argument for an infinite delay,
/// step * W > kMaxPhasePerStep or t_max beyond half the recurrence time, and
/// OracleError when the norm drifts.
OracleRun oracle_integrate(const SystemParams& params, const CouplingLayout& layout, const ModeGrid& grid,
                           const InitialState& init, double t_max, double step, int report_every = 1);

struct OracleComparison {
  double max_abs_dc = 0.0;
  double at_time = 0.0;
  double max_norm_drift = 0.0;
  std::size_t samples = 0;
};

/// Runs the DDE integrator and the oracle on a common report grid: every q-th
/// DDE step with q the smallest multiple reaching 0.01 gamma^-1, each report
/// interval split into oracle steps satisfying step * W <= 0.1.
OracleComparison compare_with_dde(const SystemParams& params, const ModeGrid& grid, const InitialState& init,
                                  double t_max, int steps_per_delay = kDefaultStepsPerDelay);

/// Decay rate of a single atom with one coupling point, from a straight-line
/// fit of ln P over gamma t in [0.5, 2]. The default step is half the largest
/// admissible one. Throws OracleError when the fit residual is too large.
double calibrate(const ModeGrid& grid, std::optional<double> step = std::nullopt);

}  // namespace giantatom
