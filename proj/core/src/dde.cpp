#include "giantatom/dde.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace giantatom {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr Complex kI{0.0, 1.0};

// Retarded coupling -gamma M_l e^{i l theta0} acting on c(t - l t_d).
struct RetardedTerm {
  std::size_t lag;  // l * steps_per_delay
  Matrix2c coupling;
};

}  // namespace

InitialState InitialState::plus() { return {kInvSqrt2, kInvSqrt2}; }

InitialState InitialState::minus() { return {kInvSqrt2, -kInvSqrt2}; }

InitialState InitialState::phase(double phi) { return {kInvSqrt2, std::polar(kInvSqrt2, phi)}; }

InitialState InitialState::custom(Complex ca, Complex cb) {
  const double n = std::norm(ca) + std::norm(cb);
  if (std::abs(n - 1.0) > kNormSlack) {
    throw std::invalid_argument("initial amplitudes must be normalised");
  }
  return {ca, cb};
}

std::optional<double> InitialState::relative_phase() const {
  if (std::abs(std::norm(ca_) - 0.5) > kNormSlack || std::abs(std::norm(cb_) - 0.5) > kNormSlack) {
    return std::nullopt;
  }
  double phi = std::arg(cb_ / ca_);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return phi;
}

std::string InitialState::describe() const {
  std::ostringstream out;
  out.precision(17);
  if (auto phi = relative_phase()) {
    if (*phi == 0.0) return "plus";
    if (*phi == std::numbers::pi) return "minus";
    out << "phase(" << *phi << ")";
    return out.str();
  }
  out << "custom(" << ca_ << "," << cb_ << ")";
  return out.str();
}

double integration_step(const Delay& delay, double t_max, int steps_per_delay) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("t_max must be positive");
  }
  if (steps_per_delay <= 0) throw std::invalid_argument("steps_per_delay must be positive");
  if (delay.is_positive_finite()) return delay.value() / steps_per_delay;
  return t_max / (100.0 * steps_per_delay);
}

Trajectory integrate(const SystemParams& params, const DelayKernel& kernel, const InitialState& init,
                     double t_max, int steps_per_delay) {
  const double h = integration_step(params.delay, t_max, steps_per_delay);
  const double gamma = SystemParams::gamma;

  Matrix2c local = Matrix2c::Zero();
  local(0, 0) = -kI * params.detuning;
  local(1, 1) = kI * params.detuning;

  std::vector<RetardedTerm> retarded;
  for (const auto& term : kernel.terms()) {
    const Matrix2c coupling = -gamma * term.matrix() * std::polar(1.0, term.multiple * params.theta0);
    if (term.multiple == 0 || params.delay.is_zero()) {
      local += coupling;
    } else if (!params.delay.is_infinite()) {
      retarded.push_back({static_cast<std::size_t>(term.multiple) * steps_per_delay, coupling});
    }
  }

  const auto n_steps = static_cast<std::size_t>(std::ceil(t_max / h - 1e-9));

  std::vector<Vector2c> y(n_steps + 1);
  // One-sided derivatives on each step interval, needed by the Hermite
  // interpolant because the solution is only piecewise smooth at l t_d.
  std::vector<Vector2c> f_start(n_steps);
  std::vector<Vector2c> f_end(n_steps);
  y[0] = Vector2c(init.ca(), init.cb());

  for (std::size_t n = 0; n < n_steps; ++n) {
    Vector2c d0 = Vector2c::Zero();
    Vector2c dh = Vector2c::Zero();
    Vector2c d1 = Vector2c::Zero();
    for (const auto& term : retarded) {
      if (n < term.lag) continue;
      const std::size_t m = n - term.lag;
      const Vector2c mid = 0.5 * (y[m] + y[m + 1]) + (h / 8.0) * (f_start[m] - f_end[m]);
      d0 += term.coupling * y[m];
      dh += term.coupling * mid;
      d1 += term.coupling * y[m + 1];
    }

    const Vector2c& yn = y[n];
    const Vector2c k1 = local * yn + d0;
    const Vector2c k2 = local * (yn + 0.5 * h * k1) + dh;
    const Vector2c k3 = local * (yn + 0.5 * h * k2) + dh;
    const Vector2c k4 = local * (yn + h * k3) + d1;
    y[n + 1] = yn + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    f_start[n] = k1;
    f_end[n] = local * y[n + 1] + d1;
  }

  Trajectory traj;
  traj.params = params;
  traj.step = h;
  traj.times.resize(n_steps + 1);
  traj.amplitudes.resize(n_steps + 1);
  for (std::size_t n = 0; n <= n_steps; ++n) {
    traj.times[n] = static_cast<double>(n) * h;
    traj.amplitudes[n] = {y[n](0), y[n](1)};
  }
  return traj;
}

std::vector<ConcurrenceSample> concurrence_series(const Trajectory& trajectory) {
  std::vector<ConcurrenceSample> out;
  out.reserve(trajectory.size());
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    out.push_back({trajectory.times[n], concurrence(trajectory.amplitudes[n])});
  }
  return out;
}

}  // namespace giantatom
