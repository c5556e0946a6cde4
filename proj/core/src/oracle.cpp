#include "giantatom/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace giantatom {

namespace {

constexpr double kPi = std::numbers::pi;

// Plain complex product; avoids the NaN recovery path of operator*.
inline Complex mul(Complex x, Complex y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

inline Complex mul_conj(Complex x, Complex y) {
  return {x.real() * y.real() + x.imag() * y.imag(), x.real() * y.imag() - x.imag() * y.real()};
}

struct Point {
  int atom;
  int position;
};

// State layout: atoms first, then n right movers, then n left movers.
class ModeSystem {
 public:
  ModeSystem(const ModeGrid& grid, const std::vector<Point>& points, std::vector<double> atom_detunings,
             double theta0, double td)
      : n_atoms_(atom_detunings.size()),
        n_(static_cast<std::size_t>(grid.n_modes)),
        g_(grid.coupling()),
        atom_detunings_(std::move(atom_detunings)),
        nu_(n_),
        form_(n_atoms_ * n_, Complex(0.0, 0.0)) {
    for (std::size_t m = 0; m < n_; ++m) nu_[m] = grid.detuning(static_cast<int>(m));
    for (const auto& p : points) {
      for (std::size_t m = 0; m < n_; ++m) {
        form_[static_cast<std::size_t>(p.atom) * n_ + m] += std::polar(1.0, p.position * (theta0 + nu_[m] * td));
      }
    }
  }

  std::size_t size() const { return n_atoms_ + 2 * n_; }
  std::size_t atoms() const { return n_atoms_; }
  std::size_t modes() const { return n_; }

  void rhs(const std::vector<Complex>& y, std::vector<Complex>& dy) const {
    const Complex* r = y.data() + n_atoms_;
    const Complex* l = r + n_;
    Complex* dr = dy.data() + n_atoms_;
    Complex* dl = dr + n_;
    for (std::size_t m = 0; m < n_; ++m) {
      dr[m] = Complex(nu_[m] * r[m].imag(), -nu_[m] * r[m].real());
      dl[m] = Complex(nu_[m] * l[m].imag(), -nu_[m] * l[m].real());
    }
    for (std::size_t j = 0; j < n_atoms_; ++j) {
      const Complex* f = form_.data() + j * n_;
      const Complex aj = y[j];
      const Complex drive(g_ * aj.imag(), -g_ * aj.real());  // -i g a_j
      double sr = 0.0;
      double si = 0.0;
      for (std::size_t m = 0; m < n_; ++m) {
        const Complex fr = mul(f[m], r[m]);
        const Complex fl = mul_conj(f[m], l[m]);
        sr += fr.real() + fl.real();
        si += fr.imag() + fl.imag();
        dr[m] += mul_conj(f[m], drive);
        dl[m] += mul(f[m], drive);
      }
      // -i delta_j a_j - i g sum
      dy[j] = Complex(atom_detunings_[j] * aj.imag() + g_ * si, -atom_detunings_[j] * aj.real() - g_ * sr);
    }
  }

 private:
  std::size_t n_atoms_;
  std::size_t n_;
  double g_;
  std::vector<double> atom_detunings_;
  std::vector<double> nu_;
  std::vector<Complex> form_;  // sum over an atom's points of e^{i x (theta0 + nu t_d)}
};

double total_population(const std::vector<Complex>& y) {
  double s = 0.0;
  for (const auto& v : y) s += std::norm(v);
  return s;
}

struct RawRun {
  std::vector<double> times;
  std::vector<std::vector<Complex>> atoms;
  std::vector<Complex> final_state;
  double max_drift = 0.0;
};

RawRun run(const ModeSystem& sys, std::vector<Complex> y, double t_max, double step, int report_every) {
  const double norm0 = total_population(y);
  const auto n_steps = static_cast<std::size_t>(std::ceil(t_max / step - 1e-9));
  std::vector<Complex> k1(sys.size()), k2(sys.size()), k3(sys.size()), k4(sys.size()), tmp(sys.size());

  RawRun out;
  auto record = [&](std::size_t n) {
    out.times.push_back(static_cast<double>(n) * step);
    out.atoms.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(sys.atoms()));
    const double drift = std::abs(total_population(y) - norm0);
    out.max_drift = std::max(out.max_drift, drift);
    if (drift > kMaxNormDrift) {
      std::ostringstream msg;
      msg << "oracle normalization drift " << drift << " at t = " << out.times.back()
          << " exceeds " << kMaxNormDrift << "; reduce the step";
      throw OracleError(msg.str());
    }
  };
  record(0);

  const std::size_t dim = sys.size();
  for (std::size_t n = 0; n < n_steps; ++n) {
    sys.rhs(y, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + (0.5 * step) * k1[i];
    sys.rhs(tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + (0.5 * step) * k2[i];
    sys.rhs(tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + step * k3[i];
    sys.rhs(tmp, k4);
    for (std::size_t i = 0; i < dim; ++i) y[i] += (step / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if ((n + 1) % static_cast<std::size_t>(report_every) == 0 || n + 1 == n_steps) record(n + 1);
  }
  out.final_state = std::move(y);
  return out;
}

void check_step(const ModeGrid& grid, double t_max, double step, int report_every) {
  grid.validate();
  if (!(step > 0.0) || step * grid.half_width > kMaxPhasePerStep * (1.0 + 1e-12)) {
    throw std::invalid_argument("oracle step must satisfy 0 < step * W <= 0.1");
  }
  if (report_every <= 0) throw std::invalid_argument("report_every must be positive");
  if (!(t_max > 0.0) || t_max >= 0.5 * grid.recurrence_time()) {
    throw std::invalid_argument("oracle t_max must be positive and below half the recurrence time");
  }
}

}  // namespace

double ModeGrid::coupling() const { return std::sqrt(SystemParams::gamma * spacing() / (4.0 * kPi)); }

double ModeGrid::recurrence_time() const { return 2.0 * kPi / spacing(); }

void ModeGrid::validate() const {
  if (n_modes < 3 || n_modes % 2 == 0) throw std::invalid_argument("n_modes must be odd and at least 3");
  if (!(half_width >= 20.0 * SystemParams::gamma) || !std::isfinite(half_width)) {
    throw std::invalid_argument("half_width must be at least 20 gamma");
  }
}

double ModeAmplitudes::population() const {
  double s = 0.0;
  for (const auto& v : right) s += std::norm(v);
  for (const auto& v : left) s += std::norm(v);
  return s;
}

OracleRun oracle_integrate(const SystemParams& params, const CouplingLayout& layout, const ModeGrid& grid,
                           const InitialState& init, double t_max, double step, int report_every) {
  if (params.delay.is_infinite()) throw std::invalid_argument("the oracle needs a finite delay");
  check_step(grid, t_max, step, report_every);

  std::vector<Point> points;
  for (const auto& p : layout.points()) points.push_back({static_cast<int>(p.atom), p.position});
  const ModeSystem sys(grid, points, {params.detuning, -params.detuning}, params.theta0, params.delay.value());

  std::vector<Complex> y(sys.size(), Complex(0.0, 0.0));
  y[0] = init.ca();
  y[1] = init.cb();
  RawRun raw = run(sys, std::move(y), t_max, step, report_every);

  OracleRun out;
  out.max_norm_drift = raw.max_drift;
  out.trajectory.params = params;
  out.trajectory.step = step * report_every;
  out.trajectory.times = std::move(raw.times);
  out.trajectory.amplitudes.reserve(raw.atoms.size());
  for (const auto& a : raw.atoms) out.trajectory.amplitudes.push_back({a[0], a[1]});
  const auto first = raw.final_state.begin() + 2;
  const auto n = static_cast<std::ptrdiff_t>(sys.modes());
  out.modes.right.assign(first, first + n);
  out.modes.left.assign(first + n, first + 2 * n);
  return out;
}

OracleComparison compare_with_dde(const SystemParams& params, const ModeGrid& grid, const InitialState& init,
                                  double t_max, int steps_per_delay) {
  constexpr double kMinReport = 0.01;
  const DelayKernel kernel = derive_kernel(layout_for(params.config));
  const Trajectory dde = integrate(params, kernel, init, t_max, steps_per_delay);
  const auto q = static_cast<std::size_t>(std::ceil(kMinReport / dde.step - 1e-9));
  const double report = dde.step * static_cast<double>(q);
  const int k = static_cast<int>(std::ceil(report * grid.half_width / kMaxPhasePerStep - 1e-9));
  const OracleRun run = oracle_integrate(params, layout_for(params.config), grid, init, t_max, report / k, k);

  OracleComparison out;
  out.max_norm_drift = run.max_norm_drift;
  for (std::size_t i = 0; i < run.trajectory.size() && i * q < dde.size(); ++i) {
    // The final oracle sample may fall off the report grid.
    if (std::abs(run.trajectory.times[i] - dde.times[i * q]) > 1e-9 * (1.0 + dde.times[i * q])) continue;
    const double d = std::abs(concurrence(run.trajectory.amplitudes[i]) - concurrence(dde.amplitudes[i * q]));
    ++out.samples;
    if (d > out.max_abs_dc) {
      out.max_abs_dc = d;
      out.at_time = dde.times[i * q];
    }
  }
  return out;
}

double calibrate(const ModeGrid& grid, std::optional<double> step) {
  constexpr double kFitStart = 0.5;
  constexpr double kFitEnd = 2.0;
  constexpr double kMaxResidual = 1e-2;
  const double h = step.value_or(0.5 * kMaxPhasePerStep / grid.half_width);
  check_step(grid, kFitEnd, h, 1);

  const ModeSystem sys(grid, {{0, 0}}, {0.0}, 0.0, 0.0);
  std::vector<Complex> y(sys.size(), Complex(0.0, 0.0));
  y[0] = 1.0;
  const RawRun raw = run(sys, std::move(y), kFitEnd, h, 1);

  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < raw.times.size(); ++i) {
    const double t = raw.times[i];
    if (t < kFitStart - 1e-12 || t > kFitEnd + 1e-12) continue;
    const double lp = std::log(std::norm(raw.atoms[i][0]));
    samples.emplace_back(t, lp);
    n += 1.0;
    sx += t;
    sy += lp;
    sxx += t * t;
    sxy += t * lp;
  }
  if (n < 3.0) throw OracleError("calibration window holds too few samples");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (const auto& [t, lp] : samples) ss += (lp - intercept - slope * t) * (lp - intercept - slope * t);
  const double residual = std::sqrt(ss / n);
  if (residual > kMaxResidual) {
    std::ostringstream msg;
    msg << "calibration fit residual " << residual << " exceeds " << kMaxResidual;
    throw OracleError(msg.str());
  }
  return -slope;
}

}  // namespace giantatom
