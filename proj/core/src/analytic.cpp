#include "giantatom/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

namespace giantatom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

bool near_angle(double r, double target, double tol) { return std::abs(r - target) <= tol; }

// Smallest singular value of a 2x2 matrix without forming A^H A explicitly
// for the small one: sigma_min = |det| / sigma_max.
double smallest_singular_value(const Matrix2c& a) {
  const double fro2 = a.squaredNorm();
  const double det = std::abs(a.determinant());
  const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
  const double smax = std::sqrt(0.5 * (fro2 + disc));
  return smax > 0.0 ? det / smax : 0.0;
}

// Row vector w with w^T a = 0 for a singular 2x2 matrix.
Vector2c left_null_vector(const Matrix2c& a) {
  const Vector2c w1(a(1, 0), -a(0, 0));
  const Vector2c w2(a(1, 1), -a(0, 1));
  return w1.norm() >= w2.norm() ? w1 : w2;
}

// Locates a pole s = i omega (omega != 0) whose residue overlaps the initial
// amplitudes. Such a pole is an undamped oscillation, so the final-value
// theorem does not apply.
std::optional<double> excited_imaginary_pole(const TransferMatrix& transfer, const DelayKernel& kernel,
                                             const SystemParams& params, const Vector2c& c0) {
  const double bound = transfer.frequency_bound();
  const double td = params.delay.value();
  const double scale = std::max(1.0, kernel.max_multiple() * td);
  const double dw = 0.02 / scale;
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * bound / dw)) + 1;

  auto sigma = [&](double w) { return smallest_singular_value(transfer(Complex(0.0, w))); };

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = sigma(-bound + static_cast<double>(i) * dw);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (values[i] > values[i - 1] || values[i] > values[i + 1]) continue;
    // Golden-section refinement on the bracketing cells.
    double lo = -bound + static_cast<double>(i - 1) * dw;
    double hi = -bound + static_cast<double>(i + 1) * dw;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = sigma(x1);
    double f2 = sigma(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = sigma(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = sigma(x2);
      }
    }
    const double w = f1 < f2 ? x1 : x2;
    const double smin = std::min(f1, f2);
    if (std::abs(w) < 1e-6 || smin > 1e-9 * (1.0 + std::abs(w))) continue;
    const Vector2c left = left_null_vector(transfer(Complex(0.0, w)));
    const double overlap = std::abs(left(0) * c0(0) + left(1) * c0(1)) / std::max(left.norm(), 1e-300);
    if (overlap > 1e-6) return w;
  }
  return std::nullopt;
}

// exp(g t) for a 2x2 matrix via its two eigenvalues tau +- mu.
Matrix2c expm2(const Matrix2c& g, double t) {
  const Complex tau = 0.5 * g.trace();
  const Complex mu = std::sqrt(tau * tau - g.determinant());
  const Matrix2c shifted = g - tau * Matrix2c::Identity();
  const Complex mt = mu * t;
  if (std::abs(mt) > 1.0) {
    const Matrix2c p = 0.5 * (Matrix2c::Identity() + shifted / mu);
    const Matrix2c q = 0.5 * (Matrix2c::Identity() - shifted / mu);
    return std::exp((tau + mu) * t) * p + std::exp((tau - mu) * t) * q;
  }
  Complex sinhc;
  if (std::abs(mt) < 1e-4) {
    sinhc = t * (1.0 + mt * mt / 6.0 + mt * mt * mt * mt / 120.0);
  } else {
    sinhc = std::sinh(mt) / mu;
  }
  return std::exp(tau * t) * (std::cosh(mt) * Matrix2c::Identity() + sinhc * shifted);
}

// Markov-limit factors Y_{+-} at the canonical phase classes.
std::pair<Complex, Complex> dicke_rates(Configuration config, PhaseClass cls) {
  const bool braided = config == Configuration::Braided;
  switch (cls) {
    case PhaseClass::Even:
      return {4.0, 0.0};
    case PhaseClass::Odd:
      return {0.0, braided ? 4.0 : 0.0};
    case PhaseClass::HalfPlus:
      return {kI, braided ? -kI : 2.0 + kI};
    case PhaseClass::HalfMinus:
      return {-kI, braided ? kI : 2.0 - kI};
    case PhaseClass::Generic:
      break;
  }
  throw NoClosedForm("no tabulated Markov rates for a generic phase");
}

MarkovianValue from_dicke_evolution(const Matrix2c& generator, const InitialState& init, double t,
                                    std::string branch) {
  const DickeAmplitudes d0 = to_dicke(init.ca(), init.cb());
  const Vector2c alpha = expm2(generator, t) * Vector2c(d0.plus, d0.minus);
  const AmplitudePair amps = from_dicke(alpha(0), alpha(1));
  return {concurrence(amps), amps, std::move(branch)};
}

std::string format_branch(Configuration config, PhaseClass cls, std::string_view what) {
  std::string out(to_string(config));
  out += ", ";
  out += to_string(cls);
  out += ": ";
  out += what;
  return out;
}

}  // namespace

PhaseClass classify_phase(double theta0, double tolerance) {
  double r = std::fmod(theta0, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  if (near_angle(r, 0.0, tolerance) || near_angle(r, 2.0 * kPi, tolerance)) return PhaseClass::Even;
  if (near_angle(r, kPi, tolerance)) return PhaseClass::Odd;
  if (near_angle(r, 0.5 * kPi, tolerance)) return PhaseClass::HalfPlus;
  if (near_angle(r, 1.5 * kPi, tolerance)) return PhaseClass::HalfMinus;
  return PhaseClass::Generic;
}

std::string_view to_string(PhaseClass cls) {
  switch (cls) {
    case PhaseClass::Even:
      return "2m*pi";
    case PhaseClass::Odd:
      return "(2m+1)*pi";
    case PhaseClass::HalfPlus:
      return "(2m+1/2)*pi";
    case PhaseClass::HalfMinus:
      return "(2m+3/2)*pi";
    case PhaseClass::Generic:
      return "generic";
  }
  return "unknown";
}

TransferMatrix::TransferMatrix(const SystemParams& params, const DelayKernel& kernel)
    : theta0_(params.theta0), td_(0.0), detuning_(params.detuning) {
  if (params.delay.is_infinite()) {
    throw std::invalid_argument("the transfer matrix needs a finite delay");
  }
  td_ = params.delay.value();
  for (const auto& t : kernel.terms()) terms_.push_back({t.multiple, t.matrix()});
}

Matrix2c TransferMatrix::kernel_sum(Complex s) const {
  Matrix2c m = Matrix2c::Zero();
  for (const auto& t : terms_) {
    m += t.matrix * std::exp(static_cast<double>(t.multiple) * (kI * theta0_ - s * td_));
  }
  return m;
}

Matrix2c TransferMatrix::operator()(Complex s) const {
  Matrix2c a = SystemParams::gamma * kernel_sum(s);
  a(0, 0) += s + kI * detuning_;
  a(1, 1) += s - kI * detuning_;
  return a;
}

Matrix2c TransferMatrix::derivative(Complex s) const {
  Matrix2c d = Matrix2c::Identity();
  for (const auto& t : terms_) {
    const double l = static_cast<double>(t.multiple);
    d += SystemParams::gamma * t.matrix * (-l * td_) * std::exp(l * (kI * theta0_ - s * td_));
  }
  return d;
}

std::optional<std::pair<Complex, Complex>> TransferMatrix::dicke_factors(Complex s) const {
  if (detuning_ != 0.0) return std::nullopt;
  Complex plus = 0.0;
  Complex minus = 0.0;
  for (const auto& t : terms_) {
    if (t.matrix(0, 0) != t.matrix(1, 1) || t.matrix(0, 1) != t.matrix(1, 0)) return std::nullopt;
    const Complex e = std::exp(static_cast<double>(t.multiple) * (kI * theta0_ - s * td_));
    plus += (t.matrix(0, 0) + t.matrix(0, 1)) * e;
    minus += (t.matrix(0, 0) - t.matrix(0, 1)) * e;
  }
  return std::make_pair(plus, minus);
}

double TransferMatrix::frequency_bound() const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.matrix.norm();
  return std::abs(detuning_) + SystemParams::gamma * sum + 1.0;
}

SteadyStateResult steady_state_closed(const SystemParams& params, const InitialState& init) {
  if (params.detuning != 0.0) {
    throw NoClosedForm("detuned atoms have no closed-form steady state");
  }
  if (params.delay.is_infinite()) {
    throw NoClosedForm("with an infinite delay every amplitude decays");
  }
  const auto phi = init.relative_phase();
  if (!phi) throw NoClosedForm("closed forms need an equal-weight initial superposition");

  const PhaseClass cls = classify_phase(params.theta0);
  if (cls == PhaseClass::Generic) throw NoClosedForm("theta0 is not in a tabulated phase class");

  const double td = params.delay.value();
  SteadyStateResult r;
  r.config = params.config;
  r.phase_class = cls;
  r.initial_state = init.describe();

  if (is_half(cls)) {
    if (td == 0.0) throw NoClosedForm("the (m+1/2)pi class keeps rotating at zero delay");
    r.value = 0.0;
    r.formula = format_branch(params.config, cls, "0 (no subradiant pole)");
    return r;
  }

  const double c = std::cos(*phi);
  const bool even = cls == PhaseClass::Even;
  const double one_td = (1.0 + td) * (1.0 + td);
  switch (params.config) {
    case Configuration::Separate:
      if (even) {
        r.value = (1.0 - c) / (2.0 * (1.0 + 3.0 * td) * (1.0 + 3.0 * td));
        r.formula = format_branch(params.config, cls, "(1-cos phi)/(2(1+3td)^2)");
      } else {
        r.value = 1.0 / one_td;
        r.formula = format_branch(params.config, cls, "1/(1+td)^2");
      }
      break;
    case Configuration::Braided:
      if (even) {
        r.value = (1.0 - c) / (2.0 * one_td);
        r.formula = format_branch(params.config, cls, "(1-cos phi)/(2(1+td)^2)");
      } else {
        r.value = (1.0 + c) / (2.0 * one_td);
        r.formula = format_branch(params.config, cls, "(1+cos phi)/(2(1+td)^2)");
      }
      break;
    case Configuration::Nested:
      if (even) {
        r.value = (1.0 - c) / (2.0 * one_td);
        r.formula = format_branch(params.config, cls, "(1-cos phi)/(2(1+td)^2)");
      } else {
        const Complex e = std::polar(1.0, *phi);
        const double f = std::abs((td * (e + 1.0) + 1.0) * (td * (3.0 * std::conj(e) + 1.0) + std::conj(e)));
        const double den = 1.0 + 4.0 * td + 2.0 * td * td;
        r.value = f / (den * den);
        r.formula = format_branch(params.config, cls, "f(phi,td)/(1+4td+2td^2)^2");
      }
      break;
  }
  return r;
}

FinalValue steady_state_numeric(const DelayKernel& kernel, const SystemParams& params,
                                const InitialState& init) {
  const TransferMatrix transfer(params, kernel);
  const Vector2c c0(init.ca(), init.cb());

  FinalValue out;
  if (auto w = excited_imaginary_pole(transfer, kernel, params, c0)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "no steady value: undamped pole at s = i*" << *w;
    out.diagnostic = msg.str();
    return out;
  }

  constexpr int kFirst = 8;
  constexpr int kLast = 20;
  constexpr int kLevels = kLast - kFirst + 1;
  // table[i][j]: j-th Richardson extrapolation ending at s = 2^{-(kFirst+i)}.
  std::array<std::array<Vector2c, kLevels>, kLevels> table;
  double best_error = std::numeric_limits<double>::infinity();
  Vector2c best = Vector2c::Zero();
  for (int i = 0; i < kLevels; ++i) {
    const double s = std::ldexp(1.0, -(kFirst + i));
    const Vector2c f = s * transfer(Complex(s, 0.0)).partialPivLu().solve(c0);
    table[i][0] = f;
    for (int j = 1; j <= i; ++j) {
      const double factor = std::ldexp(1.0, j) - 1.0;
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / factor;
      const double err =
          std::max((table[i][j] - table[i][j - 1]).norm(), (table[i][j] - table[i - 1][j - 1]).norm());
      if (err < best_error) {
        best_error = err;
        best = table[i][j];
      }
    }
  }

  out.error_estimate = best_error;
  if (!(best_error < 1e-8)) {
    std::ostringstream msg;
    msg << "no steady value: extrapolation did not converge (error " << best_error << ")";
    out.diagnostic = msg.str();
    return out;
  }
  out.amplitudes = AmplitudePair{best(0), best(1)};
  out.concurrence = concurrence(*out.amplitudes);
  return out;
}

std::optional<SteadyStateResult> steady_state(const DelayKernel& kernel, const SystemParams& params,
                                              const InitialState& init) {
  try {
    return steady_state_closed(params, init);
  } catch (const NoClosedForm&) {
  }
  if (params.delay.is_infinite()) {
    SteadyStateResult r;
    r.config = params.config;
    r.phase_class = classify_phase(params.theta0);
    r.initial_state = init.describe();
    r.formula = "infinite delay: exponential decay";
    return r;
  }
  const FinalValue fv = steady_state_numeric(kernel, params, init);
  if (!fv.settles()) return std::nullopt;
  SteadyStateResult r;
  r.value = *fv.concurrence;
  r.config = params.config;
  r.phase_class = classify_phase(params.theta0);
  r.initial_state = init.describe();
  r.formula = "final-value theorem (numeric)";
  return r;
}

double nested_markov_prefactor(bool symmetric, double gamma_t) {
  const Complex root = std::sqrt(Complex(-1.0, -2.0));
  const Complex arg = 2.0 * gamma_t * root;
  const double sign = symmetric ? 1.0 : -1.0;
  const Complex inner = std::sqrt(Complex(4.0, -2.0)) * std::sinh(arg) + sign * 2.0 * std::cosh(arg) - sign * kI;
  return std::abs((kI + 2.0) * inner / 5.0);
}

MarkovianValue markovian_closed_form(const SystemParams& params, const InitialState& init, double t) {
  if (!params.delay.is_zero()) {
    throw std::invalid_argument("the Markovian closed forms need a zero delay");
  }
  const double gamma = SystemParams::gamma;
  const double delta = params.detuning;
  const PhaseClass cls = classify_phase(params.theta0);
  if (cls == PhaseClass::Generic) throw NoClosedForm("theta0 is not in a tabulated phase class");

  if (delta == 0.0) {
    if (params.config == Configuration::Nested && is_half(cls)) {
      const auto phi = init.relative_phase();
      const bool plus = phi && *phi == 0.0;
      const bool minus = phi && *phi == kPi;
      if (!plus && !minus) throw NoClosedForm("nested (m+1/2)pi closed form covers |+> and |-> only");
      const double c = nested_markov_prefactor(plus, gamma * t) * std::exp(-2.0 * gamma * t);
      return {c, std::nullopt, format_branch(params.config, cls, plus ? "A+ e^{-2 gamma t}" : "A- e^{-2 gamma t}")};
    }
    const auto [yp, ym] = params.config == Configuration::Nested
                              ? std::pair<Complex, Complex>{cls == PhaseClass::Even ? 4.0 : 0.0, 0.0}
                              : dicke_rates(params.config, cls);
    Matrix2c g = Matrix2c::Zero();
    g(0, 0) = -gamma * yp;
    g(1, 1) = -gamma * ym;
    return from_dicke_evolution(g, init, t, format_branch(params.config, cls, "decoupled Dicke exponentials"));
  }

  if (cls == PhaseClass::Even) {
    Matrix2c g;
    g << -4.0 * gamma, -kI * delta, -kI * delta, 0.0;
    return from_dicke_evolution(g, init, t, format_branch(params.config, cls, "detuning-coupled Dicke pair"));
  }

  if (params.config == Configuration::Braided && is_half(cls)) {
    const double s = cls == PhaseClass::HalfPlus ? 1.0 : -1.0;
    Matrix2c g;
    g << -kI * s * gamma, -kI * delta, -kI * delta, kI * s * gamma;
    MarkovianValue v = from_dicke_evolution(g, init, t, format_branch(params.config, cls, "decoherence-free exchange"));
    const auto phi = init.relative_phase();
    if (phi && (*phi == 0.0 || *phi == kPi)) {
      const double omega = std::sqrt(gamma * gamma + delta * delta);
      const double x = 2.0 * omega * t;
      const double re = gamma * gamma + delta * delta * std::cos(x);
      const double im = delta * omega * std::sin(x);
      v.concurrence = std::sqrt(re * re + im * im) / (omega * omega);
    }
    return v;
  }

  if (params.config == Configuration::Nested && cls == PhaseClass::HalfPlus &&
      std::abs(delta - gamma) <= 1e-12 * gamma) {
    Matrix2c g = Matrix2c::Zero();
    g(0, 0) = -kI * delta;
    g(1, 1) = -(2.0 - kI) * delta;
    return from_dicke_evolution(g, init, t, format_branch(params.config, cls, "detuning-protected symmetric state"));
  }

  throw NoClosedForm("no closed form for this detuned configuration");
}

}  // namespace giantatom
