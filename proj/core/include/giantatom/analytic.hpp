#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "giantatom/dde.hpp"
#include "giantatom/model.hpp"
#include "giantatom/observables.hpp"

namespace giantatom {

/// Tolerance, in radians, for matching theta0 to one of the phase classes.
inline constexpr double kPhaseClassTolerance = 1e-9;

/// Interference class of theta0 modulo 2 pi.
enum class PhaseClass {
  Even,       // 2 m pi
  Odd,        // (2 m + 1) pi
  HalfPlus,   // (2 m + 1/2) pi
  HalfMinus,  // (2 m + 3/2) pi
  Generic,
};

PhaseClass classify_phase(double theta0, double tolerance = kPhaseClassTolerance);
std::string_view to_string(PhaseClass cls);
inline bool is_half(PhaseClass cls) { return cls == PhaseClass::HalfPlus || cls == PhaseClass::HalfMinus; }

/// Raised when a parameter combination has no closed-form expression and the
/// caller has to fall back on the numeric routes.
class NoClosedForm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Laplace-domain system matrix sI + gamma M(s) + i Delta with
/// M(s) = sum_l M_l e^{l (i theta0 - s t_d)}.
class TransferMatrix {
 public:
  /// Throws std::invalid_argument for the infinite delay.
  TransferMatrix(const SystemParams& params, const DelayKernel& kernel);

  Matrix2c operator()(Complex s) const;
  Matrix2c kernel_sum(Complex s) const;
  /// d/ds of operator().
  Matrix2c derivative(Complex s) const;

  /// Scalar factors Y_{+-}(s) of the symmetric/antisymmetric denominators
  /// s + gamma Y_{+-}(s). Empty when the kernel mixes the two amplitudes or
  /// the atoms are detuned.
  std::optional<std::pair<Complex, Complex>> dicke_factors(Complex s) const;

  /// Upper bound on |omega| for any pole s = i omega.
  double frequency_bound() const;

 private:
  struct Term {
    int multiple;
    Matrix2c matrix;
  };
  std::vector<Term> terms_;
  double theta0_;
  double td_;
  double detuning_;
};

struct SteadyStateResult {
  double value = 0.0;
  Configuration config = Configuration::Separate;
  PhaseClass phase_class = PhaseClass::Generic;
  std::string initial_state;
  std::string formula;
};

/// Long-time concurrence from the tabulated final-value expressions.
///
/// Requires zero detuning, a finite delay, an equal-weight initial state
/// (|+>, |->, or a relative phase phi) and theta0 in one of the classes.
/// The (m + 1/2) pi class additionally needs a positive delay: at t_d = 0 the
/// amplitudes keep rotating. Anything else throws NoClosedForm.
SteadyStateResult steady_state_closed(const SystemParams& params, const InitialState& init);

struct FinalValue {
  std::optional<AmplitudePair> amplitudes;
  std::optional<double> concurrence;
  double error_estimate = 0.0;
  /// Why no value was reported; empty when the trajectory settles.
  std::string diagnostic;

  bool settles() const { return concurrence.has_value(); }
};

/// lim_{s -> 0+} s [sI + gamma M(s) + i Delta]^{-1} c(0), evaluated on
/// s_k = 2^{-k}, k = 8..20, and Richardson-extrapolated. An excited pole on
/// the imaginary axis away from s = 0, or a table that fails to converge,
/// yields no value. Throws std::invalid_argument for the infinite delay.
FinalValue steady_state_numeric(const DelayKernel& kernel, const SystemParams& params,
                                const InitialState& init);

/// Closed form when one exists, otherwise the numeric final value. Empty
/// when neither produces a settled value.
std::optional<SteadyStateResult> steady_state(const DelayKernel& kernel, const SystemParams& params,
                                              const InitialState& init);

struct MarkovianValue {
  double concurrence = 0.0;
  /// Present when the branch solves for the amplitudes, not just C(t).
  std::optional<AmplitudePair> amplitudes;
  std::string branch;
};

/// Exact t_d = 0 dynamics for the branches with known solutions:
///  - zero detuning, separate/braided: decoupled symmetric and antisymmetric
///    exponentials for every phase class;
///  - zero detuning, nested: 2 m pi and (2 m + 1) pi classes, and
///    C = A_{+-} e^{-2 gamma t} for |+-> in the (m + 1/2) pi class;
///  - nonzero detuning, any configuration at 2 m pi: the detuning-coupled
///    symmetric/antisymmetric pair;
///  - nonzero detuning, braided at (m + 1/2) pi: the decoherence-free
///    exchange oscillation;
///  - nested at (2 m + 1/2) pi with detuning equal to gamma.
/// Throws std::invalid_argument unless the delay is zero, and NoClosedForm
/// for any other parameter combination.
MarkovianValue markovian_closed_form(const SystemParams& params, const InitialState& init, double t);

/// A_{+-}(t) for the nested configuration at theta0 = (m + 1/2) pi.
double nested_markov_prefactor(bool symmetric, double gamma_t);

}  // namespace giantatom
