#pragma once

#include <Eigen/Core>

#include "giantatom/model.hpp"

namespace giantatom {

/// Slack allowed on unit-magnitude quantities such as |c_a|^2 + |c_b|^2.
inline constexpr double kNormSlack = 1e-9;

/// Rotating-frame excited-state amplitudes of atoms a and b.
struct AmplitudePair {
  Complex a;
  Complex b;

  double population() const { return std::norm(a) + std::norm(b); }
};

struct DickeAmplitudes {
  Complex plus;   // (c_a + c_b)/sqrt(2)
  Complex minus;  // (c_a - c_b)/sqrt(2)
};

/// Two-atom state in the basis {|ee>, |eg>, |ge>, |gg>}.
using DensityMatrix = Eigen::Matrix4cd;

/// Reduced atomic state for a single-excitation wavefunction. The |gg>
/// population carries whatever has leaked into the waveguide.
/// Throws std::invalid_argument if |c_a|^2 + |c_b|^2 exceeds 1 + kNormSlack.
DensityMatrix reduced_density(Complex ca, Complex cb);

/// 2|c_a c_b^*|, exact in the single-excitation sector.
double concurrence(Complex ca, Complex cb);
inline double concurrence(const AmplitudePair& p) { return concurrence(p.a, p.b); }

DickeAmplitudes to_dicke(Complex ca, Complex cb);
inline DickeAmplitudes to_dicke(const AmplitudePair& p) { return to_dicke(p.a, p.b); }
AmplitudePair from_dicke(Complex plus, Complex minus);
inline AmplitudePair from_dicke(const DickeAmplitudes& d) { return from_dicke(d.plus, d.minus); }

}  // namespace giantatom
