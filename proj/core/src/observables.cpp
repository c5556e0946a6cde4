#include "giantatom/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace giantatom {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

DensityMatrix reduced_density(Complex ca, Complex cb) {
  const double pa = std::norm(ca);
  const double pb = std::norm(cb);
  if (pa + pb > 1.0 + kNormSlack) {
    throw std::invalid_argument("excited-state population exceeds one");
  }
  DensityMatrix rho = DensityMatrix::Zero();
  rho(1, 1) = pa;
  rho(1, 2) = ca * std::conj(cb);
  rho(2, 1) = std::conj(ca) * cb;
  rho(2, 2) = pb;
  rho(3, 3) = 1.0 - pa - pb;
  return rho;
}

double concurrence(Complex ca, Complex cb) { return 2.0 * std::abs(ca * std::conj(cb)); }

DickeAmplitudes to_dicke(Complex ca, Complex cb) {
  return {(ca + cb) * kInvSqrt2, (ca - cb) * kInvSqrt2};
}

AmplitudePair from_dicke(Complex plus, Complex minus) {
  return {(plus + minus) * kInvSqrt2, (plus - minus) * kInvSqrt2};
}

}  // namespace giantatom
