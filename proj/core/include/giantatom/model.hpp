#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace giantatom {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

enum class Configuration { Separate, Braided, Nested };

std::string_view to_string(Configuration config);
std::optional<Configuration> parse_configuration(std::string_view name);

/// Photon travel time between adjacent coupling points, gamma * t_d.
///
/// The infinite delay is a distinct state rather than a large number: it
/// removes every retarded term from the equations of motion.
class Delay {
 public:
  Delay() = default;

  /// Throws std::invalid_argument for negative or non-finite values.
  static Delay finite(double gamma_td);
  static Delay infinite() noexcept;

  bool is_infinite() const noexcept { return infinite_; }
  bool is_zero() const noexcept { return !infinite_ && value_ == 0.0; }
  bool is_positive_finite() const noexcept { return !infinite_ && value_ > 0.0; }

  /// +inf for the infinite delay.
  double value() const noexcept;

  friend bool operator==(const Delay&, const Delay&) = default;

 private:
  Delay(double value, bool infinite) : value_(value), infinite_(infinite) {}

  double value_ = 0.0;
  bool infinite_ = false;
};

/// Dimensionless parameters; every rate is measured in units of gamma.
struct SystemParams {
  static constexpr double gamma = 1.0;

  Configuration config = Configuration::Separate;
  double theta0 = 0.0;    // k0 * d, phase between adjacent coupling points
  Delay delay;            // gamma * t_d
  double detuning = 0.0;  // (omega_a - omega_b) / (2 gamma)
  double phi = 0.0;       // relative phase of the initial superposition
};

/// Exact fraction with a positive denominator, always in lowest terms.
class Rational {
 public:
  constexpr Rational(std::int64_t num = 0, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend constexpr Rational operator+(Rational x, Rational y) {
    return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
  }
  friend constexpr Rational operator-(Rational x, Rational y) {
    return {x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_};
  }
  friend constexpr Rational operator*(Rational x, Rational y) {
    return {x.num_ * y.num_, x.den_ * y.den_};
  }
  friend constexpr Rational operator-(Rational x) { return {-x.num_, x.den_}; }
  friend constexpr bool operator==(Rational, Rational) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

std::string to_string(Rational r);

enum class Atom { A = 0, B = 1 };

struct CouplingPoint {
  Atom atom;
  int index;     // 1 or 2
  int position;  // in units of the base spacing d

  friend bool operator==(const CouplingPoint&, const CouplingPoint&) = default;
};

/// Positions of the four coupling points of two two-point giant atoms.
class CouplingLayout {
 public:
  /// Requires exactly one point for each of a1, a2, b1, b2, at distinct
  /// non-negative integer positions. Throws std::invalid_argument otherwise.
  explicit CouplingLayout(std::vector<CouplingPoint> points);

  int position(Atom atom, int index) const;
  std::span<const CouplingPoint> points() const { return points_; }

  /// Labels ordered left to right, e.g. "a1 b1 a2 b2".
  std::string ordering() const;

  /// Same geometry with the atom labels exchanged.
  CouplingLayout with_atoms_swapped() const;

 private:
  std::vector<CouplingPoint> points_;
};

CouplingLayout layout_for(Configuration config);

using RationalMatrix2 = std::array<std::array<Rational, 2>, 2>;

/// Coefficient matrix attached to the retarded amplitude c(t - l t_d).
struct KernelTerm {
  int multiple = 0;
  RationalMatrix2 coefficients{};

  Matrix2c matrix() const;
};

/// The equations of motion read
///   dc/dt = -i Delta c(t) - gamma sum_l M_l e^{i l theta0} c(t - l t_d) Theta(t - l t_d)
/// with Delta = diag(delta, -delta) and M_0 the identity.
class DelayKernel {
 public:
  /// Terms are sorted by multiple; duplicate multiples are merged. Throws
  /// std::invalid_argument when M_0 is not the identity or a multiple is negative.
  explicit DelayKernel(std::vector<KernelTerm> terms);

  std::span<const KernelTerm> terms() const { return terms_; }
  int max_multiple() const { return terms_.back().multiple; }
  /// Zero matrix when the multiple carries no term.
  RationalMatrix2 coefficients(int multiple) const;

  /// Kernel obtained by exchanging the roles of atoms a and b.
  DelayKernel with_atoms_swapped() const;

  /// Markov-limit generator sum_l M_l e^{i l theta0}.
  Matrix2c collapsed(double theta0) const;

  friend bool operator==(const DelayKernel&, const DelayKernel&);

 private:
  std::vector<KernelTerm> terms_;
};

DelayKernel derive_kernel(const CouplingLayout& layout);

/// Kernel term rewritten for the amplitudes alpha_{+-} = (c_a +- c_b)/sqrt(2).
struct DickeTerm {
  int multiple = 0;
  Rational plus;    // coefficient of alpha_+ in the alpha_+ equation
  Rational minus;   // coefficient of alpha_- in the alpha_- equation
  Rational mixing;  // cross coefficient; zero when the basis decouples
};

std::vector<DickeTerm> dicke_coefficients(const DelayKernel& kernel);

}  // namespace giantatom
