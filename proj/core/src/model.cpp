#include "giantatom/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace giantatom {

std::string_view to_string(Configuration config) {
  switch (config) {
    case Configuration::Separate:
      return "separate";
    case Configuration::Braided:
      return "braided";
    case Configuration::Nested:
      return "nested";
  }
  return "unknown";
}

std::optional<Configuration> parse_configuration(std::string_view name) {
  if (name == "separate") return Configuration::Separate;
  if (name == "braided") return Configuration::Braided;
  if (name == "nested") return Configuration::Nested;
  return std::nullopt;
}

Delay Delay::finite(double gamma_td) {
  if (!std::isfinite(gamma_td) || gamma_td < 0.0) {
    throw std::invalid_argument("delay must be a finite non-negative number");
  }
  return Delay(gamma_td, false);
}

Delay Delay::infinite() noexcept { return Delay(0.0, true); }

double Delay::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string to_string(Rational r) {
  if (r.den() == 1) return std::to_string(r.num());
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

namespace {

char atom_letter(Atom atom) { return atom == Atom::A ? 'a' : 'b'; }

}  // namespace

CouplingLayout::CouplingLayout(std::vector<CouplingPoint> points) : points_(std::move(points)) {
  if (points_.size() != 4) {
    throw std::invalid_argument("a layout needs exactly four coupling points, got " +
                                std::to_string(points_.size()));
  }
  for (const auto& p : points_) {
    if (p.index != 1 && p.index != 2) {
      throw std::invalid_argument("coupling point index must be 1 or 2");
    }
    if (p.position < 0) {
      throw std::invalid_argument("coupling point positions must be non-negative");
    }
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (points_[i].atom == points_[j].atom && points_[i].index == points_[j].index) {
        throw std::invalid_argument("duplicate coupling point label");
      }
      if (points_[i].position == points_[j].position) {
        throw std::invalid_argument("two coupling points share a position");
      }
    }
  }
  std::sort(points_.begin(), points_.end(),
            [](const CouplingPoint& x, const CouplingPoint& y) { return x.position < y.position; });
}

int CouplingLayout::position(Atom atom, int index) const {
  for (const auto& p : points_) {
    if (p.atom == atom && p.index == index) return p.position;
  }
  throw std::out_of_range("no such coupling point");
}

std::string CouplingLayout::ordering() const {
  std::string out;
  for (const auto& p : points_) {
    if (!out.empty()) out += ' ';
    out += atom_letter(p.atom);
    out += static_cast<char>('0' + p.index);
  }
  return out;
}

CouplingLayout CouplingLayout::with_atoms_swapped() const {
  std::vector<CouplingPoint> swapped(points_.begin(), points_.end());
  for (auto& p : swapped) p.atom = p.atom == Atom::A ? Atom::B : Atom::A;
  return CouplingLayout(std::move(swapped));
}

CouplingLayout layout_for(Configuration config) {
  using enum Atom;
  switch (config) {
    case Configuration::Separate:
      return CouplingLayout({{A, 1, 0}, {A, 2, 1}, {B, 1, 2}, {B, 2, 3}});
    case Configuration::Braided:
      return CouplingLayout({{A, 1, 0}, {B, 1, 1}, {A, 2, 2}, {B, 2, 3}});
    case Configuration::Nested:
      return CouplingLayout({{A, 1, 0}, {B, 1, 1}, {B, 2, 2}, {A, 2, 3}});
  }
  throw std::invalid_argument("unknown configuration");
}

Matrix2c KernelTerm::matrix() const {
  Matrix2c m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m(i, j) = coefficients[i][j].to_double();
  }
  return m;
}

DelayKernel::DelayKernel(std::vector<KernelTerm> terms) {
  std::map<int, RationalMatrix2> merged;
  for (const auto& t : terms) {
    if (t.multiple < 0) throw std::invalid_argument("delay multiples must be non-negative");
    auto& m = merged[t.multiple];
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) m[i][j] = m[i][j] + t.coefficients[i][j];
    }
  }
  const auto zero = merged.find(0);
  const RationalMatrix2 identity{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
  if (zero == merged.end() || zero->second != identity) {
    throw std::invalid_argument("the instantaneous kernel term must be the identity");
  }
  terms_.reserve(merged.size());
  for (const auto& [l, m] : merged) terms_.push_back({l, m});
}

RationalMatrix2 DelayKernel::coefficients(int multiple) const {
  for (const auto& t : terms_) {
    if (t.multiple == multiple) return t.coefficients;
  }
  return {};
}

DelayKernel DelayKernel::with_atoms_swapped() const {
  std::vector<KernelTerm> swapped;
  swapped.reserve(terms_.size());
  for (const auto& t : terms_) {
    KernelTerm s{t.multiple, {}};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) s.coefficients[i][j] = t.coefficients[1 - i][1 - j];
    }
    swapped.push_back(s);
  }
  return DelayKernel(std::move(swapped));
}

Matrix2c DelayKernel::collapsed(double theta0) const {
  Matrix2c sum = Matrix2c::Zero();
  for (const auto& t : terms_) {
    sum += t.matrix() * std::polar(1.0, t.multiple * theta0);
  }
  return sum;
}

bool operator==(const DelayKernel& x, const DelayKernel& y) {
  if (x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t k = 0; k < x.terms_.size(); ++k) {
    if (x.terms_[k].multiple != y.terms_[k].multiple) return false;
    if (x.terms_[k].coefficients != y.terms_[k].coefficients) return false;
  }
  return true;
}

DelayKernel derive_kernel(const CouplingLayout& layout) {
  std::vector<KernelTerm> terms;
  terms.push_back({0, {{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}}});

  // Re-absorption of a photon emitted at the other point of the same atom.
  for (int atom = 0; atom < 2; ++atom) {
    const auto a = static_cast<Atom>(atom);
    KernelTerm self{std::abs(layout.position(a, 1) - layout.position(a, 2)), {}};
    self.coefficients[atom][atom] = Rational(1);
    terms.push_back(self);
  }

  // Exchange between the atoms, one path per pair of points, weight 1/2 each.
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 2; ++m) {
      KernelTerm cross{std::abs(layout.position(Atom::A, n) - layout.position(Atom::B, m)), {}};
      cross.coefficients[0][1] = Rational(1, 2);
      cross.coefficients[1][0] = Rational(1, 2);
      terms.push_back(cross);
    }
  }
  return DelayKernel(std::move(terms));
}

std::vector<DickeTerm> dicke_coefficients(const DelayKernel& kernel) {
  std::vector<DickeTerm> out;
  out.reserve(kernel.terms().size());
  const Rational half(1, 2);
  for (const auto& t : kernel.terms()) {
    const auto& c = t.coefficients;
    const Rational p = c[0][0];
    const Rational q = c[1][1];
    const Rational r = c[0][1];
    const Rational rt = c[1][0];
    out.push_back({t.multiple, half * (p + q + r + rt), half * (p + q - r - rt),
                   half * (p - q - r + rt)});
  }
  return out;
}

}  // namespace giantatom
