#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "semimeander/tables.hpp"

namespace semimeander {

/// Window length used for the D factor of the bound.
inline constexpr int kBoundWindow = 9;

class BoundRangeError : public std::out_of_range {
 public:
  explicit BoundRangeError(int n)
      : std::out_of_range("crossing number " + std::to_string(n) +
                          " is out of range: the bound needs n > 10, below that cr2 is known exactly") {}
};

/// Exact integer power of a rational.
inline Rational rational_pow(const Rational& base, unsigned e) {
  Rational out(1);
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

/// 8 * C_{d,8} / D_{9,8}^{(d+8)/9}: the coefficient contributed by residue d.
/// Its ninth power (8 C_d)^9 / D^{d+8} is rational, so comparisons are exact.
struct CoefficientCandidate {
  int d = 0;
  Rational ninth_power;
  double value = 0;
};

inline std::vector<CoefficientCandidate> coefficient_candidates(const CostTable& t = reference_table()) {
  const BaseWeight eight(8);
  const Rational dk = t.value(Family::D, kBoundWindow, eight);
  std::vector<CoefficientCandidate> out;
  for (int d = 0; d < kBoundWindow; ++d) {
    Rational lead = Rational(8) * t.value(Family::C, d, eight);
    Rational p9 = rational_pow(lead, kBoundWindow) / rational_pow(dk, static_cast<unsigned>(d + 8));
    double v = lead.to_double() / std::pow(dk.to_double(), (d + 8) / 9.0);
    out.push_back({d, std::move(p9), v});
  }
  return out;
}

/// The residue attaining the largest coefficient (lowest d on ties).
inline CoefficientCandidate best_coefficient(const CostTable& t = reference_table()) {
  auto cs = coefficient_candidates(t);
  CoefficientCandidate best = cs.front();
  for (const auto& c : cs)
    if (best.ninth_power < c.ninth_power) best = c;
  return best;
}

inline double growth_base(const CostTable& t = reference_table()) {
  return std::pow(t.value(Family::D, kBoundWindow, BaseWeight(8)).to_double(), 1.0 / kBoundWindow);
}

struct BoundReport {
  int n = 0;
  int d = 0;                 // (n - 8) mod 9
  int blocks = 0;            // floor((n - 8) / 9)
  Rational exact;            // 8 * D_{9,8}^blocks * C_{d,8}
  double coefficient = 0;    // max over residues
  double base = 0;           // D_{9,8}^{1/9}
  double closed_form = 0;    // coefficient * base^n
  Rational meander;          // 4 * exact
  double meander_closed = 0;
  Rational potholder;        // (2 * meander - 1)^2
  double potholder_closed = 0;
};

inline BoundReport bound_semimeander(int n, const CostTable& t = reference_table()) {
  if (n <= 10) throw BoundRangeError(n);
  const BaseWeight eight(8);
  BoundReport r;
  r.n = n;
  r.d = (n - 8) % kBoundWindow;
  r.blocks = (n - 8) / kBoundWindow;
  r.exact = Rational(8) * rational_pow(t.value(Family::D, kBoundWindow, eight), static_cast<unsigned>(r.blocks)) *
            t.value(Family::C, r.d, eight);
  r.coefficient = best_coefficient(t).value;
  r.base = growth_base(t);
  r.closed_form = r.coefficient * std::pow(r.base, n);
  r.meander = Rational(4) * r.exact;
  r.meander_closed = 4 * r.closed_form;
  Rational inner = Rational(2) * r.meander - Rational(1);
  r.potholder = inner * inner;
  double inner_closed = 2 * r.meander_closed - 1;
  r.potholder_closed = inner_closed * inner_closed;
  return r;
}

inline Rational bound_meander(int n, const CostTable& t = reference_table()) { return bound_semimeander(n, t).meander; }
inline Rational bound_potholder(int n, const CostTable& t = reference_table()) {
  return bound_semimeander(n, t).potholder;
}

/// Six significant digits.
inline std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace semimeander
