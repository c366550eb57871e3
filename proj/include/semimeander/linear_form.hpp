#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "semimeander/rational.hpp"

namespace semimeander {

/// Linear expression  m_coeff * m + sum_j w_j * w_coeff(j) + constant  over the
/// basepoint symbol m and the segment weight symbols w_1, w_2, ...
///
/// Weight coefficients are stored densely; indices past the end are zero, so
/// forms over different numbers of symbols compare as expected.
template <class Scalar>
class BasicLinearForm {
 public:
  using scalar_type = Scalar;
  using Traits = ScalarTraits<Scalar>;

  BasicLinearForm() = default;

  static BasicLinearForm constant_form(Scalar c) {
    BasicLinearForm f;
    f.constant_ = std::move(c);
    return f;
  }
  static BasicLinearForm basepoint_symbol() {
    BasicLinearForm f;
    f.m_coeff_ = Scalar(1);
    return f;
  }
  /// The pure symbol w_j (1-based).
  static BasicLinearForm weight_symbol(std::size_t j) {
    if (j == 0) throw std::out_of_range("weight symbols are 1-based");
    BasicLinearForm f;
    f.w_coeffs_.assign(j, Scalar(0));
    f.w_coeffs_[j - 1] = Scalar(1);
    return f;
  }

  const Scalar& m_coeff() const { return m_coeff_; }
  const Scalar& constant() const { return constant_; }
  /// Coefficient of w_j (1-based); zero past the stored range.
  Scalar w_coeff(std::size_t j) const {
    if (j == 0 || j > w_coeffs_.size()) return Scalar(0);
    return w_coeffs_[j - 1];
  }
  /// Highest weight index with a nonzero coefficient.
  std::size_t weight_extent() const {
    std::size_t n = w_coeffs_.size();
    while (n > 0 && Traits::is_zero(w_coeffs_[n - 1])) --n;
    return n;
  }

  void set_m_coeff(Scalar v) { m_coeff_ = std::move(v); }
  void set_constant(Scalar v) { constant_ = std::move(v); }
  void set_w_coeff(std::size_t j, Scalar v) {
    if (j == 0) throw std::out_of_range("weight symbols are 1-based");
    if (j > w_coeffs_.size()) w_coeffs_.resize(j, Scalar(0));
    w_coeffs_[j - 1] = std::move(v);
  }

  bool is_zero() const {
    return Traits::is_zero(m_coeff_) && Traits::is_zero(constant_) && weight_extent() == 0;
  }
  bool has_negative_coefficient() const {
    if (Traits::is_negative(m_coeff_) || Traits::is_negative(constant_)) return true;
    return std::any_of(w_coeffs_.begin(), w_coeffs_.end(), [](const Scalar& s) { return Traits::is_negative(s); });
  }
  /// No symbolic part at all.
  bool is_concrete() const { return Traits::is_zero(m_coeff_) && weight_extent() == 0; }

  BasicLinearForm& operator+=(const BasicLinearForm& o) {
    m_coeff_ += o.m_coeff_;
    constant_ += o.constant_;
    if (o.w_coeffs_.size() > w_coeffs_.size()) w_coeffs_.resize(o.w_coeffs_.size(), Scalar(0));
    for (std::size_t j = 0; j < o.w_coeffs_.size(); ++j) w_coeffs_[j] += o.w_coeffs_[j];
    return *this;
  }
  BasicLinearForm& operator*=(const Scalar& s) {
    m_coeff_ *= s;
    constant_ *= s;
    for (auto& c : w_coeffs_) c *= s;
    return *this;
  }
  friend BasicLinearForm operator+(BasicLinearForm a, const BasicLinearForm& b) { return a += b; }
  friend BasicLinearForm operator*(BasicLinearForm a, const Scalar& s) { return a *= s; }
  friend BasicLinearForm operator*(const Scalar& s, BasicLinearForm a) { return a *= s; }

  friend bool operator==(const BasicLinearForm& a, const BasicLinearForm& b) {
    if (!(a.m_coeff_ == b.m_coeff_) || !(a.constant_ == b.constant_)) return false;
    std::size_t n = std::max(a.w_coeffs_.size(), b.w_coeffs_.size());
    for (std::size_t j = 1; j <= n; ++j)
      if (!(a.w_coeff(j) == b.w_coeff(j))) return false;
    return true;
  }

  /// Total order used for deterministic output: m, then w_1.., then constant.
  friend bool operator<(const BasicLinearForm& a, const BasicLinearForm& b) {
    if (!(a.m_coeff_ == b.m_coeff_)) return a.m_coeff_ < b.m_coeff_;
    std::size_t n = std::max(a.w_coeffs_.size(), b.w_coeffs_.size());
    for (std::size_t j = 1; j <= n; ++j) {
      Scalar x = a.w_coeff(j), y = b.w_coeff(j);
      if (!(x == y)) return x < y;
    }
    return a.constant_ < b.constant_;
  }

  /// `*this` is coefficient-wise >= `o` with at least one strict inequality.
  bool dominates(const BasicLinearForm& o) const {
    bool strict = false;
    auto step = [&](const Scalar& x, const Scalar& y) {
      if (x < y) return false;
      if (y < x) strict = true;
      return true;
    };
    if (!step(m_coeff_, o.m_coeff_) || !step(constant_, o.constant_)) return false;
    std::size_t n = std::max(w_coeffs_.size(), o.w_coeffs_.size());
    for (std::size_t j = 1; j <= n; ++j)
      if (!step(w_coeff(j), o.w_coeff(j))) return false;
    return strict;
  }

  /// Substitutes values for m and w_1..; missing weights count as zero.
  Rational evaluate(const Rational& m, const std::vector<Rational>& weights) const {
    Rational total = Traits::to_rational(constant_) + Traits::to_rational(m_coeff_) * m;
    for (std::size_t j = 0; j < w_coeffs_.size(); ++j) {
      if (Traits::is_zero(w_coeffs_[j])) continue;
      Rational w = j < weights.size() ? weights[j] : Rational(0);
      total += Traits::to_rational(w_coeffs_[j]) * w;
    }
    return total;
  }

  /// Human-readable `m + 2w1 + 1`; `0` for the zero form.
  std::string str() const { return render(" + ", "m"); }
  /// Compact token form used inside Gauss-code brackets: `m+2w1+1`.
  std::string token() const { return render("+", "m"); }

  std::size_t hash() const {
    std::size_t h = Traits::hash(m_coeff_) * 1000003u ^ Traits::hash(constant_);
    for (std::size_t j = 1; j <= weight_extent(); ++j) h = h * 1000003u ^ (Traits::hash(w_coeffs_[j - 1]) + j);
    return h;
  }

  template <class Other>
  BasicLinearForm<Other> convert() const {
    BasicLinearForm<Other> out;
    out.set_m_coeff(convert_scalar<Other>(m_coeff_));
    out.set_constant(convert_scalar<Other>(constant_));
    for (std::size_t j = 1; j <= weight_extent(); ++j) out.set_w_coeff(j, convert_scalar<Other>(w_coeffs_[j - 1]));
    return out;
  }

 private:
  template <class Other>
  static Other convert_scalar(const Scalar& s) {
    if constexpr (std::is_same_v<Other, Scalar>) {
      return s;
    } else if constexpr (std::is_same_v<Other, Rational>) {
      return Traits::to_rational(s);
    } else {
      Rational r = Traits::to_rational(s);
      if (!r.is_integer() || !r.get().get_num().fits_slong_p())
        throw std::domain_error("form coefficient is not a machine integer");
      return static_cast<Other>(r.get().get_num().get_si());
    }
  }

  std::string render(const char* sep, const char* m_name) const {
    std::string out;
    auto term = [&](const Scalar& c, const std::string& sym) {
      if (Traits::is_zero(c)) return;
      if (!out.empty()) out += sep;
      std::string coeff = Traits::str(c);
      if (sym.empty()) {
        out += coeff;
      } else {
        out += (coeff == "1" ? std::string() : coeff) + sym;
      }
    };
    term(m_coeff_, m_name);
    for (std::size_t j = 0; j < w_coeffs_.size(); ++j) term(w_coeffs_[j], "w" + std::to_string(j + 1));
    term(constant_, "");
    return out.empty() ? "0" : out;
  }

  Scalar m_coeff_{0};
  std::vector<Scalar> w_coeffs_;
  Scalar constant_{0};
};

using LinearForm = BasicLinearForm<Rational>;
/// Integer-coefficient forms: every form reachable from a fresh symbolic
/// diagram has integer coefficients, so the search runs on machine integers.
using IntLinearForm = BasicLinearForm<std::int64_t>;

}  // namespace semimeander

template <class Scalar>
struct std::hash<semimeander::BasicLinearForm<Scalar>> {
  std::size_t operator()(const semimeander::BasicLinearForm<Scalar>& f) const noexcept { return f.hash(); }
};
