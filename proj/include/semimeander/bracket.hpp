#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "semimeander/knot_diagram.hpp"

namespace semimeander {

/// Laurent polynomial in A with integer coefficients.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  static LaurentPolynomial monomial(std::int64_t coeff, int exponent) {
    LaurentPolynomial p;
    p.add(exponent, coeff);
    return p;
  }

  void add(int exponent, std::int64_t coeff) {
    if (coeff == 0) return;
    auto& c = terms_[exponent];
    c += coeff;
    if (c == 0) terms_.erase(exponent);
  }

  const std::map<int, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial out;
    for (const auto& [e1, c1] : a.terms_)
      for (const auto& [e2, c2] : b.terms_) out.add(e1 + e2, c1 * c2);
    return out;
  }
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

  /// A -> A^{-1}.
  LaurentPolynomial invert_variable() const {
    LaurentPolynomial out;
    for (const auto& [e, c] : terms_) out.add(-e, c);
    return out;
  }

  /// Highest power first, e.g. `-A^5 - A^-3 + A^-7`.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      auto [e, c] = *it;
      std::int64_t mag = c < 0 ? -c : c;
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      if (e == 0) {
        out += std::to_string(mag);
        continue;
      }
      if (mag != 1) out += std::to_string(mag);
      out += "A";
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  std::map<int, std::int64_t> terms_;
};

class BracketLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kDefaultBracketLimit = 20;

/// State-sum Kauffman bracket, normalized so the crossingless circle is 1.
/// At X[a,b,c,d] the A-smoothing joins (a,b) and (c,d); the B-smoothing joins
/// (a,d) and (b,c).
inline LaurentPolynomial kauffman_bracket(const KnotDiagram& d, std::size_t limit = kDefaultBracketLimit) {
  const std::size_t n = d.crossing_count();
  if (n > limit)
    throw BracketLimitError(std::to_string(n) + " crossings exceed the bracket limit of " + std::to_string(limit));
  if (n == 0) return LaurentPolynomial::monomial(1, 0);

  // Edge labels to 0..2n-1.
  std::map<int, int> id;
  for (int lbl : d.edge_order()) id.emplace(lbl, static_cast<int>(id.size()));
  std::vector<std::array<int, 4>> xs;
  for (const auto& x : d.crossings()) xs.push_back({id[x[0]], id[x[1]], id[x[2]], id[x[3]]});

  // tally[k][loops] counts states with k A-smoothings and that many loops.
  std::vector<std::vector<std::int64_t>> tally(n + 1, std::vector<std::int64_t>(2 * n + 2, 0));
  std::vector<int> parent(2 * n);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (std::uint64_t state = 0; state < (std::uint64_t{1} << n); ++state) {
    std::iota(parent.begin(), parent.end(), 0);
    int loops = static_cast<int>(2 * n);
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --loops;
      }
    };
    int a_count = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const auto& x = xs[c];
      if (state >> c & 1) {
        unite(x[0], x[3]);
        unite(x[1], x[2]);
      } else {
        ++a_count;
        unite(x[0], x[1]);
        unite(x[2], x[3]);
      }
    }
    ++tally[static_cast<std::size_t>(a_count)][static_cast<std::size_t>(loops)];
  }

  // delta = -A^2 - A^-2
  const LaurentPolynomial delta = LaurentPolynomial::monomial(-1, 2) + LaurentPolynomial::monomial(-1, -2);
  std::vector<LaurentPolynomial> delta_pow{LaurentPolynomial::monomial(1, 0)};
  for (std::size_t k = 1; k <= 2 * n; ++k) delta_pow.push_back(delta_pow.back() * delta);

  LaurentPolynomial out;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t loops = 1; loops < tally[a].size(); ++loops) {
      if (tally[a][loops] == 0) continue;
      int exponent = static_cast<int>(a) - static_cast<int>(n - a);
      out += LaurentPolynomial::monomial(tally[a][loops], exponent) * delta_pow[loops - 1];
    }
  return out;
}

/// (-A^3)^{-w} <D>: invariant under all three Reidemeister moves.
inline LaurentPolynomial normalized_bracket(const KnotDiagram& d, std::size_t limit = kDefaultBracketLimit) {
  int w = d.writhe();
  std::int64_t sign = (w % 2 == 0) ? 1 : -1;
  return LaurentPolynomial::monomial(sign, -3 * w) * kauffman_bracket(d, limit);
}

}  // namespace semimeander
