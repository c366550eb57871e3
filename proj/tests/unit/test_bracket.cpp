#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "semimeander/bracket.hpp"
#include "support/corpus.hpp"

using namespace semimeander;

namespace {

using Poly = LaurentPolynomial;

// |<D>| at A = exp(i pi / 4), where t = A^-4 = -1: the knot determinant.
long determinant(const Poly& p) {
  std::complex<double> z;
  for (const auto& [e, c] : p.terms()) z += static_cast<double>(c) * std::polar(1.0, e * std::numbers::pi / 4);
  return std::lround(std::abs(z));
}

// Adds a curl on the edge with the largest label; `positive` picks the
// curl's handedness.
KnotDiagram with_kink(const KnotDiagram& d, bool positive) {
  auto xs = d.crossings();
  int n = 0;
  for (const auto& x : xs)
    for (int l : x) n = std::max(n, l);
  Port head = d.head(d.edge_index(n));
  xs[static_cast<std::size_t>(head.crossing)][static_cast<std::size_t>(head.slot)] = n + 2;
  xs.push_back(positive ? std::array<int, 4>{n, n + 2, n + 1, n + 1} : std::array<int, 4>{n, n + 1, n + 1, n + 2});
  return KnotDiagram(std::move(xs));
}

}  // namespace

TEST(Bracket, Unknot) {
  KnotDiagram circle(std::vector<std::array<int, 4>>{});
  EXPECT_EQ(kauffman_bracket(circle), Poly::monomial(1, 0));
  EXPECT_EQ(normalized_bracket(circle), Poly::monomial(1, 0));
}

TEST(Bracket, SingleKink) {
  // Two states: one gives two loops, the other one loop.
  auto d = KnotDiagram::parse_pd("X[1,1,2,2]");
  auto b = kauffman_bracket(d);
  EXPECT_TRUE(b == Poly::monomial(-1, 3) || b == Poly::monomial(-1, -3)) << b.str();
  EXPECT_EQ(b, Poly::monomial(-1, 3 * d.writhe()));
  EXPECT_EQ(normalized_bracket(d), Poly::monomial(1, 0));
  EXPECT_EQ(normalized_bracket(d.mirror()), Poly::monomial(1, 0));
}

TEST(Bracket, PolynomialPrinting) {
  Poly p = Poly::monomial(-1, 5) + Poly::monomial(-1, -3) + Poly::monomial(1, -7) + Poly::monomial(2, 0);
  EXPECT_EQ(p.str(), "-A^5 + 2 - A^-3 + A^-7");
  EXPECT_EQ(Poly().str(), "0");
  EXPECT_EQ((Poly::monomial(1, 1) + Poly::monomial(-1, 1)).is_zero(), true);
}

TEST(Bracket, TrefoilAgainstItsMirror) {
  auto d = KnotDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
  auto v = normalized_bracket(d);
  EXPECT_EQ(normalized_bracket(d.mirror()), v.invert_variable());
  EXPECT_NE(v, v.invert_variable());  // the trefoil is chiral
  EXPECT_EQ(v.terms().size(), 3u);
}

TEST(Bracket, CorpusDeterminants) {
  for (const auto& e : corpus::load()) {
    auto b = kauffman_bracket(e.diagram);
    EXPECT_EQ(determinant(b), e.determinant) << e.name;
    EXPECT_EQ(normalized_bracket(e.diagram.mirror()), normalized_bracket(e.diagram).invert_variable()) << e.name;
  }
}

TEST(Bracket, FigureEightIsAmphichiral) {
  auto d = KnotDiagram::parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]");
  auto v = normalized_bracket(d);
  EXPECT_EQ(v, v.invert_variable());
}

TEST(Bracket, NormalizationAbsorbsKinks) {
  for (const auto& e : corpus::load()) {
    if (e.diagram.crossing_count() > 7) continue;
    auto base = normalized_bracket(e.diagram);
    for (bool positive : {true, false}) {
      auto k = with_kink(e.diagram, positive);
      EXPECT_EQ(k.writhe(), e.diagram.writhe() + (positive ? 1 : -1)) << e.name;
      EXPECT_EQ(normalized_bracket(k), base) << e.name;
      EXPECT_EQ(kauffman_bracket(k), kauffman_bracket(e.diagram) * Poly::monomial(-1, positive ? 3 : -3)) << e.name;
    }
  }
}

TEST(Bracket, SizeLimit) {
  auto d = KnotDiagram::parse_pd("X[1,8,2,9] X[3,10,4,11] X[5,12,6,13] X[7,14,8,1] X[9,2,10,3] X[11,4,12,5] X[13,6,14,7]");
  EXPECT_THROW(kauffman_bracket(d, 6), BracketLimitError);
  EXPECT_NO_THROW(kauffman_bracket(d, 7));
}
