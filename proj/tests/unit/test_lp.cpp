#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "semimeander/lp.hpp"
#include "support/lp_oracle.hpp"
#include "support/random.hpp"

using namespace semimeander;

namespace {

Rational r(long p, long q = 1) { return Rational(p, q); }

void expect_certified(const LPProblem& p, const LPSolution& s) {
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_TRUE(p.is_feasible(s.point));
  EXPECT_EQ(p.objective_at(s.point), s.value);
}

}  // namespace

TEST(LP, SingleBound) {
  LPProblem p;
  p.num_vars = 1;
  p.objective = {r(1)};
  p.add_constraint({r(1)}, r(1));
  auto s = solve(p);
  expect_certified(p, s);
  EXPECT_EQ(s.value, r(1));
}

TEST(LP, SingleChordMaxMinAtEight) {
  // Variables (w1, w2, w3, t).
  LPProblem p;
  p.num_vars = 4;
  p.objective = {r(0), r(0), r(0), r(1)};
  p.add_constraint({r(1), r(1), r(1), r(0)}, r(1));
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<Rational> row(4, r(0));
    row[j] = r(1);
    p.add_constraint(row, r(1));
  }
  p.add_constraint({r(-2), r(0), r(0), r(1)}, r(9, 8));
  p.add_constraint({r(0), r(0), r(-2), r(1)}, r(9, 8));
  p.add_constraint({r(0), r(-1), r(0), r(1)}, r(1));
  auto s = solve(p);
  expect_certified(p, s);
  EXPECT_EQ(s.value, r(25, 16));
  EXPECT_EQ(s.point, (std::vector<Rational>{r(7, 32), r(9, 16), r(7, 32), r(25, 16)}));
}

TEST(LP, Infeasible) {
  LPProblem p;
  p.num_vars = 2;
  p.objective = {r(1), r(1)};
  p.add_constraint({r(1), r(1)}, r(-1));
  EXPECT_EQ(solve(p).status, LPStatus::infeasible);
}

TEST(LP, Unbounded) {
  LPProblem p;
  p.num_vars = 2;
  p.objective = {r(1), r(0)};
  p.add_constraint({r(-1), r(1)}, r(3));
  EXPECT_EQ(solve(p).status, LPStatus::unbounded);
}

TEST(LP, NegativeRightHandSideNeedsPhaseOne) {
  // x + y >= 2, x <= 3, y <= 1: max x - y is 3 at (3, 0).
  LPProblem p;
  p.num_vars = 2;
  p.objective = {r(1), r(-1)};
  p.add_constraint({r(-1), r(-1)}, r(-2));
  p.add_constraint({r(1), r(0)}, r(3));
  p.add_constraint({r(0), r(1)}, r(1));
  auto s = solve(p);
  expect_certified(p, s);
  EXPECT_EQ(s.value, r(3));
}

TEST(LP, DegenerateCyclingExampleTerminates) {
  // Beale's classic cycling instance; Bland's rule must terminate.
  LPProblem p;
  p.num_vars = 4;
  p.objective = {r(3, 4), r(-150), r(1, 50), r(-6)};
  p.add_constraint({r(1, 4), r(-60), r(-1, 25), r(9)}, r(0));
  p.add_constraint({r(1, 2), r(-90), r(-1, 50), r(3)}, r(0));
  p.add_constraint({r(0), r(0), r(1), r(0)}, r(1));
  auto s = solve(p);
  expect_certified(p, s);
  EXPECT_EQ(s.value, r(1, 20));
}

TEST(LP, RejectsRowsOfTheWrongLength) {
  LPProblem p;
  p.num_vars = 2;
  EXPECT_THROW(p.add_constraint({r(1)}, r(1)), std::invalid_argument);
}

TEST(LP, AgreesWithVertexEnumerationOracle) {
  std::mt19937 rng(314159);
  int statuses[3] = {0, 0, 0};
  for (int i = 0; i < 300; ++i) {
    LPProblem p = gen::small_lp(rng);
    LPSolution got = solve(p);
    LPSolution want = oracle::brute_force(p);
    ASSERT_EQ(got.status, want.status) << "instance " << i;
    if (got.status == LPStatus::optimal) {
      expect_certified(p, got);
      EXPECT_EQ(got.value, want.value) << "instance " << i;
    }
    ++statuses[static_cast<int>(got.status)];
  }
  // The generator must exercise every outcome.
  EXPECT_GT(statuses[0], 20);
  EXPECT_GT(statuses[1], 5);
  EXPECT_GT(statuses[2], 5);
}

TEST(LP, InvariantUnderReorderingAndRedundantRows) {
  std::mt19937 rng(77);
  int compared = 0;
  for (int i = 0; i < 150; ++i) {
    LPProblem p = gen::small_lp(rng);
    LPSolution base = solve(p);
    if (base.status != LPStatus::optimal) continue;

    LPProblem shuffled = p;
    std::shuffle(shuffled.constraints.begin(), shuffled.constraints.end(), rng);
    std::vector<std::size_t> perm(p.num_vars);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    LPProblem permuted = shuffled;
    for (std::size_t j = 0; j < p.num_vars; ++j) permuted.objective[perm[j]] = shuffled.objective[j];
    for (std::size_t c = 0; c < p.constraints.size(); ++c)
      for (std::size_t j = 0; j < p.num_vars; ++j) permuted.constraints[c].row[perm[j]] = shuffled.constraints[c].row[j];
    EXPECT_EQ(solve(permuted).value, base.value);

    // Sum of two rows is implied by them.
    LPProblem redundant = p;
    auto row = p.constraints[0].row;
    Rational rhs = p.constraints[0].rhs + p.constraints.back().rhs;
    for (std::size_t j = 0; j < p.num_vars; ++j) row[j] += p.constraints.back().row[j];
    redundant.add_constraint(row, rhs);
    EXPECT_EQ(solve(redundant).value, base.value);
    ++compared;
  }
  EXPECT_GT(compared, 20);
}
