#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semimeander/rational.hpp"

namespace semimeander {

/// maximize objective . x  subject to  row . x <= rhs for every constraint,
/// x >= 0.
struct LPProblem {
  struct Constraint {
    std::vector<Rational> row;
    Rational rhs;
  };

  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;

  void add_constraint(std::vector<Rational> row, Rational rhs) {
    if (row.size() != num_vars) throw std::invalid_argument("constraint row has the wrong length");
    constraints.push_back({std::move(row), std::move(rhs)});
  }

  void validate() const {
    if (objective.size() != num_vars) throw std::invalid_argument("objective has the wrong length");
    for (const auto& c : constraints)
      if (c.row.size() != num_vars) throw std::invalid_argument("constraint row has the wrong length");
  }

  bool is_feasible(const std::vector<Rational>& x) const {
    if (x.size() != num_vars) return false;
    for (const auto& v : x)
      if (v.sign() < 0) return false;
    for (const auto& c : constraints) {
      Rational lhs;
      for (std::size_t j = 0; j < num_vars; ++j)
        if (!c.row[j].is_zero()) lhs += c.row[j] * x[j];
      if (lhs > c.rhs) return false;
    }
    return true;
  }

  Rational objective_at(const std::vector<Rational>& x) const {
    Rational z;
    for (std::size_t j = 0; j < num_vars; ++j)
      if (!objective[j].is_zero()) z += objective[j] * x[j];
    return z;
  }
};

enum class LPStatus { optimal, infeasible, unbounded };

inline std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
  }
  return "?";
}

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  Rational value;               // optimal only
  std::vector<Rational> point;  // optimal only
};

namespace detail {

// Dictionary form: x_basis[i] = b[i] - sum_j a[i][j] * x_nonbasis[j],
//                  z = z0 + sum_j c[j] * x_nonbasis[j].
// Variables: 0..n-1 structural, n..n+m-1 slacks, n+m the phase-one auxiliary.
class Dictionary {
 public:
  explicit Dictionary(const LPProblem& p) : n_(p.num_vars), m_(p.constraints.size()) {
    basis_.resize(m_);
    b_.resize(m_);
    a_.assign(m_, std::vector<Rational>(n_));
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      b_[i] = p.constraints[i].rhs;
      a_[i] = p.constraints[i].row;
    }
    nonbasis_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) nonbasis_[j] = j;
    c_.assign(n_, Rational(0));
  }

  LPSolution solve(const LPProblem& p) {
    if (!phase_one()) return {LPStatus::infeasible, {}, {}};
    set_objective(p.objective);
    if (!run_bland()) return {LPStatus::unbounded, {}, {}};
    LPSolution sol;
    sol.status = LPStatus::optimal;
    sol.value = z0_;
    sol.point.assign(n_, Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < n_) sol.point[basis_[i]] = b_[i];
    return sol;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const Rational inv = Rational(1) / a_[r][s];
    std::vector<Rational>& row = a_[r];
    b_[r] *= inv;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (j != s && !row[j].is_zero()) row[j] *= inv;
    row[s] = inv;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r || a_[i][s].is_zero()) continue;
      const Rational f = a_[i][s];
      b_[i] -= f * b_[r];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (j != s && !row[j].is_zero()) a_[i][j] -= f * row[j];
      a_[i][s] = -(f * inv);
    }
    if (!c_[s].is_zero()) {
      const Rational f = c_[s];
      z0_ += f * b_[r];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (j != s && !row[j].is_zero()) c_[j] -= f * row[j];
      c_[s] = -(f * inv);
    }
    std::swap(basis_[r], nonbasis_[s]);
  }

  // Bland's rule: lowest-index improving variable enters; the ratio test
  // breaks ties by lowest basic index. Returns false when unbounded.
  bool run_bland() {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < c_.size(); ++j)
        if (c_[j].sign() > 0 && (!enter || nonbasis_[j] < nonbasis_[*enter])) enter = j;
      if (!enter) return true;
      std::size_t s = *enter;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][s].sign() <= 0) continue;
        Rational ratio = b_[i] / a_[i][s];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, s);
    }
  }

  bool phase_one() {
    std::optional<std::size_t> worst;
    for (std::size_t i = 0; i < m_; ++i)
      if (b_[i].sign() < 0 && (!worst || b_[i] < b_[*worst])) worst = i;
    if (!worst) return true;

    const std::size_t aux = n_ + m_;
    for (auto& row : a_) row.push_back(Rational(-1));
    nonbasis_.push_back(aux);
    c_.assign(nonbasis_.size(), Rational(0));
    c_.back() = Rational(-1);
    z0_ = Rational(0);
    pivot(*worst, nonbasis_.size() - 1);
    run_bland();  // bounded above by 0
    if (z0_.sign() < 0) return false;

    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] != aux) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < nonbasis_.size(); ++j)
        if (!a_[i][j].is_zero() && (!col || nonbasis_[j] < nonbasis_[*col])) col = j;
      if (col) {
        pivot(i, *col);
      } else {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
      break;
    }
    for (std::size_t j = 0; j < nonbasis_.size(); ++j) {
      if (nonbasis_[j] != aux) continue;
      for (auto& row : a_) row.erase(row.begin() + static_cast<std::ptrdiff_t>(j));
      nonbasis_.erase(nonbasis_.begin() + static_cast<std::ptrdiff_t>(j));
      break;
    }
    return true;
  }

  void set_objective(const std::vector<Rational>& objective) {
    c_.assign(nonbasis_.size(), Rational(0));
    z0_ = Rational(0);
    for (std::size_t k = 0; k < n_; ++k) {
      if (objective[k].is_zero()) continue;
      bool found = false;
      for (std::size_t j = 0; j < nonbasis_.size() && !found; ++j)
        if (nonbasis_[j] == k) {
          c_[j] += objective[k];
          found = true;
        }
      for (std::size_t i = 0; i < basis_.size() && !found; ++i)
        if (basis_[i] == k) {
          z0_ += objective[k] * b_[i];
          for (std::size_t j = 0; j < nonbasis_.size(); ++j)
            if (!a_[i][j].is_zero()) c_[j] -= objective[k] * a_[i][j];
          found = true;
        }
    }
  }

  std::size_t n_, m_;
  std::vector<std::size_t> basis_, nonbasis_;
  std::vector<Rational> b_, c_;
  std::vector<std::vector<Rational>> a_;
  Rational z0_;
};

}  // namespace detail

/// Exact two-phase simplex over the rationals with Bland's pivot rule.
/// Deterministic; the optimal point is re-checked exactly before returning.
inline LPSolution solve(const LPProblem& p) {
  p.validate();
  detail::Dictionary dict(p);
  LPSolution sol = dict.solve(p);
  if (sol.status == LPStatus::optimal) {
    if (!p.is_feasible(sol.point) || !(p.objective_at(sol.point) == sol.value))
      throw std::logic_error("simplex returned an inconsistent optimum");
  }
  return sol;
}

}  // namespace semimeander
