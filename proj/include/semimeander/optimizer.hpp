#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "semimeander/chord_diagram.hpp"
#include "semimeander/lp.hpp"
#include "semimeander/transforms.hpp"

namespace semimeander {

/// Final basepoint forms over all elimination sequences, with coefficient-wise
/// dominated forms removed. Sorted, so equal sets compare equal.
template <class Scalar>
struct BasicFunctionSet {
  std::vector<BasicLinearForm<Scalar>> forms;
  std::size_t weight_count = 0;  // number of weight symbols w_1..w_N
  int source_length = 0;

  friend bool operator==(const BasicFunctionSet&, const BasicFunctionSet&) = default;
};

using FunctionSet = BasicFunctionSet<Rational>;
using IntFunctionSet = BasicFunctionSet<std::int64_t>;

/// Keeps only forms not dominated by another; insertion is incremental so the
/// live set stays small during the search.
template <class Scalar>
class MinimalFormSet {
 public:
  using Form = BasicLinearForm<Scalar>;

  void insert(const Form& g) {
    for (const auto& f : forms_)
      if (f == g || g.dominates(f)) return;
    std::erase_if(forms_, [&](const Form& f) { return f.dominates(g); });
    forms_.push_back(g);
  }

  std::vector<Form> take_sorted() {
    std::sort(forms_.begin(), forms_.end());
    return std::move(forms_);
  }

 private:
  std::vector<Form> forms_;
};

/// Drops every form that dominates another form of the input.
template <class Scalar>
std::vector<BasicLinearForm<Scalar>> prune_dominated(const std::vector<BasicLinearForm<Scalar>>& forms) {
  MinimalFormSet<Scalar> set;
  for (const auto& f : forms) set.insert(f);
  return set.take_sorted();
}

namespace detail {

template <class Scalar>
class EliminationSearch {
 public:
  using Diagram = BasicChordDiagram<Scalar>;

  void run(const Diagram& d) {
    if (!seen_.insert(d).second) return;
    if (d.length() == 0) {
      finals_.insert(d.basepoint());
      return;
    }
    for (const Move& mv : applicable_moves(d)) run(apply_move(d, mv));
  }

  std::vector<BasicLinearForm<Scalar>> result() { return finals_.take_sorted(); }
  std::size_t states_visited() const { return seen_.size(); }

 private:
  std::unordered_set<Diagram> seen_;
  MinimalFormSet<Scalar> finals_;
};

}  // namespace detail

/// Depth-first search over all elimination sequences (T1-left, T1-right, then
/// T2 moves left to right). Identical intermediate states are expanded once;
/// dominance pruning applies only to completed forms.
template <class Scalar>
BasicFunctionSet<Scalar> elimination_functions(const BasicChordDiagram<Scalar>& d) {
  detail::EliminationSearch<Scalar> search;
  search.run(d);
  return {search.result(), d.weight_count(), d.length()};
}

/// Rational diagrams run the search on machine integers whenever every
/// coefficient is integral (always true for fresh symbolic diagrams).
inline FunctionSet elimination_functions(const ChordDiagram& d) {
  std::optional<IntChordDiagram> as_int;
  try {
    as_int = d.convert<std::int64_t>();
  } catch (const std::domain_error&) {
  }
  if (!as_int) {
    detail::EliminationSearch<Rational> search;
    search.run(d);
    return {search.result(), d.weight_count(), d.length()};
  }
  IntFunctionSet fs = elimination_functions(*as_int);
  FunctionSet out{{}, fs.weight_count, fs.source_length};
  out.forms.reserve(fs.forms.size());
  for (const auto& f : fs.forms) out.forms.push_back(f.convert<Rational>());
  return out;
}

/// Max-min LP over normalized weights w'_j = w_j / m:
///   maximize t
///   s.t. sum_j w'_j <= 1,  0 <= w'_j <= 1,
///        t <= 1 + sum_j a_ij w'_j + a_i0 / m   for every form f_i.
/// Variables are (w'_1, .., w'_N, t). For m = infinity the a_i0 / m term is 0.
template <class Scalar>
LPProblem build_lp(const BasicFunctionSet<Scalar>& fs, const BaseWeight& m) {
  using Traits = ScalarTraits<Scalar>;
  const std::size_t n = fs.weight_count;
  LPProblem p;
  p.num_vars = n + 1;
  p.objective.assign(n + 1, Rational(0));
  p.objective[n] = Rational(1);

  std::vector<Rational> sum_row(n + 1, Rational(1));
  sum_row[n] = Rational(0);
  p.add_constraint(std::move(sum_row), Rational(1));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> row(n + 1, Rational(0));
    row[j] = Rational(1);
    p.add_constraint(std::move(row), Rational(1));
  }
  for (const auto& f : fs.forms) {
    if (!(f.m_coeff() == Scalar(1))) throw std::invalid_argument("form " + f.str() + " does not carry m exactly once");
    if (f.weight_extent() > n) throw std::invalid_argument("form " + f.str() + " uses more weight symbols than the diagram");
    std::vector<Rational> row(n + 1, Rational(0));
    for (std::size_t j = 1; j <= n; ++j) row[j - 1] = -Traits::to_rational(f.w_coeff(j));
    row[n] = Rational(1);
    Rational rhs(1);
    if (!m.is_infinite()) rhs += Traits::to_rational(f.constant()) / m.value();
    p.add_constraint(std::move(row), std::move(rhs));
  }
  return p;
}

template <class Scalar>
Rational t_hat(const BasicFunctionSet<Scalar>& fs, const BaseWeight& m) {
  LPSolution sol = solve(build_lp(fs, m));
  if (sol.status != LPStatus::optimal) throw std::logic_error("max-min program is not bounded and feasible");
  return sol.value;
}

/// Worst-case normalized complexity of eliminating every chord from `d`.
inline Rational t_hat(const ChordDiagram& d, const BaseWeight& m) { return t_hat(elimination_functions(d), m); }

}  // namespace semimeander
