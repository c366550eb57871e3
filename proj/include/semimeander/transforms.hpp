#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semimeander/chord_diagram.hpp"

namespace semimeander {

/// Transformation I pulls the chord end next to the basepoint onto the
/// selected arc; Transformation II unrolls a loop formed by two adjacent ends
/// of one chord.
///
/// `t1_left` acts on x_1, the symbol right after the basepoint in reading
/// order (its weight is segment 1); `t1_right` acts on the symbol right
/// before the basepoint. For `t2`, `position` i is 1-based over tokens and
/// names the pair (token i-1, token i) whose middle segment is segment i.
enum class MoveKind { t1_left, t1_right, t2 };

struct Move {
  MoveKind kind = MoveKind::t1_left;
  std::size_t position = 0;

  static Move t1_left() { return {MoveKind::t1_left, 0}; }
  static Move t1_right() { return {MoveKind::t1_right, 0}; }
  static Move t2(std::size_t i) { return {MoveKind::t2, i}; }

  friend bool operator==(const Move&, const Move&) = default;

  std::string str() const {
    switch (kind) {
      case MoveKind::t1_left: return "T1-left";
      case MoveKind::t1_right: return "T1-right";
      case MoveKind::t2: return "T2@" + std::to_string(position);
    }
    return "?";
  }
};

class EmptyDiagramError : public std::domain_error {
 public:
  EmptyDiagramError() : std::domain_error("diagram has no chords left to eliminate") {}
};

class InvalidMoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Token index targeted by a T1 move, if that side of the basepoint has one.
template <class Scalar>
std::optional<std::size_t> t1_target(const BasicChordDiagram<Scalar>& d, bool left) {
  const auto& tokens = d.tokens();
  if (d.is_circular()) {
    if (tokens.empty()) return std::nullopt;
    return left ? 0 : tokens.size() - 1;
  }
  std::size_t b = d.basepoint_index();
  if (left) return b + 1 < tokens.size() ? std::optional<std::size_t>(b + 1) : std::nullopt;
  return b > 0 ? std::optional<std::size_t>(b - 1) : std::nullopt;
}

// Removes the tokens at `first` and (optionally) `second`; each removed
// token's two flanking segments merge. `extra` lands on the merge at `second`.
template <class Scalar>
BasicChordDiagram<Scalar> remove_tokens(const BasicChordDiagram<Scalar>& d, BasicLinearForm<Scalar> basepoint,
                                        std::size_t first, std::optional<std::size_t> second,
                                        const BasicLinearForm<Scalar>* extra) {
  using Form = BasicLinearForm<Scalar>;
  const auto& tokens = d.tokens();
  const auto& segs = d.segments();
  std::vector<int> out_tokens;
  std::vector<Form> out_segs;
  out_tokens.reserve(tokens.size());
  out_segs.reserve(segs.size());
  Form cur = segs[0];
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    bool removed = j == first || (second && j == *second);
    if (removed) {
      cur += segs[j + 1];
      if (extra && second && j == *second) cur += *extra;
    } else {
      out_segs.push_back(std::move(cur));
      out_tokens.push_back(tokens[j]);
      cur = segs[j + 1];
    }
  }
  out_segs.push_back(std::move(cur));
  return BasicChordDiagram<Scalar>(d.kind(), std::move(out_tokens), std::move(out_segs), std::move(basepoint),
                                   d.length() - 1);
}

template <class Scalar>
BasicChordDiagram<Scalar> apply_t1(const BasicChordDiagram<Scalar>& d, bool left) {
  using Form = BasicLinearForm<Scalar>;
  if (d.length() == 0) throw EmptyDiagramError();
  auto target = t1_target(d, left);
  if (!target) throw InvalidMoveError("no symbol next to the basepoint on that side");
  const Form& w = d.segments()[left ? *target : *target + 1];
  Form extra = w * Scalar(2) + Form::constant_form(Scalar(1));
  Form basepoint = d.basepoint() + extra;
  // An unpaired window symbol has its partner outside the window; that
  // partner's segment update is dropped.
  return remove_tokens(d, std::move(basepoint), *target, d.partner(*target), &extra);
}

}  // namespace detail

/// Moves available from `d`, in search order: T1-left, T1-right, then T2
/// moves left to right.
template <class Scalar>
std::vector<Move> applicable_moves(const BasicChordDiagram<Scalar>& d) {
  if (d.length() == 0) throw EmptyDiagramError();
  std::vector<Move> moves;
  if (detail::t1_target(d, true)) moves.push_back(Move::t1_left());
  if (detail::t1_target(d, false)) moves.push_back(Move::t1_right());
  const auto& tokens = d.tokens();
  for (std::size_t j = 1; j < tokens.size(); ++j)
    if (tokens[j] != kBasepointToken && tokens[j - 1] == tokens[j]) moves.push_back(Move::t2(j + 1));
  return moves;
}

/// Transformation I on x_1: basepoint gains 2*w_1 + 1, segments 1 and 2 merge,
/// and the two segments around the partner merge and gain 2*w_1 + 1.
template <class Scalar>
BasicChordDiagram<Scalar> apply_t1_left(const BasicChordDiagram<Scalar>& d) {
  return detail::apply_t1(d, true);
}

/// Mirror image of apply_t1_left, acting on the symbol before the basepoint.
template <class Scalar>
BasicChordDiagram<Scalar> apply_t1_right(const BasicChordDiagram<Scalar>& d) {
  return detail::apply_t1(d, false);
}

/// Transformation II at i: tokens i-1 and i are the same chord; the basepoint
/// gains w_i and segments i-1, i, i+1 merge.
template <class Scalar>
BasicChordDiagram<Scalar> apply_t2(const BasicChordDiagram<Scalar>& d, std::size_t i) {
  if (d.length() == 0) throw EmptyDiagramError();
  const auto& tokens = d.tokens();
  if (i < 2 || i > tokens.size()) throw InvalidMoveError("T2 position out of range");
  std::size_t j = i - 1;
  if (tokens[j] == kBasepointToken || tokens[j - 1] != tokens[j])
    throw InvalidMoveError("T2 needs two adjacent ends of one chord at position " + std::to_string(i));
  auto basepoint = d.basepoint() + d.segments()[j];
  return detail::remove_tokens(d, std::move(basepoint), j - 1, j, static_cast<const BasicLinearForm<Scalar>*>(nullptr));
}

template <class Scalar>
BasicChordDiagram<Scalar> apply_move(const BasicChordDiagram<Scalar>& d, const Move& mv) {
  switch (mv.kind) {
    case MoveKind::t1_left: return apply_t1_left(d);
    case MoveKind::t1_right: return apply_t1_right(d);
    case MoveKind::t2: return apply_t2(d, mv.position);
  }
  throw InvalidMoveError("unknown move");
}

/// The move that corresponds to `mv` on the reflected diagram.
template <class Scalar>
Move mirror(const BasicChordDiagram<Scalar>& d, const Move& mv) {
  switch (mv.kind) {
    case MoveKind::t1_left: return Move::t1_right();
    case MoveKind::t1_right: return Move::t1_left();
    case MoveKind::t2: return Move::t2(d.tokens().size() + 2 - mv.position);
  }
  return mv;
}

}  // namespace semimeander
