#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "semimeander/linear_form.hpp"

namespace semimeander {

/// Circular diagrams are annotated chord diagrams (ACDs); windowed diagrams
/// are preACDs, a linear fragment of an ACD's code around the basepoint.
enum class DiagramKind { circular, windowed };

/// Token marking the basepoint inside a windowed diagram.
inline constexpr int kBasepointToken = -1;

/// Based chord diagram with linear-form weights.
///
/// Layout is shared by both kinds: `tokens` is the symbol sequence and
/// `segments[j]` is the weight of the gap immediately before `tokens[j]`, with
/// one trailing segment after the last token, so
/// `segments.size() == tokens.size() + 1`.
///
///  - circular: tokens are x_1 .. x_2n read from the basepoint; segments[0]
///    follows the basepoint and segments[2n] precedes it.
///  - windowed: tokens include one kBasepointToken; the first and last
///    segments are the outer ends of the window.
///
/// Chord labels are renumbered 0, 1, ... in order of first appearance on
/// construction, so equality is equality up to chord relabeling.
///
/// `length()` counts chords still to be eliminated. For a circular diagram it
/// is the chord count; a window of 2k symbols starts with k.
template <class Scalar>
class BasicChordDiagram {
 public:
  using Form = BasicLinearForm<Scalar>;
  using scalar_type = Scalar;

  BasicChordDiagram(DiagramKind kind, std::vector<int> tokens, std::vector<Form> segments, Form basepoint,
                    std::optional<int> remaining = std::nullopt)
      : kind_(kind), tokens_(std::move(tokens)), segments_(std::move(segments)), basepoint_(std::move(basepoint)) {
    relabel();
    validate();
    int chords = chord_count();
    remaining_ = remaining.value_or(kind_ == DiagramKind::circular ? chords : default_window_length());
    if (remaining_ < 0 || remaining_ > chords)
      throw std::invalid_argument("elimination budget exceeds the chords present");
    if (kind_ == DiagramKind::circular && remaining_ != chords)
      throw std::invalid_argument("circular diagram length must equal its chord count");
  }

  /// Fresh symbolic diagram: basepoint m, segment j carries w_j.
  static BasicChordDiagram fresh(DiagramKind kind, std::vector<int> tokens) {
    std::vector<Form> segs;
    segs.reserve(tokens.size() + 1);
    for (std::size_t j = 1; j <= tokens.size() + 1; ++j) segs.push_back(Form::weight_symbol(j));
    return BasicChordDiagram(kind, std::move(tokens), std::move(segs), Form::basepoint_symbol());
  }
  static BasicChordDiagram fresh_circular(std::vector<int> labels) {
    return fresh(DiagramKind::circular, std::move(labels));
  }
  /// Fresh window `left.. @ right..`.
  static BasicChordDiagram fresh_windowed(const std::vector<int>& left, const std::vector<int>& right) {
    std::vector<int> tokens(left);
    tokens.push_back(kBasepointToken);
    tokens.insert(tokens.end(), right.begin(), right.end());
    return fresh(DiagramKind::windowed, std::move(tokens));
  }

  DiagramKind kind() const { return kind_; }
  bool is_circular() const { return kind_ == DiagramKind::circular; }
  const std::vector<int>& tokens() const { return tokens_; }
  const std::vector<Form>& segments() const { return segments_; }
  const Form& basepoint() const { return basepoint_; }
  int length() const { return remaining_; }

  std::size_t symbol_count() const { return tokens_.size() - (is_circular() ? 0 : 1); }
  int chord_count() const {
    int mx = -1;
    for (int t : tokens_) mx = std::max(mx, t);
    return mx + 1;
  }
  /// Number of weight symbols a fresh diagram of this shape carries.
  std::size_t weight_count() const { return segments_.size(); }

  /// Index of the basepoint token (windowed only).
  std::size_t basepoint_index() const {
    if (is_circular()) throw std::logic_error("circular diagrams have no basepoint token");
    return static_cast<std::size_t>(std::find(tokens_.begin(), tokens_.end(), kBasepointToken) - tokens_.begin());
  }

  /// Token index of the other end of the chord at `index`, if it is present.
  std::optional<std::size_t> partner(std::size_t index) const {
    int label = tokens_.at(index);
    if (label == kBasepointToken) return std::nullopt;
    for (std::size_t j = 0; j < tokens_.size(); ++j)
      if (j != index && tokens_[j] == label) return j;
    return std::nullopt;
  }

  /// Mirror image about the basepoint.
  BasicChordDiagram reflect() const {
    std::vector<int> t(tokens_.rbegin(), tokens_.rend());
    std::vector<Form> s(segments_.rbegin(), segments_.rend());
    return BasicChordDiagram(kind_, std::move(t), std::move(s), basepoint_, remaining_);
  }

  template <class Other>
  BasicChordDiagram<Other> convert() const {
    std::vector<BasicLinearForm<Other>> segs;
    segs.reserve(segments_.size());
    for (const auto& f : segments_) segs.push_back(f.template convert<Other>());
    return BasicChordDiagram<Other>(kind_, tokens_, std::move(segs), basepoint_.template convert<Other>(), remaining_);
  }

  friend bool operator==(const BasicChordDiagram& a, const BasicChordDiagram& b) {
    return a.kind_ == b.kind_ && a.remaining_ == b.remaining_ && a.tokens_ == b.tokens_ &&
           a.segments_ == b.segments_ && a.basepoint_ == b.basepoint_;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(kind_) * 7919u + static_cast<std::size_t>(remaining_);
    for (int t : tokens_) h = h * 131u + static_cast<std::size_t>(t + 2);
    for (const auto& f : segments_) h = h * 1000003u ^ f.hash();
    return h * 1000003u ^ basepoint_.hash();
  }

 private:
  int default_window_length() const { return static_cast<int>(symbol_count() / 2); }

  void relabel() {
    std::unordered_map<int, int> fresh;
    for (int& t : tokens_) {
      if (t == kBasepointToken) continue;
      if (t < 0) throw std::invalid_argument("chord labels must be nonnegative");
      auto [it, inserted] = fresh.try_emplace(t, static_cast<int>(fresh.size()));
      t = it->second;
    }
  }

  void validate() const {
    if (segments_.size() != tokens_.size() + 1)
      throw std::invalid_argument("segment count must be token count + 1");
    std::vector<int> count(tokens_.size() + 1, 0);
    int basepoints = 0;
    for (int t : tokens_) {
      if (t == kBasepointToken) {
        ++basepoints;
        continue;
      }
      if (++count[static_cast<std::size_t>(t)] > 2) throw std::invalid_argument("chord label occurs more than twice");
    }
    if (is_circular()) {
      if (basepoints != 0) throw std::invalid_argument("circular diagram carries an inline basepoint");
      for (int t : tokens_)
        if (count[static_cast<std::size_t>(t)] != 2) throw std::invalid_argument("chord label occurs once in a circular diagram");
    } else if (basepoints != 1) {
      throw std::invalid_argument("windowed diagram needs exactly one basepoint");
    }
    if (basepoint_.has_negative_coefficient()) throw std::invalid_argument("negative basepoint weight");
    for (const auto& s : segments_)
      if (s.has_negative_coefficient()) throw std::invalid_argument("negative segment weight");
  }

  DiagramKind kind_;
  std::vector<int> tokens_;
  std::vector<Form> segments_;
  Form basepoint_;
  int remaining_ = 0;
};

using ChordDiagram = BasicChordDiagram<Rational>;
using IntChordDiagram = BasicChordDiagram<std::int64_t>;

}  // namespace semimeander

template <class Scalar>
struct std::hash<semimeander::BasicChordDiagram<Scalar>> {
  std::size_t operator()(const semimeander::BasicChordDiagram<Scalar>& d) const noexcept { return d.hash(); }
};
