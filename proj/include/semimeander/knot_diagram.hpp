#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semimeander/chord_diagram.hpp"

namespace semimeander {

/// PD-code conventions used throughout:
///
///   X[a,b,c,d] lists the four edge labels at a crossing counterclockwise,
///   starting from the incoming under-strand. The under-strand runs a -> c;
///   the over-strand runs b -> d or d -> b, fixed by the orientation of the
///   knot. Slot s is the position (0..3) inside the brackets.
///
/// An empty PD code is the crossingless circle.
class PdParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A crossing slot: crossing index and position 0..3 in its PD term.
struct Port {
  int crossing = 0;
  int slot = 0;
  friend bool operator==(const Port&, const Port&) = default;
  friend auto operator<=>(const Port&, const Port&) = default;
};

/// One visit of the knot to a crossing, entering through `in_slot`.
struct Pass {
  int crossing = 0;
  int in_slot = 0;
  bool is_under() const { return in_slot == 0; }
};

class KnotDiagram {
 public:
  KnotDiagram() = default;

  /// Validates orientation, single component and planarity (Euler's formula).
  explicit KnotDiagram(std::vector<std::array<int, 4>> crossings) : crossings_(std::move(crossings)) { build(); }

  static KnotDiagram parse_pd(std::string_view text) {
    std::vector<std::array<int, 4>> xs;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
    };
    skip();
    bool wrapped = text.substr(i, 3) == "PD[";
    if (wrapped) i += 3;
    for (;;) {
      skip();
      if (i >= text.size()) break;
      if (wrapped && text[i] == ']') {
        ++i;
        skip();
        if (i != text.size()) throw PdParseError("trailing text after PD[...]");
        wrapped = false;
        break;
      }
      if (text.substr(i, 2) != "X[") throw PdParseError("expected X[...] at offset " + std::to_string(i));
      i += 2;
      std::size_t close = text.find(']', i);
      if (close == std::string_view::npos) throw PdParseError("unterminated X[ term");
      std::vector<int> labels;
      std::string_view body = text.substr(i, close - i);
      std::size_t p = 0;
      while (p <= body.size()) {
        std::size_t comma = body.find(',', p);
        if (comma == std::string_view::npos) comma = body.size();
        std::string item(body.substr(p, comma - p));
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
                   item.end());
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char ch) { return std::isdigit(ch); }))
          throw PdParseError("malformed edge label '" + item + "'");
        labels.push_back(std::stoi(item));
        p = comma + 1;
      }
      if (labels.size() != 4)
        throw PdParseError("crossing " + std::to_string(xs.size()) + " has " + std::to_string(labels.size()) +
                           " edge labels, expected 4");
      xs.push_back({labels[0], labels[1], labels[2], labels[3]});
      i = close + 1;
    }
    if (wrapped) throw PdParseError("unterminated PD[");
    try {
      return KnotDiagram(std::move(xs));
    } catch (const PdParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw PdParseError(e.what());
    }
  }

  std::string pd() const {
    std::string out;
    for (const auto& x : crossings_) {
      if (!out.empty()) out += ' ';
      out += "X[" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + "," +
             std::to_string(x[3]) + "]";
    }
    return out;
  }

  std::size_t crossing_count() const { return crossings_.size(); }
  std::size_t edge_count() const { return 2 * crossings_.size(); }
  const std::vector<std::array<int, 4>>& crossings() const { return crossings_; }
  int label(Port p) const { return crossings_[p.crossing][p.slot]; }

  /// Edge labels in knot order; edge i ends at passes()[i]. Starts at the
  /// smallest label.
  const std::vector<int>& edge_order() const { return edge_order_; }
  const std::vector<Pass>& passes() const { return passes_; }
  /// Position of an edge label in edge_order().
  std::size_t edge_index(int label) const {
    auto it = index_of_label_.find(label);
    if (it == index_of_label_.end()) throw std::invalid_argument("no edge labelled " + std::to_string(label));
    return it->second;
  }
  Port head(std::size_t edge) const { return {passes_[edge].crossing, passes_[edge].in_slot}; }
  Port tail(std::size_t edge) const {
    const Pass& prev = passes_[(edge + passes_.size() - 1) % passes_.size()];
    return {prev.crossing, (prev.in_slot + 2) % 4};
  }
  /// The other slot carrying the same edge label.
  Port opposite(Port p) const { return other_port_.at(static_cast<std::size_t>(p.crossing * 4 + p.slot)); }

  /// Slot where the over-strand enters: 1 or 3.
  int over_in_slot(int crossing) const { return over_in_[static_cast<std::size_t>(crossing)]; }
  /// +1 when the over-strand runs d -> b, -1 when it runs b -> d.
  int sign(int crossing) const { return over_in_slot(crossing) == 3 ? 1 : -1; }
  int writhe() const {
    int w = 0;
    for (std::size_t c = 0; c < crossings_.size(); ++c) w += sign(static_cast<int>(c));
    return w;
  }

  /// Same diagram with every crossing switched.
  KnotDiagram mirror() const {
    std::vector<std::array<int, 4>> xs;
    for (std::size_t c = 0; c < crossings_.size(); ++c) {
      const auto& x = crossings_[c];
      if (over_in_[c] == 3)
        xs.push_back({x[3], x[0], x[1], x[2]});
      else
        xs.push_back({x[1], x[2], x[3], x[0]});
    }
    return KnotDiagram(std::move(xs));
  }

  // Faces on the sphere. Corner (c, s) is the region between slots s and s+1.
  std::size_t face_count() const { return crossings_.empty() ? 2 : face_corners_.size(); }
  int face_of_corner(int crossing, int slot) const {
    return corner_face_[static_cast<std::size_t>(crossing * 4 + ((slot % 4) + 4) % 4)];
  }
  const std::vector<std::vector<Port>>& face_corners() const { return face_corners_; }
  /// Faces to the left and right of edge i in the direction of travel.
  int left_face(std::size_t edge) const {
    Port t = tail(edge);
    return face_of_corner(t.crossing, t.slot);
  }
  int right_face(std::size_t edge) const {
    Port t = tail(edge);
    return face_of_corner(t.crossing, t.slot + 3);
  }

  friend bool operator==(const KnotDiagram& a, const KnotDiagram& b) { return a.crossings_ == b.crossings_; }

 private:
  void build() {
    const std::size_t n = crossings_.size();
    if (n == 0) return;
    std::map<int, std::vector<Port>> uses;
    for (std::size_t c = 0; c < n; ++c)
      for (int s = 0; s < 4; ++s) uses[crossings_[c][static_cast<std::size_t>(s)]].push_back({static_cast<int>(c), s});
    if (uses.size() != 2 * n) {
      for (const auto& [lbl, ports] : uses) {
        if (ports.size() == 1) throw PdParseError("dangling edge label " + std::to_string(lbl));
        if (ports.size() > 2) throw PdParseError("edge label " + std::to_string(lbl) + " used more than twice");
      }
    }
    other_port_.assign(4 * n, {});
    for (const auto& [lbl, ports] : uses) {
      if (ports.size() != 2)
        throw PdParseError(ports.size() == 1 ? "dangling edge label " + std::to_string(lbl)
                                             : "edge label " + std::to_string(lbl) + " used more than twice");
      other_port_[static_cast<std::size_t>(ports[0].crossing * 4 + ports[0].slot)] = ports[1];
      other_port_[static_cast<std::size_t>(ports[1].crossing * 4 + ports[1].slot)] = ports[0];
    }

    // Walk the knot from crossing 0's outgoing under-strand.
    over_in_.assign(n, 0);
    std::vector<Pass> walk;
    std::vector<int> labels;
    Port out{0, 2};
    do {
      labels.push_back(label(out));
      Port in = opposite(out);
      if (in.slot == 2) throw PdParseError("inconsistent orientation at crossing " + std::to_string(in.crossing));
      if (in.slot != 0) {
        int& o = over_in_[static_cast<std::size_t>(in.crossing)];
        if (o != 0) throw PdParseError("inconsistent orientation at crossing " + std::to_string(in.crossing));
        o = in.slot;
      }
      walk.push_back({in.crossing, in.slot});
      out = {in.crossing, (in.slot + 2) % 4};
      if (walk.size() > 2 * n) throw PdParseError("inconsistent orientation");
    } while (!(out == Port{0, 2}));
    if (walk.size() != 2 * n) throw PdParseError("diagram has more than one component");

    auto first = std::min_element(labels.begin(), labels.end()) - labels.begin();
    std::rotate(labels.begin(), labels.begin() + first, labels.end());
    std::rotate(walk.begin(), walk.begin() + first, walk.end());
    edge_order_ = std::move(labels);
    passes_ = std::move(walk);
    for (std::size_t i = 0; i < edge_order_.size(); ++i) index_of_label_[edge_order_[i]] = i;

    trace_faces();
    if (face_corners_.size() != n + 2)
      throw PdParseError("diagram is not planar: " + std::to_string(face_corners_.size()) + " faces for " +
                         std::to_string(n) + " crossings");
  }

  void trace_faces() {
    const std::size_t n = crossings_.size();
    corner_face_.assign(4 * n, -1);
    face_corners_.clear();
    for (std::size_t k = 0; k < 4 * n; ++k) {
      if (corner_face_[k] != -1) continue;
      const int id = static_cast<int>(face_corners_.size());
      face_corners_.emplace_back();
      Port corner{static_cast<int>(k / 4), static_cast<int>(k % 4)};
      while (corner_face_[static_cast<std::size_t>(corner.crossing * 4 + corner.slot)] == -1) {
        corner_face_[static_cast<std::size_t>(corner.crossing * 4 + corner.slot)] = id;
        face_corners_.back().push_back(corner);
        corner = opposite({corner.crossing, (corner.slot + 1) % 4});
      }
    }
  }

  std::vector<std::array<int, 4>> crossings_;
  std::vector<Port> other_port_;
  std::vector<int> over_in_;
  std::vector<int> edge_order_;
  std::vector<Pass> passes_;
  std::map<int, std::size_t> index_of_label_;
  std::vector<int> corner_face_;
  std::vector<std::vector<Port>> face_corners_;
};

inline std::vector<std::vector<Port>> faces(const KnotDiagram& d) { return d.face_corners(); }

// ---------------------------------------------------------------------------
// Selected arc

/// A point inside an edge, near its tail (`lo`) or its head (`hi`).
struct ArcEnd {
  int edge = 0;
  bool hi = false;
  friend bool operator==(const ArcEnd&, const ArcEnd&) = default;
  std::string str() const { return "edge:" + std::to_string(edge) + (hi ? "@hi" : "@lo"); }
};

/// The arc J: the walk along the knot, in its orientation, from `start` to
/// `end`. Spec string `edge:<id>@<lo|hi> .. edge:<id>@<lo|hi>`. On the
/// crossingless circle any arc is accepted and edge ids are ignored.
struct SelectedArc {
  ArcEnd start, end;

  friend bool operator==(const SelectedArc&, const SelectedArc&) = default;
  std::string str() const { return start.str() + " .. " + end.str(); }

  static SelectedArc parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("malformed arc '" + std::string(text) + "'"); };
    auto sep = text.find("..");
    if (sep == std::string_view::npos) fail();
    auto end_point = [&](std::string_view t) {
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
      if (t.substr(0, 5) != "edge:") fail();
      t.remove_prefix(5);
      auto at = t.find('@');
      if (at == std::string_view::npos || at == 0) fail();
      std::string id(t.substr(0, at));
      if (!std::all_of(id.begin(), id.end(), [](unsigned char c) { return std::isdigit(c); })) fail();
      std::string_view side = t.substr(at + 1);
      if (side != "lo" && side != "hi") fail();
      return ArcEnd{std::stoi(id), side == "hi"};
    };
    return {end_point(text.substr(0, sep)), end_point(text.substr(sep + 2))};
  }
};

/// J in knot coordinates: it starts inside edge `start`, passes `length`
/// crossings (passes start .. start+length-1) and ends inside edge
/// start+length, indices modulo the edge count.
struct ArcRun {
  std::size_t start = 0;
  std::size_t length = 0;
};

class InvalidArcError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline ArcRun resolve_arc(const KnotDiagram& d, const SelectedArc& j) {
  const std::size_t e = d.edge_count();
  if (e == 0) return {0, 0};
  std::size_t s, t;
  try {
    s = d.edge_index(j.start.edge);
    t = d.edge_index(j.end.edge);
  } catch (const std::invalid_argument& err) {
    throw InvalidArcError(err.what());
  }
  if (s != t) return {s, (t + e - s) % e};
  if (!j.start.hi && j.end.hi) return {s, 0};
  if (j.start.hi && !j.end.hi) return {s, e};
  throw InvalidArcError("arc endpoints coincide: " + j.str());
}

/// Inverse of resolve_arc for a run on `d`.
inline SelectedArc arc_from_run(const KnotDiagram& d, ArcRun run) {
  const std::size_t e = d.edge_count();
  if (e == 0) return {{0, false}, {0, true}};
  int s = d.edge_order()[run.start % e];
  int t = d.edge_order()[(run.start + run.length) % e];
  if (run.length == 0) return {{s, false}, {t, true}};
  return {{s, true}, {t, false}};
}

/// Crossings met by J, one entry per pass, in order.
inline std::vector<int> arc_crossings(const KnotDiagram& d, ArcRun run) {
  std::vector<int> out;
  const std::size_t e = d.edge_count();
  for (std::size_t k = 0; k < run.length; ++k) out.push_back(d.passes()[(run.start + k) % e].crossing);
  return out;
}

/// No crossing is met twice by J.
inline bool is_simple(const KnotDiagram& d, ArcRun run) {
  auto xs = arc_crossings(d, run);
  std::sort(xs.begin(), xs.end());
  return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
}
inline bool is_simple(const KnotDiagram& d, const SelectedArc& j) { return is_simple(d, resolve_arc(d, j)); }

/// Crossings with at least one pass on J.
inline std::vector<bool> on_arc_mask(const KnotDiagram& d, ArcRun run) {
  std::vector<bool> mask(d.crossing_count(), false);
  for (int c : arc_crossings(d, run)) mask[static_cast<std::size_t>(c)] = true;
  return mask;
}

/// Both J and the complementary arc are simple, i.e. every crossing has
/// exactly one pass on J.
inline bool is_semimeander(const KnotDiagram& d, const SelectedArc& j) {
  ArcRun run = resolve_arc(d, j);
  return is_simple(d, run) && run.length == d.crossing_count();
}

/// The ACD of (d, J): chords with an end on J are removed and J is contracted
/// to the basepoint. Chord labels follow the walk along the complement,
/// starting at the end of J. Weights are the concrete counts: the basepoint
/// carries the number of crossings on J and each segment the number of chord
/// ends removed from it.
struct ExtractedAcd {
  ChordDiagram acd;
  std::vector<int> chord_crossings;  // crossing index of chord label 0, 1, ...
};

inline ExtractedAcd extract_acd_detailed(const KnotDiagram& d, const SelectedArc& j) {
  ArcRun run = resolve_arc(d, j);
  if (!is_simple(d, run)) throw InvalidArcError("arc " + j.str() + " is not simple");
  const std::size_t e = d.edge_count();
  auto on_j = on_arc_mask(d, run);
  std::vector<int> tokens;
  std::vector<LinearForm> segments;
  std::vector<int> chord_crossings;
  std::map<int, int> label_of;
  long removed = 0;
  for (std::size_t k = run.length; k < e; ++k) {
    int c = d.passes()[(run.start + k) % e].crossing;
    if (on_j[static_cast<std::size_t>(c)]) {
      ++removed;
      continue;
    }
    segments.push_back(LinearForm::constant_form(Rational(removed)));
    removed = 0;
    auto [it, fresh] = label_of.try_emplace(c, static_cast<int>(label_of.size()));
    if (fresh) chord_crossings.push_back(c);
    tokens.push_back(it->second);
  }
  segments.push_back(LinearForm::constant_form(Rational(removed)));
  LinearForm base = LinearForm::constant_form(Rational(static_cast<long>(run.length)));
  return {ChordDiagram(DiagramKind::circular, std::move(tokens), std::move(segments), std::move(base)),
          std::move(chord_crossings)};
}

inline ChordDiagram extract_acd(const KnotDiagram& d, const SelectedArc& j) { return extract_acd_detailed(d, j).acd; }

// ---------------------------------------------------------------------------
// Dual graph

struct DualArc {
  int edge;  // edge label
  int left, right;
  bool allowed;  // some portion of the edge lies on J
};

struct DualGraph {
  std::size_t node_count = 0;
  std::vector<DualArc> arcs;  // in edge_order()

  std::size_t allowed_count() const {
    return static_cast<std::size_t>(std::count_if(arcs.begin(), arcs.end(), [](const DualArc& a) { return a.allowed; }));
  }
};

/// Dual graph with every arc forbidden (no J).
inline DualGraph dual_graph(const KnotDiagram& d) {
  DualGraph g;
  g.node_count = d.face_count();
  for (std::size_t i = 0; i < d.edge_count(); ++i)
    g.arcs.push_back({d.edge_order()[i], d.left_face(i), d.right_face(i), false});
  return g;
}

/// One arc per edge between its two faces; allowed iff the edge meets J.
inline DualGraph dual_graph(const KnotDiagram& d, const SelectedArc& j) {
  DualGraph g = dual_graph(d);
  if (d.edge_count() == 0) return g;
  ArcRun run = resolve_arc(d, j);
  for (std::size_t k = 0; k <= std::min(run.length, d.edge_count() - 1); ++k)
    g.arcs[(run.start + k) % d.edge_count()].allowed = true;
  return g;
}

}  // namespace semimeander
