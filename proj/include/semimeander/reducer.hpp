#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semimeander/knot_diagram.hpp"

namespace semimeander {

/// Branch 1 is the under-strand through a crossing, branch 2 the over-strand.
struct Reduction {
  int crossing = 0;
  int branch = 1;
  int cost = 0;
  std::vector<int> path;        // faces of the arc map, source to target
  std::vector<int> crossed;     // arc-map links on J crossed by the path
  std::string fingerprint;      // (diagram, arc) the reduction was computed on
};

struct ReductionStep {
  int step = 0;
  int crossing = 0;
  int branch = 1;
  int cost = 0;
  std::size_t total_crossings = 0;
  std::size_t off_j_crossings = 0;

  /// `step crossing branch cost total_crossings off_j_crossings`
  std::string str() const {
    return std::to_string(step) + " " + std::to_string(crossing) + " " + std::to_string(branch) + " " +
           std::to_string(cost) + " " + std::to_string(total_crossings) + " " + std::to_string(off_j_crossings);
  }
};

struct ReductionResult {
  KnotDiagram diagram;
  SelectedArc arc;
  std::vector<ReductionStep> trace;
};

class StaleReductionError : public std::invalid_argument {
 public:
  StaleReductionError() : std::invalid_argument("reduction was computed on a different diagram or arc") {}
};

class CrossingOnArcError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string fingerprint(const KnotDiagram& d, const SelectedArc& j) { return d.pd() + " | " + j.str(); }

// The knot as a port graph with two extra 2-valent vertices marking the ends
// of J, so that every link lies entirely on J or entirely off it. Crossings
// keep their PD slots; a marker has slot 0 (in) and slot 1 (out).
class ArcMap {
 public:
  struct P {
    int v = -1;
    int s = 0;
    friend bool operator==(const P&, const P&) = default;
  };
  struct Link {
    P tail, head;
    bool on_j = false;
  };

  ArcMap(const KnotDiagram& d, ArcRun run) : n_(static_cast<int>(d.crossing_count())) {
    degree_.assign(static_cast<std::size_t>(n_), 4);
    degree_.push_back(2);  // start marker
    degree_.push_back(2);  // end marker
    conn_.assign(degree_.size(), std::array<P, 4>{});
    const std::size_t e = d.edge_count();
    const std::size_t end_edge = (run.start + run.length) % e;
    for (std::size_t i = 0; i < e; ++i) {
      Port t = d.tail(i), h = d.head(i);
      std::vector<P> chain{{t.crossing, t.slot}};
      auto marker = [&](int v) {
        chain.push_back({v, 0});
        chain.push_back({v, 1});
      };
      if (i == run.start && i == end_edge) {
        // Both ends on one edge: J lies inside it, or J is everything else.
        if (run.length == 0) {
          marker(start_marker());
          marker(end_marker());
        } else {
          marker(end_marker());
          marker(start_marker());
        }
      } else if (i == run.start) {
        marker(start_marker());
      } else if (i == end_edge) {
        marker(end_marker());
      }
      chain.push_back({h.crossing, h.slot});
      for (std::size_t k = 0; k + 1 < chain.size(); k += 2) connect(chain[k], chain[k + 1]);
    }
    build_links();
    trace_faces();
  }

  int crossing_count() const { return n_; }
  int start_marker() const { return n_; }
  int end_marker() const { return n_ + 1; }
  const std::vector<Link>& links() const { return links_; }
  int face_count() const { return face_count_; }
  int face_of(P corner) const { return corner_face_[index(corner)]; }
  int left_face(const Link& l) const { return face_of(l.tail); }
  int right_face(const Link& l) const { return face_of({l.tail.v, (l.tail.s + degree(l.tail.v) - 1) % degree(l.tail.v)}); }
  P other(P p) const { return conn_[static_cast<std::size_t>(p.v)][static_cast<std::size_t>(p.s)]; }
  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }

 private:
  void connect(P a, P b) {
    conn_[static_cast<std::size_t>(a.v)][static_cast<std::size_t>(a.s)] = b;
    conn_[static_cast<std::size_t>(b.v)][static_cast<std::size_t>(b.s)] = a;
  }
  int exit_slot(P in) const { return degree(in.v) == 2 ? 1 : (in.s + 2) % 4; }
  std::size_t index(P p) const { return static_cast<std::size_t>(p.v) * 4 + static_cast<std::size_t>(p.s); }

  void build_links() {
    P out{start_marker(), 1};
    bool on_j = true;
    do {
      P in = other(out);
      links_.push_back({out, in, on_j});
      if (in.v == end_marker()) on_j = false;
      if (in.v == start_marker()) on_j = true;
      out = {in.v, exit_slot(in)};
    } while (!(out == P{start_marker(), 1}));
  }

  void trace_faces() {
    corner_face_.assign(degree_.size() * 4, -1);
    for (int v = 0; v < static_cast<int>(degree_.size()); ++v)
      for (int s = 0; s < degree(v); ++s) {
        if (corner_face_[index({v, s})] != -1) continue;
        P corner{v, s};
        while (corner_face_[index(corner)] == -1) {
          corner_face_[index(corner)] = face_count_;
          corner = other({corner.v, (corner.s + 1) % degree(corner.v)});
        }
        ++face_count_;
      }
  }

  int n_;
  std::vector<int> degree_;
  std::vector<std::array<P, 4>> conn_;
  std::vector<Link> links_;
  std::vector<int> corner_face_;
  int face_count_ = 0;
};

inline int branch_in_slot(const KnotDiagram& d, int crossing, int branch) {
  return branch == 1 ? 0 : d.over_in_slot(crossing);
}

// Shortest dual path from `sources` to `targets` over links on J. Among
// shortest paths, the lexicographically least face sequence, and for each
// step the lowest link.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> shortest_dual_path(const ArcMap& map,
                                                                                        std::vector<int> sources,
                                                                                        std::vector<int> targets) {
  const int f = map.face_count();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(f));
  for (int l = 0; l < static_cast<int>(map.links().size()); ++l) {
    const auto& link = map.links()[static_cast<std::size_t>(l)];
    if (!link.on_j) continue;
    int a = map.left_face(link), b = map.right_face(link);
    adj[static_cast<std::size_t>(a)].push_back({b, l});
    adj[static_cast<std::size_t>(b)].push_back({a, l});
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());

  const int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(f), inf);
  std::deque<int> queue;
  for (int t : targets)
    if (dist[static_cast<std::size_t>(t)] != 0) {
      dist[static_cast<std::size_t>(t)] = 0;
      queue.push_back(t);
    }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (auto [v, l] : adj[static_cast<std::size_t>(u)])
      if (dist[static_cast<std::size_t>(v)] == inf) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
  }
  std::sort(sources.begin(), sources.end());
  int cur = -1;
  for (int s : sources)
    if (dist[static_cast<std::size_t>(s)] != inf && (cur == -1 || dist[static_cast<std::size_t>(s)] < dist[static_cast<std::size_t>(cur)]))
      cur = s;
  if (cur == -1) return std::nullopt;
  std::vector<int> faces{cur}, crossed;
  while (dist[static_cast<std::size_t>(cur)] > 0) {
    for (auto [v, l] : adj[static_cast<std::size_t>(cur)])
      if (dist[static_cast<std::size_t>(v)] == dist[static_cast<std::size_t>(cur)] - 1) {
        faces.push_back(v);
        crossed.push_back(l);
        cur = v;
        break;
      }
  }
  return std::make_pair(std::move(faces), std::move(crossed));
}

}  // namespace detail

/// Crossings with both passes off J.
inline std::vector<int> off_arc_crossings(const KnotDiagram& d, const SelectedArc& j) {
  auto mask = on_arc_mask(d, resolve_arc(d, j));
  std::vector<int> out;
  for (std::size_t c = 0; c < mask.size(); ++c)
    if (!mask[c]) out.push_back(static_cast<int>(c));
  return out;
}

/// Cheapest reduction curve for one branch of `x`: a shortest path in the
/// dual graph, crossing only links on J, from a face at p_i(x) to a face at
/// q_i(x).
inline std::optional<Reduction> branch_reduction(const KnotDiagram& d, const SelectedArc& j, int x, int branch) {
  if (x < 0 || static_cast<std::size_t>(x) >= d.crossing_count())
    throw std::out_of_range("no crossing " + std::to_string(x));
  if (branch != 1 && branch != 2) throw std::invalid_argument("branch must be 1 or 2");
  ArcRun run = resolve_arc(d, j);
  if (on_arc_mask(d, run)[static_cast<std::size_t>(x)])
    throw CrossingOnArcError("crossing " + std::to_string(x) + " lies on J");
  detail::ArcMap map(d, run);
  const int in = detail::branch_in_slot(d, x, branch);
  const int out = (in + 2) % 4;
  auto face = [&](int slot) { return map.face_of({x, (slot + 4) % 4}); };
  auto found = detail::shortest_dual_path(map, {face(in - 1), face(in)}, {face(out - 1), face(out)});
  if (!found) return std::nullopt;
  Reduction r;
  r.crossing = x;
  r.branch = branch;
  r.cost = static_cast<int>(found->second.size());
  r.path = std::move(found->first);
  r.crossed = std::move(found->second);
  r.fingerprint = detail::fingerprint(d, j);
  return r;
}

/// The cheaper of the two branches (branch 1 on ties); empty when `x` is not
/// reducible.
inline std::optional<Reduction> reduction_cost(const KnotDiagram& d, const SelectedArc& j, int x) {
  auto r1 = branch_reduction(d, j, x, 1);
  auto r2 = branch_reduction(d, j, x, 2);
  if (r1 && (!r2 || r1->cost <= r2->cost)) return r1;
  return r2;
}

/// Replaces the branch A_i(x) by the reduction curve. Each J link the curve
/// crosses gains a new crossing; the rerouted strand stays on the layer it had
/// at x (over for branch 2, under for branch 1), so the move is an isotopy.
/// Edges are relabelled 1.. along the knot from the start of J and crossings
/// are listed in order of first visit.
inline std::pair<KnotDiagram, SelectedArc> replace_arc(const KnotDiagram& d, const SelectedArc& j, const Reduction& r) {
  if (r.fingerprint != detail::fingerprint(d, j)) throw StaleReductionError();
  using P = detail::ArcMap::P;
  ArcRun run = resolve_arc(d, j);
  detail::ArcMap map(d, run);
  const int x = r.crossing;
  const int in = detail::branch_in_slot(d, x, r.branch);
  const int out = (in + 2) % 4;
  const bool over = r.branch == 2;
  const int n_old = map.crossing_count();

  // Port graph: old vertices 0..n_old+1, then one new crossing per J link crossed.
  const int first_new = n_old + 2;
  const int c = r.cost;
  const int total = first_new + c;
  std::vector<int> degree(static_cast<std::size_t>(total), 4);
  degree[static_cast<std::size_t>(map.start_marker())] = 2;
  degree[static_cast<std::size_t>(map.end_marker())] = 2;
  std::vector<std::array<P, 4>> conn(static_cast<std::size_t>(total));
  for (int v = 0; v < first_new; ++v)
    for (int s = 0; s < map.degree(v); ++s) conn[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)] = map.other({v, s});
  auto link = [&](P a, P b) {
    conn[static_cast<std::size_t>(a.v)][static_cast<std::size_t>(a.s)] = b;
    conn[static_cast<std::size_t>(b.v)][static_cast<std::size_t>(b.s)] = a;
  };

  // Slots of the new crossings: CCW order is (J in, gamma out, J out, gamma in)
  // when gamma crosses from the left of J to its right.
  std::vector<int> gamma_in(static_cast<std::size_t>(c)), gamma_out(static_cast<std::size_t>(c));
  for (int k = 0; k < c; ++k) {
    const auto& l = map.links()[static_cast<std::size_t>(r.crossed[static_cast<std::size_t>(k)])];
    bool left_to_right = r.path[static_cast<std::size_t>(k)] == map.left_face(l);
    std::array<int, 4> ccw;  // roles: 0 J in, 1 J out, 2 gamma in, 3 gamma out
    ccw = left_to_right ? std::array<int, 4>{0, 3, 1, 2} : std::array<int, 4>{0, 2, 1, 3};
    // Slot 0 must be the incoming under-strand.
    int rot = 0;
    while (ccw[static_cast<std::size_t>(rot)] != (over ? 0 : 2)) ++rot;
    std::array<int, 4> slot_of{};
    for (int s = 0; s < 4; ++s) slot_of[static_cast<std::size_t>(ccw[static_cast<std::size_t>((s + rot) % 4)])] = s;
    const int y = first_new + k;
    link(l.tail, {y, slot_of[0]});
    link({y, slot_of[1]}, l.head);
    gamma_in[static_cast<std::size_t>(k)] = slot_of[2];
    gamma_out[static_cast<std::size_t>(k)] = slot_of[3];
  }
  for (int k = 0; k + 1 < c; ++k)
    link({first_new + k, gamma_out[static_cast<std::size_t>(k)]}, {first_new + k + 1, gamma_in[static_cast<std::size_t>(k + 1)]});

  // Remove x. Its slots are wired through: in -> curve -> out, and the other
  // branch straight across. A wire target is either a new port or another
  // slot of x, in which case the strand continues along that slot's link.
  const std::array<P, 4> x_conn = conn[static_cast<std::size_t>(x)];
  auto wire = [&](int s) -> P {
    if (s == in) return c > 0 ? P{first_new, gamma_in[0]} : P{x, out};
    if (s == out) return c > 0 ? P{first_new + c - 1, gamma_out[static_cast<std::size_t>(c - 1)]} : P{x, in};
    return P{x, (s + 2) % 4};
  };
  auto follow = [&](int s) -> P {  // leave x along slot s's link
    for (int guard = 0; guard < 8; ++guard) {
      P b = x_conn[static_cast<std::size_t>(s)];
      if (b.v != x) return b;
      P w = wire(b.s);
      if (w.v != x) return w;
      s = w.s;
    }
    throw std::logic_error("closed loop left after removing a crossing");
  };
  auto resolve = [&](int s) -> P {
    P w = wire(s);
    return w.v != x ? w : follow(w.s);
  };
  for (int s = 0; s < 4; ++s) {
    P a = x_conn[static_cast<std::size_t>(s)];
    if (a.v != x) link(a, resolve(s));
  }
  if (c > 0) {
    link({first_new, gamma_in[0]}, follow(in));
    link({first_new + c - 1, gamma_out[static_cast<std::size_t>(c - 1)]}, follow(out));
  }

  // Walk from the start of J, numbering edges and crossings.
  auto exit_slot = [&](P p) { return degree[static_cast<std::size_t>(p.v)] == 2 ? 1 : (p.s + 2) % 4; };
  std::vector<int> new_index(static_cast<std::size_t>(total), -1);
  std::vector<std::array<int, 4>> xs;
  int label = 1, passes = 0, end_label = 0;
  bool end_before_first_crossing = false;
  P cur{map.start_marker(), 1};
  for (int guard = 0;; ++guard) {
    if (guard > 4 * total + 8) throw std::logic_error("rerouted diagram does not close up");
    P in_port = conn[static_cast<std::size_t>(cur.v)][static_cast<std::size_t>(cur.s)];
    if (in_port.v == x) throw std::logic_error("removed crossing still referenced");
    if (in_port.v == map.start_marker()) break;
    if (in_port.v == map.end_marker()) {
      end_label = label;
      end_before_first_crossing = passes == 0;
    } else {
      int& id = new_index[static_cast<std::size_t>(in_port.v)];
      if (id == -1) {
        id = static_cast<int>(xs.size());
        xs.push_back({0, 0, 0, 0});
      }
      auto& row = xs[static_cast<std::size_t>(id)];
      row[static_cast<std::size_t>(in_port.s)] = label;
      ++label;
      ++passes;
      row[static_cast<std::size_t>(exit_slot(in_port))] = label;
    }
    cur = {in_port.v, exit_slot(in_port)};
  }
  // The last edge closes back onto edge 1.
  const int edges = label - 1;
  for (auto& row : xs)
    for (int& v : row)
      if (v == label) v = 1;
  if (end_label == label) end_label = 1;

  KnotDiagram nd(std::move(xs));
  SelectedArc nj;
  if (edges == 0) {
    nj = {{0, false}, {0, true}};
  } else if (end_label == 1) {
    nj = end_before_first_crossing ? SelectedArc{{1, false}, {1, true}} : SelectedArc{{1, true}, {1, false}};
  } else {
    nj = {{1, true}, {end_label, false}};
  }
  return {std::move(nd), nj};
}

/// Repeats: pick the reducible crossing of least cost (ties: lowest crossing,
/// then branch 1) and replace its branch, until every crossing is on J.
inline ReductionResult make_semimeander(const KnotDiagram& d, const SelectedArc& j) {
  if (!is_simple(d, j)) throw InvalidArcError("arc " + j.str() + " is not simple");
  ReductionResult res{d, j, {}};
  for (int step = 1;; ++step) {
    auto off = off_arc_crossings(res.diagram, res.arc);
    if (off.empty()) break;
    std::optional<Reduction> best;
    for (int x : off) {
      auto r = reduction_cost(res.diagram, res.arc, x);
      if (r && (!best || r->cost < best->cost)) best = std::move(r);
    }
    if (!best) throw std::logic_error("no reducible crossing in a non-semimeander diagram");
    auto [nd, nj] = replace_arc(res.diagram, res.arc, *best);
    res.diagram = std::move(nd);
    res.arc = nj;
    res.trace.push_back({step, best->crossing, best->branch, best->cost, res.diagram.crossing_count(),
                         off_arc_crossings(res.diagram, res.arc).size()});
  }
  return res;
}

/// Longest simple forward walk from each edge; the longest overall, lowest
/// starting edge label on ties.
inline SelectedArc maximal_arc_from(const KnotDiagram& d, std::size_t start_edge) {
  const std::size_t e = d.edge_count();
  if (e == 0) return {{0, false}, {0, true}};
  std::vector<bool> seen(d.crossing_count(), false);
  std::size_t len = 0;
  while (len < e) {
    int c = d.passes()[(start_edge + len) % e].crossing;
    if (seen[static_cast<std::size_t>(c)]) break;
    seen[static_cast<std::size_t>(c)] = true;
    ++len;
  }
  return arc_from_run(d, {start_edge, len});
}

inline SelectedArc choose_initial_arc(const KnotDiagram& d) {
  if (d.edge_count() == 0) return {{0, false}, {0, true}};
  std::optional<SelectedArc> best;
  std::size_t best_len = 0;
  int best_label = 0;
  for (std::size_t i = 0; i < d.edge_count(); ++i) {
    SelectedArc a = maximal_arc_from(d, i);
    std::size_t len = resolve_arc(d, a).length;
    int lbl = d.edge_order()[i];
    if (!best || len > best_len || (len == best_len && lbl < best_label)) {
      best = a;
      best_len = len;
      best_label = lbl;
    }
  }
  return *best;
}

}  // namespace semimeander
