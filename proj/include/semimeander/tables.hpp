#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "semimeander/gauss_code.hpp"
#include "semimeander/optimizer.hpp"

namespace semimeander {

/// C: all ACDs of length k. D: all preACD windows of length k.
enum class Family { C, D };

inline std::string to_string(Family f) { return f == Family::C ? "C" : "D"; }
inline Family parse_family(std::string_view s) {
  if (s == "C" || s == "c") return Family::C;
  if (s == "D" || s == "d") return Family::D;
  throw std::invalid_argument("family must be C or D, got '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Enumeration

/// Calls `visit(labels)` for every perfect matching of 2k points in linear
/// order; labels are assigned in order of first appearance.
inline void for_each_perfect_matching(int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> labels(static_cast<std::size_t>(2 * k), -1);
  std::function<void(int)> rec = [&](int next_label) {
    auto first = std::find(labels.begin(), labels.end(), -1);
    if (first == labels.end()) {
      visit(labels);
      return;
    }
    *first = next_label;
    for (auto it = first + 1; it != labels.end(); ++it) {
      if (*it != -1) continue;
      *it = next_label;
      rec(next_label + 1);
      *it = -1;
    }
    *first = -1;
  };
  rec(0);
}

/// Calls `visit(labels)` for every partial matching (involution) of n points:
/// each label occurs once or twice.
inline void for_each_partial_matching(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::function<void(int)> rec = [&](int next_label) {
    auto first = std::find(labels.begin(), labels.end(), -1);
    if (first == labels.end()) {
      visit(labels);
      return;
    }
    *first = next_label;
    rec(next_label + 1);
    for (auto it = first + 1; it != labels.end(); ++it) {
      if (*it != -1) continue;
      *it = next_label;
      rec(next_label + 1);
      *it = -1;
    }
    *first = -1;
  };
  rec(0);
}

/// True when the token shape is no larger than its mirror image. Fresh
/// diagrams carry one weight symbol per segment, so the shape alone decides
/// the reflection class.
inline bool is_shape_representative(const IntChordDiagram& d) {
  return d.tokens() <= d.reflect().tokens();
}

/// Streams the fresh symbolic diagrams of `family` at length k, one per
/// reflection class when `dedup_reflections` is set.
inline void for_each_diagram(Family family, int k, bool dedup_reflections,
                             const std::function<void(const IntChordDiagram&)>& visit) {
  if (k < 0) throw std::invalid_argument("length must be nonnegative");
  auto emit = [&](IntChordDiagram d) {
    if (!dedup_reflections || is_shape_representative(d)) visit(d);
  };
  if (family == Family::C) {
    for_each_perfect_matching(k, [&](const std::vector<int>& labels) { emit(IntChordDiagram::fresh_circular(labels)); });
  } else {
    const auto half = static_cast<std::ptrdiff_t>(k);
    for_each_partial_matching(2 * k, [&](const std::vector<int>& labels) {
      std::vector<int> left(labels.begin(), labels.begin() + half);
      std::vector<int> right(labels.begin() + half, labels.end());
      emit(IntChordDiagram::fresh_windowed(left, right));
    });
  }
}

/// Every ACD of length k (fresh weights), deduplicated under reflection.
inline std::vector<ChordDiagram> enumerate_acds(int k, bool dedup_reflections = true) {
  std::vector<ChordDiagram> out;
  for_each_diagram(Family::C, k, dedup_reflections, [&](const IntChordDiagram& d) { out.push_back(d.convert<Rational>()); });
  return out;
}

/// Every preACD window of length k, deduplicated under reflection.
inline std::vector<ChordDiagram> enumerate_preacds(int k, bool dedup_reflections = true) {
  std::vector<ChordDiagram> out;
  for_each_diagram(Family::D, k, dedup_reflections, [&](const IntChordDiagram& d) { out.push_back(d.convert<Rational>()); });
  return out;
}

// ---------------------------------------------------------------------------
// Cost tables

struct TableKey {
  Family family;
  int k;
  BaseWeight m;

  friend bool operator==(const TableKey&, const TableKey&) = default;
  friend std::strong_ordering operator<=>(const TableKey& a, const TableKey& b) {
    if (a.family != b.family) return a.family < b.family ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.m != b.m) return a.m <=> b.m;
    return a.k <=> b.k;
  }
};

struct TableEntry {
  Rational value;
  std::optional<std::string> witness;  // serialized maximizing diagram
  std::string provenance;              // "computed" or "reference"
  std::size_t diagrams = 0;            // diagrams evaluated (computed entries)
};

class CostTable {
 public:
  void set(const TableKey& key, TableEntry entry) { entries_.insert_or_assign(key, std::move(entry)); }
  bool contains(const TableKey& key) const { return entries_.contains(key); }
  const TableEntry& at(const TableKey& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end())
      throw std::out_of_range("no table entry for " + to_string(key.family) + "_{" + std::to_string(key.k) + "," +
                              key.m.str() + "}");
    return it->second;
  }
  const Rational& value(Family f, int k, const BaseWeight& m) const { return at({f, k, m}).value; }
  const std::map<TableKey, TableEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Distinct (family, m) series present, in key order.
  std::vector<std::pair<Family, BaseWeight>> series() const {
    std::vector<std::pair<Family, BaseWeight>> out;
    for (const auto& [key, entry] : entries_) {
      std::pair<Family, BaseWeight> s{key.family, key.m};
      if (out.empty() || !(out.back().first == s.first && out.back().second == s.second)) out.push_back(s);
    }
    return out;
  }

  void merge(const CostTable& other) {
    for (const auto& [key, entry] : other.entries_) set(key, entry);
  }

 private:
  std::map<TableKey, TableEntry> entries_;
};

/// The published constants for k = 0..9 at m = 8 and m = infinity.
inline const CostTable& reference_table() {
  static const CostTable table = [] {
    CostTable t;
    auto row = [&](Family f, const BaseWeight& m, std::vector<const char*> values) {
      for (std::size_t k = 0; k < values.size(); ++k)
        t.set({f, static_cast<int>(k), m}, {Rational::parse(values[k]), std::nullopt, "reference", 0});
    };
    const BaseWeight eight(8);
    const BaseWeight inf = BaseWeight::infinity();
    row(Family::C, eight, {"1", "25/16", "13/4", "35/8", "32/5", "89/8", "29/2", "161/8", "139/4", "359/8"});
    row(Family::C, inf, {"1", "3/2", "3", "4", "29/5", "10", "13", "18", "31", "40"});
    row(Family::D, eight, {"1", "17/8", "13/4", "79/16", "31/4", "89/8", "67/4", "197/8", "37", "431/8"});
    row(Family::D, inf, {"1", "2", "3", "9/2", "7", "10", "15", "22", "33", "48"});
    return t;
  }();
  return table;
}

/// Lengths up to this bound run by default; longer ones need an explicit opt-in.
inline constexpr int kDefaultMaxLength = 5;
inline constexpr int kDeepMaxLength = 9;

struct TableOptions {
  unsigned jobs = 1;
  bool dedup_reflections = true;
  bool allow_deep = false;
  /// Called with (k, diagrams finished so far) from the reducing thread.
  std::function<void(int, std::size_t)> progress;
};

class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct SeriesBest {
  std::optional<Rational> value;
  std::size_t index = 0;
  std::string witness;

  void offer(const Rational& v, std::size_t idx, const IntChordDiagram& d) {
    if (!value || *value < v || (*value == v && idx < index)) {
      value = v;
      index = idx;
      witness = serialize(d);
    }
  }
  void absorb(const SeriesBest& o) {
    if (!o.value) return;
    if (!value || *value < *o.value || (*value == *o.value && o.index < index)) *this = o;
  }
};

// Bounded single-producer / multi-consumer queue of numbered diagrams.
class DiagramQueue {
 public:
  explicit DiagramQueue(std::size_t capacity) : capacity_(capacity) {}

  void push(std::size_t index, IntChordDiagram d) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_; });
    items_.emplace_back(index, std::move(d));
    not_empty_.notify_one();
  }
  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
  }
  std::optional<std::pair<std::size_t, IntChordDiagram>> pop() {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return std::nullopt;
    auto item = std::move(items_.back());
    items_.pop_back();
    not_full_.notify_one();
    return item;
  }

 private:
  std::size_t capacity_;
  std::mutex mu_;
  std::condition_variable not_full_, not_empty_;
  std::vector<std::pair<std::size_t, IntChordDiagram>> items_;
  bool closed_ = false;
};

inline std::vector<SeriesBest> evaluate_length(Family family, int k, const std::vector<BaseWeight>& ms,
                                               const TableOptions& opts, std::size_t& diagrams) {
  auto evaluate = [&](std::size_t index, const IntChordDiagram& d, std::vector<SeriesBest>& best) {
    IntFunctionSet fs = elimination_functions(d);
    for (std::size_t s = 0; s < ms.size(); ++s) best[s].offer(t_hat(fs, ms[s]), index, d);
  };

  std::vector<SeriesBest> total(ms.size());
  std::atomic<std::size_t> done{0};
  if (opts.jobs <= 1) {
    std::size_t index = 0;
    for_each_diagram(family, k, opts.dedup_reflections, [&](const IntChordDiagram& d) {
      evaluate(index++, d, total);
      std::size_t n = ++done;
      if (opts.progress && n % 1000 == 0) opts.progress(k, n);
    });
    diagrams = index;
    return total;
  }

  DiagramQueue queue(4096);
  std::vector<std::vector<SeriesBest>> local(opts.jobs, std::vector<SeriesBest>(ms.size()));
  std::vector<std::jthread> workers;
  for (unsigned w = 0; w < opts.jobs; ++w) {
    workers.emplace_back([&, w] {
      while (auto item = queue.pop()) {
        evaluate(item->first, item->second, local[w]);
        ++done;
      }
    });
  }
  std::size_t index = 0;
  for_each_diagram(family, k, opts.dedup_reflections, [&](const IntChordDiagram& d) {
    queue.push(index++, d);
    if (opts.progress && index % 1000 == 0) opts.progress(k, done.load());
  });
  queue.close();
  workers.clear();
  for (const auto& l : local)
    for (std::size_t s = 0; s < ms.size(); ++s) total[s].absorb(l[s]);
  diagrams = index;
  return total;
}

}  // namespace detail

/// C_{k,m} or D_{k,m} for k = 0..k_max and every m in `ms`: the maximum of
/// t_hat over the enumerated family, with a maximizing witness. Each diagram's
/// elimination forms are computed once and reused for every m.
inline CostTable compute_table(int k_max, const std::vector<BaseWeight>& ms, Family family,
                               const TableOptions& opts = {}) {
  if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
  if (k_max > kDeepMaxLength) throw LimitExceeded("lengths above " + std::to_string(kDeepMaxLength) + " are not supported");
  if (k_max > kDefaultMaxLength && !opts.allow_deep)
    throw LimitExceeded("lengths above " + std::to_string(kDefaultMaxLength) + " need the deep opt-in");
  CostTable table;
  for (int k = 0; k <= k_max; ++k) {
    std::size_t diagrams = 0;
    auto best = detail::evaluate_length(family, k, ms, opts, diagrams);
    for (std::size_t s = 0; s < ms.size(); ++s)
      table.set({family, k, ms[s]}, {*best[s].value, best[s].witness, "computed", diagrams});
  }
  return table;
}

inline CostTable compute_table(int k_max, const BaseWeight& m, Family family, const TableOptions& opts = {}) {
  return compute_table(k_max, std::vector<BaseWeight>{m}, family, opts);
}

/// Entries of `computed` whose value differs from the same key in `reference`.
inline std::vector<TableKey> table_mismatches(const CostTable& computed, const CostTable& reference) {
  std::vector<TableKey> out;
  for (const auto& [key, entry] : computed.entries())
    if (reference.contains(key) && !(reference.at(key).value == entry.value)) out.push_back(key);
  return out;
}

// ---------------------------------------------------------------------------
// Output

/// Table laid out like the published one: one row per (family, m) series,
/// mixed-number entries.
inline void print_table(const CostTable& table, std::ostream& os) {
  int k_max = -1;
  for (const auto& [key, entry] : table.entries()) k_max = std::max(k_max, key.k);
  os << "k";
  for (int k = 0; k <= k_max; ++k) os << '\t' << k;
  os << '\n';
  for (const auto& [family, m] : table.series()) {
    os << to_string(family) << "_{k," << m.str() << "}";
    for (int k = 0; k <= k_max; ++k) {
      os << '\t';
      if (table.contains({family, k, m})) os << table.value(family, k, m).mixed_str();
    }
    os << '\n';
  }
}

inline std::string format_log10(const Rational& value) {
  double l = std::log10(value.to_double());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", l);
  return buf;
}

/// CSV: k,family,m,value,log10 with exact `p/q` values.
inline void write_growth_csv(const CostTable& table, std::ostream& os) {
  os << "k,family,m,value,log10\n";
  for (const auto& [key, entry] : table.entries())
    os << key.k << ',' << to_string(key.family) << ',' << key.m.str() << ',' << entry.value.str() << ','
       << format_log10(entry.value) << '\n';
}

inline void emit_growth_csv(const CostTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_growth_csv(table, out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

/// Least-squares slope of log10(value) against k over [k_from, k_to].
inline double growth_slope(const CostTable& table, Family family, const BaseWeight& m, int k_from, int k_to) {
  std::vector<double> xs, ys;
  for (int k = k_from; k <= k_to; ++k) {
    xs.push_back(k);
    ys.push_back(std::log10(table.value(family, k, m).to_double()));
  }
  if (xs.size() < 2) throw std::invalid_argument("slope needs at least two points");
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace semimeander
