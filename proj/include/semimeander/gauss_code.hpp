#pragma once

// Text format for annotated chord diagrams.
//
//   circular:  @[B] [W] a [W] b [W] a [W] b [W]
//   windowed:  | [W] a [W] @[B] [W] a [W] |  #r
//
// B is `*` (the bare symbol m) or a weight expression; W is `w` (the next
// auto-indexed weight symbol) or a weight expression. A weight expression is
// a `+`-separated sum of terms `c`, `cm`, `cw<j>` with nonnegative rational
// coefficients c (omitted when 1). Labels are alphanumeric. A missing segment
// weight reads as 0. The optional `#r` after a window overrides its
// elimination budget, which otherwise is half its symbol count.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semimeander/chord_diagram.hpp"

namespace semimeander {

class GaussParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline bool is_label(std::string_view tok) {
  if (tok.empty()) return false;
  for (char c : tok)
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return true;
}

// Bijective base-26: 0 -> a, 25 -> z, 26 -> aa.
inline std::string label_name(int index) {
  std::string out;
  int n = index + 1;
  while (n > 0) {
    --n;
    out.insert(out.begin(), static_cast<char>('a' + n % 26));
    n /= 26;
  }
  return out;
}

/// Parses one bracketed weight expression. `auto_index` counts bare `w`s.
inline LinearForm parse_weight(std::string_view text, std::size_t& auto_index, bool basepoint) {
  auto fail = [&](const std::string& why) {
    throw GaussParseError("malformed weight '[" + std::string(text) + "]': " + why);
  };
  if (text.empty()) fail("empty");
  if (basepoint && text == "*") return LinearForm::basepoint_symbol();
  LinearForm form;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t plus = text.find('+', pos);
    std::string_view term = text.substr(pos, plus == std::string_view::npos ? std::string_view::npos : plus - pos);
    if (term.empty()) fail("empty term");
    if (term[0] == '-') throw GaussParseError("negative weight '[" + std::string(text) + "]'");
    std::size_t i = 0;
    while (i < term.size() && (std::isdigit(static_cast<unsigned char>(term[i])) || term[i] == '/')) ++i;
    Rational coeff(1);
    if (i > 0) {
      auto parsed = Rational::try_parse(term.substr(0, i));
      if (!parsed) fail("bad coefficient");
      coeff = *parsed;
    }
    std::string_view sym = term.substr(i);
    if (sym.empty()) {
      if (i == 0) fail("empty term");
      form += LinearForm::constant_form(coeff);
    } else if (sym == "m" || sym == "*") {
      form += LinearForm::basepoint_symbol() * coeff;
    } else if (sym == "w") {
      form += LinearForm::weight_symbol(++auto_index) * coeff;
    } else if (sym[0] == 'w') {
      std::size_t j = 0;
      for (char c : sym.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad weight symbol");
        j = j * 10 + static_cast<std::size_t>(c - '0');
      }
      if (j == 0) fail("weight symbols are 1-based");
      form += LinearForm::weight_symbol(j) * coeff;
    } else {
      fail("unknown symbol '" + std::string(sym) + "'");
    }
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  return form;
}

template <class Scalar>
std::string render_weight(const BasicLinearForm<Scalar>& f, std::size_t& auto_index, bool basepoint) {
  if (basepoint && f == BasicLinearForm<Scalar>::basepoint_symbol()) return "*";
  if (f == BasicLinearForm<Scalar>::weight_symbol(auto_index + 1)) {
    ++auto_index;
    return "w";
  }
  return f.token();
}

}  // namespace detail

/// Parses a circular (`@[..] ...`) or windowed (`| ... |`) diagram.
inline ChordDiagram parse_gauss(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  if (words.empty()) throw GaussParseError("empty Gauss code");

  bool windowed = words.front() == "|";
  std::size_t begin = windowed ? 1 : 0;
  std::size_t end = words.size();
  std::optional<int> budget;
  if (windowed) {
    if (end >= 2 && words[end - 1].starts_with('#')) {
      std::string_view n = std::string_view(words[end - 1]).substr(1);
      int value = 0;
      if (n.empty()) throw GaussParseError("malformed budget '" + words[end - 1] + "'");
      for (char c : n) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw GaussParseError("malformed budget '" + words[end - 1] + "'");
        value = value * 10 + (c - '0');
      }
      budget = value;
      --end;
    }
    if (end < 2 || words[end - 1] != "|") throw GaussParseError("window is missing its closing '|'");
    --end;
  }

  if (!windowed && !words[begin].starts_with("@[")) throw GaussParseError("circular code must start at the basepoint");

  std::vector<int> tokens;
  std::vector<LinearForm> segments;
  std::optional<LinearForm> basepoint;
  std::map<std::string, int> labels;
  std::size_t auto_index = 0;
  bool gap_has_weight = false;
  segments.emplace_back();

  for (std::size_t i = begin; i < end; ++i) {
    const std::string& w = words[i];
    if (w.starts_with("@[")) {
      if (basepoint) throw GaussParseError("basepoint appears more than once");
      if (!w.ends_with("]")) throw GaussParseError("malformed basepoint token '" + w + "'");
      basepoint = detail::parse_weight(std::string_view(w).substr(2, w.size() - 3), auto_index, true);
      if (!windowed && !tokens.empty()) throw GaussParseError("circular code must start at the basepoint");
      if (windowed) {
        tokens.push_back(kBasepointToken);
        segments.emplace_back();
        gap_has_weight = false;
      }
    } else if (w.starts_with("[")) {
      if (!w.ends_with("]") || w.size() < 2) throw GaussParseError("malformed weight token '" + w + "'");
      if (gap_has_weight) throw GaussParseError("two weights in one segment near '" + w + "'");
      segments.back() = detail::parse_weight(std::string_view(w).substr(1, w.size() - 2), auto_index, false);
      gap_has_weight = true;
    } else if (detail::is_label(w)) {
      if (!windowed && !basepoint) throw GaussParseError("circular code must start at the basepoint");
      auto [it, inserted] = labels.try_emplace(w, static_cast<int>(labels.size()));
      tokens.push_back(it->second);
      segments.emplace_back();
      gap_has_weight = false;
    } else {
      throw GaussParseError("malformed token '" + w + "'");
    }
  }
  if (!basepoint) throw GaussParseError("missing basepoint");

  std::vector<int> count(labels.size(), 0);
  for (int t : tokens)
    if (t != kBasepointToken) ++count[static_cast<std::size_t>(t)];
  for (const auto& [name, id] : labels) {
    if (count[static_cast<std::size_t>(id)] > 2) throw GaussParseError("label '" + name + "' occurs more than twice");
    if (!windowed && count[static_cast<std::size_t>(id)] == 1)
      throw GaussParseError("label '" + name + "' occurs once in a circular diagram");
  }
  try {
    return ChordDiagram(windowed ? DiagramKind::windowed : DiagramKind::circular, std::move(tokens),
                        std::move(segments), std::move(*basepoint), budget);
  } catch (const std::invalid_argument& e) {
    throw GaussParseError(e.what());
  }
}

template <class Scalar>
std::string serialize(const BasicChordDiagram<Scalar>& d) {
  std::string out;
  std::size_t auto_index = 0;
  auto put = [&](const std::string& s) {
    if (!out.empty()) out += ' ';
    out += s;
  };
  const auto& tokens = d.tokens();
  const auto& segs = d.segments();
  if (d.is_circular()) {
    put("@[" + detail::render_weight(d.basepoint(), auto_index, true) + "]");
    for (std::size_t j = 0; j < tokens.size(); ++j) {
      put("[" + detail::render_weight(segs[j], auto_index, false) + "]");
      put(detail::label_name(tokens[j]));
    }
    put("[" + detail::render_weight(segs.back(), auto_index, false) + "]");
    return out;
  }
  put("|");
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    put("[" + detail::render_weight(segs[j], auto_index, false) + "]");
    if (tokens[j] == kBasepointToken) {
      put("@[" + detail::render_weight(d.basepoint(), auto_index, true) + "]");
    } else {
      put(detail::label_name(tokens[j]));
    }
  }
  put("[" + detail::render_weight(segs.back(), auto_index, false) + "]");
  put("|");
  if (d.length() != static_cast<int>(d.symbol_count() / 2)) put("#" + std::to_string(d.length()));
  return out;
}

/// Equal keys iff the diagrams agree up to chord relabeling.
template <class Scalar>
std::string canonical_key(const BasicChordDiagram<Scalar>& d) {
  return serialize(d);
}

/// Canonical representative of {d, reflect(d)}: the one with the smaller
/// token sequence (ties broken by key).
template <class Scalar>
bool is_reflection_representative(const BasicChordDiagram<Scalar>& d) {
  auto r = d.reflect();
  if (d.tokens() != r.tokens()) return d.tokens() < r.tokens();
  return canonical_key(d) <= canonical_key(r);
}

}  // namespace semimeander
