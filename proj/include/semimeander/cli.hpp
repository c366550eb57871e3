#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "semimeander/bounds.hpp"
#include "semimeander/bracket.hpp"
#include "semimeander/gauss_code.hpp"
#include "semimeander/optimizer.hpp"
#include "semimeander/reducer.hpp"
#include "semimeander/tables.hpp"

namespace semimeander {

/// Exit codes: 0 success, 1 input error (or a recomputed table that disagrees
/// with the shipped constants), 2 an internal limit was exceeded.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitLimit = 2 };

namespace detail {

// `--pd` takes a file; text that already looks like a PD code is used as is.
inline KnotDiagram load_pd(const std::string& spec) {
  std::string trimmed = spec.substr(spec.find_first_not_of(" \t") == std::string::npos ? 0 : spec.find_first_not_of(" \t"));
  if (trimmed.rfind("X[", 0) == 0 || trimmed.rfind("PD[", 0) == 0) return KnotDiagram::parse_pd(trimmed);
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot read PD file '" + spec + "'");
  std::string line, text;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    text = line;
    break;
  }
  return KnotDiagram::parse_pd(text);
}

inline std::vector<BaseWeight> weights_or_default(const std::string& m) {
  if (m.empty()) return {BaseWeight(8), BaseWeight::infinity()};
  return {BaseWeight::parse(m)};
}

inline std::vector<Family> families_or_default(const std::string& f) {
  if (f.empty()) return {Family::C, Family::D};
  return {parse_family(f)};
}

struct TableArgs {
  std::string family, m;
  int kmax = kDefaultMaxLength;
  bool deep = false, recompute = false;
  unsigned jobs = 0;
};

// Shipped constants by default; live computation (checked against them) on
// request.
inline CostTable load_table(const TableArgs& a, std::ostream& err, bool& mismatch) {
  if (a.kmax < 0) throw std::invalid_argument("--kmax must be nonnegative");
  if (a.kmax > kDeepMaxLength) throw LimitExceeded("--kmax above " + std::to_string(kDeepMaxLength) + " is not supported");
  CostTable out;
  auto ms = weights_or_default(a.m);
  for (Family f : families_or_default(a.family)) {
    if (!a.recompute) {
      for (const auto& m : ms) {
        if (!reference_table().contains({f, 0, m}))
          throw std::invalid_argument("no shipped constants for m = " + m.str() + "; use --recompute");
        for (int k = 0; k <= a.kmax; ++k) out.set({f, k, m}, reference_table().at({f, k, m}));
      }
      continue;
    }
    TableOptions opts;
    opts.jobs = a.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : a.jobs;
    opts.allow_deep = a.deep;
    out.merge(compute_table(a.kmax, ms, f, opts));
  }
  mismatch = false;
  for (const auto& key : table_mismatches(out, reference_table())) {
    mismatch = true;
    err << "MISMATCH " << to_string(key.family) << "_{" << key.k << "," << key.m.str() << "}: computed "
        << out.at(key).value.str() << ", shipped " << reference_table().at(key).value.str() << '\n';
  }
  return out;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semimeander diagrams: chord-diagram cost tables, crossing bounds and diagram reduction"};
  app.name("semimeander");
  app.require_subcommand(1);

  detail::TableArgs targs;
  auto* tables = app.add_subcommand("tables", "Print C_{k,m} / D_{k,m}");
  auto add_table_flags = [&](CLI::App* sub) {
    sub->add_option("--family", targs.family, "C or D (default both)");
    sub->add_option("--m", targs.m, "basepoint weight: rational or inf (default 8 and inf)");
    sub->add_option("--kmax", targs.kmax, "largest length");
    sub->add_flag("--deep", targs.deep, "allow lengths above " + std::to_string(kDefaultMaxLength));
    sub->add_option("--jobs", targs.jobs, "worker threads (default: all cores)");
    sub->add_flag("--recompute", targs.recompute, "compute live and compare with the shipped constants");
  };
  add_table_flags(tables);
  std::string table_csv;
  tables->add_option("--out", table_csv, "also write the table as CSV");

  std::string gauss, opt_m = "8";
  auto* optimize = app.add_subcommand("optimize", "Elimination forms and t_hat for one diagram");
  optimize->add_option("--gauss", gauss, "Gauss code of an ACD or preACD")->required();
  optimize->add_option("--m", opt_m, "basepoint weight: rational or inf");

  std::string pd_spec, arc_spec, reduce_out;
  auto* reduce = app.add_subcommand("reduce", "Turn a knot diagram into a semimeander diagram");
  reduce->add_option("--pd", pd_spec, "PD code file (or a literal X[...] code)")->required();
  reduce->add_option("--arc", arc_spec, "initial arc 'edge:<id>@<lo|hi> .. edge:<id>@<lo|hi>' (default: greedy)");
  reduce->add_option("--out", reduce_out, "write the resulting PD code and arc");

  int n = 0;
  auto* bound = app.add_subcommand("bound", "Crossing bounds for semimeander, meander and potholder diagrams");
  bound->add_option("--n", n, "crossing number (> 10)")->required();

  auto* bracket = app.add_subcommand("bracket", "Kauffman bracket of a PD code");
  bracket->add_option("--pd", pd_spec, "PD code file (or a literal X[...] code)")->required();

  std::string csv_out;
  auto* growth = app.add_subcommand("growth-csv", "log10 growth data for all four series");
  add_table_flags(growth);
  growth->add_option("--out", csv_out, "output path (default stdout)");

  std::vector<const char*> argv{"semimeander"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (tables->parsed()) {
      bool mismatch = false;
      CostTable t = detail::load_table(targs, err, mismatch);
      out << "# " << (targs.recompute ? "computed" : "shipped constants") << '\n';
      print_table(t, out);
      if (!table_csv.empty()) emit_growth_csv(t, table_csv);
      return mismatch ? kExitInput : kExitOk;
    }
    if (optimize->parsed()) {
      ChordDiagram d = parse_gauss(gauss);
      BaseWeight m = BaseWeight::parse(opt_m);
      FunctionSet fs = elimination_functions(d);
      out << "diagram: " << serialize(d) << '\n';
      out << "forms (" << fs.forms.size() << "):\n";
      for (const auto& f : fs.forms) out << "  " << f.str() << '\n';
      out << "t_hat(m=" << m.str() << ") = " << t_hat(fs, m).str() << '\n';
      return kExitOk;
    }
    if (reduce->parsed()) {
      KnotDiagram d = detail::load_pd(pd_spec);
      SelectedArc j = arc_spec.empty() ? choose_initial_arc(d) : SelectedArc::parse(arc_spec);
      out << "initial: " << d.crossing_count() << " crossings, arc " << j.str() << ", "
          << off_arc_crossings(d, j).size() << " off the arc\n";
      ReductionResult r = make_semimeander(d, j);
      out << "step crossing branch cost total_crossings off_j_crossings\n";
      for (const auto& s : r.trace) out << s.str() << '\n';
      out << "pd: " << r.diagram.pd() << '\n';
      out << "arc: " << r.arc.str() << '\n';
      out << "semimeander: " << (is_semimeander(r.diagram, r.arc) ? "yes" : "no") << '\n';
      if (!reduce_out.empty()) {
        std::ofstream f(reduce_out);
        if (!f) throw std::invalid_argument("cannot write '" + reduce_out + "'");
        f << r.diagram.pd() << '\n' << "# arc " << r.arc.str() << '\n';
      }
      return kExitOk;
    }
    if (bound->parsed()) {
      BoundReport b = bound_semimeander(n);
      const std::string power = format_decimal(b.base) + "^" + std::to_string(n);
      out << "n = " << n << " (d = " << b.d << ", blocks = " << b.blocks << ")\n";
      out << "semimeander: " << b.exact.str() << "  closed form " << format_decimal(b.coefficient) << " * " << power
          << " = " << format_decimal(b.closed_form) << '\n';
      out << "meander: " << b.meander.str() << "  closed form " << format_decimal(4 * b.coefficient) << " * " << power
          << " = " << format_decimal(b.meander_closed) << '\n';
      out << "potholder: " << b.potholder.str() << "  closed form (" << format_decimal(8 * b.coefficient) << " * "
          << power << " - 1)^2 = " << format_decimal(b.potholder_closed) << '\n';
      return kExitOk;
    }
    if (bracket->parsed()) {
      KnotDiagram d = detail::load_pd(pd_spec);
      out << "crossings: " << d.crossing_count() << '\n';
      out << "writhe: " << d.writhe() << '\n';
      out << "bracket: " << kauffman_bracket(d).str() << '\n';
      out << "normalized: " << normalized_bracket(d).str() << '\n';
      return kExitOk;
    }
    if (growth->parsed()) {
      if (!targs.recompute && !growth->count("--kmax")) targs.kmax = kDeepMaxLength;
      bool mismatch = false;
      CostTable t = detail::load_table(targs, err, mismatch);
      if (csv_out.empty())
        write_growth_csv(t, out);
      else
        emit_growth_csv(t, csv_out);
      return mismatch ? kExitInput : kExitOk;
    }
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitLimit;
  } catch (const BracketLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace semimeander
