#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "semimeander/gauss_code.hpp"
#include "semimeander/tables.hpp"

using namespace semimeander;

namespace {

long double_factorial(int n) { return n <= 1 ? 1 : n * double_factorial(n - 2); }

long involutions(int n) {
  // I(n) = I(n-1) + (n-1) I(n-2)
  long a = 1, b = 1;
  for (int i = 2; i <= n; ++i) {
    long c = b + (i - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

// Reflection classes of a token sequence, computed directly: relabel both
// the sequence and its reverse by first appearance and keep the smaller.
std::size_t reflection_classes(const std::vector<ChordDiagram>& raw) {
  auto relabel = [](std::vector<int> t) {
    std::map<int, int> fresh;
    for (int& x : t)
      if (x != kBasepointToken) x = fresh.try_emplace(x, static_cast<int>(fresh.size())).first->second;
    return t;
  };
  std::set<std::vector<int>> classes;
  for (const auto& d : raw) {
    auto t = relabel(d.tokens());
    auto r = relabel(std::vector<int>(t.rbegin(), t.rend()));
    classes.insert(std::min(t, r));
  }
  return classes.size();
}

std::vector<Rational> row(const CostTable& t, Family f, const BaseWeight& m, int k_max) {
  std::vector<Rational> out;
  for (int k = 0; k <= k_max; ++k) out.push_back(t.value(f, k, m));
  return out;
}

std::vector<Rational> parse_all(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(Rational::parse(x));
  return out;
}

}  // namespace

TEST(Enumeration, AcdCounts) {
  EXPECT_EQ(enumerate_acds(0).size(), 1u);
  EXPECT_EQ(enumerate_acds(1).size(), 1u);
  // aabb, abba and abab are each their own mirror image.
  EXPECT_EQ(enumerate_acds(2).size(), 3u);
  for (int k = 0; k <= 5; ++k) {
    auto raw = enumerate_acds(k, false);
    EXPECT_EQ(static_cast<long>(raw.size()), double_factorial(2 * k - 1)) << k;
    EXPECT_EQ(enumerate_acds(k).size(), reflection_classes(raw)) << k;
  }
  EXPECT_EQ(enumerate_acds(5, false).size(), 945u);
}

TEST(Enumeration, PreAcdCounts) {
  EXPECT_EQ(enumerate_preacds(0).size(), 1u);
  auto one = enumerate_preacds(1);
  ASSERT_EQ(one.size(), 2u);
  std::set<std::string> shapes;
  for (const auto& d : one) shapes.insert(serialize(d));
  EXPECT_TRUE(shapes.contains("| [w] a [w] @[*] [w] a [w] |"));
  EXPECT_TRUE(shapes.contains("| [w] a [w] @[*] [w] b [w] |"));
  for (int k = 0; k <= 4; ++k) {
    auto raw = enumerate_preacds(k, false);
    EXPECT_EQ(static_cast<long>(raw.size()), involutions(2 * k)) << k;
    EXPECT_EQ(enumerate_preacds(k).size(), reflection_classes(raw)) << k;
    for (const auto& d : raw) {
      EXPECT_EQ(d.length(), k);
      EXPECT_EQ(d.basepoint_index(), static_cast<std::size_t>(k));
    }
  }
}

TEST(Enumeration, EveryDiagramIsFreshAndDistinct) {
  std::set<std::string> keys;
  for (const auto& d : enumerate_acds(4, false)) {
    EXPECT_TRUE(keys.insert(canonical_key(d)).second);
    EXPECT_EQ(d.basepoint(), LinearForm::basepoint_symbol());
    EXPECT_EQ(d.segments().back(), LinearForm::weight_symbol(d.segments().size()));
  }
}

TEST(CostTables, CRowsAtEightAndInfinity) {
  auto t = compute_table(4, {BaseWeight(8), BaseWeight::infinity()}, Family::C);
  EXPECT_EQ(row(t, Family::C, BaseWeight(8), 4), parse_all({"1", "25/16", "13/4", "35/8", "32/5"}));
  EXPECT_EQ(row(t, Family::C, BaseWeight::infinity(), 4), parse_all({"1", "3/2", "3", "4", "29/5"}));
}

TEST(CostTables, DRowsAtEightAndInfinity) {
  auto t = compute_table(4, {BaseWeight(8), BaseWeight::infinity()}, Family::D);
  EXPECT_EQ(row(t, Family::D, BaseWeight(8), 4), parse_all({"1", "17/8", "13/4", "79/16", "31/4"}));
  EXPECT_EQ(row(t, Family::D, BaseWeight::infinity(), 4), parse_all({"1", "2", "3", "9/2", "7"}));
}

TEST(CostTables, WitnessesAttainTheirEntries) {
  auto t = compute_table(3, {BaseWeight(8)}, Family::D);
  for (const auto& [key, entry] : t.entries()) {
    ASSERT_TRUE(entry.witness.has_value());
    EXPECT_EQ(t_hat(parse_gauss(*entry.witness), key.m), entry.value) << *entry.witness;
    EXPECT_EQ(entry.provenance, "computed");
    EXPECT_EQ(entry.diagrams, enumerate_preacds(key.k).size());
  }
}

TEST(CostTables, ThreadedRunsMatchSequentialOnes) {
  TableOptions threaded;
  threaded.jobs = 4;
  auto a = compute_table(4, {BaseWeight(8), BaseWeight::infinity()}, Family::C);
  auto b = compute_table(4, {BaseWeight(8), BaseWeight::infinity()}, Family::C, threaded);
  for (const auto& [key, entry] : a.entries()) {
    EXPECT_EQ(b.at(key).value, entry.value);
    EXPECT_EQ(b.at(key).witness, entry.witness);
  }
}

TEST(CostTables, ReflectionDedupKeepsTheMaximum) {
  TableOptions all;
  all.dedup_reflections = false;
  for (Family f : {Family::C, Family::D}) {
    auto a = compute_table(3, {BaseWeight(8), BaseWeight::infinity()}, f);
    auto b = compute_table(3, {BaseWeight(8), BaseWeight::infinity()}, f, all);
    EXPECT_TRUE(table_mismatches(a, b).empty()) << to_string(f);
  }
}

TEST(CostTables, DecreaseTowardTheLimitInM) {
  const std::vector<BaseWeight> ms{BaseWeight(8), BaseWeight(64), BaseWeight(512), BaseWeight::infinity()};
  for (Family f : {Family::C, Family::D}) {
    auto t = compute_table(3, ms, f);
    for (int k = 0; k <= 3; ++k)
      for (std::size_t i = 1; i < ms.size(); ++i) EXPECT_GE(t.value(f, k, ms[i - 1]), t.value(f, k, ms[i]));
    for (int k = 1; k <= 3; ++k) {
      Rational gap8 = t.value(f, k, ms[0]) - t.value(f, k, ms[3]);
      Rational gap512 = t.value(f, k, ms[2]) - t.value(f, k, ms[3]);
      EXPECT_LT(gap512, gap8);
      EXPECT_LT(gap512, Rational(1, 32));
    }
  }
}

TEST(CostTables, LengthGuards) {
  EXPECT_THROW(compute_table(6, BaseWeight(8), Family::C), LimitExceeded);
  EXPECT_THROW(compute_table(10, BaseWeight(8), Family::C, TableOptions{1, true, true, {}}), LimitExceeded);
  EXPECT_THROW(compute_table(-1, BaseWeight(8), Family::C), std::invalid_argument);
}

TEST(CostTables, ReferenceValuesAndMismatchReport) {
  const auto& ref = reference_table();
  EXPECT_EQ(ref.entries().size(), 40u);
  EXPECT_EQ(ref.value(Family::D, 9, BaseWeight(8)), Rational(431, 8));
  EXPECT_EQ(ref.value(Family::C, 5, BaseWeight::infinity()), Rational(10));
  for (Family f : {Family::C, Family::D})
    for (const auto& m : {BaseWeight(8), BaseWeight::infinity()}) EXPECT_EQ(ref.value(f, 0, m), Rational(1));

  CostTable wrong;
  wrong.set({Family::C, 2, BaseWeight(8)}, {Rational(3), std::nullopt, "computed", 0});
  wrong.set({Family::C, 2, BaseWeight(9)}, {Rational(3), std::nullopt, "computed", 0});
  auto bad = table_mismatches(wrong, ref);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0], (TableKey{Family::C, 2, BaseWeight(8)}));
}

TEST(TableOutput, PrintsMixedNumbers) {
  std::ostringstream os;
  print_table(reference_table(), os);
  std::string text = os.str();
  EXPECT_NE(text.find("k\t0\t1\t2"), std::string::npos);
  EXPECT_NE(text.find("D_{k,8}\t1\t2 1/8\t3 1/4\t4 15/16\t7 3/4\t11 1/8\t16 3/4\t24 5/8\t37\t53 7/8"), std::string::npos);
  EXPECT_NE(text.find("C_{k,inf}\t1\t1 1/2\t3\t4\t5 4/5\t10"), std::string::npos);
}

TEST(TableOutput, GrowthCsvRows) {
  std::ostringstream os;
  write_growth_csv(reference_table(), os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,family,m,value,log10");
  int rows = 0;
  bool saw = false;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("9,D,8,", 0) == 0) {
      saw = true;
      EXPECT_EQ(line, "9,D,8,431/8," + format_log10(Rational(431, 8)));
      EXPECT_NEAR(std::stod(line.substr(line.rfind(',') + 1)), std::log10(53.875), 1e-12);
    }
  }
  EXPECT_EQ(rows, 40);
  EXPECT_TRUE(saw);
}

TEST(TableOutput, EmptyTableGivesHeaderOnly) {
  std::ostringstream os;
  write_growth_csv(CostTable{}, os);
  EXPECT_EQ(os.str(), "k,family,m,value,log10\n");

  auto path = std::filesystem::temp_directory_path() / "semimeander_empty.csv";
  emit_growth_csv(CostTable{}, path.string());
  std::ifstream f(path);
  std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_EQ(content, "k,family,m,value,log10\n");
  std::filesystem::remove(path);
  EXPECT_THROW(emit_growth_csv(CostTable{}, "/nonexistent/dir/x.csv"), std::runtime_error);
}

TEST(TableOutput, SlopeOfTheDRowAtEight) {
  double slope = growth_slope(reference_table(), Family::D, BaseWeight(8), 5, 9);
  double endpoints = (std::log10(53.875) - std::log10(11.125)) / 4;
  EXPECT_NEAR(slope, endpoints, 0.01 * endpoints);
  EXPECT_THROW(growth_slope(reference_table(), Family::D, BaseWeight(8), 5, 5), std::invalid_argument);
}
