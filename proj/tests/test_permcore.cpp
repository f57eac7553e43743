#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "galstat/catalog.hpp"
#include "galstat/numeric.hpp"
#include "galstat/permcore.hpp"

using galstat::CycleType;
using galstat::ImportedGroup;
using galstat::PermGroup;
using galstat::Permutation;
using galstat::Rat;

namespace {

// Independent conjugacy oracle: conjugate by every group element rather than
// by generator orbits, and compare the induced partitions.
std::vector<int> oracle_class_ids(const PermGroup& G) {
  const auto& elements = G.elements();
  std::vector<int> ids(elements.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (ids[i] >= 0) continue;
    for (const Permutation& x : elements) {
      int j = G.element_index(x * elements[i] * x.inverse());
      ids[j] = next;
    }
    ++next;
  }
  return ids;
}

std::map<CycleType, Rat> weights_by_type(const PermGroup& G) {
  std::map<CycleType, Rat> out;
  auto weights = G.haar_weights();
  for (int k = 0; k < G.class_count(); ++k) {
    auto [it, inserted] = out.emplace(G.classes()[k].cycle_type, weights[k]);
    if (!inserted) it->second += weights[k];
  }
  for (auto& [type, w] : out) w.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("cycle notation parses and round-trips") {
  Permutation g = Permutation::parse_cycles("(1,2,3,8)(4,5,6,7)", 8);
  CHECK(g.apply(1) == 2);
  CHECK(g.apply(8) == 1);
  CHECK(g.apply(7) == 4);
  CHECK(Permutation::parse_cycles(g.to_cycle_string(), 8) == g);
  CHECK(Permutation::parse_cycles("(1 2 3 4)", 4) == Permutation::parse_cycles("(1,2,3,4)", 4));
  CHECK(Permutation::parse_cycles("()", 3) == Permutation::identity(3));
  CHECK(Permutation::identity(5).to_cycle_string() == "()");
  CHECK_THROWS_AS(Permutation::parse_cycles("(1,2", 4), galstat::ParseError);
  CHECK_THROWS_AS(Permutation::parse_cycles("(1,9)", 4), galstat::ParseError);
  CHECK_THROWS_AS(Permutation::parse_cycles("(1,2)(2,3)", 4), galstat::ParseError);
  CHECK_THROWS_AS(Permutation::parse_cycles("(0,1)", 4), galstat::ParseError);
}

TEST_CASE("composition, inverse, and powers") {
  Permutation a = Permutation::parse_cycles("(1,2,3,4)", 4);
  Permutation b = Permutation::parse_cycles("(1,3)", 4);
  // (a*b)(x) = a(b(x)): 1 -> 3 -> 4.
  CHECK((a * b).apply(1) == 4);
  CHECK((b * a).apply(1) == 2);
  CHECK(a * a.inverse() == Permutation::identity(4));
  CHECK(a.power(4) == Permutation::identity(4));
  CHECK(a.power(-1) == a.inverse());
  CHECK(a.power(7) == a.power(3));
  CHECK(a.order() == 4);
  CHECK((a * a).order() == 2);
}

TEST_CASE("cycle types") {
  CHECK(Permutation::identity(8).cycle_type() == CycleType{1, 1, 1, 1, 1, 1, 1, 1});
  CHECK(Permutation::parse_cycles("(1,2,3,8)(4,5,6,7)", 8).cycle_type() == CycleType{4, 4});
  CHECK(Permutation::parse_cycles("(1,8)(2,7)(3,4)(5,6)", 8).cycle_type() == CycleType{2, 2, 2, 2});
  CHECK(Permutation::parse_cycles("(1,2)", 4).cycle_type() == CycleType{1, 1, 2});
}

TEST_CASE("breadth-first closure") {
  PermGroup d4 = PermGroup::close({Permutation::parse_cycles("(1,2,3,4)", 4),
                                   Permutation::parse_cycles("(1,3)", 4)});
  CHECK(d4.order() == 8);
  PermGroup q8 = galstat::catalog_group("Q8");
  CHECK(q8.order() == 8);
  CHECK(q8.degree() == 8);
  PermGroup sym8 = PermGroup::close({Permutation::parse_cycles("(1,2)", 8),
                                     Permutation::parse_cycles("(1,2,3,4,5,6,7,8)", 8)});
  CHECK(sym8.order() == 40320);
  CHECK_THROWS_AS(PermGroup::close({Permutation::parse_cycles("(1,2)", 8),
                                    Permutation::parse_cycles("(1,2,3,4,5,6,7,8)", 8)},
                                   "", 100),
                  galstat::GroupTooLargeError);
}

TEST_CASE("conjugacy classes in canonical order") {
  PermGroup d4 = galstat::catalog_group("D4");
  REQUIRE(d4.class_count() == 5);
  std::vector<CycleType> types = d4.class_map_to_sym();
  CHECK(types[0] == CycleType{1, 1, 1, 1});
  CHECK(types[1] == CycleType{1, 1, 2});
  CHECK(types[2] == CycleType{2, 2});
  CHECK(types[3] == CycleType{2, 2});
  CHECK(types[4] == CycleType{4});
  CHECK(d4.classes()[2].size == 1);  // the half-turn, before the size-2 reflection class
  CHECK(d4.classes()[3].size == 2);

  PermGroup sym4 = galstat::catalog_group("Sym4");
  REQUIRE(sym4.class_count() == 5);
  std::multiset<long> sizes;
  for (const auto& c : sym4.classes()) sizes.insert(c.size);
  CHECK(sizes == std::multiset<long>{1, 3, 6, 6, 8});

  // The identity class is always first.
  for (const char* name : {"Sym4", "D4", "Q8", "A5x6", "PSL2_7"}) {
    PermGroup G = galstat::catalog_group(name);
    CHECK(G.classes()[0].representative == Permutation::identity(G.degree()));
    CHECK(G.classes()[0].size == 1);
  }
}

TEST_CASE("classes agree with the conjugate-by-everything oracle") {
  for (const char* name : {"Sym4", "D4", "Q8", "T8_10", "A4", "V4"}) {
    PermGroup G = galstat::catalog_group(name);
    std::vector<int> oracle = oracle_class_ids(G);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        bool same_oracle = oracle[i] == oracle[j];
        bool same_actual =
            G.class_of_index(static_cast<int>(i)) == G.class_of_index(static_cast<int>(j));
        REQUIRE(same_oracle == same_actual);
      }
    }
  }
}

TEST_CASE("class representatives are lexicographically minimal") {
  for (const char* name : {"Sym4", "Q8", "T8_11"}) {
    PermGroup G = galstat::catalog_group(name);
    for (long i = 0; i < G.order(); ++i) {
      int k = G.class_of_index(static_cast<int>(i));
      CHECK(G.classes()[k].representative <= G.elements()[i]);
    }
  }
}

TEST_CASE("haar weights") {
  PermGroup d4x8 = galstat::catalog_group("D4x8");
  auto agg = weights_by_type(d4x8);
  REQUIRE(agg.size() == 3);
  CHECK(agg[CycleType{1, 1, 1, 1, 1, 1, 1, 1}] == galstat::make_rat(1, 8));
  CHECK(agg[CycleType{2, 2, 2, 2}] == galstat::make_rat(5, 8));
  CHECK(agg[CycleType{4, 4}] == galstat::make_rat(1, 4));

  PermGroup q8 = galstat::catalog_group("Q8");
  auto q8agg = weights_by_type(q8);
  REQUIRE(q8agg.size() == 3);
  CHECK(q8agg[CycleType{1, 1, 1, 1, 1, 1, 1, 1}] == galstat::make_rat(1, 8));
  CHECK(q8agg[CycleType{2, 2, 2, 2}] == galstat::make_rat(1, 8));
  CHECK(q8agg[CycleType{4, 4}] == galstat::make_rat(3, 4));
  auto weights = q8.haar_weights();
  std::multiset<Rat> expected{galstat::make_rat(1, 8), galstat::make_rat(1, 8),
                              galstat::make_rat(1, 4), galstat::make_rat(1, 4),
                              galstat::make_rat(1, 4)};
  CHECK(std::multiset<Rat>(weights.begin(), weights.end()) == expected);

  for (const auto& name : galstat::catalog_names()) {
    PermGroup G = galstat::catalog_group(name);
    Rat sum(0);
    for (const Rat& w : G.haar_weights()) sum += w;
    sum.canonicalize();
    CHECK(sum == 1);
  }
}

TEST_CASE("power map") {
  PermGroup q8 = galstat::catalog_group("Q8");
  int quaternion_class = -1;
  int minus_one_class = -1;
  for (int k = 0; k < q8.class_count(); ++k) {
    if (q8.classes()[k].representative.order() == 4 && quaternion_class < 0) quaternion_class = k;
    if (q8.classes()[k].cycle_type == CycleType{2, 2, 2, 2}) minus_one_class = k;
  }
  REQUIRE(quaternion_class >= 0);
  REQUIRE(minus_one_class >= 0);
  CHECK(q8.power_map(quaternion_class, 2) == minus_one_class);

  for (const char* name : {"Sym4", "Q8", "A5x6", "PSL2_7"}) {
    PermGroup G = galstat::catalog_group(name);
    for (int k = 0; k < G.class_count(); ++k) {
      CHECK(G.power_map(k, 1) == k);
      CHECK(G.power_map(k, G.exponent()) == 0);
    }
    // A unit exponent permutes the classes.
    long e = 1;
    while (std::gcd(e + 1, G.order()) != 1) ++e;
    ++e;
    std::set<int> image;
    for (int k = 0; k < G.class_count(); ++k) image.insert(G.power_map(k, e));
    CHECK(static_cast<int>(image.size()) == G.class_count());
  }
  CHECK_THROWS_AS(q8.power_map(99, 2), std::invalid_argument);
}

TEST_CASE("induced map to symmetric-group classes") {
  PermGroup d4 = galstat::catalog_group("D4");
  auto types = d4.class_map_to_sym();
  CHECK(std::count(types.begin(), types.end(), CycleType{2, 2}) == 2);

  PermGroup sym4 = galstat::catalog_group("Sym4");
  auto sym_types = sym4.class_map_to_sym();
  std::set<CycleType> distinct(sym_types.begin(), sym_types.end());
  CHECK(distinct.size() == 5);  // p(4) = 5, and the map is a bijection

  PermGroup a5 = galstat::catalog_group("A5x5");
  auto a5_types = a5.class_map_to_sym();
  CHECK(std::count(a5_types.begin(), a5_types.end(), CycleType{5}) == 2);
}

TEST_CASE("catalog orders and class counts") {
  struct Expected {
    const char* name;
    int degree;
    long order;
    int classes;
  };
  const Expected table[] = {
      {"Sym4", 4, 24, 5},    {"A4", 4, 12, 4},        {"D4", 4, 8, 5},
      {"C4", 4, 4, 4},       {"V4", 4, 4, 4},         {"D4x8", 8, 8, 5},
      {"Q8", 8, 8, 5},       {"T8_10", 8, 16, 10},    {"T8_11", 8, 16, 10},
      {"A5x5", 5, 60, 5},    {"A5x6", 6, 60, 5},      {"Sym8", 8, 40320, 22},
      {"Alt8", 8, 20160, 14}, {"PGL2_7", 8, 336, 9},  {"PSL2_7", 8, 168, 6},
      {"AGL3_2", 8, 1344, 11},
  };
  for (const Expected& e : table) {
    PermGroup G = galstat::catalog_group(e.name);
    CHECK(G.degree() == e.degree);
    CHECK(G.order() == e.order);
    CHECK(G.class_count() == e.classes);
    long sum = 0;
    for (const auto& c : G.classes()) {
      CHECK(G.order() % c.size == 0);
      sum += c.size;
    }
    CHECK(sum == G.order());
  }
  CHECK(galstat::catalog_has("Sym8"));
  CHECK_FALSE(galstat::catalog_has("Sym9"));
  CHECK_THROWS_AS(galstat::catalog_group("Sym9"), std::invalid_argument);
  CHECK(galstat::catalog_names().size() == 16);
  CHECK(galstat::catalog_names_for_degree(4) ==
        std::vector<std::string>{"Sym4", "A4", "D4", "C4", "V4"});
}

TEST_CASE("conjugation preserves cycle type") {
  std::mt19937 rng(31337);
  for (const auto& name : galstat::catalog_names()) {
    PermGroup G = galstat::catalog_group(name);
    std::uniform_int_distribution<long> pick(0, G.order() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      const Permutation& g = G.elements()[pick(rng)];
      const Permutation& x = G.elements()[pick(rng)];
      CHECK((x * g * x.inverse()).cycle_type() == g.cycle_type());
    }
  }
}

TEST_CASE("the nondistinguishable pair shares class points and weights") {
  // T8_10 and T8_11 induce identical cycle-type distributions, which is what
  // makes them impossible to separate from factorization statistics alone.
  auto w10 = weights_by_type(galstat::catalog_group("T8_10"));
  auto w11 = weights_by_type(galstat::catalog_group("T8_11"));
  CHECK(w10 == w11);
  REQUIRE(w10.size() == 4);
  CHECK(w10[CycleType{1, 1, 1, 1, 1, 1, 1, 1}] == galstat::make_rat(1, 16));
  CHECK(w10[CycleType{2, 2, 2, 2}] == galstat::make_rat(5, 16));
  CHECK(w10[CycleType{1, 1, 1, 1, 2, 2}] == galstat::make_rat(1, 8));
  CHECK(w10[CycleType{4, 4}] == galstat::make_rat(1, 2));
}

TEST_CASE("group JSON loading") {
  PermGroup G = galstat::load_group_json(
      R"doc({"name": "quaternion", "degree": 8,
             "generators": ["(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"]})doc");
  CHECK(G.name() == "quaternion");
  CHECK(G.order() == 8);
  CHECK_THROWS_AS(galstat::load_group_json("{}"), galstat::ParseError);
  CHECK_THROWS_AS(galstat::load_group_json("not json"), galstat::ParseError);
  CHECK_THROWS_AS(galstat::load_group_json(R"({"name":"x","degree":4,"generators":[]})"),
                  galstat::ParseError);
  CHECK_THROWS_AS(
      galstat::load_group_json(R"doc({"name":"x","degree":4,"generators":["(1,5)"]})doc"),
      galstat::ParseError);
}

TEST_CASE("import format for groups beyond the enumeration cap") {
  const char* doc = R"({
    "name": "toy", "degree": 4, "order": 8,
    "classes": [
      {"cycle_type": [1,1,1,1], "size": 1, "svector": [3, 3, 1]},
      {"cycle_type": [2,2], "size": 1},
      {"cycle_type": [2,2], "size": 2},
      {"cycle_type": [1,1,2], "size": 2},
      {"cycle_type": [4], "size": 2}
    ]})";
  ImportedGroup G = galstat::parse_imported_group(doc);
  CHECK(G.name == "toy");
  CHECK(G.order == 8);
  REQUIRE(G.classes.size() == 5);
  CHECK(G.classes[0].svector == std::vector<galstat::Int>{3, 3, 1});
  CHECK(G.classes[1].svector.empty());
  auto weights = G.haar_weights();
  Rat sum(0);
  for (const Rat& w : weights) sum += w;
  sum.canonicalize();
  CHECK(sum == 1);

  // Size bookkeeping must be consistent.
  CHECK_THROWS_AS(galstat::parse_imported_group(R"({
    "name": "bad", "degree": 4, "order": 9,
    "classes": [{"cycle_type": [1,1,1,1], "size": 1}]})"),
                  galstat::ParseError);
  // Cycle types must fit the degree.
  CHECK_THROWS_AS(galstat::parse_imported_group(R"({
    "name": "bad", "degree": 4, "order": 1,
    "classes": [{"cycle_type": [1,1,1], "size": 1}]})"),
                  galstat::ParseError);
  // Optional svector must have length degree - 1.
  CHECK_THROWS_AS(galstat::parse_imported_group(R"({
    "name": "bad", "degree": 4, "order": 1,
    "classes": [{"cycle_type": [1,1,1,1], "size": 1, "svector": [1]}]})"),
                  galstat::ParseError);
}
