#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "galstat/catalog.hpp"
#include "galstat/charparam.hpp"
#include "galstat/chartab.hpp"

using namespace galstat;

namespace {

std::vector<CycleType> partitions_of(int n) {
  std::vector<CycleType> out;
  CycleType current;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      CycleType p = current;
      std::sort(p.begin(), p.end());
      out.push_back(std::move(p));
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

PermGroup make_sym(int n) {
  if (n == 1) return PermGroup::close({Permutation::identity(1)}, "Sym1");
  std::vector<int> swap_images, cycle_images;
  for (int i = 1; i <= n; ++i) {
    swap_images.push_back(i);
    cycle_images.push_back(i % n + 1);
  }
  std::swap(swap_images[0], swap_images[1]);
  std::vector<Permutation> gens{Permutation(swap_images)};
  if (n > 2) gens.emplace_back(cycle_images);
  return PermGroup::close(std::move(gens), "Sym" + std::to_string(n));
}

const CharacterTable& table_of(const PermGroup& group) {
  static std::map<std::string, CharacterTable> cache;
  auto it = cache.find(group.name());
  if (it == cache.end()) it = cache.emplace(group.name(), character_table(group)).first;
  return it->second;
}

SPolynomial sp(const std::string& text) { return SPolynomial::parse(text); }

// Coefficients (a_1, ..., a_m) of det(xI - M) = x^m + a_1 x^{m-1} + ... + a_m,
// by the trace recurrence; exact over rationals.
std::vector<Rat> charpoly_coeffs(const std::vector<std::vector<Rat>>& m0) {
  std::size_t m = m0.size();
  std::vector<std::vector<Rat>> mk = m0;
  std::vector<Rat> coeffs;
  for (std::size_t k = 1; k <= m; ++k) {
    if (k > 1) {
      // mk = m0 * (mk + a_{k-1} I)
      std::vector<std::vector<Rat>> shifted = mk;
      for (std::size_t i = 0; i < m; ++i) shifted[i][i] += coeffs.back();
      std::vector<std::vector<Rat>> next(m, std::vector<Rat>(m, Rat(0)));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t l = 0; l < m; ++l) {
          if (m0[i][l] == 0) continue;
          for (std::size_t j = 0; j < m; ++j) next[i][j] += m0[i][l] * shifted[l][j];
        }
      }
      mk = std::move(next);
    }
    Rat trace(0);
    for (std::size_t i = 0; i < m; ++i) trace += mk[i][i];
    coeffs.push_back(-trace / Rat(static_cast<long>(k)));
  }
  return coeffs;
}

// Matrix of a permutation on the zero-sum subspace in the basis e_i - e_{i+1}.
std::vector<std::vector<Rat>> root_basis_matrix(const Permutation& g) {
  int n = g.degree();
  std::vector<std::vector<Rat>> m(n - 1, std::vector<Rat>(n - 1, Rat(0)));
  for (int i = 1; i <= n - 1; ++i) {
    int a = g.apply(i), b = g.apply(i + 1);
    if (a < b) {
      for (int r = a; r < b; ++r) m[r - 1][i - 1] += 1;
    } else {
      for (int r = b; r < a; ++r) m[r - 1][i - 1] -= 1;
    }
  }
  return m;
}

bool vanishes_on(const SPolynomial& p, const std::vector<ClassPoint>& pts) {
  for (const ClassPoint& pt : pts) {
    if (evaluate(p, pt) != 0) return false;
  }
  return true;
}

bool is_subgroup(const PermGroup& sub, const PermGroup& super) {
  if (sub.degree() != super.degree() || sub.order() > super.order()) return false;
  for (const Permutation& g : sub.generators()) {
    try {
      super.element_index(g);
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("s-vectors of cycle types") {
  CHECK(s_vector({1, 1, 1, 1}).svector == std::vector<Int>{3, 3, 1});
  CHECK(s_vector({1, 1, 2}).svector == std::vector<Int>{1, -1, -1});
  CHECK(s_vector({1, 3}).svector == std::vector<Int>{0, 0, 1});
  CHECK(s_vector({2, 2}).svector == std::vector<Int>{-1, -1, 1});
  CHECK(s_vector({4}).svector == std::vector<Int>{-1, 1, -1});
  CHECK(s_vector({1, 1, 1, 1, 1}).svector == std::vector<Int>{4, 6, 4, 1});
  CHECK(s_vector({1, 1, 3}).svector == std::vector<Int>{1, 0, 1, 1});
  CHECK(s_vector({1, 2, 2}).svector == std::vector<Int>{0, -2, 0, 1});
  CHECK(s_vector({5}).svector == std::vector<Int>{-1, 1, -1, 1});
  CHECK(s_vector({1, 7}).svector == std::vector<Int>{0, 0, 0, 0, 0, 0, 1});
  CHECK(s_vector({2, 2, 2, 2}).svector == std::vector<Int>{-1, -3, 3, 3, -3, -1, 1});
  CHECK(s_vector({4, 4}).svector == std::vector<Int>{-1, 1, -1, -1, 1, -1, 1});
  CHECK(s_vector({1, 1, 3, 3}).svector == std::vector<Int>{1, 0, 2, 2, 0, 1, 1});
  CHECK(s_vector({1}).svector.empty());
  CHECK(s_vector({1, 1, 1, 1}).degree == 4);

  // On the identity type 1^n the coordinates are the binomials C(n-1, k).
  for (int n = 2; n <= 10; ++n) {
    ClassPoint pt = s_vector(CycleType(static_cast<std::size_t>(n), 1));
    Int binom = 1;
    for (int k = 1; k <= n - 1; ++k) {
      binom = binom * (n - k) / k;
      CHECK(pt.svector[static_cast<std::size_t>(k - 1)] == binom);
    }
  }

  CHECK_THROWS_AS(s_vector({}), std::invalid_argument);
  CHECK_THROWS_AS(s_vector({0, 2}), std::invalid_argument);
}

TEST_CASE("cycle type to s-vector is injective up to degree 12") {
  for (int n = 1; n <= 12; ++n) {
    std::vector<CycleType> parts = partitions_of(n);
    std::set<std::vector<Int>> images;
    for (const CycleType& p : parts) images.insert(s_vector(p).svector);
    CHECK(images.size() == parts.size());
  }
}

TEST_CASE("s-vector matches the characteristic polynomial on the root basis") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 7;
    std::vector<int> images;
    for (int i = 1; i <= n; ++i) images.push_back(i);
    std::shuffle(images.begin(), images.end(), rng);
    Permutation g{images};
    std::vector<Rat> coeffs = charpoly_coeffs(root_basis_matrix(g));
    ClassPoint pt = s_vector(g.cycle_type());
    REQUIRE(coeffs.size() == pt.svector.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      Rat expected = Rat(pt.svector[k]);
      if (k % 2 == 0) expected = -expected;  // a_k = (-1)^k s_k
      CHECK(coeffs[k] == expected);
    }
  }
}

TEST_CASE("generic relations hold at every cycle type") {
  for (int n = 2; n <= 10; ++n) {
    SPolynomial last = SPolynomial::variable(n - 1);
    std::vector<SPolynomial> rels;
    for (int k = 1; k <= n - 2; ++k) {
      rels.push_back(SPolynomial::variable(k) * last - SPolynomial::variable(n - 1 - k));
    }
    rels.push_back(last * last - SPolynomial(Rat(1)));
    for (const CycleType& p : partitions_of(n)) {
      ClassPoint pt = s_vector(p);
      for (const SPolynomial& rel : rels) CHECK(evaluate(rel, pt) == 0);
    }
  }

  // On groups of even permutations additionally s_k = s_{n-1-k}, s_{n-1} = 1.
  int even_groups = 0;
  for (const std::string& name : catalog_names()) {
    PermGroup g = catalog_group(name);
    int n = g.degree();
    bool all_even = true;
    for (const ConjClass& c : g.classes()) {
      int cycles = static_cast<int>(c.cycle_type.size());
      if ((n - cycles) % 2 != 0) {
        all_even = false;
        break;
      }
    }
    if (!all_even) continue;
    ++even_groups;
    for (const ClassPoint& pt : class_points(g)) {
      CHECK(pt.svector.back() == 1);
      for (std::size_t k = 0; k + 1 < pt.svector.size(); ++k) {
        CHECK(pt.svector[k] == pt.svector[pt.svector.size() - 2 - k]);
      }
    }
  }
  CHECK(even_groups >= 6);  // A4, V4, D4x8, Q8, A5x5, A5x6, Alt8 at least
}

TEST_CASE("polynomial arithmetic, parsing, and printing") {
  SPolynomial s1 = SPolynomial::variable(1);
  SPolynomial s2 = SPolynomial::variable(2);
  CHECK((s1 + SPolynomial(Rat(1))) * (s1 - SPolynomial(Rat(1))) == s1 * s1 - SPolynomial(Rat(1)));
  CHECK((s1 + s2) * (s1 - s2) == s1 * s1 - s2 * s2);
  CHECK((s1 * Rat(3)) / Rat(3) == s1);
  CHECK((-s1) + s1 == SPolynomial{});
  CHECK(SPolynomial{}.is_zero());
  CHECK(SPolynomial{}.to_string() == "0");
  CHECK(sp("0").is_zero());
  CHECK(s1.total_degree() == 1);
  CHECK((s1 * s2 * s2).total_degree() == 3);
  CHECK((s1 * s2).max_variable() == 2);
  CHECK(SPolynomial(Rat(5)).max_variable() == 0);
  CHECK(sp("s1^2 - s1 - s2 - 1").coefficient({2}) == 1);
  CHECK(sp("s1^2 - s1 - s2 - 1").coefficient({0, 1}) == -1);
  CHECK(sp("s1^2 - s1 - s2 - 1").coefficient({1, 1}) == 0);

  // Round trips through the canonical print form.
  const std::vector<std::string> round_trips{
      "s1^2 - s1 - s2 - 1", "-s1 + 1/2*s2 - 1/2",      "s1*s3 - s2",
      "2*s1 - 1/2*s2 + 1/2", "s2^2 - s1 - s2 - s3 - 2", "-s1^2 + 2*s1 + 2*s2 + 1",
      "3",                   "0",                       "s4"};
  for (const std::string& text : round_trips) CHECK(sp(text).to_string() == text);
  // Star between coefficient and variable is optional; signs combine.
  CHECK(sp("4s2 + 3s3 - s1s2 - 4s1 - 2") == sp("4*s2 + 3*s3 - s1*s2 - 4*s1 - 2"));
  CHECK(sp("- - s1") == s1);
  CHECK(sp("s1 s1") == s1 * s1);
  CHECK(sp("1/2 * s2") * Rat(2) == s2);

  CHECK_THROWS_AS(sp(""), ParseError);
  CHECK_THROWS_AS(sp("   "), ParseError);
  CHECK_THROWS_AS(sp("(s1)"), ParseError);
  CHECK_THROWS_AS(sp("s0"), ParseError);
  CHECK_THROWS_AS(sp("x + 1"), ParseError);
  CHECK_THROWS_AS(sp("1/0"), ParseError);
  CHECK_THROWS_AS(sp("s1 +"), ParseError);
  CHECK_THROWS_AS(sp("* s1"), ParseError);
  CHECK_THROWS_AS(SPolynomial::variable(0), std::invalid_argument);

  MonomialOrder less;
  CHECK(less({}, {1}));
  CHECK(less({1}, {0, 1}));
  CHECK(less({2}, {1, 1}));
  CHECK(less({1, 1}, {0, 2}));
  CHECK(!less({0, 2}, {1, 1}));
  CHECK(!less({1}, {1}));
}

TEST_CASE("evaluation at class points") {
  ClassPoint pt = s_vector({1, 1, 1, 1});
  CHECK(evaluate(sp("s1^2 - s1 - s2 - 1"), pt) == 2);
  CHECK(evaluate(SPolynomial(Rat(7)), pt) == 7);
  CHECK(evaluate(SPolynomial{}, pt) == 0);
  PermGroup d4 = catalog_group("D4");
  CHECK(vanishes_on(sp("s1^2 - s1 - s2 - s3 - 2"), class_points(d4)));
  CHECK_THROWS_AS(evaluate(sp("s5"), pt), std::out_of_range);
  CHECK(evaluate(sp("s3"), pt) == 1);
}

TEST_CASE("interpolation reproduces the documented formulas") {
  PermGroup sym4 = catalog_group("Sym4");
  // Degree-2 irreducible of Sym4: values on (1^4, 1^2 2, 1 3, 2^2, 4).
  std::vector<Rat> deg2{Rat(2), Rat(0), Rat(-1), Rat(2), Rat(0)};
  CHECK(interpolate_character(deg2, sym4) == sp("s1^2 - s1 - s2 - 1"));
  CHECK_THROWS_WITH_AS(interpolate_character(deg2, sym4, 1), "degree bound too small",
                       std::domain_error);

  // The five-dimensional character of the quintic A5 action.
  PermGroup a5 = catalog_group("A5x5");
  std::vector<Rat> five{Rat(5), Rat(-1), Rat(1), Rat(0), Rat(0)};
  CHECK(interpolate_character(five, a5) == sp("s1^2 - s1 - s2 - 1"));

  // chi_3 + chi_4 on the sextic A5 action (degree-constant on both 5-classes).
  PermGroup a5x6 = catalog_group("A5x6");
  const CharacterTable& t6 = table_of(a5x6);
  std::vector<Rat> sum34;
  for (int j = 0; j < t6.size(); ++j) {
    auto ju = static_cast<std::size_t>(j);
    sum34.push_back((t6.values[1][ju] + t6.values[2][ju]).rational_value());
  }
  CHECK(interpolate_character(sum34, a5x6) == sp("-s1^2 + 2*s1 + 2*s2 + 1"));

  // Values that do not factor through the cycle type are rejected.
  PermGroup d4 = catalog_group("D4");
  std::vector<Rat> bad{Rat(1), Rat(-1), Rat(1), Rat(-1), Rat(1)};
  CHECK_THROWS_WITH_AS(interpolate_character(bad, d4), "not in restriction image",
                       std::domain_error);
  CHECK_THROWS_AS(interpolate_character(deg2, sym4, 0), std::invalid_argument);
  CHECK_THROWS_AS(interpolate_character({Rat(1)}, sym4), std::invalid_argument);
}

TEST_CASE("interpolation recovers the rational characters of PSL(2,7)") {
  PermGroup g = catalog_group("PSL2_7");
  const CharacterTable& t = table_of(g);
  RationalCharacterTable rt = rational_character_table(t);
  REQUIRE(rt.rank() == 5);

  std::vector<SPolynomial> expected{
      SPolynomial(Rat(1)),
      sp("4*s2 + 3*s3 - s1*s2 - 4*s1 - 2") / Rat(2),
      sp("2*s2 + 5*s3 - s1*s2 - 6*s1 - 4") / Rat(4),
      sp("s1"),
      sp("s1*s2 + 2*s1 + 2 - 2*s2 - 3*s3") / Rat(2),
  };
  for (int i = 0; i < rt.rank(); ++i) {
    std::vector<Rat> values(t.size());
    for (std::size_t k = 0; k < rt.classes.size(); ++k) {
      for (int j : rt.classes[k].members) values[static_cast<std::size_t>(j)] = Rat(rt.rows[i][k]);
    }
    CHECK(interpolate_character(values, g) == expected[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("interpolation after evaluation is the identity on values") {
  for (const std::string& name : catalog_names()) {
    PermGroup g = catalog_group(name);
    int n = g.degree();
    std::vector<SPolynomial> probes;
    for (int k = 1; k <= n - 1; ++k) probes.push_back(SPolynomial::variable(k));
    probes.push_back(SPolynomial::variable(1) * SPolynomial::variable(1));
    if (n >= 3) probes.push_back(SPolynomial::variable(1) * SPolynomial::variable(2));
    std::vector<ClassPoint> pts = class_points(g);
    for (const SPolynomial& p : probes) {
      std::vector<Rat> values;
      for (const ClassPoint& pt : pts) values.push_back(evaluate(p, pt));
      SPolynomial q = interpolate_character(values, g, 2);
      for (std::size_t j = 0; j < pts.size(); ++j) CHECK(evaluate(q, pts[j]) == values[j]);
    }
  }
}

TEST_CASE("kernel ideal of the quartic D4 at the default bound") {
  PermGroup d4 = catalog_group("D4");
  KernelIdealBasis basis = kernel_ideal(d4);
  REQUIRE(basis.degree_bound == 2);
  std::vector<std::string> expected{
      "s1*s3 - s2",
      "s2*s3 - s1",
      "s3^2 - 1",
      "s1^2 - s1 - s2 - s3 - 2",
      "s1*s2 - s1 - s2 - 2*s3 - 1",
      "s2^2 - s1 - s2 - s3 - 2",
  };
  REQUIRE(basis.generators.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(basis.generators[i].to_string() == expected[i]);
  }
  std::vector<ClassPoint> pts = class_points(d4);
  for (const SPolynomial& g : basis.generators) CHECK(vanishes_on(g, pts));
  CHECK(reduce_modulo(basis.generators[0] * sp("1/2") + basis.generators[3], basis).is_zero());
  CHECK(!reduce_modulo(sp("s1"), basis).is_zero());
  CHECK_THROWS_AS(kernel_ideal(d4, 0), std::invalid_argument);
}

TEST_CASE("kernel ideal of Sym4 at bound 4 contains the split cubic products") {
  PermGroup sym4 = catalog_group("Sym4");
  KernelIdealBasis basis = kernel_ideal(sym4, 4);
  CHECK(basis.generators.size() == 30);  // 35 monomials, 5 independent points
  std::vector<ClassPoint> pts = class_points(sym4);
  for (const SPolynomial& g : basis.generators) CHECK(vanishes_on(g, pts));

  SPolynomial s1 = sp("s1"), s3 = sp("s3"), one{Rat(1)};
  SPolynomial cubic1 = s1 * (s1 + one) * (s1 - s3 - SPolynomial(Rat(2)));
  SPolynomial cubic2 = (s1 + one) * (s1 - one) * (s3 - one);
  CHECK(vanishes_on(cubic1, pts));
  CHECK(vanishes_on(cubic2, pts));
  CHECK(reduce_modulo(cubic1, basis).is_zero());
  CHECK(reduce_modulo(cubic2, basis).is_zero());
  CHECK(!reduce_modulo(sp("s1^3"), basis).is_zero());
}

TEST_CASE("kernel ideals contain s_{n-1}^2 - 1 and shrink along inclusions") {
  for (int n = 3; n <= 8; ++n) {
    PermGroup sym = n == 8 ? catalog_group("Sym8") : make_sym(n);
    KernelIdealBasis basis = kernel_ideal(sym);
    std::string rel = "s" + std::to_string(n - 1) + "^2 - 1";
    bool found = false;
    for (const SPolynomial& g : basis.generators) found = found || g == sp(rel);
    CHECK(found);
  }

  // I(G) subset I(H) whenever H subset G: generators for the big group vanish
  // on every class point of the subgroup.
  std::vector<std::string> names = catalog_names();
  int pairs = 0;
  for (const std::string& super : names) {
    PermGroup g = catalog_group(super);
    KernelIdealBasis basis = kernel_ideal(g);
    for (const std::string& sub : names) {
      if (sub == super) continue;
      PermGroup h = catalog_group(sub);
      if (!is_subgroup(h, g)) continue;
      ++pairs;
      std::vector<ClassPoint> pts = class_points(h);
      for (const SPolynomial& gen : basis.generators) CHECK(vanishes_on(gen, pts));
    }
  }
  CHECK(pairs >= 10);
}

TEST_CASE("subgroup class maps") {
  PermGroup sym4 = catalog_group("Sym4");
  PermGroup d4 = catalog_group("D4");
  CHECK(subgroup_class_map(sym4, d4) == std::vector<int>{0, 1, 3, 3, 4});
  PermGroup a4 = catalog_group("A4");
  CHECK_THROWS_AS(subgroup_class_map(a4, d4), std::invalid_argument);
  CHECK_THROWS_AS(subgroup_class_map(catalog_group("Sym8"), d4), std::invalid_argument);
}

TEST_CASE("branching matrices for documented inclusions") {
  PermGroup sym4 = catalog_group("Sym4");
  PermGroup d4 = catalog_group("D4");
  std::vector<std::vector<Int>> expected4{
      {1, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, {1, 0, 1, 0, 0}, {0, 1, 0, 0, 1}, {0, 0, 0, 1, 1},
  };
  CHECK(restriction_matrix(table_of(sym4), table_of(d4), subgroup_class_map(sym4, d4)) ==
        expected4);

  PermGroup sym5 = make_sym(5);
  PermGroup a5 = catalog_group("A5x5");
  const CharacterTable& t5 = table_of(sym5);
  std::vector<Int> degrees5;
  for (int i = 0; i < static_cast<int>(t5.size()); ++i) degrees5.push_back(t5.degree(i));
  CHECK(degrees5 == std::vector<Int>{1, 1, 4, 4, 5, 5, 6});
  std::vector<std::vector<Int>> expected5{
      {1, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 1, 0},
      {0, 0, 0, 0, 1}, {0, 0, 0, 0, 1}, {0, 1, 1, 0, 0},
  };
  CHECK(restriction_matrix(t5, table_of(a5), subgroup_class_map(sym5, a5)) == expected5);

  // A shifted class map cannot decompose integrally.
  CHECK_THROWS_AS(restriction_matrix(table_of(sym4), table_of(d4), {1, 1, 3, 3, 4}),
                  std::domain_error);
  CHECK_THROWS_AS(restriction_matrix(table_of(sym4), table_of(d4), {0, 1, 3, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(restriction_matrix(table_of(sym4), table_of(d4), {0, 1, 3, 3, 7}),
                  std::invalid_argument);
}

TEST_CASE("branching matrices are nonnegative and preserve degree") {
  std::vector<std::pair<std::string, std::string>> pairs{
      {"Sym4", "D4"}, {"Sym4", "A4"}, {"Sym4", "V4"}, {"D4", "C4"},
      {"A4", "V4"},   {"Sym8", "Q8"}, {"Sym8", "PSL2_7"},
  };
  for (const auto& [super, sub] : pairs) {
    PermGroup g = catalog_group(super);
    PermGroup h = catalog_group(sub);
    const CharacterTable& tg = table_of(g);
    const CharacterTable& th = table_of(h);
    std::vector<std::vector<Int>> m = restriction_matrix(tg, th, subgroup_class_map(g, h));
    REQUIRE(m.size() == tg.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      Int total = 0;
      for (std::size_t k = 0; k < m[i].size(); ++k) {
        CHECK(m[i][k] >= 0);
        total += m[i][k] * th.degree(static_cast<int>(k));
      }
      CHECK(total == tg.degree(static_cast<int>(i)));
    }
    // The trivial character restricts to the trivial character.
    CHECK(m[0][0] == 1);
    Int trivial_row_sum = 0;
    for (const Int& v : m[0]) trivial_row_sum += v;
    CHECK(trivial_row_sum == 1);
  }
}

TEST_CASE("rank of the parametrization image") {
  CHECK(restriction_image_rank(catalog_group("Sym8")) == 22);
  CHECK(restriction_image_rank(catalog_group("Alt8")) == 12);
  CHECK(restriction_image_rank(catalog_group("AGL3_2")) == 8);
  CHECK(restriction_image_rank(catalog_group("PGL2_7")) == 8);
  CHECK(restriction_image_rank(catalog_group("PSL2_7")) == 5);
  CHECK(restriction_image_rank(catalog_group("T8_10")) == 4);
  CHECK(restriction_image_rank(catalog_group("T8_11")) == 4);
  CHECK(restriction_image_rank(catalog_group("D4x8")) == 3);
  CHECK(restriction_image_rank(catalog_group("Q8")) == 3);
  CHECK(restriction_image_rank(catalog_group("A5x5")) == 4);
  CHECK(restriction_image_rank(catalog_group("A5x6")) == 4);
  CHECK(restriction_image_rank(catalog_group("Sym4")) == 5);
  // For Sym_n itself the rank is the number of partitions of n.
  std::vector<int> partition_counts{1, 2, 3, 5, 7, 11, 15};
  for (int n = 1; n <= 7; ++n) {
    CHECK(restriction_image_rank(make_sym(n)) == partition_counts[static_cast<std::size_t>(n - 1)]);
  }
}

TEST_CASE("scaled idempotents of the degree-8 D4 and Q8 actions") {
  std::vector<SPolynomial> expected{sp("s1 + 1"), sp("5*s1 - 2*s2 + 7"), sp("-6*s1 + 2*s2")};
  CHECK(scaled_idempotents(catalog_group("D4x8")) == expected);
  CHECK(scaled_idempotents(catalog_group("Q8")) == expected);

  // Partition of unity and point values, across the catalog.
  for (const std::string& name : catalog_names()) {
    if (name == "Sym8" || name == "Alt8") continue;  // larger point sets, same code path
    PermGroup g = catalog_group(name);
    std::vector<ClassPoint> pts = distinct_class_points(g);
    std::vector<SPolynomial> idem = scaled_idempotents(g);
    REQUIRE(idem.size() == pts.size());
    SPolynomial total;
    for (const SPolynomial& p : idem) total = total + p;
    CHECK(total == SPolynomial(Rat(Int(g.order()))));
    for (std::size_t i = 0; i < idem.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        CHECK(evaluate(idem[i], pts[j]) == (i == j ? Rat(Int(g.order())) : Rat(0)));
      }
    }
  }
  CHECK_THROWS_AS(scaled_idempotents({}, Int(8)), std::invalid_argument);
  CHECK_THROWS_AS(
      scaled_idempotents({s_vector({1, 1, 1, 1}), s_vector({1, 1, 1, 1})}, Int(8)),
      std::invalid_argument);
}

TEST_CASE("reduced basis of the degree-8 D4 action") {
  PermGroup g = catalog_group("D4x8");
  std::vector<VirtualCharacter> basis = reduced_character_basis(g, table_of(g));
  REQUIRE(basis.size() == 3);

  CHECK(basis[0].coords == std::vector<Int>{1, 0, 0, 0, 0});
  CHECK(basis[0].degree() == 1);
  CHECK(*basis[0].expression == SPolynomial(Rat(1)));

  // sigma_1 = chi_1 + psi, the unique norm-2 element.
  CHECK(basis[1].coords == std::vector<Int>{0, 1, 0, 0, 1});
  CHECK(basis[1].degree() == 3);
  CHECK(*basis[1].expression == sp("-s1 + 1/2*s2 - 1/2"));
  CHECK(basis[1].values == std::vector<Rat>{Rat(3), Rat(-1), Rat(-1), Rat(-1), Rat(1)});

  // sigma_2 = chi_2 + chi_3 + psi (degree 4).
  CHECK(basis[2].coords == std::vector<Int>{0, 0, 1, 1, 1});
  CHECK(basis[2].degree() == 4);
  CHECK(*basis[2].expression == sp("2*s1 - 1/2*s2 + 1/2"));
  CHECK(basis[2].values == std::vector<Rat>{Rat(4), Rat(0), Rat(0), Rat(0), Rat(-2)});

  // The scaled idempotents are integer combinations of the basis expressions.
  SPolynomial one{Rat(1)};
  const SPolynomial& sig1 = *basis[1].expression;
  const SPolynomial& sig2 = *basis[2].expression;
  CHECK(one + sig1 + sig2 == sp("s1 + 1"));
  CHECK(SPolynomial(Rat(5)) - sig1 * Rat(3) + sig2 == sp("5*s1 - 2*s2 + 7"));
  CHECK(SPolynomial(Rat(2)) + sig1 * Rat(2) - sig2 * Rat(2) == sp("-6*s1 + 2*s2"));
}

TEST_CASE("reduced basis of the quaternion action") {
  PermGroup g = catalog_group("Q8");
  std::vector<VirtualCharacter> basis = reduced_character_basis(g, table_of(g));
  REQUIRE(basis.size() == 3);

  CHECK(basis[0].coords == std::vector<Int>{1, 0, 0, 0, 0});

  // tau_1 is the two-dimensional irreducible itself.
  CHECK(basis[1].coords == std::vector<Int>{0, 0, 0, 0, 1});
  CHECK(basis[1].degree() == 2);
  CHECK(*basis[1].expression == sp("-s1 + 1/2*s2 - 3/2"));
  CHECK(basis[1].values == std::vector<Rat>{Rat(2), Rat(-2), Rat(0), Rat(0), Rat(0)});

  // tau_2 is the sum of the three nontrivial linear characters.
  CHECK(basis[2].coords == std::vector<Int>{0, 1, 1, 1, 0});
  CHECK(basis[2].degree() == 3);
  CHECK(*basis[2].expression == sp("3*s1 - s2 + 3"));

  // The two degree-8 bases are related by (sigma_1, sigma_2) =
  // (tau_1 + 1, tau_1 + tau_2 - 1) as polynomials in the parameters.
  const SPolynomial& tau1 = *basis[1].expression;
  const SPolynomial& tau2 = *basis[2].expression;
  SPolynomial one{Rat(1)};
  CHECK(tau1 + one == sp("-s1 + 1/2*s2 - 1/2"));
  CHECK(tau1 + tau2 - one == sp("2*s1 - 1/2*s2 + 1/2"));
}

TEST_CASE("reduced bases of the A5 actions and of Sym4") {
  PermGroup a5 = catalog_group("A5x5");
  std::vector<VirtualCharacter> basis = reduced_character_basis(a5, table_of(a5));
  REQUIRE(basis.size() == 4);
  CHECK(basis[0].coords == std::vector<Int>{1, 0, 0, 0, 0});
  CHECK(basis[1].coords == std::vector<Int>{0, 0, 0, 1, 0});
  CHECK(*basis[1].expression == sp("s1"));
  CHECK(basis[2].coords == std::vector<Int>{0, 0, 0, 0, 1});
  CHECK(*basis[2].expression == sp("s1^2 - s1 - s2 - 1"));
  CHECK(basis[3].coords == std::vector<Int>{0, 1, 1, 0, 0});  // chi_3 + chi_4
  CHECK(*basis[3].expression == sp("s2"));

  // Sym4: every irreducible, ordered by degree.
  PermGroup sym4 = catalog_group("Sym4");
  std::vector<VirtualCharacter> b4 = reduced_character_basis(sym4, table_of(sym4));
  REQUIRE(b4.size() == 5);
  std::vector<std::string> exprs;
  for (const VirtualCharacter& vc : b4) {
    Int norm = 0;
    for (const Int& c : vc.coords) norm += c * c;
    CHECK(norm == 1);
    exprs.push_back(vc.expression->to_string());
  }
  CHECK(exprs == std::vector<std::string>{"1", "s3", "s1^2 - s1 - s2 - 1", "s2", "s1"});
}

TEST_CASE("reduced bases across the catalog") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    PermGroup g = catalog_group(name);
    const CharacterTable& t = table_of(g);
    std::vector<VirtualCharacter> basis = reduced_character_basis(g, t);
    CHECK(static_cast<int>(basis.size()) == restriction_image_rank(g));

    // Leads with the trivial character; members are genuine with matching
    // interpolations.
    REQUIRE(!basis.empty());
    CHECK(basis[0].coords[0] == 1);
    CHECK(basis[0].degree() == 1);
    std::vector<ClassPoint> pts = class_points(g);
    for (const VirtualCharacter& vc : basis) {
      REQUIRE(vc.coords.size() == t.size());
      for (const Int& c : vc.coords) CHECK(c >= 0);
      CHECK(vc.degree() >= 1);
      REQUIRE(vc.expression.has_value());
      for (std::size_t j = 0; j < pts.size(); ++j) {
        CHECK(evaluate(*vc.expression, pts[j]) == vc.values[j]);
      }
    }
  }
}
