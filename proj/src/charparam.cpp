#include "galstat/charparam.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace galstat {

namespace {

int tuple_degree(const std::vector<int>& exponents) {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

void trim_tuple(std::vector<int>& exponents) {
  while (!exponents.empty() && exponents.back() == 0) exponents.pop_back();
}

Int int_pow(const Int& base, int e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

}  // namespace

bool MonomialOrder::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
  int da = tuple_degree(a), db = tuple_degree(b);
  if (da != db) return da < db;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int ea = i < a.size() ? a[i] : 0;
    int eb = i < b.size() ? b[i] : 0;
    if (ea != eb) return ea > eb;  // s_1-heavy tuples come first within a degree
  }
  return false;
}

ClassPoint s_vector(const CycleType& cycle_type) {
  if (cycle_type.empty()) throw std::invalid_argument("empty cycle type");
  int n = 0;
  for (int d : cycle_type) {
    if (d < 1) throw std::invalid_argument("cycle lengths must be positive");
    n += d;
  }
  // P(x) = prod (x^d - 1), ascending coefficients.
  std::vector<Int> p{1};
  for (int d : cycle_type) {
    std::vector<Int> q(p.size() + static_cast<std::size_t>(d), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + static_cast<std::size_t>(d)] += p[i];
      q[i] -= p[i];
    }
    p = std::move(q);
  }
  // S(x) = P(x) / (x - 1), synthetic division at 1 (exact).
  std::vector<Int> s(p.size() - 1);
  Int carry = 0;
  for (std::size_t i = p.size(); i-- > 1;) {
    carry += p[i];
    s[i - 1] = carry;
  }
  if (carry + p[0] != 0) throw std::logic_error("division of P(x) by x - 1 is not exact");
  // S(x) = x^{n-1} - s_1 x^{n-2} + ... + (-1)^{n-1} s_{n-1}.
  ClassPoint pt;
  pt.degree = n;
  pt.svector.resize(static_cast<std::size_t>(n - 1));
  for (int k = 1; k <= n - 1; ++k) {
    Int c = s[static_cast<std::size_t>(n - 1 - k)];
    pt.svector[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? c : -c;
  }
  return pt;
}

std::vector<ClassPoint> class_points(const PermGroup& group) {
  std::vector<ClassPoint> pts;
  pts.reserve(group.classes().size());
  for (const ConjClass& c : group.classes()) pts.push_back(s_vector(c.cycle_type));
  return pts;
}

std::vector<ClassPoint> distinct_class_points(const PermGroup& group) {
  std::vector<ClassPoint> out;
  std::set<std::vector<Int>> seen;
  for (const ConjClass& c : group.classes()) {
    ClassPoint pt = s_vector(c.cycle_type);
    if (seen.insert(pt.svector).second) out.push_back(std::move(pt));
  }
  return out;
}

SPolynomial::SPolynomial(const Rat& constant) { add_term({}, constant); }

SPolynomial SPolynomial::variable(int index) {
  if (index < 1) throw std::invalid_argument("variable index must be at least 1");
  SPolynomial p;
  std::vector<int> exponents(static_cast<std::size_t>(index), 0);
  exponents.back() = 1;
  p.add_term(std::move(exponents), Rat(1));
  return p;
}

void SPolynomial::add_term(std::vector<int> exponents, const Rat& coeff) {
  if (coeff == 0) return;
  trim_tuple(exponents);
  auto [it, inserted] = terms_.emplace(std::move(exponents), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

int SPolynomial::total_degree() const {
  int d = 0;
  for (const auto& [mono, coeff] : terms_) d = std::max(d, tuple_degree(mono));
  return d;
}

int SPolynomial::max_variable() const {
  std::size_t v = 0;
  for (const auto& [mono, coeff] : terms_) v = std::max(v, mono.size());
  return static_cast<int>(v);
}

Rat SPolynomial::coefficient(const std::vector<int>& exponents) const {
  std::vector<int> key = exponents;
  trim_tuple(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rat(0) : it->second;
}

SPolynomial SPolynomial::operator-() const {
  SPolynomial out;
  for (const auto& [mono, coeff] : terms_) out.terms_.emplace(mono, -coeff);
  return out;
}

SPolynomial SPolynomial::operator+(const SPolynomial& other) const {
  SPolynomial out = *this;
  for (const auto& [mono, coeff] : other.terms_) out.add_term(mono, coeff);
  return out;
}

SPolynomial SPolynomial::operator-(const SPolynomial& other) const {
  SPolynomial out = *this;
  for (const auto& [mono, coeff] : other.terms_) out.add_term(mono, -coeff);
  return out;
}

SPolynomial SPolynomial::operator*(const SPolynomial& other) const {
  SPolynomial out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      std::vector<int> mono(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) mono[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) mono[i] += mb[i];
      out.add_term(std::move(mono), ca * cb);
    }
  }
  return out;
}

SPolynomial SPolynomial::operator*(const Rat& scale) const {
  SPolynomial out;
  if (scale == 0) return out;
  for (const auto& [mono, coeff] : terms_) out.terms_.emplace(mono, coeff * scale);
  return out;
}

SPolynomial SPolynomial::operator/(const Rat& scale) const {
  if (scale == 0) throw std::invalid_argument("division of a polynomial by zero");
  return *this * (Rat(1) / scale);
}

namespace {

// Print order: highest total degree first, s_1-heavy first within a degree.
bool print_before(const std::vector<int>& a, const std::vector<int>& b) {
  int da = tuple_degree(a), db = tuple_degree(b);
  if (da != db) return da > db;
  return MonomialOrder{}(a, b);
}

std::string monomial_text(const std::vector<int>& mono) {
  std::string out;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (mono[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 's' + std::to_string(i + 1);
    if (mono[i] > 1) out += '^' + std::to_string(mono[i]);
  }
  return out;
}

}  // namespace

std::string SPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const std::vector<int>, Rat>*> ordered;
  ordered.reserve(terms_.size());
  for (const auto& term : terms_) ordered.push_back(&term);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return print_before(a->first, b->first); });
  std::string out;
  for (const auto* term : ordered) {
    const Rat& coeff = term->second;
    bool negative = coeff < 0;
    Rat mag = negative ? Rat(-coeff) : coeff;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    std::string mono = monomial_text(term->first);
    if (mono.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

namespace {

struct PolyLexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }
  char peek() {
    skip_space();
    return text[pos];
  }

  Int read_integer() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected a number in polynomial at position " + std::to_string(start));
    return Int(text.substr(start, pos - start));
  }

  Rat read_rational() {
    Int num = read_integer();
    skip_space();
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      Int den = read_integer();
      if (den == 0) throw ParseError("zero denominator in polynomial coefficient");
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    return Rat(num);
  }

  // Variable factor "s<k>" with optional "^<e>".
  std::pair<int, int> read_variable() {
    skip_space();
    ++pos;  // consume 's'
    Int idx = read_integer();
    if (idx < 1 || idx > 64) throw ParseError("variable index out of range in polynomial");
    int exponent = 1;
    skip_space();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      Int e = read_integer();
      if (e < 0 || e > 64) throw ParseError("variable exponent out of range in polynomial");
      exponent = static_cast<int>(e.get_si());
    }
    return {static_cast<int>(idx.get_si()), exponent};
  }
};

}  // namespace

SPolynomial SPolynomial::parse(const std::string& text) {
  PolyLexer lex{text};
  SPolynomial out;
  bool any_term = false;
  while (!lex.done()) {
    int sign = 1;
    while (!lex.done() && (lex.peek() == '+' || lex.peek() == '-')) {
      if (lex.peek() == '-') sign = -sign;
      ++lex.pos;
    }
    if (lex.done()) throw ParseError("polynomial ends with a dangling sign");
    Rat coeff(sign);
    std::vector<int> mono;
    bool any_factor = false;
    while (!lex.done()) {
      char c = lex.peek();
      if (c == '+' || c == '-') break;
      if (c == '*') {
        if (!any_factor) throw ParseError("polynomial term starts with '*'");
        ++lex.pos;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= lex.read_rational();
      } else if (c == 's') {
        auto [index, exponent] = lex.read_variable();
        if (mono.size() < static_cast<std::size_t>(index)) mono.resize(static_cast<std::size_t>(index), 0);
        mono[static_cast<std::size_t>(index - 1)] += exponent;
      } else {
        throw ParseError(std::string("unexpected character '") + c + "' in polynomial");
      }
      any_factor = true;
    }
    if (!any_factor) throw ParseError("empty term in polynomial");
    out.add_term(std::move(mono), coeff);
    any_term = true;
  }
  if (!any_term) throw ParseError("empty polynomial text");
  return out;
}

Rat evaluate(const SPolynomial& p, const ClassPoint& pt) {
  if (p.max_variable() > static_cast<int>(pt.svector.size())) {
    throw std::out_of_range("polynomial uses a variable beyond s_{n-1} of the class point");
  }
  Rat total(0);
  for (const auto& [mono, coeff] : p.terms()) {
    Rat term = coeff;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] != 0) term *= Rat(int_pow(pt.svector[i], mono[i]));
    }
    total += term;
  }
  return total;
}

Int VirtualCharacter::degree() const {
  if (values.empty()) throw std::logic_error("virtual character has no values");
  const Rat& v = values.front();
  if (v.get_den() != 1) throw std::logic_error("virtual character has a non-integral degree");
  return v.get_num();
}

namespace {

// Exponent tuples (trimmed) of total degree <= bound over nvars variables,
// in MonomialOrder: degree by degree, s_1-heavy first.
std::vector<std::vector<int>> monomials_up_to(int nvars, int bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(nvars), 0);
  auto emit = [&]() {
    std::vector<int> mono = current;
    trim_tuple(mono);
    out.push_back(std::move(mono));
  };
  // recurse over variables, assigning the leftover degree front-first
  auto fill = [&](auto&& self, int var, int remaining) -> void {
    if (var == nvars) {
      if (remaining == 0) emit();
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      current[static_cast<std::size_t>(var)] = e;
      self(self, var + 1, remaining - e);
    }
    current[static_cast<std::size_t>(var)] = 0;
  };
  for (int d = 0; d <= bound; ++d) {
    if (nvars == 0) {
      if (d == 0) out.push_back({});
      continue;
    }
    fill(fill, 0, d);
  }
  return out;
}

Rat evaluate_monomial(const std::vector<int>& mono, const ClassPoint& pt) {
  Int value = 1;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (mono[i] != 0) value *= int_pow(pt.svector[i], mono[i]);
  }
  return Rat(value);
}

SPolynomial monomial_polynomial(const std::vector<int>& mono) {
  SPolynomial p{Rat(1)};
  for (std::size_t i = 0; i < mono.size(); ++i) {
    for (int e = 0; e < mono[i]; ++e) p = p * SPolynomial::variable(static_cast<int>(i) + 1);
  }
  return p;
}

// Gaussian elimination visiting columns in the given order; rows are permuted
// so the first `rank` rows are the pivot rows, fully reduced.
struct Echelon {
  std::vector<std::vector<Rat>> rows;
  std::vector<int> pivot_cols;  // one per pivot row, in processing order
  std::size_t rank = 0;
};

Echelon echelonize(std::vector<std::vector<Rat>> rows, const std::vector<int>& col_order) {
  Echelon out;
  std::size_t r = 0;
  for (int c : col_order) {
    if (r == rows.size()) break;
    std::size_t pr = r;
    while (pr < rows.size() && rows[pr][static_cast<std::size_t>(c)] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[r], rows[pr]);
    Rat lead = rows[r][static_cast<std::size_t>(c)];
    for (Rat& x : rows[r]) x /= lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      Rat f = rows[i][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rows = std::move(rows);
  out.rank = r;
  return out;
}

std::vector<int> ascending_cols(std::size_t count) {
  std::vector<int> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = static_cast<int>(i);
  return order;
}

std::vector<int> descending_cols(std::size_t count) {
  std::vector<int> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = static_cast<int>(count - 1 - i);
  return order;
}

void check_distinct_points(const std::vector<ClassPoint>& points) {
  if (points.empty()) throw std::invalid_argument("no class points given");
  if (points.front().degree < 1) throw std::invalid_argument("class points must have positive degree");
  std::set<std::vector<Int>> seen;
  for (const ClassPoint& pt : points) {
    if (pt.degree != points.front().degree) {
      throw std::invalid_argument("class points of mixed degree");
    }
    if (pt.svector.size() + 1 != static_cast<std::size_t>(pt.degree)) {
      throw std::invalid_argument("class point has the wrong number of coordinates");
    }
    if (!seen.insert(pt.svector).second) throw std::invalid_argument("duplicate class points");
  }
}

SPolynomial row_to_polynomial(const std::vector<Rat>& coeffs,
                              const std::vector<std::vector<int>>& monomials) {
  SPolynomial p;
  for (std::size_t j = 0; j < monomials.size(); ++j) {
    if (coeffs[j] != 0) p = p + SPolynomial(coeffs[j]) * monomial_polynomial(monomials[j]);
  }
  return p;
}

}  // namespace

SPolynomial interpolate_at_points(const std::vector<ClassPoint>& points,
                                  const std::vector<Rat>& targets, int degree_bound) {
  check_distinct_points(points);
  if (targets.size() != points.size()) throw std::invalid_argument("one target value per point required");
  if (degree_bound < 1) throw std::invalid_argument("degree bound must be at least 1");
  int nvars = points.front().degree - 1;
  std::vector<std::vector<int>> monomials = monomials_up_to(nvars, degree_bound);
  std::size_t m = monomials.size();
  std::vector<std::vector<Rat>> aug(points.size(), std::vector<Rat>(m + 1, Rat(0)));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) aug[i][j] = evaluate_monomial(monomials[j], points[i]);
    aug[i][m] = targets[i];
  }
  Echelon ech = echelonize(std::move(aug), ascending_cols(m));
  for (std::size_t i = ech.rank; i < ech.rows.size(); ++i) {
    if (ech.rows[i][m] != 0) throw std::domain_error("degree bound too small");
  }
  SPolynomial out;
  for (std::size_t r = 0; r < ech.rank; ++r) {
    const Rat& c = ech.rows[r][m];
    if (c != 0) out = out + SPolynomial(c) * monomial_polynomial(monomials[static_cast<std::size_t>(ech.pivot_cols[r])]);
  }
  return out;
}

SPolynomial interpolate_character(const std::vector<Rat>& class_values, const PermGroup& group,
                                  int degree_bound) {
  if (class_values.size() != static_cast<std::size_t>(group.class_count())) {
    throw std::invalid_argument("one value per conjugacy class required");
  }
  std::vector<ClassPoint> pts = class_points(group);
  std::vector<ClassPoint> distinct;
  std::vector<Rat> targets;
  std::map<std::vector<Int>, Rat> assigned;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    auto [it, inserted] = assigned.emplace(pts[j].svector, class_values[j]);
    if (inserted) {
      distinct.push_back(pts[j]);
      targets.push_back(class_values[j]);
    } else if (it->second != class_values[j]) {
      throw std::domain_error("not in restriction image");
    }
  }
  return interpolate_at_points(distinct, targets, degree_bound);
}

namespace {

std::vector<SPolynomial> generic_relations(int n) {
  std::vector<SPolynomial> rels;
  if (n < 2) return rels;
  SPolynomial last = SPolynomial::variable(n - 1);
  for (int k = 1; k <= n - 2; ++k) {
    rels.push_back(SPolynomial::variable(k) * last - SPolynomial::variable(n - 1 - k));
  }
  rels.push_back(last * last - SPolynomial(Rat(1)));
  return rels;
}

std::vector<Rat> polynomial_to_row(const SPolynomial& p,
                                   const std::map<std::vector<int>, std::size_t>& index,
                                   std::size_t width) {
  std::vector<Rat> row(width, Rat(0));
  for (const auto& [mono, coeff] : p.terms()) {
    auto it = index.find(mono);
    if (it == index.end()) throw std::logic_error("monomial outside the degree bound");
    row[it->second] = coeff;
  }
  return row;
}

int lead_column(const std::vector<Rat>& row) {
  for (std::size_t j = row.size(); j-- > 0;) {
    if (row[j] != 0) return static_cast<int>(j);
  }
  return -1;
}

}  // namespace

KernelIdealBasis kernel_ideal_at_points(const std::vector<ClassPoint>& points, int degree_bound) {
  if (points.empty()) throw std::invalid_argument("no class points given");
  if (degree_bound < 1) throw std::invalid_argument("degree bound must be at least 1");
  std::vector<ClassPoint> distinct;
  std::set<std::vector<Int>> seen;
  for (const ClassPoint& pt : points) {
    if (pt.degree != points.front().degree) throw std::invalid_argument("class points of mixed degree");
    if (seen.insert(pt.svector).second) distinct.push_back(pt);
  }
  int n = distinct.front().degree;
  int nvars = n - 1;
  std::vector<std::vector<int>> monomials = monomials_up_to(nvars, degree_bound);
  std::size_t m = monomials.size();
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t j = 0; j < m; ++j) index.emplace(monomials[j], j);

  std::vector<std::vector<Rat>> eval(distinct.size(), std::vector<Rat>(m, Rat(0)));
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) eval[i][j] = evaluate_monomial(monomials[j], distinct[i]);
  }
  Echelon ev = echelonize(eval, ascending_cols(m));

  // Canonical nullspace basis: one vector per non-pivot monomial.
  std::vector<bool> is_pivot(m, false);
  for (int c : ev.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<Rat>> kernel;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(m, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < ev.rank; ++r) {
      v[static_cast<std::size_t>(ev.pivot_cols[r])] = -ev.rows[r][f];
    }
    kernel.push_back(std::move(v));
  }

  // Relations holding on every cycle type of Sym_n, multiplied up to the bound
  // and put in echelon form on leading monomials.
  std::vector<std::vector<Rat>> generic_rows;
  if (degree_bound >= 2) {
    for (const SPolynomial& rel : generic_relations(n)) {
      for (const std::vector<int>& mono : monomials_up_to(nvars, degree_bound - 2)) {
        SPolynomial product = rel * monomial_polynomial(mono);
        std::vector<Rat> row = polynomial_to_row(product, index, m);
        for (std::size_t i = 0; i < distinct.size(); ++i) {
          Rat acc(0);
          for (std::size_t j = 0; j < m; ++j) acc += row[j] * eval[i][j];
          if (acc != 0) throw std::logic_error("generic relation fails to vanish on a class point");
        }
        generic_rows.push_back(std::move(row));
      }
    }
  }
  Echelon gen = echelonize(std::move(generic_rows), descending_cols(m));
  gen.rows.resize(gen.rank);

  // Reduce the nullspace against the generic block, then echelonize what is left.
  for (std::vector<Rat>& v : kernel) {
    for (std::size_t r = 0; r < gen.rank; ++r) {
      Rat f = v[static_cast<std::size_t>(gen.pivot_cols[r])];
      if (f == 0) continue;
      for (std::size_t j = 0; j < m; ++j) v[j] -= f * gen.rows[r][j];
    }
  }
  Echelon beyond = echelonize(std::move(kernel), descending_cols(m));
  beyond.rows.resize(beyond.rank);

  auto by_lead = [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    return lead_column(a) < lead_column(b);
  };
  std::sort(gen.rows.begin(), gen.rows.end(), by_lead);
  std::sort(beyond.rows.begin(), beyond.rows.end(), by_lead);

  KernelIdealBasis basis;
  basis.degree_bound = degree_bound;
  for (const std::vector<Rat>& row : gen.rows) basis.generators.push_back(row_to_polynomial(row, monomials));
  for (const std::vector<Rat>& row : beyond.rows) basis.generators.push_back(row_to_polynomial(row, monomials));
  return basis;
}

KernelIdealBasis kernel_ideal(const PermGroup& group, int degree_bound) {
  return kernel_ideal_at_points(class_points(group), degree_bound);
}

SPolynomial reduce_modulo(const SPolynomial& p, const KernelIdealBasis& basis) {
  SPolynomial out = p;
  for (const SPolynomial& g : basis.generators) {
    if (g.is_zero()) continue;
    const std::vector<int>& lead = g.terms().rbegin()->first;
    Rat c = out.coefficient(lead);
    if (c != 0) out = out - g * c;
  }
  return out;
}

std::vector<int> subgroup_class_map(const PermGroup& group, const PermGroup& subgroup) {
  if (group.degree() != subgroup.degree()) {
    throw std::invalid_argument("subgroup and group act on different degrees");
  }
  std::vector<int> map;
  map.reserve(subgroup.classes().size());
  for (const ConjClass& c : subgroup.classes()) {
    try {
      map.push_back(group.class_of(c.representative));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("subgroup representative does not lie in the containing group");
    }
  }
  return map;
}

std::vector<std::vector<Int>> restriction_matrix(const CharacterTable& table_g,
                                                 const CharacterTable& table_h,
                                                 const std::vector<int>& class_map) {
  std::size_t hg = table_g.size(), hh = table_h.size();
  if (class_map.size() != hh) throw std::invalid_argument("one mapped class per subgroup class required");
  for (int c : class_map) {
    if (c < 0 || c >= static_cast<int>(hg)) throw std::invalid_argument("class map entry out of range");
  }
  std::vector<Rat> weights = table_h.weights();
  std::vector<std::vector<Int>> matrix(hg, std::vector<Int>(hh));
  for (std::size_t i = 0; i < hg; ++i) {
    for (std::size_t k = 0; k < hh; ++k) {
      Cyclotomic acc;
      for (std::size_t j = 0; j < hh; ++j) {
        acc = acc + Cyclotomic(weights[j]) * table_g.values[i][static_cast<std::size_t>(class_map[j])] *
                        table_h.values[k][j].conj();
      }
      if (!acc.is_rational()) throw std::domain_error("class map is inconsistent with the tables");
      Rat r = acc.rational_value();
      if (r.get_den() != 1 || r < 0) throw std::domain_error("class map is inconsistent with the tables");
      matrix[i][k] = r.get_num();
    }
  }
  return matrix;
}

int restriction_image_rank(const PermGroup& group) {
  return static_cast<int>(distinct_class_points(group).size());
}

namespace {

// Smallest degree bound whose monomial evaluations separate the points.
int separating_bound(const std::vector<ClassPoint>& points) {
  int nvars = points.front().degree - 1;
  int cap = std::max(1, static_cast<int>(points.size()) - 1);
  for (int bound = 1; bound <= cap; ++bound) {
    std::vector<std::vector<int>> monomials = monomials_up_to(nvars, bound);
    std::vector<std::vector<Rat>> eval(points.size(), std::vector<Rat>(monomials.size(), Rat(0)));
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = 0; j < monomials.size(); ++j) {
        eval[i][j] = evaluate_monomial(monomials[j], points[i]);
      }
    }
    if (echelonize(std::move(eval), ascending_cols(monomials.size())).rank == points.size()) return bound;
  }
  throw std::logic_error("class points admit no separating polynomial basis");
}

}  // namespace

std::vector<SPolynomial> scaled_idempotents(const std::vector<ClassPoint>& points, const Int& scale) {
  check_distinct_points(points);
  int bound = separating_bound(points);
  std::vector<SPolynomial> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<Rat> targets(points.size(), Rat(0));
    targets[i] = Rat(scale);
    out.push_back(interpolate_at_points(points, targets, bound));
  }
  return out;
}

std::vector<SPolynomial> scaled_idempotents(const PermGroup& group) {
  return scaled_idempotents(distinct_class_points(group), Int(group.order()));
}

namespace {

// --- integer lattice helpers -----------------------------------------------

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Row-style Hermite form: pivot columns increase, pivots are positive, and
// entries above each pivot are reduced into [0, pivot).
std::vector<std::vector<Int>> hermite_form(std::vector<std::vector<Int>> rows) {
  if (rows.empty()) return rows;
  std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() ||
            mpz_cmpabs(rows[i][c].get_mpz_t(), rows[best][c].get_mpz_t()) < 0) {
          best = i;
        }
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q = floor_div(rows[i][c], rows[r][c]);
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0) {
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] = -rows[r][j];
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i][c] == 0) continue;
      Int q = floor_div(rows[i][c], rows[r][c]);
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

// Coordinates of x over the Hermite basis, or nullopt when x is outside the
// lattice the basis spans.
std::optional<std::vector<Int>> lattice_coordinates(const std::vector<std::vector<Int>>& hermite,
                                                    std::vector<Int> x) {
  std::vector<Int> coords;
  coords.reserve(hermite.size());
  for (const std::vector<Int>& row : hermite) {
    std::size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (x[p] % row[p] != 0) return std::nullopt;
    Int q = x[p] / row[p];
    for (std::size_t j = 0; j < row.size(); ++j) x[j] -= q * row[j];
    coords.push_back(std::move(q));
  }
  for (const Int& v : x) {
    if (v != 0) return std::nullopt;
  }
  return coords;
}

// True when the rows can be extended to a basis of Z^cols, i.e. their Smith
// form is the identity block.
bool extends_to_basis(std::vector<std::vector<Int>> m) {
  if (m.empty()) return true;
  std::size_t rows = m.size(), cols = m[0].size();
  if (rows > cols) return false;
  std::size_t t = 0;
  while (t < rows) {
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (m[i][j] == 0) continue;
        if (bi == rows || mpz_cmpabs(m[i][j].get_mpz_t(), m[bi][bj].get_mpz_t()) < 0) {
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == rows) return false;  // rank deficient
    std::swap(m[t], m[bi]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][bj]);
    bool settled = false;
    while (!settled) {
      settled = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        Int q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          settled = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        Int q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
          settled = false;
        }
      }
    }
    if (m[t][t] != 1 && m[t][t] != -1) {
      // A later entry could still lower the corner gcd; fold rows in and retry.
      bool folded = false;
      for (std::size_t i = t + 1; i < rows && !folded; ++i) {
        for (std::size_t j = t + 1; j < cols && !folded; ++j) {
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
            folded = true;
          }
        }
      }
      if (!folded) return false;  // invariant factor |m[t][t]| > 1
      continue;
    }
    ++t;
  }
  return true;
}

// Basis of {y in Z^dim : constraints . y = 0}, complete and saturated: row
// reduction of [A | I] with A[i][c] = constraints[c][i]; the identity part of
// the rows whose A part vanishes spans the kernel.
std::vector<std::vector<Int>> integer_kernel(const std::vector<std::vector<Int>>& constraints,
                                             std::size_t dim) {
  std::size_t m = constraints.size();
  std::vector<std::vector<Int>> rows(dim, std::vector<Int>(m + dim, 0));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t c = 0; c < m; ++c) rows[i][c] = constraints[c][i];
    rows[i][m + i] = 1;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m && rank < dim; ++c) {
    while (true) {
      std::size_t best = dim;
      for (std::size_t i = rank; i < dim; ++i) {
        if (rows[i][c] == 0) continue;
        if (best == dim || mpz_cmpabs(rows[i][c].get_mpz_t(), rows[best][c].get_mpz_t()) < 0) {
          best = i;
        }
      }
      if (best == dim) break;
      std::swap(rows[rank], rows[best]);
      bool clean = true;
      for (std::size_t i = rank + 1; i < dim; ++i) {
        if (rows[i][c] == 0) continue;
        Int q = rows[i][c] / rows[rank][c];
        for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= q * rows[rank][j];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[rank][c] != 0) ++rank;
  }
  std::vector<std::vector<Int>> kernel;
  kernel.reserve(dim - rank);
  for (std::size_t i = rank; i < dim; ++i) {
    kernel.emplace_back(rows[i].begin() + static_cast<std::ptrdiff_t>(m), rows[i].end());
  }
  return kernel;
}

struct BasisCandidate {
  long norm = 0;
  Int degree;
  std::vector<Int> coords;   // over the irreducibles of the target table
  std::vector<Int> lattice;  // over the Hermite basis of the image lattice
};

bool candidate_before(const BasisCandidate& a, const BasisCandidate& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  if (a.degree != b.degree) return a.degree < b.degree;
  return a.coords > b.coords;  // larger coordinate vectors first
}

}  // namespace

std::vector<VirtualCharacter> reduced_character_basis(const PermGroup& group,
                                                      const CharacterTable& table) {
  std::size_t h = table.size();
  if (group.class_count() != static_cast<int>(h)) {
    throw std::invalid_argument("character table does not match the group");
  }

  // Integer values of the Galois orbit sums on every class; every virtual
  // character that factors through the cycle type is rational-valued, hence an
  // integer combination of orbit sums.
  std::vector<std::vector<int>> orbits = galois_orbits(table);
  std::size_t r = orbits.size();
  std::vector<std::vector<Int>> orbit_values(r, std::vector<Int>(h));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < h; ++j) {
      Cyclotomic acc;
      for (int k : orbits[i]) acc = acc + table.values[static_cast<std::size_t>(k)][j];
      if (!acc.is_rational()) throw std::logic_error("Galois orbit sum with an irrational value");
      Rat v = acc.rational_value();
      if (v.get_den() != 1) throw std::logic_error("Galois orbit sum with a non-integral value");
      orbit_values[i][j] = v.get_num();
    }
  }

  // The image lattice: orbit-sum combinations taking equal values on classes
  // of equal cycle type.
  std::map<CycleType, std::vector<std::size_t>> classes_by_type;
  for (std::size_t j = 0; j < h; ++j) {
    classes_by_type[table.classes[j].cycle_type].push_back(j);
  }
  std::vector<std::vector<Int>> constraints;
  for (const auto& [type, members] : classes_by_type) {
    for (std::size_t t = 1; t < members.size(); ++t) {
      std::vector<Int> row(r);
      bool nonzero = false;
      for (std::size_t i = 0; i < r; ++i) {
        row[i] = orbit_values[i][members[t]] - orbit_values[i][members[0]];
        if (row[i] != 0) nonzero = true;
      }
      if (nonzero) constraints.push_back(std::move(row));
    }
  }
  std::vector<std::vector<Int>> lattice_rows;
  for (const std::vector<Int>& y : integer_kernel(constraints, r)) {
    std::vector<Int> x(h);
    for (std::size_t i = 0; i < r; ++i) {
      for (int k : orbits[i]) x[static_cast<std::size_t>(k)] = y[i];
    }
    lattice_rows.push_back(std::move(x));
  }
  std::vector<std::vector<Int>> hermite = hermite_form(std::move(lattice_rows));
  std::size_t rank = hermite.size();

  std::vector<Int> degrees(h);
  for (std::size_t k = 0; k < h; ++k) degrees[k] = table.degree(static_cast<int>(k));

  // Candidate norms never need to exceed the norm of some genuine generating
  // set; padding each Hermite row with enough copies of the regular character
  // (which factors through the type) produces one.
  Int regular_norm = 0;
  for (const Int& d : degrees) regular_norm += d * d;
  Int norm_cap = regular_norm;
  for (const std::vector<Int>& b : hermite) {
    Int pad = 0;
    for (std::size_t k = 0; k < h; ++k) {
      if (b[k] < 0) {
        Int need = (-b[k] + degrees[k] - 1) / degrees[k];
        if (need > pad) pad = need;
      }
    }
    Int norm = 0;
    for (std::size_t k = 0; k < h; ++k) {
      Int entry = b[k] + pad * degrees[k];
      norm += entry * entry;
    }
    if (norm > norm_cap) norm_cap = norm;
  }
  long max_norm = norm_cap.fits_slong_p() ? norm_cap.get_si() : std::numeric_limits<long>::max();

  std::vector<BasisCandidate> chosen;
  for (long bound = 1; bound <= max_norm && chosen.size() < rank; ++bound) {
    std::vector<BasisCandidate> candidates;
    std::vector<Int> x(h, 0);
    auto enumerate = [&](auto&& self, std::size_t k, long remaining) -> void {
      if (k == h) {
        if (remaining == static_cast<long>(bound)) return;  // skip the zero vector
        std::optional<std::vector<Int>> coords = lattice_coordinates(hermite, x);
        if (!coords) return;
        BasisCandidate cand;
        cand.norm = bound - remaining;
        cand.degree = 0;
        for (std::size_t j = 0; j < h; ++j) cand.degree += x[j] * degrees[j];
        cand.coords = x;
        cand.lattice = std::move(*coords);
        candidates.push_back(std::move(cand));
        return;
      }
      for (long v = 0; v * v <= remaining; ++v) {
        x[k] = v;
        self(self, k + 1, remaining - v * v);
      }
      x[k] = 0;
    };
    enumerate(enumerate, 0, bound);
    std::sort(candidates.begin(), candidates.end(), candidate_before);

    chosen.clear();
    std::vector<std::vector<Rat>> span;  // rational elimination of accepted lattice coords
    for (BasisCandidate& cand : candidates) {
      if (chosen.size() == rank) break;
      std::vector<Rat> v(rank);
      for (std::size_t j = 0; j < rank; ++j) v[j] = Rat(cand.lattice[j]);
      for (const std::vector<Rat>& row : span) {
        std::size_t p = 0;
        while (p < rank && row[p] == 0) ++p;
        if (v[p] == 0) continue;
        Rat f = v[p] / row[p];
        for (std::size_t j = 0; j < rank; ++j) v[j] -= f * row[j];
      }
      bool independent = false;
      for (const Rat& entry : v) {
        if (entry != 0) {
          independent = true;
          break;
        }
      }
      if (!independent) continue;
      std::vector<std::vector<Int>> trial;
      trial.reserve(chosen.size() + 1);
      for (const BasisCandidate& c : chosen) trial.push_back(c.lattice);
      trial.push_back(cand.lattice);
      if (!extends_to_basis(std::move(trial))) continue;
      span.push_back(std::move(v));
      chosen.push_back(std::move(cand));
    }
  }
  if (chosen.size() < rank) {
    throw std::logic_error("no genuine-character basis of the restriction image was found");
  }

  // The selection must generate exactly the restriction image.
  std::vector<std::vector<Int>> regenerated;
  regenerated.reserve(rank);
  for (const BasisCandidate& c : chosen) regenerated.push_back(c.coords);
  if (hermite_form(std::move(regenerated)) != hermite) {
    throw std::logic_error("selected characters do not generate the restriction image");
  }

  std::vector<ClassPoint> pts = class_points(group);
  std::vector<ClassPoint> distinct;
  std::set<std::vector<Int>> seen;
  for (const ClassPoint& pt : pts) {
    if (seen.insert(pt.svector).second) distinct.push_back(pt);
  }
  int bound = separating_bound(distinct);

  std::vector<VirtualCharacter> basis;
  basis.reserve(rank);
  for (const BasisCandidate& cand : chosen) {
    VirtualCharacter vc;
    vc.coords = cand.coords;
    vc.values.reserve(h);
    for (std::size_t j = 0; j < h; ++j) {
      Cyclotomic acc;
      for (std::size_t k = 0; k < h; ++k) {
        if (cand.coords[k] != 0) acc = acc + Cyclotomic(Rat(cand.coords[k])) * table.values[k][j];
      }
      if (!acc.is_rational()) throw std::logic_error("restriction-image character with irrational value");
      vc.values.push_back(acc.rational_value());
    }
    vc.expression = interpolate_character(vc.values, group, bound);
    basis.push_back(std::move(vc));
  }
  return basis;
}

}  // namespace galstat
