#include "galstat/frobstats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "galstat/chartab.hpp"
#include "galstat/modular.hpp"

namespace galstat {

namespace {

std::uint64_t first_prime_at_least(std::uint64_t start) {
  if (start <= 2) return 2;
  return is_prime_u64(start) ? start : next_prime_u64(start);
}

void check_samplable(const IntPolynomial& f) {
  if (f.degree() < 1) throw std::invalid_argument("cannot sample a constant polynomial");
  if (discriminant(f) == 0)
    throw std::domain_error("polynomial has a repeated root, so every prime is ramified");
}

bool squarefree_abs(long long value) {
  unsigned long long n = value < 0 ? -static_cast<unsigned long long>(value)
                                   : static_cast<unsigned long long>(value);
  if (n == 0) return false;
  // Trial division up to 3e6 leaves a cofactor that is 1, p, p*q, or p^2 (a
  // p^3 or p^2*q cofactor would exceed the long long range), so a final
  // perfect-square test settles it.
  for (unsigned long long p = 2; p <= 3000000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  auto root = static_cast<unsigned long long>(std::sqrt(static_cast<double>(n)));
  for (unsigned long long s = root > 1 ? root - 1 : 1; s <= root + 1; ++s)
    if (s * s == n) return n == 1;
  return true;
}

}  // namespace

PrimeSample sample_primes(const IntPolynomial& f, std::size_t count, std::uint64_t start) {
  if (count == 0) throw std::invalid_argument("sample size must be positive");
  check_samplable(f);
  PrimeSample sample;
  sample.polynomial = f;
  sample.entries.reserve(count);
  std::uint64_t p = first_prime_at_least(start);
  while (sample.entries.size() < count) {
    try {
      CycleType type = factorization_type(f, p);
      ClassPoint point = s_vector(type);
      sample.entries.push_back({p, std::move(type), std::move(point)});
    } catch (const RamifiedPrimeError&) {
      sample.skipped.push_back(p);
    }
    p = next_prime_u64(p);
  }
  return sample;
}

bool is_fundamental_discriminant(long long d) {
  if (d == 0 || d == 1) return false;
  long long r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree_abs(d);
  if (r != 0) return false;
  long long m = d / 4;
  long long mr = ((m % 4) + 4) % 4;
  return (mr == 2 || mr == 3) && squarefree_abs(m);
}

int kronecker_symbol(long long d, std::uint64_t p) {
  Int a(static_cast<long>(d));
  Int b(static_cast<unsigned long>(p));
  return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}

TestFunction TestFunction::s_polynomial(SPolynomial p, std::string label) {
  TestFunction fn;
  fn.kronecker_ = false;
  fn.label_ = label.empty() ? p.to_string() : std::move(label);
  fn.poly_ = std::move(p);
  return fn;
}

TestFunction TestFunction::kronecker(long long d) {
  if (!is_fundamental_discriminant(d))
    throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(d));
  TestFunction fn;
  fn.kronecker_ = true;
  fn.disc_ = d;
  fn.label_ = "kronecker(" + std::to_string(d) + ")";
  return fn;
}

int TestFunction::max_variable() const { return kronecker_ ? 0 : poly_.max_variable(); }

Rat TestFunction::operator()(const SampleEntry& entry) const {
  if (kronecker_) return Rat(kronecker_symbol(disc_, entry.prime));
  return evaluate(poly_, entry.point);
}

TestBasis::TestBasis(std::vector<TestFunction> fns) : functions(std::move(fns)) {
  if (functions.empty()) throw std::invalid_argument("test basis must be nonempty");
  const TestFunction& lead = functions.front();
  if (lead.is_kronecker() || !(lead.polynomial() == SPolynomial(Rat(1))))
    throw std::invalid_argument("test basis must lead with the constant 1");
}

TestBasis TestBasis::s_polynomials(const std::vector<std::string>& texts) {
  std::vector<TestFunction> fns;
  fns.reserve(texts.size());
  for (const std::string& text : texts)
    fns.push_back(TestFunction::s_polynomial(SPolynomial::parse(text)));
  return TestBasis(std::move(fns));
}

TestBasis TestBasis::symmetric(int degree) {
  if (degree < 2) throw std::invalid_argument("symmetric basis needs degree >= 2");
  std::vector<TestFunction> fns;
  fns.push_back(TestFunction::s_polynomial(SPolynomial(Rat(1))));
  for (int k = 1; k < degree; ++k)
    fns.push_back(TestFunction::s_polynomial(SPolynomial::variable(k)));
  return TestBasis(std::move(fns));
}

std::vector<std::string> TestBasis::labels() const {
  std::vector<std::string> out;
  out.reserve(functions.size());
  for (const TestFunction& fn : functions) out.push_back(fn.label());
  return out;
}

namespace {

void check_basis(const TestBasis& basis, int degree) {
  if (basis.functions.empty()) throw std::invalid_argument("test basis must be nonempty");
  for (const TestFunction& fn : basis.functions)
    if (fn.max_variable() > degree - 1)
      throw std::invalid_argument("test function " + fn.label() +
                                  " uses s-variables beyond degree " + std::to_string(degree));
}

// Rows are test functions, columns are sample entries.
RatMatrix value_table(const std::vector<SampleEntry>& entries, const TestBasis& basis) {
  const std::size_t r = basis.size(), n = entries.size();
  RatMatrix values(r, std::vector<Rat>(n));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < n; ++k) values[i][k] = basis.functions[i](entries[k]);
  return values;
}

RatMatrix value_table_parallel(const std::vector<SampleEntry>& entries, const TestBasis& basis,
                               int workers) {
  const std::size_t r = basis.size(), n = entries.size();
  RatMatrix values(r, std::vector<Rat>(n));
  const long long total = static_cast<long long>(r * n);
#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(static)
#endif
  for (long long cell = 0; cell < total; ++cell) {
    const std::size_t i = static_cast<std::size_t>(cell) / n;
    const std::size_t k = static_cast<std::size_t>(cell) % n;
    values[i][k] = basis.functions[i](entries[k]);
  }
  return values;
}

RatMatrix symmetric_average(const RatMatrix& values, std::size_t n) {
  const std::size_t r = values.size();
  RatMatrix gram(r, std::vector<Rat>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Rat acc;
      for (std::size_t k = 0; k < n; ++k) acc += values[i][k] * values[j][k];
      acc /= static_cast<long>(n);
      gram[i][j] = acc;
      gram[j][i] = acc;
    }
  return gram;
}

RatMatrix symmetric_average_parallel(const RatMatrix& values, std::size_t n, int workers) {
  const std::size_t r = values.size();
  RatMatrix gram(r, std::vector<Rat>(r));
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(r * (r + 1) / 2);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) cells.emplace_back(i, j);
  const long long m = static_cast<long long>(cells.size());
#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(dynamic)
#endif
  for (long long c = 0; c < m; ++c) {
    const auto [i, j] = cells[static_cast<std::size_t>(c)];
    Rat acc;
    for (std::size_t k = 0; k < n; ++k) acc += values[i][k] * values[j][k];
    acc /= static_cast<long>(n);
    gram[i][j] = acc;
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) gram[j][i] = gram[i][j];
  return gram;
}

}  // namespace

RatMatrix empirical_gram_serial(const PrimeSample& sample, const TestBasis& basis) {
  if (sample.entries.empty()) throw std::invalid_argument("empty sample");
  check_basis(basis, sample.polynomial.degree());
  return symmetric_average(value_table(sample.entries, basis), sample.entries.size());
}

RatMatrix empirical_gram_parallel(const PrimeSample& sample, const TestBasis& basis,
                                  int workers) {
  if (sample.entries.empty()) throw std::invalid_argument("empty sample");
  check_basis(basis, sample.polynomial.degree());
  if (workers < 1) workers = 1;
  RatMatrix values = value_table_parallel(sample.entries, basis, workers);
  return symmetric_average_parallel(values, sample.entries.size(), workers);
}

RatMatrix empirical_gram(const PrimeSample& sample, const TestBasis& basis, int workers) {
  if (workers <= 1) return empirical_gram_serial(sample, basis);
  return empirical_gram_parallel(sample, basis, workers);
}

RatMatrix theoretical_gram(const std::vector<ClassPoint>& points,
                           const std::vector<Rat>& weights, const TestBasis& basis) {
  if (points.empty() || points.size() != weights.size())
    throw std::invalid_argument("class points and weights must pair up");
  const int degree = points.front().degree;
  for (const ClassPoint& pt : points)
    if (pt.degree != degree) throw std::invalid_argument("class points of mixed degree");
  check_basis(basis, degree);
  const std::size_t r = basis.size(), h = points.size();
  RatMatrix values(r, std::vector<Rat>(h));
  for (std::size_t i = 0; i < r; ++i) {
    const TestFunction& fn = basis.functions[i];
    if (fn.is_kronecker()) {
      if (!fn.class_values())
        throw std::invalid_argument(
            "a Kronecker character needs per-class values for a theoretical Gram");
      if (fn.class_values()->size() != h)
        throw std::invalid_argument("Kronecker class values do not match the class count");
      values[i] = *fn.class_values();
    } else {
      for (std::size_t k = 0; k < h; ++k) values[i][k] = evaluate(fn.polynomial(), points[k]);
    }
  }
  RatMatrix gram(r, std::vector<Rat>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Rat acc;
      for (std::size_t k = 0; k < h; ++k) acc += weights[k] * values[i][k] * values[j][k];
      gram[i][j] = acc;
      gram[j][i] = acc;
    }
  return gram;
}

RatMatrix theoretical_gram(const PermGroup& group, const TestBasis& basis) {
  return theoretical_gram(class_points(group), group.haar_weights(), basis);
}

RatMatrix theoretical_gram(const ImportedGroup& group, const TestBasis& basis) {
  std::vector<ClassPoint> points;
  points.reserve(group.classes.size());
  for (const ImportedClass& cls : group.classes) {
    if (cls.svector.empty())
      points.push_back(s_vector(cls.cycle_type));
    else
      points.push_back(ClassPoint{group.degree, cls.svector});
  }
  return theoretical_gram(points, group.haar_weights(), basis);
}

RatMatrix matrix_difference(const RatMatrix& a, const RatMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matrix dimensions differ");
  RatMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw std::invalid_argument("matrix dimensions differ");
    out[i].resize(a[i].size());
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] = a[i][j] - b[i][j];
  }
  return out;
}

NormTriple error_norms(const RatMatrix& z) {
  std::size_t total = 0;
  for (const auto& row : z) total += row.size();
  if (total == 0) throw std::invalid_argument("empty matrix");
  double sum2 = 0.0, sum8 = 0.0, maxabs = 0.0;
  for (const auto& row : z)
    for (const Rat& v : row) {
      const double d = std::abs(to_double(v));
      sum2 += d * d;
      sum8 += std::pow(d, 8);
      maxabs = std::max(maxabs, d);
    }
  NormTriple norms;
  norms.l2 = std::sqrt(sum2 / static_cast<double>(total));
  norms.l8 = std::pow(sum8 / static_cast<double>(total), 0.125);
  norms.linf = maxabs;
  return norms;
}

RoundedMatrix round_matrix(const RatMatrix& m) {
  RoundedMatrix out;
  out.values.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.values[i].reserve(m[i].size());
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      RoundedInt r = round_nearest(m[i][j]);
      if (r.ambiguous) out.ambiguous.push_back({i, j});
      out.values[i].push_back(r.value);
    }
  }
  return out;
}

namespace {

bool rounded_matches(const RoundedMatrix& rounded, const RatMatrix& target) {
  if (rounded.values.size() != target.size()) return false;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (rounded.values[i].size() != target[i].size()) return false;
    for (std::size_t j = 0; j < target[i].size(); ++j)
      if (Rat(rounded.values[i][j]) != target[i][j]) return false;
  }
  return true;
}

// Least 1-based batch index from which every cumulative max-norm stays below
// 0.50; 0 when the last batch is still at or above 0.50.
int stable_from(const std::vector<BatchNorms>& batches) {
  int stable = 0;
  for (std::size_t b = batches.size(); b-- > 0;) {
    if (batches[b].norms.linf < 0.5)
      stable = static_cast<int>(b) + 1;
    else
      break;
  }
  return stable;
}

void finish_stability(GramReport& report) {
  report.stable_batch = stable_from(report.batches);
  report.horizon_limited = report.stable_batch > 0;
  const std::string horizon = std::to_string(report.batches.size());
  if (report.stable_batch > 0)
    report.verdict = "stable from batch " + std::to_string(report.stable_batch) + " of " +
                     horizon + " (horizon-limited)";
  else
    report.verdict = "not stable within " + horizon + " batches";
}

}  // namespace

GramReport gram_report(const PrimeSample& sample, const TestBasis& basis,
                       std::optional<RatMatrix> theoretical, int workers) {
  GramReport report;
  report.labels = basis.labels();
  report.empirical = empirical_gram(sample, basis, workers);
  report.rounded = round_matrix(report.empirical);
  if (!theoretical) {
    report.verdict = "computed";
    return report;
  }
  report.theoretical = std::move(*theoretical);
  report.batches.push_back(
      {sample.entries.size(),
       error_norms(matrix_difference(report.empirical, *report.theoretical))});
  report.stable_batch = stable_from(report.batches);
  report.horizon_limited = report.stable_batch > 0;
  if (!report.rounded.ambiguous.empty())
    report.verdict = "ambiguous";
  else if (rounded_matches(report.rounded, *report.theoretical))
    report.verdict = "match";
  else
    report.verdict = "mismatch";
  return report;
}

GramReport convergence_run(const IntPolynomial& f, const RatMatrix& theoretical,
                           const TestBasis& basis, std::size_t increment, std::size_t batches,
                           int workers) {
  if (increment == 0) throw std::invalid_argument("batch increment must be positive");
  if (batches == 0) throw std::invalid_argument("batch count must be positive");
  const std::size_t r = basis.size();
  if (theoretical.size() != r)
    throw std::invalid_argument("target matrix does not match the basis size");

  PrimeSample sample = sample_primes(f, increment * batches);
  check_basis(basis, f.degree());
  RatMatrix values = workers <= 1 ? value_table(sample.entries, basis)
                                  : value_table_parallel(sample.entries, basis, workers);

  GramReport report;
  report.labels = basis.labels();
  report.theoretical = theoretical;

  // Cumulative sums over prefixes: each batch extends the previous one.
  RatMatrix acc(r, std::vector<Rat>(r));
  std::size_t consumed = 0;
  RatMatrix cumulative;
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t stop = consumed + increment;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) {
        Rat acc_ij = acc[i][j];
        for (std::size_t k = consumed; k < stop; ++k) acc_ij += values[i][k] * values[j][k];
        acc[i][j] = acc_ij;
      }
    consumed = stop;
    cumulative.assign(r, std::vector<Rat>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) {
        cumulative[i][j] = acc[i][j] / static_cast<long>(consumed);
        cumulative[j][i] = cumulative[i][j];
      }
    report.batches.push_back({consumed, error_norms(matrix_difference(cumulative, theoretical))});
  }
  report.empirical = std::move(cumulative);
  report.rounded = round_matrix(report.empirical);
  finish_stability(report);
  return report;
}

ExclusionVerdict exclude_by_kernel(const PrimeSample& sample, const PermGroup& group,
                                   int degree_bound) {
  if (group.degree() != sample.polynomial.degree())
    throw std::invalid_argument("candidate group degree does not match the polynomial");
  KernelIdealBasis ideal = kernel_ideal(group, degree_bound);
  for (const SampleEntry& entry : sample.entries)
    for (const SPolynomial& gen : ideal.generators) {
      Rat value = evaluate(gen, entry.point);
      if (value != 0) return {true, ExclusionWitness{entry.prime, gen, value}};
    }
  return {false, std::nullopt};
}

JointSample sample_primes_joint(const IntPolynomial& f, const IntPolynomial& g,
                                std::size_t count, std::uint64_t start) {
  if (count == 0) throw std::invalid_argument("sample size must be positive");
  check_samplable(f);
  check_samplable(g);
  JointSample sample;
  sample.f = f;
  sample.g = g;
  sample.entries.reserve(count);
  std::uint64_t p = first_prime_at_least(start);
  while (sample.entries.size() < count) {
    try {
      CycleType tf = factorization_type(f, p);
      CycleType tg = factorization_type(g, p);
      ClassPoint pf = s_vector(tf);
      ClassPoint pg = s_vector(tg);
      sample.entries.push_back(
          {p, std::move(tf), std::move(tg), std::move(pf), std::move(pg)});
    } catch (const RamifiedPrimeError&) {
      sample.skipped.push_back(p);
    }
    p = next_prime_u64(p);
  }
  return sample;
}

RatMatrix joint_gram(const JointSample& sample, const TestBasis& basis_f,
                     const TestBasis& basis_g, int workers) {
  if (basis_f.size() != basis_g.size())
    throw std::invalid_argument("joint bases must have equal length");
  if (sample.entries.empty()) throw std::invalid_argument("empty sample");
  check_basis(basis_f, sample.f.degree());
  check_basis(basis_g, sample.g.degree());
  const std::size_t n = sample.entries.size();
  std::vector<SampleEntry> side_f, side_g;
  side_f.reserve(n);
  side_g.reserve(n);
  for (const JointEntry& e : sample.entries) {
    side_f.push_back({e.prime, e.type_f, e.point_f});
    side_g.push_back({e.prime, e.type_g, e.point_g});
  }
  if (workers < 1) workers = 1;
  RatMatrix vf = workers == 1 ? value_table(side_f, basis_f)
                              : value_table_parallel(side_f, basis_f, workers);
  RatMatrix vg = workers == 1 ? value_table(side_g, basis_g)
                              : value_table_parallel(side_g, basis_g, workers);
  const std::size_t r = basis_f.size();
  RatMatrix gram(r, std::vector<Rat>(r));
  const long long total = static_cast<long long>(r * r);
#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(dynamic) if (workers > 1)
#endif
  for (long long cell = 0; cell < total; ++cell) {
    const std::size_t i = static_cast<std::size_t>(cell) / r;
    const std::size_t j = static_cast<std::size_t>(cell) % r;
    Rat acc;
    for (std::size_t k = 0; k < n; ++k) acc += vf[i][k] * vg[j][k];
    acc /= static_cast<long>(n);
    gram[i][j] = acc;
  }
  return gram;
}

TestBasis reduced_test_basis(const PermGroup& group) {
  CharacterTable table = character_table(group);
  std::vector<VirtualCharacter> rows = reduced_character_basis(group, table);
  std::vector<TestFunction> fns;
  fns.reserve(rows.size());
  for (const VirtualCharacter& row : rows) {
    if (!row.expression)
      throw std::runtime_error("reduced character basis row lacks an s-parametrization");
    fns.push_back(TestFunction::s_polynomial(*row.expression));
  }
  return TestBasis(std::move(fns));
}

namespace {

// Interpolates per-class values, raising the degree bound as needed; a
// "not in restriction image" failure is structural and propagates.
SPolynomial interpolate_with_retry(const std::vector<Rat>& values, const PermGroup& group) {
  for (int bound = 2;; ++bound) {
    try {
      return interpolate_character(values, group, bound);
    } catch (const std::domain_error& err) {
      if (std::string(err.what()).find("degree bound") == std::string::npos || bound >= group.degree())
        throw;
    }
  }
}

}  // namespace

TestBasis rational_character_test_basis(const PermGroup& group) {
  CharacterTable table = character_table(group);
  RationalCharacterTable rational = rational_character_table(table);
  const std::size_t h = table.classes.size();

  struct Row {
    Int orbit;
    Int degree;
    std::size_t index;
    std::vector<Rat> values;
  };
  std::vector<Row> rows;
  rows.reserve(rational.rows.size());
  for (std::size_t i = 0; i < rational.rows.size(); ++i) {
    std::vector<Rat> values(h);
    for (std::size_t rc = 0; rc < rational.classes.size(); ++rc)
      for (int member : rational.classes[rc].members)
        values[static_cast<std::size_t>(member)] = Rat(rational.rows[i][rc]);
    rows.push_back({rational.orbit_sizes[i], values[0].get_num(), i, std::move(values)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.orbit != b.orbit) return a.orbit < b.orbit;
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.index < b.index;
  });

  std::vector<TestFunction> fns;
  fns.reserve(rows.size());
  for (const Row& row : rows)
    fns.push_back(TestFunction::s_polynomial(interpolate_with_retry(row.values, group)));
  return TestBasis(std::move(fns));
}

namespace {

// Class points with aggregated Haar weights: two groups inducing the same
// map cannot be told apart by any statistic of Frobenius factorization data.
std::map<std::vector<Int>, Rat> weighted_point_signature(const PermGroup& group) {
  std::vector<ClassPoint> points = class_points(group);
  std::vector<Rat> weights = group.haar_weights();
  std::map<std::vector<Int>, Rat> signature;
  for (std::size_t k = 0; k < points.size(); ++k) signature[points[k].svector] += weights[k];
  return signature;
}

}  // namespace

IdentifyReport identify_group(const IntPolynomial& f, const std::vector<PermGroup>& candidates,
                              std::size_t prime_count, int degree_bound, int workers) {
  if (candidates.empty()) throw std::invalid_argument("no candidate groups given");
  for (const PermGroup& g : candidates)
    if (g.degree() != f.degree())
      throw std::invalid_argument("candidate " + g.name() + " has degree " +
                                  std::to_string(g.degree()) + ", polynomial has degree " +
                                  std::to_string(f.degree()));

  PrimeSample sample = sample_primes(f, prime_count);
  IdentifyReport report;
  report.primes = sample.entries.size();

  for (const PermGroup& g : candidates) {
    CandidateVerdict verdict;
    verdict.name = g.name();
    ExclusionVerdict excl = exclude_by_kernel(sample, g, degree_bound);
    if (excl.excluded) {
      verdict.excluded = true;
      verdict.witness = excl.witness;
    } else {
      TestBasis basis = reduced_test_basis(g);
      RatMatrix target = theoretical_gram(g, basis);
      RatMatrix observed = empirical_gram(sample, basis, workers);
      verdict.final_linf = error_norms(matrix_difference(observed, target)).linf;
      verdict.consistent = verdict.final_linf < 0.5;
    }
    report.verdicts.push_back(std::move(verdict));
  }

  // Consistent candidates with identical weighted class-point signatures are
  // mutually indistinguishable by this method.
  std::map<std::string, std::map<std::vector<Int>, Rat>> signatures;
  for (std::size_t a = 0; a < report.verdicts.size(); ++a) {
    if (!report.verdicts[a].consistent) continue;
    signatures[report.verdicts[a].name] = weighted_point_signature(candidates[a]);
  }
  for (auto& lhs : report.verdicts) {
    if (!lhs.consistent) continue;
    for (auto& rhs : report.verdicts) {
      if (&lhs == &rhs || !rhs.consistent) continue;
      if (signatures[lhs.name] == signatures[rhs.name]) {
        lhs.indistinguishable = true;
        rhs.indistinguishable = true;
      }
    }
  }

  std::stable_sort(report.verdicts.begin(), report.verdicts.end(),
                   [](const CandidateVerdict& a, const CandidateVerdict& b) {
                     if (a.consistent != b.consistent) return a.consistent;
                     if (a.excluded != b.excluded) return b.excluded;
                     if (!a.excluded && a.final_linf != b.final_linf)
                       return a.final_linf < b.final_linf;
                     return a.name < b.name;
                   });

  std::size_t consistent = 0;
  for (const CandidateVerdict& v : report.verdicts)
    if (v.consistent) ++consistent;
  report.exit_code = consistent == 1 ? 0 : (consistent > 1 ? 10 : 11);
  return report;
}

}  // namespace galstat
