#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "galstat/charparam.hpp"
#include "galstat/numeric.hpp"
#include "galstat/permcore.hpp"
#include "galstat/polyarith.hpp"

namespace galstat {

using RatMatrix = std::vector<std::vector<Rat>>;
using IntMatrix = std::vector<std::vector<Int>>;

// One observed prime: its factorization type and the class point it induces.
struct SampleEntry {
  std::uint64_t prime = 0;
  CycleType type;
  ClassPoint point;
};

struct PrimeSample {
  IntPolynomial polynomial = IntPolynomial({Int(0), Int(1)});
  std::vector<SampleEntry> entries;            // primes strictly increasing
  std::vector<std::uint64_t> skipped;          // ramified primes passed over
};

// The first `count` unramified primes >= start, each mapped through
// factorization_type and s_vector. Deterministic. Throws
// std::invalid_argument when count == 0 or the polynomial is constant, and
// std::domain_error when disc(f) = 0 (every prime would be ramified).
PrimeSample sample_primes(const IntPolynomial& f, std::size_t count, std::uint64_t start = 2);

// d != 0, 1 and either d = 1 mod 4 squarefree, or d = 4m with m = 2, 3 mod 4
// squarefree.
bool is_fundamental_discriminant(long long d);

// Kronecker symbol (d/p); 0 exactly when p divides d.
int kronecker_symbol(long long d, std::uint64_t p);

// A test function evaluated at Frobenius data: either an s-polynomial applied
// to the class point, or the Kronecker character (d/.) of a quadratic field.
class TestFunction {
 public:
  static TestFunction s_polynomial(SPolynomial p, std::string label = "");
  // Throws std::invalid_argument unless d is a fundamental discriminant.
  static TestFunction kronecker(long long d);

  bool is_kronecker() const { return kronecker_; }
  const SPolynomial& polynomial() const { return poly_; }
  long long discriminant() const { return disc_; }
  const std::string& label() const { return label_; }

  // Largest s-variable index used (0 for constants and Kronecker characters).
  int max_variable() const;

  // Per-conjugacy-class values, required only when a Kronecker character
  // participates in a theoretical Gram (symbols are functions of the prime,
  // not of the class point).
  void set_class_values(std::vector<Rat> values) { class_values_ = std::move(values); }
  const std::optional<std::vector<Rat>>& class_values() const { return class_values_; }

  Rat operator()(const SampleEntry& entry) const;

 private:
  TestFunction() = default;

  bool kronecker_ = false;
  SPolynomial poly_;
  long long disc_ = 0;
  std::string label_;
  std::optional<std::vector<Rat>> class_values_;
};

// An ordered system of test functions, always led by the constant 1.
struct TestBasis {
  std::vector<TestFunction> functions;

  TestBasis() = default;
  // Throws std::invalid_argument when empty or not led by the constant 1.
  explicit TestBasis(std::vector<TestFunction> fns);

  static TestBasis s_polynomials(const std::vector<std::string>& texts);
  // (1, s_1, ..., s_{n-1})
  static TestBasis symmetric(int degree);

  std::size_t size() const { return functions.size(); }
  std::vector<std::string> labels() const;
};

// Empirical Gram E_S(chi_i chi_j) as exact rationals: integer-free rational
// accumulation, division by |S| at the end, so the result is independent of
// evaluation order and worker count. The serial form is the reference
// implementation; the parallel form is the OpenMP kernel. empirical_gram
// dispatches on `workers` (<= 1 means serial).
RatMatrix empirical_gram_serial(const PrimeSample& sample, const TestBasis& basis);
RatMatrix empirical_gram_parallel(const PrimeSample& sample, const TestBasis& basis,
                                  int workers);
RatMatrix empirical_gram(const PrimeSample& sample, const TestBasis& basis, int workers = 1);

// Haar-weighted Gram M(G) over explicit class data. Kronecker characters
// need class values (see TestFunction::set_class_values).
RatMatrix theoretical_gram(const std::vector<ClassPoint>& points,
                           const std::vector<Rat>& weights, const TestBasis& basis);
RatMatrix theoretical_gram(const PermGroup& group, const TestBasis& basis);
RatMatrix theoretical_gram(const ImportedGroup& group, const TestBasis& basis);

// The group's reduced character basis as test functions (always led by the
// trivial character).
TestBasis reduced_test_basis(const PermGroup& group);

// Interpolated rational-character-table rows, sorted by (Galois orbit size,
// degree); the theoretical Gram on this basis is the diagonal of sorted
// orbit sizes.
TestBasis rational_character_test_basis(const PermGroup& group);

RatMatrix matrix_difference(const RatMatrix& a, const RatMatrix& b);

// Normalized norms ||Z||_p = ((1/r^2) sum |z_ij|^p)^(1/p) for p = 2, 8, and
// the max norm for p = infinity. Throws std::invalid_argument on an empty
// matrix.
struct NormTriple {
  double l2 = 0.0;
  double l8 = 0.0;
  double linf = 0.0;
};
NormTriple error_norms(const RatMatrix& z);

// Nearest-integer rounding with explicit half-integer flags; flagged entries
// are never silently rounded away.
struct RoundedMatrix {
  IntMatrix values;
  std::vector<std::array<std::size_t, 2>> ambiguous;
};
RoundedMatrix round_matrix(const RatMatrix& m);

struct BatchNorms {
  std::size_t primes = 0;  // cumulative sample size
  NormTriple norms;
};

struct GramReport {
  std::vector<std::string> labels;
  RatMatrix empirical;                    // full-horizon empirical Gram
  std::optional<RatMatrix> theoretical;   // M(G) when a target was given
  RoundedMatrix rounded;                  // empirical, nearest-integer
  std::vector<BatchNorms> batches;        // cumulative prefix norms vs target
  int stable_batch = 0;                   // least 1-based k with linf < 0.50
                                          // from batch k on; 0 when never
  bool horizon_limited = false;           // any stability claim is relative
                                          // to the computed horizon
  std::string verdict;
};

// Single-shot report over an existing sample. With a target: one batch of
// norms and a match/mismatch/ambiguous verdict after rounding.
GramReport gram_report(const PrimeSample& sample, const TestBasis& basis,
                       std::optional<RatMatrix> theoretical, int workers = 1);

// Convergence diagnostics: samples increment*batches unramified primes and
// reports cumulative norms per batch via prefix sums (batches are cumulative,
// never recomputed).
GramReport convergence_run(const IntPolynomial& f, const RatMatrix& theoretical,
                           const TestBasis& basis, std::size_t increment,
                           std::size_t batches, int workers = 1);

// Provable exclusion: a kernel-ideal generator of G evaluating nonzero at a
// sampled class point certifies that G is not the Galois group.
struct ExclusionWitness {
  std::uint64_t prime = 0;
  SPolynomial generator;
  Rat value;
};
struct ExclusionVerdict {
  bool excluded = false;
  std::optional<ExclusionWitness> witness;
};
ExclusionVerdict exclude_by_kernel(const PrimeSample& sample, const PermGroup& group,
                                   int degree_bound = 2);

// Two aligned polynomials at the same primes (skipping primes ramified in
// either), for joint character evaluation.
struct JointEntry {
  std::uint64_t prime = 0;
  CycleType type_f, type_g;
  ClassPoint point_f, point_g;
};
struct JointSample {
  IntPolynomial f = IntPolynomial({Int(0), Int(1)});
  IntPolynomial g = IntPolynomial({Int(0), Int(1)});
  std::vector<JointEntry> entries;
  std::vector<std::uint64_t> skipped;
};
JointSample sample_primes_joint(const IntPolynomial& f, const IntPolynomial& g,
                                std::size_t count, std::uint64_t start = 2);

// Entry (i, j) is the average of basis_f[i] on f-data times basis_g[j] on
// g-data; not symmetric in general. Bases must pair up (equal lengths).
RatMatrix joint_gram(const JointSample& sample, const TestBasis& basis_f,
                     const TestBasis& basis_g, int workers = 1);

// Orchestrated identification: kernel exclusion, then Gram comparison on each
// candidate's reduced character basis. A candidate is consistent when it is
// not excluded and its final max-norm error is below 0.50.
struct CandidateVerdict {
  std::string name;
  bool excluded = false;
  std::optional<ExclusionWitness> witness;
  double final_linf = -1.0;      // -1 when kernel-excluded (no Gram computed)
  bool consistent = false;
  bool indistinguishable = false;  // shares class points and Haar weights
                                   // with another consistent candidate
};
struct IdentifyReport {
  std::vector<CandidateVerdict> verdicts;  // consistent first, by final_linf
  std::size_t primes = 0;
  int exit_code = 0;  // 0 unique consistent, 10 several, 11 none
};
IdentifyReport identify_group(const IntPolynomial& f, const std::vector<PermGroup>& candidates,
                              std::size_t prime_count, int degree_bound = 2, int workers = 1);

}  // namespace galstat
