#include "galstat/polyarith.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include <json.hpp>

#include "galstat/modular.hpp"

namespace galstat {

namespace {

// ---- exact integer polynomial helpers (ascending, trimmed; empty = zero) ----

using ZPoly = std::vector<Int>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zderivative(const ZPoly& a) {
  ZPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
  ztrim(d);
  return d;
}

Int zpow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Pseudo-remainder: returns R with lc(B)^{deg A - deg B + 1} A = Q B + R.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  const Int& d = b.back();
  int e = zdeg(a) - zdeg(b) + 1;
  while (!a.empty() && zdeg(a) >= zdeg(b)) {
    int shift = zdeg(a) - zdeg(b);
    Int la = a.back();
    ZPoly next(a.size() - 1);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) next[i] = d * a[i];
    for (int j = 0; j < zdeg(b); ++j) next[shift + j] -= la * b[j];
    ztrim(next);
    a.swap(next);
    --e;
  }
  if (e > 0) {
    Int scale = zpow(d, static_cast<unsigned long>(e));
    for (Int& c : a) c *= scale;
  }
  return a;
}

// Subresultant polynomial remainder sequence; all divisions are exact.
Int resultant_prs(ZPoly a, ZPoly b) {
  ztrim(a);
  ztrim(b);
  if (a.empty() || b.empty()) return Int(0);
  int sign = 1;
  if (zdeg(a) < zdeg(b)) {
    if ((zdeg(a) & 1) && (zdeg(b) & 1)) sign = -sign;
    a.swap(b);
  }
  Int g(1), h(1);
  while (zdeg(b) > 0) {
    int delta = zdeg(a) - zdeg(b);
    if ((zdeg(a) & 1) && (zdeg(b) & 1)) sign = -sign;
    ZPoly r = pseudo_rem(a, b);
    if (r.empty()) return Int(0);
    a.swap(b);
    Int div = g * zpow(h, static_cast<unsigned long>(delta));
    for (Int& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
    b.swap(r);
    g = a.back();
    if (delta > 0) {
      Int num = zpow(g, static_cast<unsigned long>(delta));
      Int den = zpow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
  }
  int l = zdeg(a);
  if (l == 0) return Int(sign);
  Int num = zpow(b[0], static_cast<unsigned long>(l));
  Int den = zpow(h, static_cast<unsigned long>(l - 1));
  Int out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return sign < 0 ? Int(-out) : out;
}

// ---- arithmetic over F_p (ascending u64 coefficients, trimmed) ----

using ModPoly = std::vector<std::uint64_t>;

void mtrim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int mdeg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly reduce_mod(const ZPoly& f, std::uint64_t p) {
  ModPoly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
  mtrim(out);
  return out;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
    }
  }
  mtrim(out);
  return out;
}

ModPoly mrem(ModPoly a, const ModPoly& b, std::uint64_t p) {
  std::uint64_t inv_lead = invmod_u64(b.back(), p);
  while (!a.empty() && mdeg(a) >= mdeg(b)) {
    int shift = mdeg(a) - mdeg(b);
    std::uint64_t q = mulmod_u64(a.back(), inv_lead, p);
    for (int j = 0; j <= mdeg(b); ++j) {
      std::uint64_t sub = mulmod_u64(q, b[j], p);
      std::uint64_t& tgt = a[shift + j];
      tgt = (tgt >= sub) ? tgt - sub : tgt + p - sub;
    }
    mtrim(a);
  }
  return a;
}

ModPoly mquot(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
  ModPoly r = a;
  ModPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  std::uint64_t inv_lead = invmod_u64(b.back(), p);
  while (!r.empty() && mdeg(r) >= mdeg(b)) {
    int shift = mdeg(r) - mdeg(b);
    std::uint64_t c = mulmod_u64(r.back(), inv_lead, p);
    q[shift] = c;
    for (int j = 0; j <= mdeg(b); ++j) {
      std::uint64_t sub = mulmod_u64(c, b[j], p);
      std::uint64_t& tgt = r[shift + j];
      tgt = (tgt >= sub) ? tgt - sub : tgt + p - sub;
    }
    mtrim(r);
  }
  mtrim(q);
  return q;
}

ModPoly mmonic(ModPoly a, std::uint64_t p) {
  if (a.empty() || a.back() == 1) return a;
  std::uint64_t inv = invmod_u64(a.back(), p);
  for (std::uint64_t& c : a) c = mulmod_u64(c, inv, p);
  return a;
}

ModPoly mgcd(ModPoly a, ModPoly b, std::uint64_t p) {
  while (!b.empty()) {
    ModPoly r = mrem(a, b, p);
    a.swap(b);
    b.swap(r);
  }
  return mmonic(std::move(a), p);
}

ModPoly mderivative(const ModPoly& a, std::uint64_t p) {
  ModPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mulmod_u64(a[i], i % p, p));
  mtrim(d);
  return d;
}

// h^e mod v by square-and-multiply.
ModPoly mpowmod(ModPoly h, std::uint64_t e, const ModPoly& v, std::uint64_t p) {
  ModPoly result{1};
  h = mrem(std::move(h), v, p);
  while (e > 0) {
    if (e & 1) result = mrem(mmul(result, h, p), v, p);
    h = mrem(mmul(h, h, p), v, p);
    e >>= 1;
  }
  return result;
}

ModPoly msub_x(ModPoly h, std::uint64_t p) {
  if (h.size() < 2) h.resize(2, 0);
  h[1] = (h[1] >= 1) ? h[1] - 1 : p - 1;
  mtrim(h);
  return h;
}

void require_prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

// Reduces f mod p with ramification checks shared by the factorization entry
// points; returns the monic reduction.
ModPoly reduce_checked(const IntPolynomial& f, std::uint64_t p) {
  require_prime(p);
  if (mpz_fdiv_ui(f.leading().get_mpz_t(), p) == 0) {
    throw RamifiedPrimeError(p, "divides the leading coefficient");
  }
  return mmonic(reduce_mod(f.coefficients(), p), p);
}

}  // namespace

std::string format_cycle_type(const CycleType& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    if (!out.empty()) out += ' ';
    out += std::to_string(parts[i]);
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

IntPolynomial::IntPolynomial(std::vector<Int> ascending_coefficients)
    : coeffs_(std::move(ascending_coefficients)) {
  ztrim(coeffs_);
  if (coeffs_.size() < 2) {
    throw ParseError("polynomial must have degree at least 1");
  }
}

namespace {

IntPolynomial parse_json_poly(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid polynomial JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("polynomial JSON must be an array of coefficients");
  std::vector<Int> coeffs;
  for (const auto& item : doc) {
    if (item.is_number_integer()) {
      coeffs.emplace_back(static_cast<long>(item.get<std::int64_t>()));
    } else if (item.is_string()) {
      try {
        coeffs.emplace_back(Int(item.get<std::string>()));
      } catch (const std::invalid_argument&) {
        throw ParseError("invalid integer literal in coefficient array: " + item.get<std::string>());
      }
    } else {
      throw ParseError("coefficients must be integers (or integer strings)");
    }
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial parse_text_poly(const std::string& text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_digits = [&]() -> std::string {
    std::size_t start = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    return text.substr(start, i - start);
  };

  std::vector<Int> coeffs;
  auto add_term = [&](int exp, const Int& c) {
    if (exp >= static_cast<int>(coeffs.size())) coeffs.resize(exp + 1, Int(0));
    coeffs[exp] += c;
  };

  bool first = true;
  skip_ws();
  if (i >= n) throw ParseError("empty polynomial");
  while (i < n) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = (text[i] == '-') ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw ParseError("expected '+' or '-' before term at position " + std::to_string(i));
    }
    bool have_coeff = false;
    Int coeff(1);
    if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = Int(read_digits());
      have_coeff = true;
      skip_ws();
      if (i < n && text[i] == '*') {
        ++i;
        skip_ws();
        if (i >= n || text[i] != 'x') throw ParseError("expected 'x' after '*'");
      }
    }
    int exp = 0;
    if (i < n && text[i] == 'x') {
      ++i;
      exp = 1;
      skip_ws();
      if (i < n && text[i] == '^') {
        ++i;
        skip_ws();
        std::string digits = read_digits();
        if (digits.empty()) throw ParseError("expected exponent after '^'");
        if (digits.size() > 4) throw ParseError("exponent too large: " + digits);
        exp = std::stoi(digits);
      }
    } else if (!have_coeff) {
      throw ParseError(std::string("unexpected character '") + (i < n ? std::string(1, text[i]) : std::string("<end>")) + "' in polynomial");
    }
    add_term(exp, sign < 0 ? Int(-coeff) : coeff);
    first = false;
    skip_ws();
  }
  return IntPolynomial(std::move(coeffs));
}

}  // namespace

IntPolynomial IntPolynomial::parse(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '[') return parse_json_poly(text);
  return parse_text_poly(text);
}

std::string IntPolynomial::to_string() const {
  std::string out;
  for (int e = degree(); e >= 0; --e) {
    const Int& c = coeffs_[e];
    if (c == 0) continue;
    bool negative = c < 0;
    Int mag = negative ? Int(-c) : c;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    bool unit = (mag == 1);
    if (e == 0 || !unit) out += mag.get_str();
    if (e >= 1) {
      out += 'x';
      if (e >= 2) out += '^' + std::to_string(e);
    }
  }
  return out;
}

Int resultant(const IntPolynomial& a, const IntPolynomial& b) {
  return resultant_prs(a.coefficients(), b.coefficients());
}

Int discriminant(const IntPolynomial& f) {
  const int n = f.degree();
  Int res = resultant_prs(f.coefficients(), zderivative(f.coefficients()));
  Int disc;
  mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), f.leading().get_mpz_t());
  return ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) ? Int(-disc) : disc;
}

CycleType factorization_type(const IntPolynomial& f, std::uint64_t p) {
  ModPoly v = reduce_checked(f, p);
  ModPoly g = mgcd(v, mderivative(v, p), p);
  if (mdeg(g) != 0) throw RamifiedPrimeError(p, "f has a repeated factor modulo p");

  CycleType out;
  ModPoly w = v;
  ModPoly h = mrem(ModPoly{0, 1}, w, p);  // x mod w
  int d = 0;
  while (mdeg(w) > 0) {
    ++d;
    if (2 * d > mdeg(w)) {
      // Everything of degree < d was already removed, so w is irreducible.
      out.push_back(mdeg(w));
      break;
    }
    h = mpowmod(std::move(h), p, w, p);  // x^{p^d} mod w
    ModPoly split = mgcd(msub_x(h, p), w, p);
    if (mdeg(split) > 0) {
      for (int k = 0; k < mdeg(split) / d; ++k) out.push_back(d);
      w = mquot(w, split, p);
      if (mdeg(w) <= 0) break;
      h = mrem(std::move(h), w, p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_squarefree_mod(const IntPolynomial& f, std::uint64_t p) {
  ModPoly v = reduce_checked(f, p);
  return mdeg(mgcd(v, mderivative(v, p), p)) == 0;
}

bool probably_irreducible(const IntPolynomial& f) {
  const int n = f.degree();
  if (n == 1) return true;
  Int bad = discriminant(f) * f.leading();
  if (bad == 0) return false;  // repeated root over Q, hence reducible

  // ruled_out[d] = some sampled factor pattern admits no sub-multiset summing
  // to d, so no rational factor of degree d can exist.
  std::vector<bool> ruled_out(n, false);
  int sampled = 0;
  std::uint64_t p = 1;
  while (sampled < 20) {
    p = next_prime_u64(p);
    if (mpz_fdiv_ui(bad.get_mpz_t(), p) == 0) continue;
    CycleType type = factorization_type(f, p);
    ++sampled;
    if (static_cast<int>(type.size()) == 1) return true;  // irreducible mod p
    std::uint64_t sums = 1;  // bitset of achievable sub-multiset sums (n < 64)
    for (int part : type) sums |= sums << part;
    for (int d = 1; d < n; ++d) {
      if (((sums >> d) & 1) == 0) ruled_out[d] = true;
    }
  }
  for (int d = 1; d < n; ++d) {
    if (!ruled_out[d]) return false;
  }
  return true;
}

}  // namespace galstat
