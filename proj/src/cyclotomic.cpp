#include "galstat/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace galstat {

int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact division of integer polynomials (divisor monic), ascending order.
std::vector<Int> divide_monic(std::vector<Int> num, const std::vector<Int>& den) {
  std::vector<Int> quotient(num.size() - den.size() + 1, Int(0));
  for (int pos = static_cast<int>(num.size()) - 1;
       pos >= static_cast<int>(den.size()) - 1; --pos) {
    Int c = num[pos];
    if (c == 0) continue;
    int shift = pos - static_cast<int>(den.size()) + 1;
    quotient[shift] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
  }
  return quotient;
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(int m) {
  static std::map<int, std::vector<Int>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  if (m < 1) throw std::invalid_argument("cyclotomic polynomial order must be positive");

  // x^m - 1 divided by the cyclotomic polynomials of the proper divisors.
  std::function<const std::vector<Int>&(int)> get = [&](int k) -> const std::vector<Int>& {
    auto found = cache.find(k);
    if (found != cache.end()) return found->second;
    std::vector<Int> num(k + 1, Int(0));
    num[0] = -1;
    num[k] = 1;
    for (int d = 1; d < k; ++d) {
      if (k % d == 0) num = divide_monic(std::move(num), get(d));
    }
    return cache.emplace(k, std::move(num)).first->second;
  };
  return get(m);
}

namespace {

// Reduces an ascending coefficient vector (any length) modulo the m-th
// cyclotomic polynomial, first folding exponents mod m, returning exactly
// phi(m) coordinates.
std::vector<Rat> reduce_coords(int m, std::vector<Rat> poly) {
  const std::vector<Int>& phi = cyclotomic_polynomial(m);
  const int deg = static_cast<int>(phi.size()) - 1;
  // Fold exponents >= m using z^m = 1.
  if (static_cast<int>(poly.size()) > m) {
    for (std::size_t e = poly.size(); e-- > static_cast<std::size_t>(m);) {
      poly[e % m] += poly[e];
    }
    poly.resize(m);
  }
  poly.resize(std::max<std::size_t>(poly.size(), deg), Rat(0));
  for (int pos = static_cast<int>(poly.size()) - 1; pos >= deg; --pos) {
    Rat c = poly[pos];
    if (c == 0) continue;
    int shift = pos - deg;
    for (int j = 0; j <= deg; ++j) poly[shift + j] -= c * Rat(phi[j]);
  }
  poly.resize(deg);
  for (Rat& c : poly) c.canonicalize();
  return poly;
}

}  // namespace

Cyclotomic::Cyclotomic(Rat value) : order_(1), coords_(1, std::move(value)) {
  coords_[0].canonicalize();
}

Cyclotomic::Cyclotomic(int order, std::vector<Rat> poly_coeffs) : order_(order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
  coords_ = reduce_coords(order, std::move(poly_coeffs));
  normalize();
}

Cyclotomic Cyclotomic::root_of_unity(int order, long exponent) {
  exponent %= order;
  if (exponent < 0) exponent += order;
  std::vector<Rat> poly(static_cast<std::size_t>(exponent) + 1, Rat(0));
  poly[exponent] = 1;
  return Cyclotomic(order, std::move(poly));
}

void Cyclotomic::normalize() {
  if (order_ == 1) return;
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (coords_[i] != 0) return;
  }
  Rat value = coords_.empty() ? Rat(0) : coords_[0];
  order_ = 1;
  coords_.assign(1, std::move(value));
}

bool Cyclotomic::is_zero() const {
  for (const Rat& c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

Rat Cyclotomic::rational_value() const {
  if (!is_rational()) throw std::logic_error("cyclotomic value is not rational");
  return coords_[0];
}

Cyclotomic Cyclotomic::promote(int new_order) const {
  if (new_order == order_) return *this;
  if (new_order < 1 || new_order % order_ != 0) {
    throw std::invalid_argument("promotion target must be a multiple of the current order");
  }
  const int stride = new_order / order_;
  std::vector<Rat> poly(static_cast<std::size_t>(new_order), Rat(0));
  for (std::size_t k = 0; k < coords_.size(); ++k) poly[k * stride] = coords_[k];
  Cyclotomic out(new_order, std::move(poly));
  out.order_ = new_order;  // keep the requested order even if the value is rational
  if (out.coords_.size() < static_cast<std::size_t>(euler_phi(new_order))) {
    out.coords_.resize(euler_phi(new_order), Rat(0));
  }
  return out;
}

namespace {

int common_order(int a, int b) { return std::lcm(a, b); }

}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& other) const {
  const int m = common_order(order_, other.order_);
  std::vector<Rat> sum(euler_phi(m), Rat(0));
  Cyclotomic a = promote(m), b = other.promote(m);
  for (std::size_t i = 0; i < sum.size(); ++i) {
    sum[i] = a.coords_[i] + b.coords_[i];
    sum[i].canonicalize();
  }
  Cyclotomic out;
  out.order_ = m;
  out.coords_ = std::move(sum);
  out.normalize();
  return out;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (Rat& c : out.coords_) c = -c;
  return out;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& other) const { return *this + (-other); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& other) const {
  // Rational factors avoid the convolution entirely.
  if (is_rational()) {
    Cyclotomic out = other;
    for (Rat& c : out.coords_) {
      c *= coords_[0];
      c.canonicalize();
    }
    out.normalize();
    return out;
  }
  if (other.is_rational()) return other * *this;
  const int m = common_order(order_, other.order_);
  Cyclotomic a = promote(m), b = other.promote(m);
  std::vector<Rat> prod(static_cast<std::size_t>(m), Rat(0));
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    if (a.coords_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coords_.size(); ++j) {
      if (b.coords_[j] == 0) continue;
      prod[(i + j) % m] += a.coords_[i] * b.coords_[j];
    }
  }
  return Cyclotomic(m, std::move(prod));
}

Cyclotomic Cyclotomic::conj() const { return order_ == 1 ? *this : galois(order_ - 1); }

Cyclotomic Cyclotomic::galois(long k) const {
  if (order_ == 1) return *this;
  k %= order_;
  if (k < 0) k += order_;
  if (std::gcd(k, static_cast<long>(order_)) != 1) {
    throw std::invalid_argument("galois exponent must be coprime to the order");
  }
  std::vector<Rat> poly(static_cast<std::size_t>(order_), Rat(0));
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    poly[(i * k) % order_] += coords_[i];
  }
  return Cyclotomic(order_, std::move(poly));
}

bool Cyclotomic::operator==(const Cyclotomic& other) const {
  const int m = common_order(order_, other.order_);
  Cyclotomic a = promote(m), b = other.promote(m);
  return a.coords_ == b.coords_;
}

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ != b.order_) return a.order_ < b.order_ ? -1 : 1;
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    if (a.coords_[i] != b.coords_[i]) return a.coords_[i] < b.coords_[i] ? -1 : 1;
  }
  return 0;
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const Rat& c = coords_[k];
    if (c == 0) continue;
    bool negative = c < 0;
    Rat mag = negative ? Rat(-c) : c;
    mag.canonicalize();
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    bool unit = (mag == 1);
    if (k == 0 || !unit) out += galstat::to_string(mag);
    if (k >= 1) {
      if (!unit) out += '*';
      out += 'z';
      if (k >= 2) out += '^' + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

std::complex<double> Cyclotomic::approx() const {
  std::complex<double> result(0.0, 0.0);
  const double tau = 2.0 * 3.14159265358979323846;
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k] == 0) continue;
    double angle = tau * static_cast<double>(k) / order_;
    result += to_double(coords_[k]) * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return result;
}

Cyclotomic Cyclotomic::parse(const std::string& text, int order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
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

  std::vector<Rat> poly(static_cast<std::size_t>(order), Rat(0));
  bool first = true;
  skip_ws();
  if (i >= n) throw ParseError("empty cyclotomic value");
  while (i < n) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = (text[i] == '-') ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw ParseError("expected '+' or '-' in cyclotomic value");
    }
    bool have_coeff = false;
    Rat coeff(1);
    if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::string numerator = read_digits();
      std::string denominator = "1";
      skip_ws();
      if (i < n && text[i] == '/') {
        ++i;
        skip_ws();
        denominator = read_digits();
        if (denominator.empty()) throw ParseError("expected denominator after '/'");
      }
      coeff = Rat(Int(numerator), Int(denominator));
      coeff.canonicalize();
      have_coeff = true;
      skip_ws();
      if (i < n && text[i] == '*') {
        ++i;
        skip_ws();
        if (i >= n || text[i] != 'z') throw ParseError("expected 'z' after '*'");
      }
    }
    long exponent = -1;
    if (i < n && text[i] == 'z') {
      ++i;
      exponent = 1;
      skip_ws();
      if (i < n && text[i] == '^') {
        ++i;
        skip_ws();
        std::string digits = read_digits();
        if (digits.empty() || digits.size() > 6) throw ParseError("bad exponent in cyclotomic value");
        exponent = std::stol(digits);
      }
    } else if (!have_coeff) {
      throw ParseError("unexpected character in cyclotomic value");
    }
    if (sign < 0) coeff = -coeff;
    if (exponent < 0) {
      poly[0] += coeff;
    } else {
      poly[exponent % order] += coeff;
    }
    first = false;
    skip_ws();
  }
  return Cyclotomic(order, std::move(poly));
}

}  // namespace galstat
