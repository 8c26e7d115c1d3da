#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace edmrank {

// Exact rational scalar. Always held in lowest terms with a positive
// denominator; the canonical string form is "p/q", or just "p" when q == 1.
// mpq_class does not canonicalize values built from a numerator/denominator
// pair, so every constructor here does it explicitly.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  explicit Rational(const mpz_class& n) : v_(n) {}

  Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Accepts "p", "-p", "p/q", "-p/q" (and a negative q, which is folded into
  // the sign). Anything else is rejected with the offending token quoted.
  static Rational parse(const std::string& s) {
    const auto bad = [&]() -> std::invalid_argument {
      return std::invalid_argument("rational: malformed value \"" + s + "\"");
    };
    if (s.empty()) throw bad();
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    if (!is_integer_token(num)) throw bad();
    if (slash == std::string::npos) return Rational(mpz_class(num));
    const std::string den = s.substr(slash + 1);
    if (!is_integer_token(den)) throw bad();
    mpz_class d(den);
    if (d == 0) throw std::invalid_argument("rational: zero denominator in \"" + s + "\"");
    return Rational(mpz_class(num), d);
  }

  std::string str() const { return v_.get_str(); }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  double to_double() const { return v_.get_d(); }

  // Largest integer <= value.
  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  // Exact square root when the value is a perfect square of a rational.
  std::optional<Rational> sqrt_exact() const {
    if (sign() < 0) return std::nullopt;
    const mpz_class n = v_.get_num(), d = v_.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
      return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
  }

  Rational pow(long e) const {
    if (e < 0) {
      if (is_zero()) throw std::domain_error("rational: 0 to a negative power");
      return inv().pow(-e);
    }
    Rational base = *this, acc = 1;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  Rational inv() const {
    if (is_zero()) throw std::domain_error("rational: division by zero");
    return Rational(mpq_class(1 / v_));
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  const mpq_class& raw() const { return v_; }

 private:
  static bool is_integer_token(const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  }

  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace edmrank
