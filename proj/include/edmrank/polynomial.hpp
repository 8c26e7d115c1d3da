#pragma once

#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "edmrank/rational.hpp"

namespace edmrank {

// Sparse monomial: strictly increasing (variable index, exponent>0) pairs.
struct Monomial {
  std::vector<std::pair<unsigned, unsigned>> factors;

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [v, e] : factors) d += e;
    return d;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
      if (j == b.factors.size() ||
          (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
        m.factors.push_back(a.factors[i++]);
      } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
        m.factors.push_back(b.factors[j++]);
      } else {
        m.factors.emplace_back(a.factors[i].first,
                               a.factors[i].second + b.factors[j].second);
        ++i, ++j;
      }
    }
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors == b.factors;
  }

  // Graded lexicographic order with x0 > x1 > ...
  friend bool operator<(const Monomial& a, const Monomial& b) {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
      const auto [va, ea] = a.factors[i];
      const auto [vb, eb] = b.factors[j];
      if (va != vb) return va > vb;  // the one missing the smaller variable is lex-smaller
      if (ea != eb) return ea < eb;
      ++i, ++j;
    }
    return i < a.factors.size() ? false : j < b.factors.size();
  }
};

// Multivariate polynomial over Rational, sparse, terms kept in graded-lex
// order. Variables are open-ended indices; a constant uses none of them.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int c) : Polynomial(Rational(c)) {}
  Polynomial(const Rational& c) {
    if (!c.is_zero()) terms_[Monomial{}] = c;
  }

  static Polynomial variable(unsigned i) {
    Polynomial p;
    Monomial m;
    m.factors.emplace_back(i, 1);
    p.terms_[m] = Rational(1);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.factors.empty());
  }

  unsigned degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
  std::size_t term_count() const { return terms_.size(); }

  const Rational& leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("polynomial: leading term of zero");
    return terms_.rbegin()->second;
  }

  Rational constant_term() const {
    const auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  Polynomial operator-() const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scale(const Rational& s) const {
    Polynomial r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Rational eval(const std::vector<Rational>& x) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [v, e] : m.factors) {
        if (v >= x.size()) throw std::invalid_argument("polynomial: evaluation point too short");
        t *= x[v].pow(e);
      }
      acc += t;
    }
    return acc;
  }

  // Positive gcd of all coefficients, with the sign of the leading term:
  // dividing by it leaves a primitive polynomial with positive leading
  // coefficient. Zero polynomial has content 1 by convention.
  Rational content() const {
    if (terms_.empty()) return Rational(1);
    mpz_class g(0), l(1);
    for (const auto& [m, c] : terms_) {
      g = gcd(g, c.num());
      l = lcm(l, c.den());
    }
    Rational r(g, l);
    return leading_coefficient().sign() < 0 ? -r : r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      if (!first) out << (c.sign() > 0 ? " + " : " - ");
      else if (c.sign() < 0) out << "-";
      first = false;
      const Rational a = c.abs();
      if (m.factors.empty() || a != Rational(1)) out << a.str();
      for (std::size_t k = 0; k < m.factors.size(); ++k) {
        if (k > 0 || a != Rational(1)) out << "*";
        out << "x" << m.factors[k].first;
        if (m.factors[k].second > 1) out << "^" << m.factors[k].second;
      }
    }
    return out.str();
  }

 private:
  void add_term(const Monomial& m, const Rational& c) {
    const auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[m] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::map<Monomial, Rational> terms_;
};

}  // namespace edmrank
