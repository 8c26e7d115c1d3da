#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "edmrank/polynomial.hpp"
#include "edmrank/rational.hpp"

namespace edmrank {

// Rational function num/den over the polynomial ring. Kept normalized only up
// to content (den primitive with positive leading coefficient); no multivariate
// gcd is attempted, so equality is decided by cross-multiplication.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(int c) : num_(c), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}
  RatFunc(Polynomial p) : num_(std::move(p)), den_(1) {}

  RatFunc(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("ratfunc: zero denominator");
    normalize();
  }

  static RatFunc variable(unsigned i) { return RatFunc(Polynomial::variable(i)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("ratfunc: division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  Rational eval(const std::vector<Rational>& x) const {
    const Rational d = den_.eval(x);
    if (d.is_zero()) throw std::domain_error("ratfunc: pole at evaluation point");
    return num_.eval(x) / d;
  }

  std::string str() const {
    if (den_ == Polynomial(1)) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    const Rational c = den_.content();
    num_ = num_.scale(c.inv());
    den_ = den_.scale(c.inv());
  }

  Polynomial num_, den_;
};

}  // namespace edmrank
