#pragma once

#include "qlzero/qpoly.hpp"

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qlzero {

// Exact element of Q(q). Canonical form: num, den in Z[q] (no negative
// powers), gcd(num, den) = 1, den has positive leading coefficient.
class RatFuncQ {
 public:
  RatFuncQ() : den_(1) {}
  RatFuncQ(long c) : num_(c), den_(1) {}  // NOLINT(implicit)
  RatFuncQ(const QPoly& p) : num_(p), den_(1) { normalize(); }  // NOLINT(implicit)
  RatFuncQ(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("division by zero polynomial");
    normalize();
  }

  static RatFuncQ qpow(int k) { return RatFuncQ(QPoly::q(k)); }
  static RatFuncQ from_int(long c) { return RatFuncQ(c); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  // +-q^k (a unit of Z[q, 1/q])
  bool is_unit_monomial() const {
    return num_.is_monomial() && den_.is_monomial() && abs(num_.lead()) == 1 && den_.lead() == 1;
  }
  // total number of stored integer coefficients: a size measure for pivoting
  std::size_t weight() const { return num_.size() + den_.size(); }

  friend bool operator==(const RatFuncQ& a, const RatFuncQ& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFuncQ operator-() const {
    RatFuncQ r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFuncQ operator+(const RatFuncQ& a, const RatFuncQ& b) { return add(a, b, false); }
  friend RatFuncQ operator-(const RatFuncQ& a, const RatFuncQ& b) { return add(a, b, true); }
  friend RatFuncQ operator*(const RatFuncQ& a, const RatFuncQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_ == 1 && b.den_ == 1) return RatFuncQ(a.num_ * b.num_, 1, Raw{});
    // cross-cancel before multiplying to keep sizes small
    QPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    return RatFuncQ(divexact(a.num_, g1) * divexact(b.num_, g2),
                    divexact(a.den_, g2) * divexact(b.den_, g1));
  }
  friend RatFuncQ operator/(const RatFuncQ& a, const RatFuncQ& b) { return a * b.inverse(); }
  RatFuncQ& operator+=(const RatFuncQ& b) { return *this = *this + b; }
  RatFuncQ& operator-=(const RatFuncQ& b) { return *this = *this - b; }
  RatFuncQ& operator*=(const RatFuncQ& b) { return *this = *this * b; }
  RatFuncQ& operator/=(const RatFuncQ& b) { return *this = *this / b; }

  RatFuncQ inverse() const {
    if (is_zero()) throw std::domain_error("division by zero polynomial");
    RatFuncQ r;
    r.num_ = den_;
    r.den_ = num_;
    if (r.den_.lead() < 0) {
      r.num_ = -r.num_;
      r.den_ = -r.den_;
    }
    return r;
  }

  // value at q = qv in Z/pZ; throws if the denominator vanishes there
  std::uint64_t eval_mod(std::uint64_t qv, std::uint64_t qinv, std::uint64_t p) const {
    std::uint64_t d = den_.eval_mod(qv, qinv, p);
    if (d == 0) throw std::domain_error("denominator vanishes at evaluation point");
    return QPoly::mul_mod(num_.eval_mod(qv, qinv, p), QPoly::pow_mod(d, static_cast<long>(p - 2), p), p);
  }

  // "num/den" with both sides in sparse c*q^k form
  std::string str() const { return num_.str() + "/" + den_.str(); }
  static RatFuncQ parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return RatFuncQ(QPoly::parse(s));
    return RatFuncQ(QPoly::parse(s.substr(0, slash)), QPoly::parse(s.substr(slash + 1)));
  }
  friend std::ostream& operator<<(std::ostream& os, const RatFuncQ& x) { return os << x.str(); }

 private:
  struct Raw {};
  QPoly num_, den_;

  RatFuncQ(QPoly num, QPoly den, Raw) : num_(std::move(num)), den_(std::move(den)) { strip_q(); }

  static mpz_class abs(const mpz_class& x) { return x < 0 ? mpz_class(-x) : x; }

  // make both sides genuine polynomials with no common power of q
  void strip_q() {
    if (num_.is_zero()) {
      den_ = QPoly(1);
      return;
    }
    int k = std::min(num_.low(), den_.low());
    num_ = num_.shifted(-k);
    den_ = den_.shifted(-k);
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = QPoly(1);
      return;
    }
    strip_q();
    QPoly g = gcd(num_, den_);
    if (!(g == 1)) {
      num_ = divexact(num_, g);
      den_ = divexact(den_, g);
    }
    strip_q();
    if (den_.lead() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  static RatFuncQ add(const RatFuncQ& a, const RatFuncQ& b, bool sub) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return sub ? -b : b;
    if (a.den_ == b.den_) {
      QPoly n = sub ? a.num_ - b.num_ : a.num_ + b.num_;
      if (a.den_.is_monomial()) {
        // den = c q^k: only a content and q-power cancellation is possible
        RatFuncQ r;
        r.num_ = std::move(n);
        r.den_ = a.den_;
        r.normalize_monomial_den();
        return r;
      }
      return RatFuncQ(std::move(n), a.den_);
    }
    if (a.den_.is_monomial() && b.den_.is_monomial()) {
      // common denominator is a monomial as well
      int k = std::max(a.den_.low(), b.den_.low());
      mpz_class l;
      mpz_lcm(l.get_mpz_t(), a.den_.lead().get_mpz_t(), b.den_.lead().get_mpz_t());
      QPoly na = a.num_ * QPoly::monomial(l / a.den_.lead(), k - a.den_.low());
      QPoly nb = b.num_ * QPoly::monomial(l / b.den_.lead(), k - b.den_.low());
      RatFuncQ r;
      r.num_ = sub ? na - nb : na + nb;
      r.den_ = QPoly::monomial(l, k);
      r.normalize_monomial_den();
      return r;
    }
    QPoly g = gcd(a.den_, b.den_);
    QPoly ad = divexact(a.den_, g), bd = divexact(b.den_, g);
    QPoly n = sub ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
    return RatFuncQ(std::move(n), ad * b.den_);
  }

  void normalize_monomial_den() {
    if (num_.is_zero()) {
      den_ = QPoly(1);
      return;
    }
    mpz_class c = num_.content(), g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), den_.lead().get_mpz_t());
    if (g > 1) {
      num_.divexact_int(g);
      den_.divexact_int(g);
    }
    strip_q();
  }
};

}  // namespace qlzero
