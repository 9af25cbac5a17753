#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlzero {

// Laurent polynomial in q with integer coefficients: sum c[i] q^(low+i).
// Normalized: no leading or trailing zero coefficients; zero is empty.
class QPoly {
 public:
  QPoly() = default;
  QPoly(long c) {  // NOLINT(implicit)
    if (c != 0) c_.emplace_back(c);
  }
  QPoly(const mpz_class& c) {  // NOLINT(implicit)
    if (c != 0) c_.push_back(c);
  }
  QPoly(int low, std::vector<mpz_class> c) : low_(low), c_(std::move(c)) { trim(); }

  static QPoly monomial(const mpz_class& c, int k) {
    QPoly r(c);
    if (!r.is_zero()) r.low_ = k;
    return r;
  }
  static QPoly q(int k) { return monomial(1, k); }

  bool is_zero() const { return c_.empty(); }
  bool is_monomial() const { return c_.size() == 1; }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const mpz_class& lead() const { return c_.back(); }
  const mpz_class& trail() const { return c_.front(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(int k) const {
    if (is_zero() || k < low_ || k > high()) return 0;
    return c_[k - low_];
  }

  friend bool operator==(const QPoly& a, const QPoly& b) {
    return a.c_.size() == b.c_.size() && (a.c_.empty() || a.low_ == b.low_) && a.c_ == b.c_;
  }

  QPoly operator-() const {
    QPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  QPoly& operator+=(const QPoly& b) { return axpy(b, 1); }
  QPoly& operator-=(const QPoly& b) { return axpy(b, -1); }
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    QPoly r;
    r.low_ = a.low_ + b.low_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  QPoly& operator*=(const QPoly& b) { return *this = *this * b; }

  QPoly shifted(int k) const {
    QPoly r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
  }

  // gcd of the integer coefficients (positive; 0 for the zero polynomial)
  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }
  QPoly& divexact_int(const mpz_class& d) {
    for (auto& x : c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return *this;
  }

  // exact division in Z[q, 1/q]; throws if b does not divide a
  friend QPoly divexact(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return {};
    if (b.is_monomial()) {
      QPoly r = a;
      for (auto& x : r.c_) {
        if (!mpz_divisible_p(x.get_mpz_t(), b.c_[0].get_mpz_t()))
          throw std::logic_error("inexact polynomial division");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), b.c_[0].get_mpz_t());
      }
      r.low_ -= b.low_;
      return r;
    }
    std::vector<mpz_class> rem = a.c_;
    const std::size_t nb = b.c_.size();
    if (rem.size() < nb) throw std::logic_error("inexact polynomial division");
    std::vector<mpz_class> quo(rem.size() - nb + 1);
    mpz_class t;
    for (std::size_t i = quo.size(); i-- > 0;) {
      mpz_class& top = rem[i + nb - 1];
      if (top == 0) continue;
      if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t()))
        throw std::logic_error("inexact polynomial division");
      mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
      for (std::size_t j = 0; j < nb; ++j) rem[i + j] -= t * b.c_[j];
      quo[i] = t;
    }
    for (const auto& x : rem)
      if (x != 0) throw std::logic_error("inexact polynomial division");
    return QPoly(a.low_ - b.low_, std::move(quo));
  }

  // monic-free gcd in Z[q]: primitive pseudo-remainder sequence on the
  // polynomial parts (powers of q are units and are stripped)
  friend QPoly gcd(const QPoly& a, const QPoly& b) {
    if (a.is_zero()) return b.is_zero() ? QPoly{} : b.unit_normal();
    if (b.is_zero()) return a.unit_normal();
    if (a.is_monomial() || b.is_monomial()) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
      return QPoly(g);
    }
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    std::vector<mpz_class> u = a.primitive().c_, v = b.primitive().c_;
    if (u.size() < v.size()) std::swap(u, v);
    while (v.size() > 1) {
      prem(u, v);
      strip_zeros(u);
      if (u.empty()) break;
      make_primitive(u);
      std::swap(u, v);
    }
    if (u.empty()) {
      QPoly r(0, v);
      r.make_lead_positive();
      return r * QPoly(cg);
    }
    return QPoly(cg);  // v is a nonzero constant: coprime up to content
  }

  QPoly primitive() const {
    QPoly r = *this;
    mpz_class g = content();
    if (g > 1) r.divexact_int(g);
    r.low_ = 0;
    return r;
  }
  // primitive part with positive leading coefficient and low = 0
  QPoly unit_normal() const {
    QPoly r = primitive();
    r.make_lead_positive();
    return r.is_zero() ? r : r * QPoly(content());
  }

  // evaluation at an element of Z/pZ (p < 2^62)
  std::uint64_t eval_mod(std::uint64_t qv, std::uint64_t qinv, std::uint64_t p) const {
    if (is_zero()) return 0;
    unsigned __int128 acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = (acc * qv) % p;
      acc = (acc + mod_of(c_[i], p)) % p;
    }
    std::uint64_t base = static_cast<std::uint64_t>(acc);
    return mul_mod(base, pow_mod(low_ >= 0 ? qv : qinv, low_ >= 0 ? low_ : -low_, p), p);
  }

  // sparse text form: terms "c*q^k" joined by '+'/'-', highest power first
  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      std::string cs = c_[i].get_str();
      if (!s.empty() && cs[0] != '-') s += '+';
      s += cs + "*q^" + std::to_string(low_ + static_cast<int>(i));
    }
    return s;
  }
  static QPoly parse(const std::string& text) {
    std::string t;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t == "0" || t.empty()) return {};
    QPoly r;
    std::size_t i = 0;
    while (i < t.size()) {
      std::size_t j = i + 1;
      while (j < t.size() && t[j] != '+' && t[j] != '-') ++j;
      std::string term = t.substr(i, j - i);
      if (term[0] == '+') term.erase(0, 1);
      auto star = term.find("*q^");
      if (star == std::string::npos) {
        r += QPoly(mpz_class(term));
      } else {
        r += monomial(mpz_class(term.substr(0, star)), std::stoi(term.substr(star + 3)));
      }
      i = j;
    }
    return r;
  }

  static std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  static std::uint64_t pow_mod(std::uint64_t a, long e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e > 0) {
      if (e & 1) r = mul_mod(r, a, p);
      a = mul_mod(a, a, p);
      e >>= 1;
    }
    return r;
  }
  static std::uint64_t mod_of(const mpz_class& x, std::uint64_t p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
    return r.get_ui();
  }

 private:
  int low_ = 0;
  std::vector<mpz_class> c_;

  void trim() {
    std::size_t b = 0;
    while (b < c_.size() && c_[b] == 0) ++b;
    if (b == c_.size()) {
      c_.clear();
      low_ = 0;
      return;
    }
    while (c_.back() == 0) c_.pop_back();
    if (b) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(b));
      low_ += static_cast<int>(b);
    }
  }
  void make_lead_positive() {
    if (!c_.empty() && c_.back() < 0)
      for (auto& x : c_) x = -x;
  }
  QPoly& axpy(const QPoly& b, int sign) {
    if (b.is_zero()) return *this;
    if (is_zero()) {
      *this = sign > 0 ? b : -b;
      return *this;
    }
    int lo = std::min(low_, b.low_), hi = std::max(high(), b.high());
    if (lo < low_) c_.insert(c_.begin(), static_cast<std::size_t>(low_ - lo), mpz_class(0));
    low_ = lo;
    c_.resize(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      auto& x = c_[static_cast<std::size_t>(b.low_ - lo) + j];
      if (sign > 0) x += b.c_[j];
      else x -= b.c_[j];
    }
    trim();
    return *this;
  }
  static void strip_zeros(std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  }
  static void make_primitive(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  // u <- pseudo-remainder of u by v (dense, low = 0)
  static void prem(std::vector<mpz_class>& u, const std::vector<mpz_class>& v) {
    const std::size_t nv = v.size();
    const mpz_class& lv = v.back();
    while (u.size() >= nv) {
      mpz_class lu = u.back();
      std::size_t shift = u.size() - nv;
      for (auto& x : u) x *= lv;
      for (std::size_t j = 0; j < nv; ++j) u[shift + j] -= lu * v[j];
      strip_zeros(u);
    }
  }
};

}  // namespace qlzero
