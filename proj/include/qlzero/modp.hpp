#pragma once

#include "qlzero/ratfunc.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlzero {

// Image of Q(q) in Z/pZ under q -> q0. Used only to pre-screen ranks and
// pivot orders; every verdict that is reported is recomputed with RatFuncQ.
struct ModField {
  std::uint64_t p = 2305843009213693951ULL;  // 2^61 - 1
  std::uint64_t q = 1234567891ULL;
  std::uint64_t qinv = 0;

  static ModField& current() {
    static thread_local ModField f = make(1234567891ULL);
    return f;
  }
  static ModField make(std::uint64_t qv, std::uint64_t prime = 2305843009213693951ULL) {
    ModField f;
    f.p = prime;
    f.q = qv % prime;
    f.qinv = QPoly::pow_mod(f.q, static_cast<long>(prime - 2), prime);
    return f;
  }
};

class ModP {
 public:
  ModP() = default;
  ModP(long c) {  // NOLINT(implicit)
    const auto p = static_cast<long long>(ModField::current().p);
    long long r = c % p;
    v_ = static_cast<std::uint64_t>(r < 0 ? r + p : r);
  }
  static ModP raw(std::uint64_t v) {
    ModP r;
    r.v_ = v;
    return r;
  }
  static ModP qpow(int k) {
    const auto& f = ModField::current();
    return raw(QPoly::pow_mod(k >= 0 ? f.q : f.qinv, k >= 0 ? k : -k, f.p));
  }
  static ModP from_int(long c) { return ModP(c); }
  static ModP from(const RatFuncQ& x) {
    const auto& f = ModField::current();
    return raw(x.eval_mod(f.q, f.qinv, f.p));
  }

  std::uint64_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_unit_monomial() const { return v_ != 0; }
  std::size_t weight() const { return 1; }

  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }
  ModP operator-() const { return raw(v_ == 0 ? 0 : P() - v_); }
  friend ModP operator+(ModP a, ModP b) {
    std::uint64_t s = a.v_ + b.v_;
    return raw(s >= P() ? s - P() : s);
  }
  friend ModP operator-(ModP a, ModP b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + P() - b.v_); }
  friend ModP operator*(ModP a, ModP b) { return raw(QPoly::mul_mod(a.v_, b.v_, P())); }
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  ModP& operator+=(ModP b) { return *this = *this + b; }
  ModP& operator-=(ModP b) { return *this = *this - b; }
  ModP& operator*=(ModP b) { return *this = *this * b; }
  ModP& operator/=(ModP b) { return *this = *this / b; }
  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in prime field");
    return raw(QPoly::pow_mod(v_, static_cast<long>(P() - 2), P()));
  }
  std::string str() const { return std::to_string(v_); }
  static ModP parse(const std::string& s) { return raw(std::stoull(s) % ModField::current().p); }

 private:
  std::uint64_t v_ = 0;
  static std::uint64_t P() { return ModField::current().p; }
};

}  // namespace qlzero
