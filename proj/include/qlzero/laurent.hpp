#pragma once

#include "qlzero/ratfunc.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlzero {

inline constexpr int kMaxVars = 8;

// Exponent vector of a monomial z_1^e_1 ... z_N^e_N (slots are 0-based).
struct Exps {
  std::array<std::int16_t, kMaxVars> e{};

  Exps() = default;
  Exps(std::initializer_list<int> xs) {
    int i = 0;
    for (int x : xs) e[i++] = static_cast<std::int16_t>(x);
  }
  static Exps from(const std::vector<int>& xs) {
    Exps r;
    for (std::size_t i = 0; i < xs.size(); ++i) r.e[i] = static_cast<std::int16_t>(xs[i]);
    return r;
  }
  int operator[](int i) const { return e[i]; }
  std::int16_t& operator[](int i) { return e[i]; }
  friend bool operator==(const Exps&, const Exps&) = default;
  friend auto operator<=>(const Exps&, const Exps&) = default;
  int total(int n) const {
    int s = 0;
    for (int i = 0; i < n; ++i) s += e[i];
    return s;
  }
  int min(int n) const {
    int m = e[0];
    for (int i = 1; i < n; ++i) m = std::min<int>(m, e[i]);
    return m;
  }
  int max(int n) const {
    int m = e[0];
    for (int i = 1; i < n; ++i) m = std::max<int>(m, e[i]);
    return m;
  }
  Exps operator+(const Exps& o) const {
    Exps r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::int16_t>(e[i] + o.e[i]);
    return r;
  }
  std::string str(int n) const {
    std::string s;
    for (int i = 0; i < n; ++i) s += (i ? " " : "") + std::to_string(e[i]);
    return s;
  }
};

struct ExpsHash {
  std::size_t operator()(const Exps& x) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : x.e) h = (h ^ static_cast<std::uint16_t>(v)) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

// Sparse Laurent polynomial in z_1..z_N over a coefficient field C
// (RatFuncQ or ModP). Terms are kept in lexicographic exponent order.
template <class C>
class LaurentPoly {
 public:
  using Terms = std::map<Exps, C>;

  LaurentPoly() = default;
  explicit LaurentPoly(int n) : n_(n) { check_arity(n); }
  static LaurentPoly constant(int n, const C& c) { return monomial(n, Exps{}, c); }
  static LaurentPoly monomial(int n, const Exps& e, const C& c = C(1)) {
    LaurentPoly r(n);
    if (!c.is_zero()) r.t_.emplace(e, c);
    return r;
  }
  static LaurentPoly var(int n, int j, const C& c = C(1)) {
    Exps e;
    e[j] = 1;
    return monomial(n, e, c);
  }

  int arity() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  C coeff(const Exps& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? C(0) : it->second;
  }

  void add_term(const Exps& e, const C& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.n_ == b.n_ && a.t_ == b.t_;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& b) {
    same_arity(b);
    for (const auto& [e, c] : b.t_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& b) {
    same_arity(b);
    for (const auto& [e, c] : b.t_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.same_arity(b);
    LaurentPoly r(a.n_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }
  friend LaurentPoly operator*(const C& s, const LaurentPoly& a) {
    LaurentPoly r(a.n_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : a.t_) r.t_.emplace_hint(r.t_.end(), e, s * c);
    return r;
  }
  LaurentPoly times_monomial(const Exps& m, const C& s = C(1)) const {
    LaurentPoly r(n_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : t_) r.t_.emplace_hint(r.t_.end(), e + m, s * c);
    return r;
  }

  // K_{j,k}: exchange z_j and z_k
  LaurentPoly swap(int j, int k) const {
    check_pair(j, k);
    LaurentPoly r(n_);
    for (const auto& [e, c] : t_) {
      Exps f = e;
      std::swap(f[j], f[k]);
      r.t_.emplace(f, c);
    }
    return r;
  }

  // g with (z_j - z_k) g = K_{j,k} f - f, computed monomial by monomial
  LaurentPoly divided_difference(int j, int k) const {
    check_pair(j, k);
    LaurentPoly r(n_);
    for (const auto& [e, c] : t_) {
      int a = e[j], b = e[k];
      if (a == b) continue;
      int lo = std::min(a, b), len = std::abs(a - b);
      C s = a > b ? -c : c;
      for (int i = 0; i < len; ++i) {
        Exps f = e;
        f[j] = static_cast<std::int16_t>(lo + i);
        f[k] = static_cast<std::int16_t>(lo + len - 1 - i);
        r.add_term(f, s);
      }
    }
    return r;
  }

  // f(.., q^k z_j, ..)
  LaurentPoly scale(int j, int k) const {
    check_index(j);
    LaurentPoly r(n_);
    for (const auto& [e, c] : t_) r.t_.emplace_hint(r.t_.end(), e, c * C::qpow(k * e[j]));
    return r;
  }

  // substitute z_j := q^s z_k and drop variable j (arity N-1)
  LaurentPoly specialize(int j, int k, int s) const {
    check_pair(j, k);
    LaurentPoly r(n_ - 1);
    for (const auto& [e, c] : t_) {
      Exps f;
      int o = 0;
      for (int i = 0; i < n_; ++i) {
        if (i == j) continue;
        f[o++] = static_cast<std::int16_t>(e[i] + (i == k ? e[j] : 0));
      }
      r.add_term(f, c * C::qpow(s * e[j]));
    }
    return r;
  }

  // variables permuted: result variable i carries old variable perm[i]
  LaurentPoly permuted(const std::vector<int>& perm) const {
    LaurentPoly r(static_cast<int>(perm.size()));
    for (const auto& [e, c] : t_) {
      Exps f;
      for (std::size_t i = 0; i < perm.size(); ++i) f[static_cast<int>(i)] = e[perm[i]];
      r.add_term(f, c);
    }
    return r;
  }

  // embed into a ring with more variables: old variable i -> new slot pos[i]
  LaurentPoly embedded(int n, const std::vector<int>& pos) const {
    LaurentPoly r(n);
    for (const auto& [e, c] : t_) {
      Exps f;
      for (int i = 0; i < n_; ++i) f[pos[i]] = e[i];
      r.add_term(f, c);
    }
    return r;
  }

  template <class D, class F>
  LaurentPoly<D> map_coeffs(F f) const {
    LaurentPoly<D> r(n_);
    for (const auto& [e, c] : t_) r.add_term(e, f(c));
    return r;
  }

  // text form: one term per line, "e1 ... eN : num/den"
  std::string serialize() const {
    std::ostringstream os;
    for (const auto& [e, c] : t_) os << e.str(n_) << " : " << c.str() << "\n";
    return os.str();
  }
  static LaurentPoly deserialize(int n, const std::string& text) {
    LaurentPoly r(n);
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      auto colon = line.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("malformed term line: " + line);
      std::istringstream es(line.substr(0, colon));
      Exps e;
      for (int i = 0; i < n; ++i) {
        int x;
        if (!(es >> x)) throw std::invalid_argument("missing exponent: " + line);
        e[i] = static_cast<std::int16_t>(x);
      }
      r.add_term(e, C::parse(line.substr(colon + 1)));
    }
    return r;
  }

 private:
  int n_ = 0;
  Terms t_;

  static void check_arity(int n) {
    if (n < 0 || n > kMaxVars) throw std::out_of_range("arity out of range");
  }
  void check_index(int j) const {
    if (j < 0 || j >= n_) throw std::out_of_range("variable index out of range");
  }
  void check_pair(int j, int k) const {
    check_index(j);
    check_index(k);
    if (j == k) throw std::out_of_range("variable indices must differ");
  }
  void same_arity(const LaurentPoly& b) const {
    if (b.n_ != n_) throw std::invalid_argument("arity mismatch");
  }
};

}  // namespace qlzero
