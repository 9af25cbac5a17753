#pragma once

#include "qlzero/locality.hpp"
#include "qlzero/tensor.hpp"
#include "qlzero/window.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace qlzero {

// Symbol F_{eps,m} of the N-spinon sector, stored by e = -m (e >= 0 on the
// non-positive-mode cone). Degree d = sum(e).
struct Sym {
  int N = 0;
  Signs eps = 0;
  Exps e;

  int degree() const { return e.total(N); }
  friend bool operator==(const Sym& a, const Sym& b) { return a.N == b.N && a.eps == b.eps && a.e == b.e; }
  friend bool operator<(const Sym& a, const Sym& b) {
    return std::tie(a.N, a.eps, a.e) < std::tie(b.N, b.eps, b.e);
  }
  std::string str() const {
    std::string m;
    for (int i = 0; i < N; ++i) m += (i ? "," : "") + std::to_string(-e[i]);
    return "F[" + signs_str(eps, N) + ";" + m + "]";
  }
};

template <class C>
using SymVec = std::map<Sym, C>;

template <class C>
void sv_add(SymVec<C>& v, const Sym& s, const C& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = v.try_emplace(s, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}
template <class C>
void sv_axpy(SymVec<C>& v, const C& a, const SymVec<C>& x) {
  for (const auto& [s, c] : x) sv_add(v, s, a * c);
}
template <class C>
SymVec<C> sv_sub(SymVec<C> a, const SymVec<C>& b) {
  sv_axpy(a, C(-1), b);
  return a;
}
template <class C>
SymVec<C> sv_scale(const C& a, const SymVec<C>& x) {
  SymVec<C> r;
  sv_axpy(r, a, x);
  return r;
}
template <class C>
SymVec<C> sv_unit(const Sym& s) {
  return SymVec<C>{{s, C(1)}};
}

// e in Z^n with sum d and every entry >= lo (lo = -H: modes up to H)
inline std::vector<Exps> compositions(int d, int n, int lo = 0) {
  std::vector<Exps> out;
  const int shifted = d - n * lo;
  if (shifted < 0) return out;
  for_each_composition(shifted, n, [&](const Exps& e) {
    Exps x = e;
    for (int i = 0; i < n; ++i) x[i] = static_cast<std::int16_t>(e[i] + lo);
    out.push_back(x);
  });
  return out;
}

inline std::vector<Signs> signs_of_weight(int N, int w) {
  std::vector<Signs> out;
  for (Signs s = 0; s < (1U << N); ++s)
    if (sign_sum(s, N) == w) out.push_back(s);
  return out;
}

inline std::vector<Sym> sector_symbols(int N, int w, int d, int lo = 0) {
  std::vector<Sym> out;
  const auto cs = compositions(d, N, lo);
  for (Signs s : signs_of_weight(N, w))
    for (const auto& e : cs) out.push_back({N, s, e});
  return out;
}

// Transposed monomial matrix of a function-direction operator X restricted
// to the shifted cone e >= lo: hat(X) F_n = sum_m [z^n] X(z^m) F_m. X must
// preserve total degree and map the shifted cone into itself; symbols with a
// mode above -lo are dropped (HWT for lo = 0, filtration tail otherwise).
// Rows are cached per (key, N, d, lo).
template <class C>
class HatCache {
 public:
  using P = LaurentPoly<C>;
  using Row = std::vector<std::pair<Exps, C>>;
  using Matrix = std::map<Exps, Row>;
  using Fn = std::function<P(const P&)>;

  const Matrix& get(const std::string& key, int N, int d, const Fn& fn, int lo = 0) {
    std::lock_guard<std::mutex> g(m_);
    auto k = std::make_tuple(key, N, d, lo);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    Matrix M;
    int worst = 0;
    for (const auto& m : compositions(d, N, lo)) {
      P img = fn(P::monomial(N, m));
      // locality: the max mode (max of -exponent) of the image never exceeds the input's
      for (const auto& [n, c] : img.terms()) worst = std::max(worst, m.min(N) - n.min(N));
      for (const auto& [n, c] : img.terms()) {
        if (n.min(N) < lo) continue;
        if (n.total(N) != d) throw std::logic_error("hat operator does not preserve degree: " + key);
        M[n].emplace_back(m, c);
      }
    }
    const std::string op = "hat " + key.substr(0, key.find_first_of("0123456789"));
    LocalityLedger::instance().declare(op, 0);
    LocalityLedger::instance().observe(op, worst);
    return cache_.emplace(k, std::move(M)).first->second;
  }
  std::size_t size() const {
    std::lock_guard<std::mutex> g(m_);
    return cache_.size();
  }

 private:
  mutable std::mutex m_;
  std::map<std::tuple<std::string, int, int, int>, Matrix> cache_;
};

// Apply hat(X) to every symbol of v (X acts on the coefficient variables only)
template <class C>
SymVec<C> hat_apply(HatCache<C>& cache, const std::string& key, const typename HatCache<C>::Fn& fn,
                    const SymVec<C>& v, int lo = 0) {
  SymVec<C> r;
  for (const auto& [s, c] : v) {
    const auto& M = cache.get(key, s.N, s.degree(), fn, lo);
    auto it = M.find(s.e);
    if (it == M.end()) continue;
    for (const auto& [m, a] : it->second) sv_add(r, Sym{s.N, s.eps, m}, c * a);
  }
  return r;
}

// Apply a linear map on sign strings (S, f1, e1, ...) to every symbol
template <class C, class F>
SymVec<C> sign_apply(const SymVec<C>& v, F op) {
  SymVec<C> r;
  for (const auto& [s, c] : v)
    for (const auto& [t, a] : op(s.N, s.eps)) sv_add(r, Sym{s.N, t, s.e}, c * a);
  return r;
}

// conversions between symbol vectors of one sector and TensorPoly
template <class C>
TensorPoly<C> to_tensor(const SymVec<C>& v, int N) {
  TensorPoly<C> x(N, N);
  for (const auto& [s, c] : v) {
    if (s.N != N) throw std::invalid_argument("to_tensor: mixed sectors");
    x.add(s.eps, LaurentPoly<C>::monomial(N, s.e, c));
  }
  return x;
}
template <class C>
SymVec<C> from_tensor(const TensorPoly<C>& x) {
  SymVec<C> v;
  for (const auto& [s, f] : x.components())
    for (const auto& [e, c] : f.terms()) sv_add(v, Sym{x.slots(), s, e}, c);
  return v;
}

template <class C>
std::string sv_str(const SymVec<C>& v) {
  std::string out;
  for (const auto& [s, c] : v) out += (out.empty() ? "" : " + ") + std::string("(") + c.str() + ")" + s.str();
  return out.empty() ? "0" : out;
}

}  // namespace qlzero
