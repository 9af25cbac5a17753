#pragma once

#include "qlzero/eta.hpp"
#include "qlzero/laurent.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlzero {

// Sign string eps_1..eps_N packed as a bit mask: bit i set <=> eps_i = +.
using Signs = std::uint32_t;

inline int sign_at(Signs s, int i) { return (s >> i) & 1U ? 1 : -1; }
inline Signs with_sign(Signs s, int i, int e) { return e > 0 ? (s | (1U << i)) : (s & ~(1U << i)); }
inline int sign_sum(Signs s, int n) {
  int w = 0;
  for (int i = 0; i < n; ++i) w += sign_at(s, i);
  return w;
}
inline Signs signs_from(const std::string& pm) {
  Signs s = 0;
  for (std::size_t i = 0; i < pm.size(); ++i)
    if (pm[i] == '+') s |= 1U << i;
  return s;
}
inline std::string signs_str(Signs s, int n) {
  std::string r;
  for (int i = 0; i < n; ++i) r += sign_at(s, i) > 0 ? '+' : '-';
  return r;
}
// remove slots j and j+1
inline Signs signs_drop_pair(Signs s, int j) {
  Signs lo = s & ((1U << j) - 1U);
  Signs hi = s >> (j + 2);
  return lo | (hi << j);
}

// Element of V^{(x)N} with Laurent coefficients: sum_eps v_eps (x) c_eps(z).
// Slot count and variable count are separate (fusion keeps a spectator).
// Element convention: v_eps z^n stands for v_{eps,n} of the affinization.
template <class C>
class TensorPoly {
 public:
  using Poly = LaurentPoly<C>;

  TensorPoly() = default;
  TensorPoly(int slots, int vars) : slots_(slots), vars_(vars) {}
  static TensorPoly basis(int slots, int vars, Signs s, const Poly& f) {
    TensorPoly r(slots, vars);
    r.add(s, f);
    return r;
  }
  static TensorPoly basis(const std::string& pm, const Poly& f) {
    return basis(static_cast<int>(pm.size()), f.arity(), signs_from(pm), f);
  }

  int slots() const { return slots_; }
  int vars() const { return vars_; }
  const std::map<Signs, Poly>& components() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Poly component(Signs s) const {
    auto it = c_.find(s);
    return it == c_.end() ? Poly(vars_) : it->second;
  }

  void add(Signs s, const Poly& f) {
    if (f.is_zero()) return;
    auto [it, fresh] = c_.try_emplace(s, f);
    if (!fresh) {
      it->second += f;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  friend bool operator==(const TensorPoly& a, const TensorPoly& b) {
    return a.slots_ == b.slots_ && a.vars_ == b.vars_ && a.c_ == b.c_;
  }
  TensorPoly& operator+=(const TensorPoly& b) {
    for (const auto& [s, f] : b.c_) add(s, f);
    return *this;
  }
  TensorPoly& operator-=(const TensorPoly& b) {
    for (const auto& [s, f] : b.c_) add(s, -f);
    return *this;
  }
  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
  friend TensorPoly operator*(const C& k, const TensorPoly& a) {
    TensorPoly r(a.slots_, a.vars_);
    for (const auto& [s, f] : a.c_) r.add(s, k * f);
    return r;
  }
  // multiply every coefficient by a polynomial
  TensorPoly times(const Poly& g) const {
    TensorPoly r(slots_, vars_);
    for (const auto& [s, f] : c_) r.add(s, f * g);
    return r;
  }

  // apply an operator to every coefficient polynomial (slots untouched)
  template <class F>
  TensorPoly map_coeffs(F op) const {
    TensorPoly r(slots_, vars_);
    for (const auto& [s, f] : c_) r.add(s, op(f));
    return r;
  }
  // apply a linear map on sign strings: op(s) -> list of (s', scalar)
  template <class F>
  TensorPoly map_signs(F op) const {
    TensorPoly r(slots_, vars_);
    for (const auto& [s, f] : c_)
      for (const auto& [s2, k] : op(s)) r.add(s2, k * f);
    return r;
  }

 private:
  int slots_ = 0, vars_ = 0;
  std::map<Signs, Poly> c_;
};

// ---- the two-dimensional module V and its affinization ----

inline Exps unit_exp(int j, int v) {
  Exps e;
  e[j] = static_cast<std::int16_t>(v);
  return e;
}


enum class UqGen { e1, f1, t1, t1inv, e0, f0, qd };

inline UqGen uq_gen_from(const std::string& s) {
  static const std::map<std::string, UqGen> m{{"e1", UqGen::e1}, {"f1", UqGen::f1}, {"t1", UqGen::t1},
                                             {"t1inv", UqGen::t1inv}, {"e0", UqGen::e0}, {"f0", UqGen::f0},
                                             {"qd", UqGen::qd}};
  auto it = m.find(s);
  if (it == m.end()) throw std::invalid_argument("unknown generator tag: " + s);
  return it->second;
}

// opposite-coproduct action on N slots:
//   Dop(e) = sum_j pi_j(e) pi_{j+1}(t) .. pi_N(t)
//   Dop(f) = sum_j pi_1(t^-1) .. pi_{j-1}(t^-1) pi_j(f)
// with e0 = z f1-like (e0 v_{+,n} = v_{-,n+1}), t0 = t1^{-1}, f0 = z^{-1} e1-like.
template <class C>
TensorPoly<C> uq_apply(UqGen g, const TensorPoly<C>& x) {
  const int n = x.slots();
  using P = LaurentPoly<C>;
  if (g == UqGen::t1 || g == UqGen::t1inv) {
    const int sg = g == UqGen::t1 ? 1 : -1;
    return x.map_signs([&](Signs s) {
      return std::vector<std::pair<Signs, C>>{{s, C::qpow(sg * sign_sum(s, n))}};
    });
  }
  if (g == UqGen::qd) {
    // q^d v_{eps,n} = q^n v_{eps,n}: z_j -> q z_j in every variable
    return x.map_coeffs([&](const P& f) {
      P r = f;
      for (int j = 0; j < f.arity(); ++j) r = r.scale(j, 1);
      return r;
    });
  }
  TensorPoly<C> r(n, x.vars());
  for (const auto& [s, f] : x.components()) {
    for (int j = 0; j < n; ++j) {
      const int e = sign_at(s, j);
      if (g == UqGen::e1 || g == UqGen::f0) {
        if (e != -1) continue;
        // e1: pi_j(e) pi_{j+1}(t) .. pi_N(t)
        C k(1);
        if (g == UqGen::e1) {
          for (int i = j + 1; i < n; ++i) k *= C::qpow(sign_at(s, i));
          r.add(with_sign(s, j, 1), k * f);
        } else {
          // f0 = Dop(f0) = sum_j pi_1(t0^{-1}) .. pi_{j-1}(t0^{-1}) pi_j(f0), t0^{-1} = t1
          for (int i = 0; i < j; ++i) k *= C::qpow(sign_at(s, i));
          r.add(with_sign(s, j, 1), k * f.times_monomial(unit_exp(j, -1)));
        }
      } else if (g == UqGen::f1 || g == UqGen::e0) {
        if (e != 1) continue;
        C k(1);
        if (g == UqGen::f1) {
          for (int i = 0; i < j; ++i) k *= C::qpow(-sign_at(s, i));
          r.add(with_sign(s, j, -1), k * f);
        } else {
          // e0: pi_j(e0) pi_{j+1}(t0) .. pi_N(t0), t0 = t1^{-1}
          for (int i = j + 1; i < n; ++i) k *= C::qpow(-sign_at(s, i));
          r.add(with_sign(s, j, -1), k * f.times_monomial(unit_exp(j, 1)));
        }
      }
    }
  }
  return r;
}

// Components with eps_j + eps_{j+1} = 0, slots j, j+1 removed; the (+,-)
// channel is weighted by w_pm and the (-,+) channel by w_mp.
template <class C>
TensorPoly<C> singlet_contract(const TensorPoly<C>& x, int j, const C& w_pm = C(1), const C& w_mp = C(1)) {
  if (x.slots() < 2) throw std::invalid_argument("singlet_contract needs arity >= 2");
  if (j < 0 || j + 1 >= x.slots()) throw std::out_of_range("slot index out of range");
  TensorPoly<C> r(x.slots() - 2, x.vars());
  for (const auto& [s, f] : x.components()) {
    const int a = sign_at(s, j), b = sign_at(s, j + 1);
    if (a + b != 0) continue;
    r.add(signs_drop_pair(s, j), (a > 0 ? w_pm : w_mp) * f);
  }
  return r;
}

struct GradedSlot {
  int weight = 0;
  int degree = 0;
  friend auto operator<=>(const GradedSlot&, const GradedSlot&) = default;
};

// weight = sum of eps, degree = minus the total exponent (v_{eps,n} has degree -n)
template <class C>
std::set<GradedSlot> weight_degree(const TensorPoly<C>& x) {
  std::set<GradedSlot> r;
  for (const auto& [s, f] : x.components())
    for (const auto& [e, c] : f.terms()) r.insert({sign_sum(s, x.slots()), -e.total(f.arity())});
  return r;
}

// kappa_j = (N - j - p_j + p_N)/2 with p_j = 0 if j = N mod 2 else 1 (1-based j)
inline std::vector<int> kappa(int N) {
  std::vector<int> k;
  for (int j = 1; j <= N; ++j) {
    int pj = ((j - N) % 2 == 0) ? 0 : 1;
    k.push_back((N - j - pj) / 2);
  }
  return k;
}
inline int kappa_sum(int N) {
  int s = 0;
  for (int x : kappa(N)) s += x;
  return s;
}

// lattice depth of an exponent shift f in span{e_k - e_j}: sum of partial sums
inline int lattice_depth(const Exps& f, int n) {
  int depth = 0, partial = 0;
  for (int i = 0; i + 1 < n; ++i) {
    partial -= f[i];
    depth += partial;
  }
  return depth;
}

// Forward: F_{eps,m} as a sum of v_{eps,n}, n in m + kappa + Z_{+,N}, from
// the coefficient of z^{-m} in z^kappa prod_{j<k} eta(z_k/z_j)^{-1} v(z).
// Backward: v_{eps,n} as a sum of F_{eps,m}, m in n - kappa + Z_{+,N}, using
// prod eta(z_k/z_j). Terms are kept up to lattice depth D. The result is a
// TensorPoly in element convention (z^n stands for v_{eps,n} or F_{eps,n}).
enum class BasisDir { forward, backward };

inline TensorPoly<RatFuncQ> basis_change_F_monomial(BasisDir dir, int N, Signs eps, const Exps& m, int D) {
  using P = LaurentPoly<RatFuncQ>;
  EtaSeries eta = eta_expand(D, dir == BasisDir::forward);
  P series = P::constant(N, RatFuncQ(1));
  for (int j = 0; j < N; ++j)
    for (int k = j + 1; k < N; ++k) {
      P factor(N);
      for (int a = 0; a <= D; ++a) {
        Exps f;
        f[j] = static_cast<std::int16_t>(-a);
        f[k] = static_cast<std::int16_t>(a);
        if (lattice_depth(f, N) > D) break;
        factor.add_term(f, eta.coeffs[a]);
      }
      P next(N);
      for (const auto& [e1, c1] : series.terms())
        for (const auto& [e2, c2] : factor.terms()) {
          Exps e = e1 + e2;
          if (lattice_depth(e, N) <= D) next.add_term(e, c1 * c2);
        }
      series = next;
    }
  // series = sum_f c_f z^f (f a lattice shift); forward: z^kappa z^f v_n z^{-n}
  // contributes to z^{-m} iff n = m + kappa + f; backward is the inverse map.
  auto kap = kappa(N);
  P out(N);
  for (const auto& [f, c] : series.terms()) {
    Exps n;
    for (int i = 0; i < N; ++i)
      n[i] = static_cast<std::int16_t>(dir == BasisDir::forward ? m[i] + kap[i] + f[i] : m[i] - kap[i] + f[i]);
    out.add_term(n, c);
  }
  return TensorPoly<RatFuncQ>::basis(N, N, eps, out);
}

}  // namespace qlzero
