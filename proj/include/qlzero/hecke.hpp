#pragma once

#include "qlzero/locality.hpp"
#include "qlzero/report.hpp"
#include "qlzero/tensor.hpp"
#include "qlzero/window.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qlzero {

template <class C>
using SignImage = std::vector<std::pair<Signs, C>>;

// S on slots (j, j+1):
//   S v_e v_e = -q^-1 v_e v_e,  S v+v- = (q-q^-1) v+v- - v-v+,  S v-v+ = -v+v-
template <class C>
SignImage<C> S_on(Signs s, int j, int exponent = 1) {
  const int a = sign_at(s, j), b = sign_at(s, j + 1);
  const C qq = C::qpow(1) - C::qpow(-1);
  SignImage<C> r;
  if (a == b) {
    // S^-1 = S - (q - q^-1)
    r.emplace_back(s, exponent > 0 ? -C::qpow(-1) : -C::qpow(-1) - qq);
  } else if (a > 0) {
    if (exponent > 0) r.emplace_back(s, qq);
    r.emplace_back(with_sign(with_sign(s, j, -1), j + 1, 1), C(-1));
  } else {
    r.emplace_back(with_sign(with_sign(s, j, 1), j + 1, -1), C(-1));
    if (exponent < 0) r.emplace_back(s, -qq);
  }
  return r;
}

template <class C>
TensorPoly<C> S_apply(const TensorPoly<C>& x, int j, int exponent = 1) {
  if (j < 0 || j + 1 >= x.slots()) throw std::out_of_range("S slot index out of range");
  return x.map_signs([&](Signs s) { return S_on<C>(s, j, exponent); });
}

// G^{+-1}_{j,k} f = (q^-1 z_j - q z_k) (K_{j,k} f - f)/(z_j - z_k) + q^{+-1} f
template <class C>
LaurentPoly<C> G_apply(const LaurentPoly<C>& f, int j, int k, int exponent = 1) {
  using P = LaurentPoly<C>;
  P dd = f.divided_difference(j, k);
  P r = C::qpow(exponent > 0 ? 1 : -1) * f;
  r += dd.times_monomial(unit_exp(j, 1), C::qpow(-1));
  r -= dd.times_monomial(unit_exp(k, 1), C::qpow(1));
  return r;
}

template <class C>
TensorPoly<C> G_apply(const TensorPoly<C>& x, int j, int k, int exponent = 1) {
  return x.map_coeffs([&](const LaurentPoly<C>& f) { return G_apply(f, j, k, exponent); });
}

// R-matrix table with spectral argument z = z_b / z_a, cleared by the
// denominator (1 - q^2 z) z_a = z_a - q^2 z_b. Acts on tensor slots (s1, s2).
template <class C>
TensorPoly<C> R_numerator(const TensorPoly<C>& x, int s1, int s2, int a, int b) {
  using P = LaurentPoly<C>;
  const int nv = x.vars();
  const P za = P::var(nv, a), zb = P::var(nv, b);
  const C q2 = C::qpow(2), q1 = C::qpow(1);
  const P same = zb - q2 * za;
  const P diag_pm = (C(1) - q2) * zb;
  const P diag_mp = (C(1) - q2) * za;
  const P off = q1 * (zb - za);
  TensorPoly<C> r(x.slots(), nv);
  for (const auto& [s, f] : x.components()) {
    const int e1 = sign_at(s, s1), e2 = sign_at(s, s2);
    if (e1 == e2) {
      r.add(s, same * f);
      continue;
    }
    Signs flipped = with_sign(with_sign(s, s1, e2), s2, e1);
    if (e1 > 0) {
      r.add(s, diag_pm * f);
      r.add(flipped, off * f);
    } else {
      r.add(flipped, off * f);
      r.add(s, diag_mp * f);
    }
  }
  return r;
}

template <class C>
LaurentPoly<C> R_denominator(int nv, int a, int b) {
  using P = LaurentPoly<C>;
  return P::var(nv, a) - C::qpow(2) * P::var(nv, b);
}

// (S z_b - S^{-1} z_a) x, the cleared right side of (RS)
template <class C>
TensorPoly<C> RS_numerator(const TensorPoly<C>& x, int j, int a, int b) {
  using P = LaurentPoly<C>;
  const int nv = x.vars();
  return S_apply(x, j, 1).times(P::var(nv, b)) - S_apply(x, j, -1).times(P::var(nv, a));
}

// all basis tensors v_s with constant coefficient 1
template <class C>
std::vector<TensorPoly<C>> tensor_basis(int n, int vars) {
  std::vector<TensorPoly<C>> out;
  for (Signs s = 0; s < (1U << n); ++s)
    out.push_back(TensorPoly<C>::basis(n, vars, s, LaurentPoly<C>::constant(vars, C(1))));
  return out;
}

template <class C>
long count_nonzero(const std::vector<TensorPoly<C>>& xs) {
  long k = 0;
  for (const auto& x : xs) k += !x.is_zero();
  return k;
}

// Observe the Lemma-6 shape of G on one monomial: mode sum of the pair is
// preserved and the max mode of the pair does not grow. Returns the
// increase of max mode (<= 0 when the shape holds).
template <class C>
int G_locality_shift(const Exps& e, int j, int k, int n) {
  LaurentPoly<C> img = G_apply(LaurentPoly<C>::monomial(n, e), j, k, 1);
  int worst = -1000;
  const int mmax = std::max(-e[j], -e[k]);
  for (const auto& [f, c] : img.terms()) {
    if (f[j] + f[k] != e[j] + e[k]) return 1000;
    worst = std::max(worst, std::max(-f[j], -f[k]) - mmax);
  }
  return img.is_zero() ? 0 : worst;
}

// e1 and f1 kill the singlet, t1 fixes it (returns the residuals)
template <class C>
std::vector<TensorPoly<C>> uq_singlet_checks() {
  using T = TensorPoly<C>;
  using P = LaurentPoly<C>;
  T sing = T::basis(2, 1, signs_from("+-"), P::constant(1, C(1))) -
           T::basis(2, 1, signs_from("-+"), P::constant(1, C::qpow(-1)));
  return {uq_apply(UqGen::e1, sing), uq_apply(UqGen::f1, sing), uq_apply(UqGen::t1, sing) - sing};
}

// Relations (Hecke1-3) for S and for G, (RS), Yang-Baxter, (Seig),
// [S, Dop(x)] = 0 and (SFREL). S-side checks use the full tensor basis of
// N slots; G-side checks use every monomial of the window.
template <class C>
CheckReport hecke_suite(int N, const Window& win) {
  using T = TensorPoly<C>;
  using P = LaurentPoly<C>;
  CheckReport rep;
  const std::string pre = "hecke/N" + std::to_string(N) + "/";
  const C qq = C::qpow(1) - C::qpow(-1);

  {  // S: Hecke1-3 on the full basis
    Stopwatch sw;
    long bad = 0;
    auto basis = tensor_basis<C>(N, 1);
    for (const auto& x : basis)
      for (int j = 0; j + 1 < N; ++j) {
        bad += !(S_apply(x, j, 1) - S_apply(x, j, -1) - qq * x).is_zero();
        for (int k = j + 2; k + 1 < N; ++k)
          bad += !(S_apply(S_apply(x, k), j) - S_apply(S_apply(x, j), k)).is_zero();
        if (j + 2 < N)
          bad += !(S_apply(S_apply(S_apply(x, j), j + 1), j) - S_apply(S_apply(S_apply(x, j + 1), j), j + 1))
                      .is_zero();
      }
    rep.add(make_record(pre + "S-hecke", "S: quadratic, far commutation, braid", "(Hecke1)-(Hecke3)", bad, sw,
                        {{"basis", basis.size()}}));
  }
  {  // G: Hecke1-3 on the window, plus the Lemma-6 locality shape
    Stopwatch sw;
    long bad = 0;
    const int gn = std::min(N, 4);
    Window w = win;
    w.N = gn;
    auto mons = w.exps();
    int worst = -1000;
    for (const auto& e : mons) {
      P f = P::monomial(gn, e);
      for (int j = 0; j + 1 < gn; ++j) {
        bad += !(G_apply(f, j, j + 1, 1) - G_apply(f, j, j + 1, -1) - qq * f).is_zero();
        bad += !(G_apply(G_apply(f, j, j + 1, -1), j, j + 1, 1) - f).is_zero();
        for (int k = j + 2; k + 1 < gn; ++k)
          bad += !(G_apply(G_apply(f, k, k + 1), j, j + 1) - G_apply(G_apply(f, j, j + 1), k, k + 1)).is_zero();
        if (j + 2 < gn) {
          P l = G_apply(G_apply(G_apply(f, j, j + 1), j + 1, j + 2), j, j + 1);
          P r = G_apply(G_apply(G_apply(f, j + 1, j + 2), j, j + 1), j + 1, j + 2);
          bad += !(l - r).is_zero();
        }
        worst = std::max(worst, G_locality_shift<C>(e, j, j + 1, gn));
      }
    }
    LocalityLedger::instance().declare("G", 0);
    LocalityLedger::instance().observe("G", worst);
    rep.add(make_record(pre + "G-hecke", "G: quadratic, inverse, far commutation, braid", "(Hecke1)-(Hecke3), (G)",
                        bad, sw, {{"N", gn}, {"window", w.str()}, {"monomials", mons.size()}, {"max_mode_shift", worst}}));
  }
  {  // (RS): table R matches (S z - S^-1)/(q z - q^-1), cross-multiplied
    Stopwatch sw;
    long bad = 0;
    for (const auto& x : tensor_basis<C>(2, 2)) {
      // R = Num / (z_1 - q^2 z_2) and (q z_2 - q^-1 z_1) R = S z_2 - S^-1 z_1
      T lhs = R_numerator(x, 0, 1, 0, 1).times(C::qpow(1) * P::var(2, 1) - C::qpow(-1) * P::var(2, 0));
      T rhs = RS_numerator(x, 0, 0, 1).times(R_denominator<C>(2, 0, 1));
      bad += !(lhs - rhs).is_zero();
    }
    // R(1) acts as identity on the singlet: numerator at z_2 = z_1 equals denominator there
    T sing = T::basis(2, 2, signs_from("+-"), P::constant(2, C(1))) -
             T::basis(2, 2, signs_from("-+"), P::constant(2, C::qpow(-1)));
    T at1 = R_numerator(sing, 0, 1, 0, 1).map_coeffs([](const P& f) { return f.specialize(1, 0, 0); });
    T den1 = sing.map_coeffs([](const P& f) { return f.specialize(1, 0, 0); })
                 .times(R_denominator<C>(2, 0, 1).specialize(1, 0, 0));
    bad += !(at1 - den1).is_zero();
    rep.add(make_record(pre + "RS", "R-matrix table equals (Sz - S^-1)/(qz - q^-1)", "(RS)", bad, sw));
  }
  {  // Yang-Baxter on slots (0,1,2) with variables z_1, z_2, z_3, cross-multiplied
    Stopwatch sw;
    long bad = 0;
    if (N >= 3) {
      for (const auto& x : tensor_basis<C>(3, 3)) {
        // R_{12}(z2/z1) R_{23}(z3/z1) R_{12}(z3/z2) vs R_{23}(z3/z2) R_{12}(z3/z1) R_{23}(z2/z1);
        // the denominators on both sides are the same three factors
        T l = R_numerator(R_numerator(R_numerator(x, 0, 1, 1, 2), 1, 2, 0, 2), 0, 1, 0, 1);
        T r = R_numerator(R_numerator(R_numerator(x, 1, 2, 0, 1), 0, 1, 0, 2), 1, 2, 1, 2);
        bad += !(l - r).is_zero();
      }
    }
    CheckRecord rec = make_record(pre + "YBE", "Yang-Baxter equation (cross-multiplied)", "Yang-Baxter, sec. 2.4",
                                  bad, sw);
    if (N < 3) rec.status = Status::skipped;
    rep.add(rec);
  }
  {  // (Seig): S = q on the singlet, -q^-1 on the triplet; projectors idempotent
    Stopwatch sw;
    long bad = 0;
    T pp = T::basis(2, 1, signs_from("++"), P::constant(1, C(1)));
    T sing = T::basis(2, 1, signs_from("+-"), P::constant(1, C(1))) -
             T::basis(2, 1, signs_from("-+"), P::constant(1, C::qpow(-1)));
    std::vector<T> triplet{pp, uq_apply(UqGen::f1, pp), uq_apply(UqGen::f1, uq_apply(UqGen::f1, pp))};
    bad += !(S_apply(sing, 0) - C::qpow(1) * sing).is_zero();
    for (const auto& t : triplet) bad += !(S_apply(t, 0) + C::qpow(-1) * t).is_zero();
    const C norm = (C::qpow(1) + C::qpow(-1)).inverse();
    auto P1 = [&](const T& x) { return norm * (S_apply(x, 0) + C::qpow(-1) * x); };
    auto P3 = [&](const T& x) { return norm * (C::qpow(1) * x - S_apply(x, 0)); };
    for (const auto& x : tensor_basis<C>(2, 1)) {
      bad += !(P1(P1(x)) - P1(x)).is_zero();
      bad += !(P3(P3(x)) - P3(x)).is_zero();
      bad += !(P1(x) + P3(x) - x).is_zero();
    }
    for (const auto& x : uq_singlet_checks<C>()) bad += !x.is_zero();
    rep.add(make_record(pre + "Seig", "S eigenvalues and projectors; singlet is trivial", "(Seig), (sing)", bad, sw));
  }
  {  // [S_{j,j+1}, Dop(g)] = 0 for g in e1, f1, t1
    Stopwatch sw;
    long bad = 0;
    for (const auto& x : tensor_basis<C>(N, 1))
      for (UqGen g : {UqGen::e1, UqGen::f1, UqGen::t1})
        for (int j = 0; j + 1 < N; ++j) bad += !(S_apply(uq_apply(g, x), j) - uq_apply(g, S_apply(x, j))).is_zero();
    rep.add(make_record(pre + "S-Dop", "S commutes with the opposite-coproduct action", "sec. 4.1", bad, sw));
  }
  {  // (SFREL) and its mirror, on V (x) V
    Stopwatch sw;
    long bad = 0;
    for (const auto& x : tensor_basis<C>(2, 1)) {
      // S (f1 (x) t1^-1) = (1 (x) f1) S
      T a = x.map_signs([](Signs s) {
        SignImage<C> r;
        if (sign_at(s, 0) > 0) r.emplace_back(with_sign(s, 0, -1), C::qpow(-sign_at(s, 1)));
        return r;
      });
      T b = S_apply(x, 0).map_signs([](Signs s) {
        SignImage<C> r;
        if (sign_at(s, 1) > 0) r.emplace_back(with_sign(s, 1, -1), C(1));
        return r;
      });
      bad += !(S_apply(a, 0) - b).is_zero();
      // S (t1 (x) e1) = (e1 (x) 1) S
      T c = x.map_signs([](Signs s) {
        SignImage<C> r;
        if (sign_at(s, 1) < 0) r.emplace_back(with_sign(s, 1, 1), C::qpow(sign_at(s, 0)));
        return r;
      });
      T d = S_apply(x, 0).map_signs([](Signs s) {
        SignImage<C> r;
        if (sign_at(s, 0) < 0) r.emplace_back(with_sign(s, 0, 1), C(1));
        return r;
      });
      bad += !(S_apply(c, 0) - d).is_zero();
    }
    rep.add(make_record(pre + "SFREL", "S(f1 x t1^-1) = (1 x f1)S and S(t1 x e1) = (e1 x 1)S", "(SFREL)", bad, sw));
  }
  return rep;
}

}  // namespace qlzero
