#pragma once

#include "qlzero/affine.hpp"
#include "qlzero/symbols.hpp"

namespace qlzero {

// f^{(j)} = pi_j(f1) pi_{j+1}(t1^-1) .. pi_N(t1^-1) on a sign string (slot j 0-based)
template <class C>
SignImage<C> f_slot(int N, Signs s, int j) {
  if (sign_at(s, j) != 1) return {};
  int tail = 0;
  for (int i = j + 1; i < N; ++i) tail += sign_at(s, i);
  return {{with_sign(s, j, -1), C::qpow(-tail)}};
}

// e^{(j)} = pi_1(t1) .. pi_{j-1}(t1) pi_j(e1)
template <class C>
SignImage<C> e_slot(int N, Signs s, int j) {
  (void)N;
  if (sign_at(s, j) != -1) return {};
  int head = 0;
  for (int i = 0; i < j; ++i) head += sign_at(s, i);
  return {{with_sign(s, j, 1), C::qpow(head)}};
}

// The level-0 generators on symbol vectors of the free model. a_j = q^{N-1} hat(Y_j)^-1.
template <class C>
class Level0 {
 public:
  using P = LaurentPoly<C>;

  // H: mode ceiling; symbols with a mode above H are dropped (H = 0 is the HWT cone)
  explicit Level0(int pk = 4, int H = 0) : pk_(pk), lo_(-H) {}
  int pk() const { return pk_; }
  int ceiling() const { return -lo_; }
  HatCache<C>& cache() { return cache_; }

  // hat(Y_j^{+-1}) on symbols
  SymVec<C> Yhat(const SymVec<C>& v, int j, int exponent) {
    const int pk = pk_;
    return hat_apply<C>(cache_, "Y" + std::to_string(j) + (exponent > 0 ? "+" : "-") + "p" + std::to_string(pk),
                        [=](const P& f) { return Y_apply(f, j, pk, exponent); }, restrict_arity(v, j), lo_);
  }
  // hat(G_{j,j+1}^{+-1}) on symbols
  SymVec<C> Ghat(const SymVec<C>& v, int j, int exponent = 1) {
    return hat_apply<C>(cache_, "G" + std::to_string(j) + (exponent > 0 ? "+" : "-"),
                        [=](const P& f) { return G_apply(f, j, j + 1, exponent); }, restrict_arity(v, j + 1), lo_);
  }
  static SymVec<C> S(const SymVec<C>& v, int j, int exponent = 1) {
    return sign_apply(restrict_arity(v, j + 1),
                      [=](int, Signs s) { return S_on<C>(s, j, exponent); });
  }
  // (S_{j,j+1} - hat G_{j,j+1}) x: the HEC generator map
  SymVec<C> SG(const SymVec<C>& v, int j) { return sv_sub(S(v, j), Ghat(v, j)); }

  static SymVec<C> t0(const SymVec<C>& v, int exponent = 1) {
    return sign_apply(v, [=](int N, Signs s) { return SignImage<C>{{s, C::qpow(-exponent * sign_sum(s, N))}}; });
  }
  static SymVec<C> t1(const SymVec<C>& v, int exponent = 1) {
    return sign_apply(v, [=](int N, Signs s) { return SignImage<C>{{s, C::qpow(exponent * sign_sum(s, N))}}; });
  }
  static SymVec<C> f1(const SymVec<C>& v) {
    return sign_apply(v, [](int N, Signs s) {
      SignImage<C> r;
      for (int j = 0; j < N; ++j)
        for (auto& t : f_slot_full(N, s, j)) r.push_back(t);
      return r;
    });
  }
  static SymVec<C> e1(const SymVec<C>& v) {
    return sign_apply(v, [](int N, Signs s) {
      SignImage<C> r;
      for (int j = 0; j < N; ++j)
        for (auto& t : e_slot_full(N, s, j)) r.push_back(t);
      return r;
    });
  }

  // e0^{(j)} = q^{N-1} hat(Y_j^-1) f^{(j)}
  SymVec<C> e0_part(const SymVec<C>& v, int j) {
    SymVec<C> r;
    for_sector(v, [&](int N, const SymVec<C>& part) {
      if (j >= N) return;
      auto x = sign_apply(part, [=](int n, Signs s) { return f_slot<C>(n, s, j); });
      sv_axpy(r, C::qpow(N - 1), Yhat(x, j, -1));
    });
    return r;
  }
  // f0^{(j)} = q^{-(N-1)} hat(Y_j) e^{(j)}
  SymVec<C> f0_part(const SymVec<C>& v, int j) {
    SymVec<C> r;
    for_sector(v, [&](int N, const SymVec<C>& part) {
      if (j >= N) return;
      auto x = sign_apply(part, [=](int n, Signs s) { return e_slot<C>(n, s, j); });
      sv_axpy(r, C::qpow(-(N - 1)), Yhat(x, j, 1));
    });
    return r;
  }
  SymVec<C> e0(const SymVec<C>& v) {
    SymVec<C> r;
    for (int j = 0; j < max_arity(v); ++j) sv_axpy(r, C(1), e0_part(v, j));
    return r;
  }
  SymVec<C> f0(const SymVec<C>& v) {
    SymVec<C> r;
    for (int j = 0; j < max_arity(v); ++j) sv_axpy(r, C(1), f0_part(v, j));
    return r;
  }

  // The expanded series form
  //   sum_j f^{(N)} S_{N-1,N} .. S_{j,j+1} G^-1_{j-1,j} .. G^-1_{1,2} F(z_2,..,z_N,p^-1 z_1),
  // scaled by q^{N-1}; it agrees with e0 modulo the HEC kernel.
  SymVec<C> e0_expanded(const SymVec<C>& v) {
    SymVec<C> r;
    const int pk = pk_;
    for_sector(v, [&](int N, const SymVec<C>& part) {
      for (int j = 0; j < N; ++j) {
        auto fn = [=](const P& f) {
          P g = Zinv_apply(f, pk);
          for (int i = 0; i < j; ++i) g = G_apply(g, i, i + 1, -1);
          return g;
        };
        SymVec<C> x = hat_apply<C>(cache_, "Xe" + std::to_string(j) + "p" + std::to_string(pk), fn, part, lo_);
        for (int i = j; i + 1 < N; ++i) x = S(x, i);
        x = sign_apply(x, [=](int n, Signs s) { return f_slot<C>(n, s, n - 1); });
        sv_axpy(r, C::qpow(N - 1), x);
      }
    });
    return r;
  }

 private:
  static SignImage<C> f_slot_full(int N, Signs s, int j) {
    // Dop(f1) = sum_j pi_1(t^-1) .. pi_{j-1}(t^-1) pi_j(f)
    if (sign_at(s, j) != 1) return {};
    int head = 0;
    for (int i = 0; i < j; ++i) head += sign_at(s, i);
    return {{with_sign(s, j, -1), C::qpow(-head)}};
  }
  static SignImage<C> e_slot_full(int N, Signs s, int j) {
    // Dop(e1) = sum_j pi_j(e) pi_{j+1}(t) .. pi_N(t)
    if (sign_at(s, j) != -1) return {};
    int tail = 0;
    for (int i = j + 1; i < N; ++i) tail += sign_at(s, i);
    return {{with_sign(s, j, 1), C::qpow(tail)}};
  }
  static int max_arity(const SymVec<C>& v) {
    int n = 0;
    for (const auto& [s, c] : v) n = std::max(n, s.N);
    return n;
  }
  // symbols of arity too small for slot j are left out (operator undefined there)
  static SymVec<C> restrict_arity(const SymVec<C>& v, int j) {
    SymVec<C> r;
    for (const auto& [s, c] : v)
      if (j < s.N) r.emplace(s, c);
    return r;
  }
  template <class F>
  static void for_sector(const SymVec<C>& v, F f) {
    std::map<int, SymVec<C>> by;
    for (const auto& [s, c] : v) by[s.N].emplace(s, c);
    for (const auto& [N, part] : by) f(N, part);
  }

  int pk_;
  int lo_;
  HatCache<C> cache_;
};

// symbols of sectors N with all degrees 0..dmax on the cone (the symbol window)
inline std::vector<Sym> window_symbols(int N, int dmax) {
  std::vector<Sym> out;
  for (int d = 0; d <= dmax; ++d)
    for (int w = -N; w <= N; w += 2)
      for (const auto& s : sector_symbols(N, w, d)) out.push_back(s);
  return out;
}

// The closing chain of the (rhosg) proof as an exact operator identity:
//   (e0^{(j)} + e0^{(j+1)})(S - hat G) = (S - hat G) q^{N-1}(hat Y_j^-1 f^{(j+1)} + hat Y_{j+1}^-1 f^{(j)})
// plus e0^{(k)}(S - hat G) = (S - hat G) e0^{(k)} for k not in {j, j+1};
// the f0 mirror exchanges f <-> e, Y^-1 <-> Y, q^{N-1} <-> q^{-(N-1)}.
template <class C>
CheckReport rhosg_check(int N, int dmax, int pk) {
  CheckReport rep;
  Level0<C> L(pk);
  const std::string pre = "rhosg/N" + std::to_string(N) + "/p=q" + std::to_string(pk) + "/";
  const auto basis = window_symbols(N, dmax);
  const nlohmann::json det{{"degrees", "0.." + std::to_string(dmax)}, {"symbols", basis.size()}};
  for (int mirror = 0; mirror < 2; ++mirror) {
    Stopwatch sw;
    long bad = 0, comm = 0;
    const int ex = mirror ? 1 : -1;
    const int qk = mirror ? -(N - 1) : (N - 1);
    auto slot = [&](const SymVec<C>& x, int j) {
      return sign_apply(x, [=](int n, Signs s) { return mirror ? e_slot<C>(n, s, j) : f_slot<C>(n, s, j); });
    };
    auto part = [&](const SymVec<C>& x, int j) { return mirror ? L.f0_part(x, j) : L.e0_part(x, j); };
    for (const auto& b : basis) {
      const SymVec<C> x = sv_unit<C>(b);
      for (int j = 0; j + 1 < N; ++j) {
        SymVec<C> sg = L.SG(x, j);
        SymVec<C> lhs = part(sg, j);
        sv_axpy(lhs, C(1), part(sg, j + 1));
        SymVec<C> inner = L.Yhat(slot(x, j + 1), j, ex);
        sv_axpy(inner, C(1), L.Yhat(slot(x, j), j + 1, ex));
        SymVec<C> rhs = L.SG(sv_scale(C::qpow(qk), inner), j);
        bad += !sv_sub(lhs, rhs).empty();
        for (int k = 0; k < N; ++k) {
          if (k == j || k == j + 1) continue;
          comm += !sv_sub(part(sg, k), L.SG(part(x, k), j)).empty();
        }
      }
    }
    nlohmann::json d = det;
    d["commutation_residual"] = comm;
    d["form"] = mirror ? "f0: q^{-(N-1)} hat Y_j e^{(j)}, mirror chain" : "e0: q^{N-1} hat Y_j^-1 f^{(j)}";
    rep.add(make_record(pre + (mirror ? "f0" : "e0"), mirror ? "(rhosg) chain, f0 mirror" : "(rhosg) chain for e0",
                        "sec. 4.2", bad + comm, sw, d));
  }
  return rep;
}

}  // namespace qlzero
