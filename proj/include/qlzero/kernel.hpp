#pragma once

#include "qlzero/level0.hpp"
#include "qlzero/linalg.hpp"

#include <optional>

namespace qlzero {

// A graded piece of the ambient: weight w, grade D (sector N sits at symbol
// degree D + kappa_sum(N)), mode ceiling H (H = 0: HWT cone).
struct Grading {
  int w = 0;
  int D = 0;
  int H = 0;
  int lo() const { return -H; }
  int degree(int N) const { return D + kappa_sum(N); }
  bool admits(int N) const { return N >= std::abs(w) && (N - w) % 2 == 0; }
};

struct KernelSpec {
  std::vector<int> sectors;  // arities N of the ambient
  Grading g;
  bool hec = true;
  bool fus = true;
  Pivoting pivoting = Pivoting::leading;
};

// HEC: (S_{j,j+1} - hat G_{j,j+1}) F for every symbol F of the sector
template <class C>
std::vector<SymVec<C>> hec_generators(Level0<C>& L, int N, int w, int d) {
  std::vector<SymVec<C>> out;
  for (const auto& s : sector_symbols(N, w, d, -L.ceiling()))
    for (int j = 0; j + 1 < N; ++j) {
      auto g = L.SG(sv_unit<C>(s), j);
      if (!g.empty()) out.push_back(std::move(g));
    }
  return out;
}

// prod_{i<j}(z_i - q^2 z_j) prod_{i>=j+2}(q^-2 z_j - q^2 z_i) in the N-1 variables
// left after dropping z_{j+1} (z_j stays at position j)
template <class C>
LaurentPoly<C> fusion_prefactor(int N, int j) {
  using P = LaurentPoly<C>;
  const int nv = N - 1;
  P pref = P::constant(nv, C(1));
  for (int i = 0; i < j; ++i) pref *= P::var(nv, i) - P::var(nv, j, C::qpow(2));
  for (int i = j + 2; i < N; ++i) pref *= P::var(nv, j, C::qpow(-2)) - P::var(nv, i - 1, C::qpow(2));
  return pref;
}

// FUS: coefficients of F_N|_{z_{j+1} = q^-2 z_j} - w_j prefactor F_{N-2}(z without z_j, z_{j+1})
// at sector degree d (the N-2 part sits at d - (N-2)); the F_{N-2} part is
// present only when eps_j + eps_{j+1} = 0. Symbols below the mode floor are dropped.
template <class C>
std::vector<SymVec<C>> fus_generators(int N, int w, int d, int j, int H = 0) {
  std::vector<SymVec<C>> out;
  const int nv = N - 1, lo = -H;
  const auto pref = fusion_prefactor<C>(N, j);
  for (Signs eps : signs_of_weight(N, w)) {
    Signs red = 0;
    for (int i = 0, o = 0; i < N; ++i)
      if (i != j && i != j + 1) red = with_sign(red, o++, sign_at(eps, i));
    const bool singlet = sign_at(eps, j) + sign_at(eps, j + 1) == 0;
    const C wt = singlet ? fusion_weight<C>(N, j, sign_at(eps, j)) : C(0);
    // r_j = a + b with a, b >= lo; the other entries >= lo
    for (const auto& r0 : compositions(d - lo, nv, lo)) {
      Exps r = r0;
      r[j] = static_cast<std::int16_t>(r0[j] + lo);
      SymVec<C> v;
      const int s = r[j];
      for (int a = lo; a <= s - lo; ++a) {
        Exps e;
        for (int i = 0; i < j; ++i) e[i] = r[i];
        e[j] = static_cast<std::int16_t>(a);
        e[j + 1] = static_cast<std::int16_t>(s - a);
        for (int i = j + 1; i < nv; ++i) e[i + 1] = r[i];
        sv_add(v, Sym{N, eps, e}, C::qpow(-2 * (s - a)));
      }
      if (singlet)
        for (const auto& [k, c] : pref.terms()) {
          if (k[j] != s) continue;
          Exps ep;
          bool ok = true;
          for (int i = 0, o = 0; i < nv; ++i) {
            if (i == j) continue;
            const int x = r[i] - k[i];
            ok = ok && x >= lo;
            ep[o++] = static_cast<std::int16_t>(x);
          }
          if (ok) sv_add(v, Sym{N - 2, red, ep}, C(-1) * wt * c);
        }
      if (!v.empty()) out.push_back(std::move(v));
    }
  }
  return out;
}

// Cross-multiplied exchange relation at slots (j, j+1):
//   (q z_{j+1} - q^-1 z_j) F(.., z_{j+1}, z_j, ..) - (S z_{j+1} - S^-1 z_j) F(z)
// which equals -(z_{j+1} - z_j)(S - G)F. Coefficients of z^n, |n| = d + 1,
// are finite combinations of degree-d symbols. mutate exchanges q <-> q^-1 in
// the first factor (a control that must change the span).
template <class C>
std::vector<SymVec<C>> fcom_generators(int N, int w, int d, int j, int H = 0, bool mutate = false) {
  std::vector<SymVec<C>> out;
  const int lo = -H;
  auto in = [&](const Exps& e) { return e.min(N) >= lo; };
  for (Signs eps : signs_of_weight(N, w))
    for (const auto& n : compositions(d + 1, N, lo)) {
      SymVec<C> v;
      Exps a = n, b = n;  // n - u_{j+1}, n - u_j
      a[j + 1] -= 1;
      b[j] -= 1;
      auto sw = [&](Exps e) {
        std::swap(e[j], e[j + 1]);
        return e;
      };
      if (in(a)) {
        sv_add(v, Sym{N, eps, sw(a)}, C::qpow(mutate ? -1 : 1));
        for (const auto& [t, c] : S_on<C>(eps, j, 1)) sv_add(v, Sym{N, t, a}, C(-1) * c);
      }
      if (in(b)) {
        sv_add(v, Sym{N, eps, sw(b)}, C(-1) * C::qpow(mutate ? 1 : -1));
        for (const auto& [t, c] : S_on<C>(eps, j, -1)) sv_add(v, Sym{N, t, b}, c);
      }
      if (!v.empty()) out.push_back(std::move(v));
    }
  return out;
}

// Sectors of spec that are present at its grading
inline std::vector<int> active_sectors(const KernelSpec& spec) {
  std::vector<int> Ns;
  for (int N : spec.sectors)
    if (spec.g.admits(N) && spec.g.degree(N) >= N * spec.g.lo()) Ns.push_back(N);
  return Ns;
}

inline std::vector<Sym> kernel_window(const KernelSpec& spec) {
  std::vector<Sym> out;
  for (int N : active_sectors(spec))
    for (auto& s : sector_symbols(N, spec.g.w, spec.g.degree(N), spec.g.lo())) out.push_back(s);
  return out;
}

// Generators of spec in insertion order. FUS of sector N is included when
// its spectator sector N-2 is part of the ambient (or empty at this grading).
template <class C>
std::vector<std::pair<SymVec<C>, Family>> kernel_generators(const KernelSpec& spec, Level0<C>& L) {
  std::vector<std::pair<SymVec<C>, Family>> out;
  const Grading& g = spec.g;
  const auto Ns = active_sectors(spec);
  auto has = [&](int N) { return std::find(Ns.begin(), Ns.end(), N) != Ns.end(); };
  for (int N : Ns) {
    if (spec.hec)
      for (auto& x : hec_generators(L, N, g.w, g.degree(N))) out.emplace_back(std::move(x), Family::HEC);
    if (spec.fus && N >= 2 && (has(N - 2) || !g.admits(N - 2) || g.degree(N - 2) < (N - 2) * g.lo()))
      for (int j = 0; j + 1 < N; ++j)
        for (auto& x : fus_generators<C>(N, g.w, g.degree(N), j, g.H)) out.emplace_back(std::move(x), Family::FUS);
  }
  return out;
}

// Exact kernel basis over the sectors of spec at one grading
template <class C>
KernelBasis<C> build_kernel(const KernelSpec& spec, Level0<C>& L) {
  KernelBasis<C> kb(spec.pivoting);
  const Grading& g = spec.g;
  kb.ambient().add_all(kernel_window(spec));
  for (auto& [x, fam] : kernel_generators(spec, L)) kb.add_generator(x, fam);
  kb.manifest() = {{"sectors", active_sectors(spec)},
                   {"w", g.w},
                   {"D", g.D},
                   {"H", g.H},
                   {"families", std::string(spec.hec ? "HEC" : "") + (spec.fus ? "+FUS" : "") +
                                    (g.H == 0 ? "+HWT" : "")},
                   {"p", "q^" + std::to_string(L.pk())}};
  return kb;
}

// Coefficient [zeta^c] of Fbar_eps(zeta) as a symbol vector, where
//   Fbar_eps = prod zeta_j^{(1+eps_j)/2} / (prod z_j^{N-j} prod_{j<k}(1 - q^2 z_k/z_j)) F_{-eps}(z),
// z = zeta^2, expanded in z_k/z_j (j < k). Symbols below the mode floor are dropped.
template <class C>
SymVec<C> fbar_coefficient(int N, Signs eps, const Exps& c, int lo = 0) {
  SymVec<C> out;
  Signs meps = 0;
  for (int i = 0; i < N; ++i) meps = with_sign(meps, i, -sign_at(eps, i));
  std::vector<int> base(N);
  int total = 0;
  for (int j = 0; j < N; ++j) {
    const int s = c[j] - (1 + sign_at(eps, j)) / 2;
    if (s % 2) return out;
    base[j] = s / 2 + (N - 1 - j);
    total += base[j];
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < N; ++i)
    for (int k = i + 1; k < N; ++k) pairs.emplace_back(i, k);
  // e_j = base_j - T_j, T_k += t, T_i -= t for the pair (i, k); e_j in [lo, total - (N-1) lo]
  const int hi = total - (N - 1) * lo;
  // T_j in [base_j - hi, base_j - lo]; unwinding from the last slot bounds every t by tmax
  int tmax = 0;
  for (int j = 0; j < N; ++j) tmax += std::abs(base[j]) + hi - lo;
  std::vector<int> T(N, 0);
  std::vector<std::size_t> last(N, 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) last[pairs[p].first] = last[pairs[p].second] = p;
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int tsum) {
    if (idx == pairs.size()) {
      Exps e;
      for (int j = 0; j < N; ++j) {
        const int x = base[j] - T[j];
        if (x < lo || x > hi) return;
        e[j] = static_cast<std::int16_t>(x);
      }
      sv_add(out, Sym{N, meps, e}, C::qpow(2 * tsum));
      return;
    }
    auto [i, k] = pairs[idx];
    // e_k falls and e_i rises with t; once the last pair touching a slot is set, its range is final
    for (int t = 0; t <= tmax; ++t) {
      T[k] += t;
      T[i] -= t;
      const bool kdone = last[k] == idx, idone = last[i] == idx;
      const int ek = base[k] - T[k], ei = base[i] - T[i];
      const bool past = (kdone && ek < lo) || (idone && ei > hi);
      const bool before = (kdone && ek > hi) || (idone && ei < lo);
      if (!past && !before) rec(idx + 1, tsum + t);
      T[k] -= t;
      T[i] += t;
      if (past) break;
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace qlzero
