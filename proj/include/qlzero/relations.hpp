#pragma once

#include "qlzero/kernel.hpp"

namespace qlzero {

// single-sector kernel at symbol degree d
template <class C>
KernelBasis<C> sector_kernel(Level0<C>& L, int N, int w, int d, bool fus = false) {
  KernelSpec sp;
  sp.sectors = {N};
  sp.g = {w, d - kappa_sum(N), L.ceiling()};
  sp.fus = fus;
  return build_kernel(sp, L);
}

inline Exps swapped(Exps e, int k) {
  std::swap(e[k], e[k + 1]);
  return e;
}
inline Exps shifted(Exps e, int k, int by) {
  e[k] = static_cast<std::int16_t>(e[k] + by);
  return e;
}

// Normal ordering rules (A), (B) for the Fbar generating series: every
// coefficient lies in the HEC kernel of its sector. The window of zeta
// exponents is the one whose z-part base vector has entries >= -B.
template <class C>
CheckReport prop8_check(int N, int dmax, int B = 2) {
  CheckReport rep;
  Level0<C> L(4);
  const std::string pre = "prop8/N" + std::to_string(N) + "/";
  const int nn = N * (N - 1) / 2;
  long badA = 0, badB = 0, nA = 0, nB = 0, ctrl_members = 0, ctrl_total = 0, outside = 0, flipped_nonmembers = 0;
  Stopwatch swA;
  for (int d = 0; d <= dmax; ++d)
    for (int w = -N; w <= N; w += 2) {
      const auto kb = sector_kernel(L, N, w, d);
      auto test = [&](const SymVec<C>& x, long& bad, long& n) {
        if (x.empty()) return;
        ++n;
        auto m = kb.member(x);
        outside += m.outside;
        bad += !m.member;
      };
      // Fbar_eps carries F_{-eps}: weight of eps is -w
      for (Signs eps : signs_of_weight(N, -w)) {
        int plus = 0;
        for (int j = 0; j < N; ++j) plus += sign_at(eps, j) > 0;
        const int total = 2 * (d - nn) + plus;
        const int clo = 2 * (-B - N), chi = 2 * (d + B * N) + 2;
        for (const auto& c : compositions(total, N, clo)) {
          if (c.max(N) > chi) continue;
          const auto base = fbar_coefficient<C>(N, eps, c);
          if (!base.empty()) {
            ++ctrl_total;
            ctrl_members += kb.member(base).member;
          }
          for (int k = 0; k + 1 < N; ++k)
            if (sign_at(eps, k) == sign_at(eps, k + 1))
              test(sv_sub(fbar_coefficient<C>(N, eps, swapped(c, k)), base), badA, nA);
        }
        for (const auto& c : compositions(total + 1, N, clo)) {
          if (c.max(N) > chi + 1) continue;
          for (int k = 0; k + 1 < N; ++k) {
            if (!(sign_at(eps, k) == 1 && sign_at(eps, k + 1) == -1)) continue;
            const Signs alt = with_sign(with_sign(eps, k, -1), k + 1, 1);
            auto H = [&](const Exps& x) {
              auto v = fbar_coefficient<C>(N, eps, x);
              sv_axpy(v, C(1), fbar_coefficient<C>(N, alt, x));
              return v;
            };
            const Exps sc = swapped(c, k);
            SymVec<C> g = H(shifted(sc, k, -1));
            sv_axpy(g, C::qpow(1), H(shifted(sc, k + 1, -1)));
            sv_axpy(g, C(-1), H(shifted(c, k, -1)));
            sv_axpy(g, C(-1) * C::qpow(1), H(shifted(c, k + 1, -1)));
            test(g, badB, nB);
            // control: (zeta_{k+1} - q zeta_k) in place of (zeta_{k+1} + q zeta_k)
            SymVec<C> f = H(shifted(sc, k, -1));
            sv_axpy(f, C(-1) * C::qpow(1), H(shifted(sc, k + 1, -1)));
            sv_axpy(f, C(-1), H(shifted(c, k, -1)));
            sv_axpy(f, C::qpow(1), H(shifted(c, k + 1, -1)));
            if (!f.empty()) flipped_nonmembers += !kb.member(f).member;
          }
        }
      }
    }
  const nlohmann::json det{{"degrees", "0.." + std::to_string(dmax)}, {"zeta_window_B", B}};
  nlohmann::json dA = det, dB = det;
  dA["coefficients"] = nA;
  dA["outside_window"] = outside;
  dB["coefficients"] = nB;
  rep.add(make_record(pre + "A", "normal ordering rule (A)", "Fbar rule A", badA + outside, swA, dA));
  rep.add(make_record(pre + "B", "normal ordering rule (B)", "Fbar rule B", badB, swA, dB));
  // control: a single unsymmetrized Fbar coefficient must not be in the kernel in general
  nlohmann::json dc = det;
  dc["single_terms"] = ctrl_total;
  dc["of_which_members"] = ctrl_members;
  dc["sign_flipped_B_nonmembers"] = flipped_nonmembers;
  rep.add(make_record(pre + "control", "single Fbar term and sign-flipped (B) are not kernel elements", "control",
                      ctrl_total > 0 && ctrl_members < ctrl_total && flipped_nonmembers > 0 ? 0 : 1, swA, dc));
  return rep;
}

// (Fcom) in cross-multiplied form spans the same subspace as the (S - hat G)
// generators in every sector: rank(Fcom) = rank(HEC) = rank(Fcom + HEC).
template <class C>
CheckReport prop9_check(int N, int dmax, int H = 0) {
  CheckReport rep;
  Level0<C> L(4, H);
  Stopwatch sw;
  long bad = 0, sectors = 0, rank_total = 0, mutated_differs = 0;
  for (int d = N * -H; d <= dmax; ++d)
    for (int w = -N; w <= N; w += 2) {
      Ambient amb;
      amb.add_all(sector_symbols(N, w, d, -H));
      if (amb.size() == 0) continue;
      Echelon<C> eh, ef, eb, em;
      for (const auto& x : hec_generators(L, N, w, d)) {
        eh.insert(amb.encode(x));
        eb.insert(amb.encode(x));
      }
      for (int j = 0; j + 1 < N; ++j)
        for (const auto& x : fcom_generators<C>(N, w, d, j, H)) {
          ef.insert(amb.encode(x));
          eb.insert(amb.encode(x));
        }
      for (int j = 0; j + 1 < N; ++j)
        for (const auto& x : fcom_generators<C>(N, w, d, j, H, true)) em.insert(amb.encode(x));
      for (const auto& r : eh.rows()) em.insert(r.v);
      mutated_differs += em.rank() != eh.rank();
      ++sectors;
      rank_total += static_cast<long>(eh.rank());
      bad += eh.rank() != eb.rank() || ef.rank() != eb.rank();
    }
  const nlohmann::json det{{"degrees", std::to_string(N * -H) + ".." + std::to_string(dmax)},
                           {"mode_ceiling", H},
                           {"sectors", sectors},
                           {"hec_rank_total", rank_total},
                           {"control_sectors_where_mutated_span_differs", mutated_differs}};
  rep.add(make_record("prop9/N" + std::to_string(N) + (H ? "/H" + std::to_string(H) : ""),
                      "(Fcom) span equals (S - G) span", "Fcom vs HEC",
                      bad + (N >= 2 && mutated_differs == 0), sw, det));
  return rep;
}

// (rhof): for every FUS coefficient g of sector N (spectator sector N-2),
// e0(g) and f0(g) lie in the kernel of the mixed ambient of sectors N, N-2 at
// the target weight. Split into triplet (eps_j = eps_{j+1}) and singlet channels.
// H > 0 replaces the HWT cone by a mode ceiling (symbols above it are the
// filtration tail). The fusion point needs p = q^4; other p is a control.
template <class C>
CheckReport rhof_check(int N, int Dmax, int pk, int H = 0) {
  CheckReport rep;
  Level0<C> L(pk, H);
  const std::string pre = "rhof/N" + std::to_string(N) + "/p=q" + std::to_string(pk) + (H ? "/H" + std::to_string(H) : "") + "/";
  for (int mirror = 0; mirror < 2; ++mirror) {
    Stopwatch sw;
    long bad[2] = {0, 0}, tot[2] = {0, 0}, outside = 0, quotient = 0;
    for (int D = -kappa_sum(N) + N * -H; D <= Dmax; ++D)
      for (int w = -N; w <= N; w += 2) {
        const Grading src{w, D, H};
        if (src.degree(N) < N * -H) continue;
        const int wt = w + (mirror ? 2 : -2);
        if (std::abs(wt) > N) continue;
        KernelSpec sp;
        sp.sectors = {N - 2, N};
        sp.g = {wt, D, H};
        const auto kb = build_kernel(sp, L);
        if (mirror == 0) quotient += static_cast<long>(kb.quotient_dim());
        for (int j = 0; j + 1 < N; ++j)
          for (const auto& g : fus_generators<C>(N, w, src.degree(N), j, H)) {
            Signs eps = 0;
            for (const auto& [sy, c] : g)
              if (sy.N == N) eps = sy.eps;
            const int ch = sign_at(eps, j) + sign_at(eps, j + 1) == 0;
            const auto x = mirror ? L.f0(g) : L.e0(g);
            ++tot[ch];
            auto m = kb.member(x);
            outside += m.outside;
            bad[ch] += !m.member;
          }
      }
    const std::string op = mirror ? "f0" : "e0";
    for (int ch = 0; ch < 2; ++ch) {
      nlohmann::json det{{"generators", tot[ch]}, {"grades", "..D=" + std::to_string(Dmax)},
                         {"mode_ceiling", H}, {"ambient", "sectors N, N-2"}};
      if (ch == 0) det["outside_window"] = outside;
      if (mirror == 0) det["target_quotient_dim_total"] = quotient;
      rep.add(make_record(pre + op + (ch ? "/singlet" : "/triplet"),
                          op + "(FUS) in kernel, " + (ch ? "singlet" : "triplet") + " channel", "(rhof)",
                          bad[ch] + (ch == 0 ? outside : 0), sw, det));
    }
  }
  return rep;
}

// Chevalley relations of the level-0 action on sector N:
//   exact: t0 e0 t0^-1 = q^2 e0, t1 e0 t1^-1 = q^-2 e0 and the f0 mirrors;
//   mod K: [e0, f0] = (t0 - t0^-1)/(q - q^-1), [e0, f1] = 0, [e1, f0] = 0,
//   and e0 agrees with its expanded series form.
// K is the kernel of the mixed ambient of sectors N, N-2. stride > 1 samples
// every stride-th symbol.
template <class C>
CheckReport chevalley_check(int N, int Dmax, int pk = 4, int stride = 1) {
  CheckReport rep;
  Level0<C> L(pk);
  const std::string pre = "chevalley/N" + std::to_string(N) + "/";
  Stopwatch sw;
  long conj = 0, ef = 0, ef_ctrl = 0, ef1 = 0, e1f = 0, expd = 0, samples = 0, outside = 0;
  const C qq = C::qpow(1) - C::qpow(-1);
  for (int D = -kappa_sum(N); D <= Dmax; ++D)
    for (int w = -N; w <= N; w += 2) {
      const Grading g{w, D, 0};
      if (g.degree(N) < 0) continue;
      KernelSpec sp;
      sp.sectors = {N - 2, N};
      sp.g = g;
      const auto kb = build_kernel(sp, L);
      auto at = [&](int dw) {
        KernelSpec o = sp;
        o.g.w = w + dw;
        return build_kernel(o, L);
      };
      // e0 lowers the weight by 2, f0 raises it by 2
      const auto kb_m2 = at(-2), kb_m4 = at(-4), kb_p4 = at(4);
      long idx = 0;
      for (const auto& s : sector_symbols(N, w, g.degree(N))) {
        if (idx++ % stride) continue;
        ++samples;
        const auto x = sv_unit<C>(s);
        const auto e0x = L.e0(x), f0x = L.f0(x);
        // t-conjugations, exact
        conj += !sv_sub(L.t0(L.e0(L.t0(x, -1))), sv_scale(C::qpow(2), e0x)).empty();
        conj += !sv_sub(L.t1(L.e0(L.t1(x, -1))), sv_scale(C::qpow(-2), e0x)).empty();
        conj += !sv_sub(L.t0(L.f0(L.t0(x, -1))), sv_scale(C::qpow(-2), f0x)).empty();
        conj += !sv_sub(L.t1(L.f0(L.t1(x, -1))), sv_scale(C::qpow(2), f0x)).empty();
        auto in = [&](const KernelBasis<C>& k, const SymVec<C>& v) {
          if (v.empty()) return true;
          auto m = k.member(v);
          outside += m.outside;
          return m.member;
        };
        SymVec<C> c = sv_sub(L.e0(f0x), L.f0(e0x));
        sv_axpy(c, C(-1) * (C::qpow(-w) - C::qpow(w)) * qq.inverse(), x);
        ef += !in(kb, c);
        // control: the opposite sign of the Cartan term
        if (w != 0) {
          sv_axpy(c, C(2) * (C::qpow(-w) - C::qpow(w)) * qq.inverse(), x);
          ef_ctrl += !in(kb, c);
        }
        ef1 += !in(kb_m4, sv_sub(L.e0(L.f1(x)), L.f1(e0x)));
        e1f += !in(kb_p4, sv_sub(L.e1(f0x), L.f0(L.e1(x))));
        expd += !in(kb_m2, sv_sub(e0x, L.e0_expanded(x)));
      }
    }
  nlohmann::json det{{"symbols", samples}, {"grades", "..D=" + std::to_string(Dmax)}, {"p", "q^" + std::to_string(pk)}};
  rep.add(make_record(pre + "t-conjugation", "t0, t1 conjugation of e0, f0 (exact)", "Chevalley", conj, sw, det));
  nlohmann::json dm = det;
  dm["outside_window"] = outside;
  dm["control_sign_flipped_nonmembers"] = ef_ctrl;
  rep.add(make_record(pre + "e0f0", "[e0,f0] = (t0 - t0^-1)/(q - q^-1) mod K", "Chevalley",
                      ef + outside + (ef_ctrl == 0), sw, dm));
  rep.add(make_record(pre + "e0f1", "[e0,f1] = 0 mod K", "Chevalley", ef1, sw, det));
  rep.add(make_record(pre + "e1f0", "[e1,f0] = 0 mod K", "Chevalley", e1f, sw, det));
  rep.add(make_record(pre + "e0-expanded", "e0 agrees with its expanded series form mod K", "e0 series", expd, sw, det));
  return rep;
}

}  // namespace qlzero
