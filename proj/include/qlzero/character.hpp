#pragma once

#include "qlzero/kernel.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace qlzero {

// partitions of n with at most k parts, as non-increasing vectors padded to k
inline std::vector<std::vector<int>> partitions(int n, int k) {
  std::vector<std::vector<int>> out;
  if (n < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      auto p = cur;
      p.resize(k, 0);
      out.push_back(p);
      return;
    }
    if (static_cast<int>(cur.size()) == k) return;
    for (int x = std::min(left, cap); x >= 1; --x) {
      cur.push_back(x);
      rec(left - x, x);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

// m_lambda in the variables off .. off+k-1 of an n-variable ring
template <class C>
LaurentPoly<C> monomial_symmetric(int n, int off, std::vector<int> lam) {
  LaurentPoly<C> r(n);
  std::sort(lam.begin(), lam.end());
  do {
    Exps e;
    for (std::size_t i = 0; i < lam.size(); ++i) e[off + static_cast<int>(i)] = static_cast<std::int16_t>(lam[i]);
    r += LaurentPoly<C>::monomial(n, e);
  } while (std::next_permutation(lam.begin(), lam.end()));
  return r;
}

// prod_{off <= i < k < off+len} (z_i - q^2 z_k): the -q^-1 eigenvector of every G inside the block
template <class C>
LaurentPoly<C> q_vandermonde(int n, int off, int len) {
  using P = LaurentPoly<C>;
  P r = P::constant(n, C(1));
  for (int i = off; i < off + len; ++i)
    for (int k = i + 1; k < off + len; ++k) r *= P::var(n, i) - P::var(n, k, C::qpow(2));
  return r;
}

// Dual model of the HEC quotient of sector (N, w, d). A functional on the
// sector vanishing on every (S - hat G) generator is a polynomial tuple
// (P_eps) with S P = G_j P for all j. It is fixed by the canonical component
// eps = -..-+..+, which lies in Delta_q(minus block) Delta_q(plus block) Sym;
// the other components follow from P_{..+-..} = -G_j P_{..-+..}.
template <class C>
struct SectorDual {
  int N = 0, w = 0, d = 0, a = 0, b = 0;  // a minus signs, b plus signs
  std::vector<LaurentPoly<C>> basis;      // canonical components

  Signs canonical() const {
    Signs s = 0;
    for (int i = a; i < N; ++i) s = with_sign(s, i, 1);
    return s;
  }

  static SectorDual make(int N, int w, int d) {
    SectorDual m;
    m.N = N, m.w = w, m.d = d, m.a = (N - w) / 2, m.b = (N + w) / 2;
    const int da = m.a * (m.a - 1) / 2, db = m.b * (m.b - 1) / 2;
    const auto vand = q_vandermonde<C>(N, 0, m.a) * q_vandermonde<C>(N, m.a, m.b);
    for (int x = 0; x <= d - da - db; ++x)
      for (const auto& la : partitions(x, m.a))
        for (const auto& mu : partitions(d - da - db - x, m.b))
          m.basis.push_back(vand * monomial_symmetric<C>(N, 0, la) * monomial_symmetric<C>(N, m.a, mu));
    return m;
  }

  // all components of the tuple with canonical component p
  std::map<Signs, LaurentPoly<C>> components(const LaurentPoly<C>& p) const {
    std::map<Signs, LaurentPoly<C>> memo;
    memo.emplace(canonical(), p);
    std::function<const LaurentPoly<C>&(Signs)> get = [&](Signs s) -> const LaurentPoly<C>& {
      auto it = memo.find(s);
      if (it != memo.end()) return it->second;
      int j = 0;
      while (!(sign_at(s, j) == 1 && sign_at(s, j + 1) == -1)) ++j;
      const Signs t = with_sign(with_sign(s, j, -1), j + 1, 1);
      LaurentPoly<C> r = C(-1) * G_apply(get(t), j, j + 1);
      return memo.emplace(s, std::move(r)).first->second;
    };
    for (Signs s : signs_of_weight(N, w)) get(s);
    return memo;
  }
};

// Exact residual of S P - G_j P over all j and components (0 for a valid tuple)
template <class C>
long dual_equivariance_residual(const SectorDual<C>& m, const LaurentPoly<C>& p) {
  const auto P = m.components(p);
  long bad = 0;
  for (int j = 0; j + 1 < m.N; ++j)
    for (const auto& [s, f] : P) {
      // (S P)_s = sum_t S_{s,t} P_t with S symmetric: S_{s,t} = coefficient of v_t in S v_s
      LaurentPoly<C> lhs(m.N);
      for (const auto& [t, c] : S_on<C>(s, j, 1)) lhs += c * P.at(t);
      bad += !(lhs - G_apply(f, j, j + 1)).is_zero();
    }
  return bad;
}

struct CellCount {
  int w = 0, D = 0;
  long columns = 0;  // dual unknowns across sectors
  long rank = 0;     // rank of the fusion constraints
  long quotient() const { return columns - rank; }
  std::map<int, long> sector_dims;
};

// Quotient dimension of the (HEC + FUS + HWT) model at (w, D) over the given
// sectors: dim of dual tuples (P_N) satisfying every fusion constraint
//   P_{N,eps}(.., z_j, q^-2 z_j, ..) = w_j [singlet] prefactor P_{N-2,eps'}.
template <class C>
CellCount character_cell(int w, int D, const std::vector<int>& sectors) {
  CellCount cc;
  cc.w = w, cc.D = D;
  const Grading g{w, D, 0};
  std::map<int, SectorDual<C>> dual;
  std::map<int, int> offset;
  for (int N : sectors) {
    if (!g.admits(N) || g.degree(N) < 0) continue;
    auto m = SectorDual<C>::make(N, w, g.degree(N));
    offset[N] = static_cast<int>(cc.columns);
    cc.columns += static_cast<long>(m.basis.size());
    cc.sector_dims[N] = static_cast<long>(m.basis.size());
    dual.emplace(N, std::move(m));
  }
  // rows keyed by (N, j, eps, monomial); assembled column by column
  using Key = std::tuple<int, int, Signs, Exps>;
  std::map<Key, SparseVec<C>> rows;
  auto put = [&](const Key& k, int col, const C& c) {
    if (c.is_zero()) return;
    auto& r = rows[k];
    auto [it, fresh] = r.try_emplace(col, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) r.erase(it);
    }
  };
  for (const auto& [M, m] : dual) {
    for (std::size_t bi = 0; bi < m.basis.size(); ++bi) {
      const int col = offset[M] + static_cast<int>(bi);
      const auto P = m.components(m.basis[bi]);
      // as the fused sector N = M
      for (int j = 0; j + 1 < M; ++j)
        for (const auto& [s, f] : P) {
          const auto fs = f.specialize(j + 1, j, -2);
          for (const auto& [r, c] : fs.terms()) put({M, j, s, r}, col, c);
        }
      // as the spectator sector of N = M + 2
      const int N = M + 2;
      if (!dual.count(N)) continue;
      for (int j = 0; j + 1 < N; ++j) {
        const auto pref = fusion_prefactor<C>(N, j);
        for (Signs s : signs_of_weight(N, w)) {
          if (sign_at(s, j) + sign_at(s, j + 1) != 0) continue;
          Signs red = 0;
          for (int i = 0, o = 0; i < N; ++i)
            if (i != j && i != j + 1) red = with_sign(red, o++, sign_at(s, i));
          const C wt = fusion_weight<C>(N, j, sign_at(s, j));
          const auto sp = pref * P.at(red).embedded(N - 1, [&] {
            std::vector<int> pos;
            for (int i = 0; i < N - 1; ++i)
              if (i != j) pos.push_back(i);
            return pos;
          }());
          for (const auto& [r, c] : sp.terms()) put({N, j, s, r}, col, C(-1) * wt * c);
        }
      }
    }
  }
  Echelon<C> ech;
  for (const auto& [k, v] : rows) {
    if (static_cast<long>(ech.rank()) == cc.columns) break;
    if (!v.empty()) ech.insert(v);
  }
  cc.rank = static_cast<long>(ech.rank());
  return cc;
}

// Weyl-Kac level-1 oracle: dim V(L0) (+) V(L1) at grade D and weight w,
// p(D - n^2) for w = 2n and p(D - n(n+1)) for w = 2n + 1.
inline long partition_count(int n) {
  if (n < 0) return 0;
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int m = k; m <= n; ++m) p[m] += p[m - k];
  return p[n];
}
inline long weyl_kac(int D, int w) {
  const int a = std::abs(w);
  if (a % 2 == 0) return partition_count(D - (a / 2) * (a / 2));
  const int n = (a - 1) / 2;
  return partition_count(D - n * (n + 1));
}

struct CharacterOptions {
  int Dmax = 6;
  int Nmax_even = 4;
  int Nmax_odd = 5;
  int truncation_Dmax = 4;  // grades re-run mod p with the next two sectors added
  bool prescreen = false;   // run mod p first and order the exact work by it
  std::string cache_dir;    // cell results are cached here when non-empty
  std::string ring = "exact";
};

inline std::vector<int> sectors_for(int w, int Nmax) {
  std::vector<int> Ns;
  for (int N = std::abs(w) % 2; N <= Nmax; N += 2) Ns.push_back(N);
  return Ns;
}

template <class C>
CellCount cached_cell(int w, int D, const std::vector<int>& Ns, const CharacterOptions& opt, const std::string& ring) {
  namespace fs = std::filesystem;
  fs::path file;
  if (!opt.cache_dir.empty()) {
    std::string key = ring + "_w" + std::to_string(w) + "_D" + std::to_string(D) + "_N";
    for (int N : Ns) key += std::to_string(N);
    file = fs::path(opt.cache_dir) / "chars" / (key + ".json");
    std::ifstream in(file);
    if (in) {
      auto j = nlohmann::json::parse(in);
      CellCount cc;
      cc.w = w, cc.D = D;
      cc.columns = j.at("columns");
      cc.rank = j.at("rank");
      return cc;
    }
  }
  auto cc = character_cell<C>(w, D, Ns);
  if (!file.empty()) {
    fs::create_directories(file.parent_path());
    std::ofstream(file) << nlohmann::json{{"columns", cc.columns}, {"rank", cc.rank}}.dump() << "\n";
  }
  return cc;
}

// Graded dimensions of the quotient against the Weyl-Kac oracle. C is the
// exact ring; P is the prime field used for the prescreen and the
// truncation re-run. Mod p the rank can only drop (all entries lie in
// Z[q, q^-1]), so mod p results never decide a cell.
template <class C, class P>
CheckReport character_check(const CharacterOptions& opt) {
  CheckReport rep;
  Stopwatch sw;
  std::vector<std::pair<int, int>> cells;
  for (int D = 0; D <= opt.Dmax; ++D)
    for (int w = -opt.Nmax_odd; w <= opt.Nmax_odd; ++w) cells.emplace_back(D, w);
  auto nmax = [&](int w) { return std::abs(w) % 2 ? opt.Nmax_odd : opt.Nmax_even; };
  std::map<std::pair<int, int>, long> modp;
  if (opt.prescreen) {
    for (auto [D, w] : cells) modp[{D, w}] = cached_cell<P>(w, D, sectors_for(w, nmax(w)), opt, "modp").quotient();
    std::stable_sort(cells.begin(), cells.end(), [&](auto a, auto b) {
      return (modp[a] != weyl_kac(a.first, a.second)) > (modp[b] != weyl_kac(b.first, b.second));
    });
  }
  long mismatches = 0, deg0 = 0, deg1_even = 0;
  nlohmann::json table = nlohmann::json::array();
  for (auto [D, w] : cells) {
    const auto cc = cached_cell<C>(w, D, sectors_for(w, nmax(w)), opt, opt.ring);
    const long want = weyl_kac(D, w);
    mismatches += cc.quotient() != want;
    if (D == 0) deg0 += cc.quotient();
    if (D == 1 && w % 2 == 0) deg1_even += cc.quotient();
    if (cc.columns == 0 && want == 0) continue;
    nlohmann::json row{{"D", D}, {"w", w}, {"quotient", cc.quotient()}, {"weyl_kac", want}, {"columns", cc.columns}};
    if (opt.prescreen) row["modp"] = modp[{D, w}];
    table.push_back(row);
  }
  rep.add(make_record("character/cells", "quotient graded dimensions = Weyl-Kac level 1", "character", mismatches, sw,
                      {{"grades", "0.." + std::to_string(opt.Dmax)},
                       {"sectors", "N <= " + std::to_string(opt.Nmax_even) + " (even w), " +
                                       std::to_string(opt.Nmax_odd) + " (odd w)"},
                       {"degree0_total", deg0},
                       {"degree0_highest_weight_cells", 2},
                       {"degree1_L0_total", deg1_even},
                       {"cells", table}}));
  // truncation: does adding the next two sectors change any count (mod p)?
  Stopwatch st;
  long changed = 0, checked = 0;
  for (int D = 0; D <= opt.truncation_Dmax; ++D)
    for (int w = -opt.Nmax_odd; w <= opt.Nmax_odd; ++w) {
      const auto a = cached_cell<P>(w, D, sectors_for(w, nmax(w)), opt, "modp");
      const auto b = cached_cell<P>(w, D, sectors_for(w, nmax(w) + 2), opt, "modp");
      ++checked;
      changed += a.quotient() != b.quotient();
    }
  rep.add(make_record("character/truncation", "adding the next two sectors leaves every count unchanged (mod p)",
                      "character", changed, st,
                      {{"grades", "0.." + std::to_string(opt.truncation_Dmax)}, {"cells", checked}}));
  return rep;
}

}  // namespace qlzero
