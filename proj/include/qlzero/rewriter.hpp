#pragma once

#include "qlzero/character.hpp"

#include <random>

namespace qlzero {

// Orientation of the rewrite system: symbols earlier in this order are
// rewritten first (they become pivots). Higher spinon number first, then
// sign strings with more +- inversions, then exponent vectors that are not
// weakly decreasing inside the sign blocks, then reverse lexicographic.
inline int inversions(Signs s, int N) {
  int inv = 0, plus = 0;
  for (int i = 0; i < N; ++i) {
    if (sign_at(s, i) > 0) ++plus;
    else inv += plus;
  }
  return inv;
}
inline bool block_sorted(const Sym& s) {
  for (int i = 0; i + 1 < s.N; ++i)
    if (sign_at(s.eps, i) == sign_at(s.eps, i + 1) && s.e[i] < s.e[i + 1]) return false;
  return true;
}
inline bool rewrite_before(const Sym& a, const Sym& b) {
  auto key = [](const Sym& s) { return std::make_tuple(-s.N, -inversions(s.eps, s.N), block_sorted(s), s.eps); };
  auto ka = key(a), kb = key(b);
  if (ka != kb) return ka < kb;
  return b.e < a.e;
}

// Rewrite rules from the kernel generators of one window. Each rule is
// pivot -> pivot - row, where row lies in the span of the generators; every
// rule keeps its expansion in the original generators so that a rewrite
// step can be certified by recombining them exactly.
template <class C>
class Rewriter {
 public:
  struct Step {
    Sym pivot;
    C factor;
    int rule;
  };

  Rewriter(std::vector<Sym> window, std::vector<SymVec<C>> generators) : gens_(std::move(generators)) {
    std::sort(window.begin(), window.end(), rewrite_before);
    for (const auto& s : window) amb_.add(s);
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      SparseVec<C> v = amb_.encode(gens_[g]);
      SparseVec<C> comb{{static_cast<int>(g), C(1)}};
      reduce(v, &comb);
      if (v.empty()) continue;
      const int piv = v.begin()->first;
      const C inv = v.begin()->second.inverse();
      for (auto& [c, a] : v) a = a * inv;
      for (auto& [c, a] : comb) a = a * inv;
      pivot_rule_[piv] = static_cast<int>(rules_.size());
      rules_.push_back({piv, std::move(v), std::move(comb)});
    }
  }

  std::size_t rules() const { return rules_.size(); }
  std::size_t window_size() const { return amb_.size(); }
  // standard symbols: the non-pivot columns
  std::vector<Sym> standard() const {
    std::vector<Sym> out;
    for (std::size_t c = 0; c < amb_.size(); ++c)
      if (!pivot_rule_.count(static_cast<int>(c))) out.push_back(amb_.sym(static_cast<int>(c)));
    return out;
  }

  bool is_redex(const Sym& s) const { return amb_.contains(s) && pivot_rule_.count(amb_.at(s)) > 0; }

  // one step at a given pivot symbol present in x
  SymVec<C> apply(const SymVec<C>& x, const Sym& s, Step* st = nullptr) const {
    const int col = amb_.at(s);
    auto it = pivot_rule_.find(col);
    if (it == pivot_rule_.end()) return x;
    const C f = x.at(s);
    SymVec<C> r = x;
    sv_axpy(r, C(-1) * f, amb_.decode(rules_[it->second].v));
    if (st) *st = {s, f, it->second};
    return r;
  }

  // rewrite to normal form choosing redexes by pick(candidates)
  template <class Pick>
  SymVec<C> normalize(SymVec<C> x, Pick pick, std::vector<Step>* trace = nullptr) const {
    for (;;) {
      std::vector<Sym> red;
      for (const auto& [s, c] : x)
        if (pivot_rule_.count(amb_.at(s))) red.push_back(s);
      if (red.empty()) return x;
      Step st;
      x = apply(x, red[pick(red.size())], &st);
      if (trace) trace->push_back(st);
    }
  }
  SymVec<C> normal_form(const SymVec<C>& x) const {
    return normalize(x, [](std::size_t) { return std::size_t(0); });
  }

  // x - apply(x) = factor * row; check it equals factor * sum comb_g * generator_g
  bool certify(const Step& st, const SymVec<C>& before, const SymVec<C>& after) const {
    SymVec<C> diff = sv_sub(before, after);
    SymVec<C> rec;
    for (const auto& [g, c] : rules_[st.rule].comb) sv_axpy(rec, st.factor * c, gens_[g]);
    return sv_sub(diff, rec).empty();
  }

 private:
  struct Rule {
    int pivot;
    SparseVec<C> v;
    SparseVec<C> comb;  // generator index -> coefficient
  };

  void reduce(SparseVec<C>& x, SparseVec<C>* comb) const {
    std::set<std::pair<int, int>> pending;
    for (const auto& [c, a] : x) {
      auto it = pivot_rule_.find(c);
      if (it != pivot_rule_.end()) pending.emplace(it->second, c);
    }
    while (!pending.empty()) {
      auto [rid, col] = *pending.begin();
      pending.erase(pending.begin());
      auto xi = x.find(col);
      if (xi == x.end()) continue;
      const C f = xi->second;
      for (const auto& [g, a] : rules_[rid].comb) axpy(*comb, g, C(-1) * f * a);
      for (const auto& [c, a] : rules_[rid].v) {
        const bool fresh = !x.count(c);
        axpy(x, c, C(-1) * f * a);
        if (fresh && x.count(c)) {
          auto pr = pivot_rule_.find(c);
          if (pr != pivot_rule_.end()) pending.emplace(pr->second, c);
        }
      }
    }
  }
  static void axpy(SparseVec<C>& v, int k, const C& c) {
    auto [it, fresh] = v.try_emplace(k, c);
    if (!fresh) it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }

  Ambient amb_;
  std::vector<SymVec<C>> gens_;
  std::vector<Rule> rules_;
  std::unordered_map<int, int> pivot_rule_;
};

// Soundness: every step of randomized rewrites certifies against the original
// generators, and every rewrite order reaches the same normal form.
// Completeness: the number of standard symbols equals the quotient dimension
// of the dual model (block q-antisymmetric polynomials) for the HEC windows.
template <class C>
CheckReport rewriter_check(int Nmax, int dmax, int samples = 4, std::uint64_t seed = 11) {
  CheckReport rep;
  Level0<C> L(4);
  std::mt19937_64 rng(seed);
  Stopwatch sw;
  long steps = 0, uncertified = 0, disagree = 0, count_bad = 0, windows = 0;
  for (int N = 1; N <= Nmax; ++N)
    for (int d = 0; d <= dmax; ++d)
      for (int w = -N; w <= N; w += 2) {
        const auto window = sector_symbols(N, w, d);
        Rewriter<C> rw(window, hec_generators(L, N, w, d));
        ++windows;
        const auto expect = SectorDual<C>::make(N, w, d).basis.size();
        count_bad += rw.standard().size() != expect;
        for (int k = 0; k < samples; ++k) {
          SymVec<C> x;
          for (int t = 0; t < 3; ++t) sv_add(x, window[rng() % window.size()], C(static_cast<int>(rng() % 5) + 1));
          const auto nf = rw.normal_form(x);
          SymVec<C> cur = x;
          for (;;) {
            std::vector<Sym> red;
            for (const auto& [s, c] : cur)
              if (rw.is_redex(s)) red.push_back(s);
            if (red.empty()) break;
            typename Rewriter<C>::Step st{Sym{}, C(0), -1};
            auto nxt = rw.apply(cur, red[rng() % red.size()], &st);
            ++steps;
            uncertified += !rw.certify(st, cur, nxt);
            cur = std::move(nxt);
          }
          disagree += !sv_sub(cur, nf).empty();
        }
      }
  // mixed windows: sectors N <= Nmax with HEC + FUS against the dual character count
  for (int D = 0; D <= dmax - kappa_sum(Nmax); ++D)
    for (int w = -Nmax; w <= Nmax; ++w) {
      KernelSpec sp;
      for (int N = 0; N <= Nmax; ++N) sp.sectors.push_back(N);
      sp.g = {w, D, 0};
      const auto window = kernel_window(sp);
      if (window.empty()) continue;
      std::vector<SymVec<C>> gens;
      for (auto& [x, f] : kernel_generators(sp, L)) gens.push_back(std::move(x));
      Rewriter<C> rw(window, std::move(gens));
      ++windows;
      count_bad += static_cast<long>(rw.standard().size()) != character_cell<C>(w, D, sp.sectors).quotient();
    }
  nlohmann::json det{{"windows", windows}, {"steps", steps}, {"N", "1.." + std::to_string(Nmax)},
                     {"degrees", "0.." + std::to_string(dmax)}};
  rep.add(make_record("rewriter/soundness", "every rewrite step certifies against the generators", "rewriter",
                      uncertified, sw, det));
  rep.add(make_record("rewriter/confluence", "random rewrite orders reach the same normal form", "rewriter",
                      disagree, sw, det));
  rep.add(make_record("rewriter/completeness", "standard symbols = quotient dimension", "rewriter", count_bad, sw,
                      det));
  return rep;
}

}  // namespace qlzero
