#include "qlzero/modp.hpp"
#include "qlzero/character.hpp"
#include "qlzero/relations.hpp"
#include "qlzero/rewriter.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qlzero;
using R = RatFuncQ;
using V = SymVec<R>;

namespace {

V unit(int N, const char* eps, Exps e) { return sv_unit<R>(Sym{N, signs_from(eps), e}); }

KernelSpec spec_of(std::vector<int> sectors, int w, int D, bool fus = true) {
  KernelSpec sp;
  sp.sectors = std::move(sectors);
  sp.g = {w, D, 0};
  sp.fus = fus;
  return sp;
}

const CheckRecord* find(const CheckReport& r, const std::string& id) {
  for (const auto& rec : r.records)
    if (rec.id == id) return &rec;
  return nullptr;
}

// level-1 characters by direct series multiplication: coefficient of u^w q^D in
// (sum_n u^{2n + i} q^{n^2 + i n}) / prod_k (1 - q^k), i = w mod 2
long series_oracle(int D, int w) {
  std::vector<long> inv(D + 1, 0);  // 1 / prod (1 - q^k) = sum p(n) q^n, built factor by factor
  inv[0] = 1;
  for (int k = 1; k <= D; ++k)
    for (int n = k; n <= D; ++n) inv[n] += inv[n - k];
  const int i = std::abs(w) % 2;
  long total = 0;
  for (int n = -10; n <= 10; ++n) {
    if (2 * n + i != w) continue;
    const int deg = n * n + i * n;
    if (deg <= D) total += inv[D - deg];
  }
  return total;
}

}  // namespace

TEST(KernelBuild, HecGeneratorIsAMember) {
  Level0<R> L(4);
  auto kb = build_kernel(spec_of({2}, 2, 1, false), L);
  V g = L.SG(unit(2, "++", Exps{0, 1}), 0);
  ASSERT_FALSE(g.empty());
  auto m = kb.member(g);
  EXPECT_TRUE(m.member);
  EXPECT_TRUE(kb.verify_certificate(g, m));
}

TEST(KernelBuild, SingleSpinonHasNoRelations) {
  Level0<R> L(4);
  for (int D = 0; D <= 3; ++D) {
    auto kb = build_kernel(spec_of({1}, 1, D), L);
    EXPECT_EQ(kb.rank(), 0u);
    EXPECT_EQ(kb.dim(), 1u);
  }
}

TEST(KernelBuild, FullFamiliesLeaveANonzeroQuotient) {
  Level0<R> L(4);
  auto kb = build_kernel(spec_of({0, 2}, 0, 2), L);
  EXPECT_GT(kb.rank(), 0u);
  EXPECT_LT(kb.rank(), kb.dim());
  EXPECT_EQ(kb.manifest()["families"], "HEC+FUS+HWT");
}

TEST(Membership, RowsLinearityAndNonMembers) {
  Level0<R> L(4);
  auto kb = build_kernel(spec_of({0, 2}, 2, 1), L);
  auto gens = kernel_generators(spec_of({0, 2}, 2, 1), L);
  ASSERT_GE(gens.size(), 2u);
  const V& a = gens[0].first;
  const V& b = gens[1].first;
  EXPECT_TRUE(kb.member(a).member);
  V comb = sv_scale(R::qpow(3) - R(2), a);
  sv_axpy(comb, R(5), b);
  auto m = kb.member(comb);
  EXPECT_TRUE(m.member);
  EXPECT_TRUE(kb.verify_certificate(comb, m));
  // grade 1, weight 2 has a one-dimensional quotient, so one of its two symbols is a non-member
  EXPECT_EQ(kb.quotient_dim(), 1u);
  const bool a_in = kb.member(unit(2, "++", Exps{1, 0})).member;
  const bool b_in = kb.member(unit(2, "++", Exps{0, 1})).member;
  EXPECT_FALSE(a_in && b_in);
  // at grade 0, weight 2 the oracle is 0: (S - G) F_{++} = -(q + q^-1) F_{++} puts v+ (x) v+ . 1 in the kernel
  auto kb0 = build_kernel(spec_of({0, 2}, 2, 0), L);
  EXPECT_EQ(weyl_kac(0, 2), 0);
  EXPECT_TRUE(kb0.member(unit(2, "++", Exps{0, 0})).member);
}

TEST(Membership, OutsideTheAmbientIsFlagged) {
  Level0<R> L(4);
  auto kb = build_kernel(spec_of({2}, 0, 1), L);
  auto m = kb.member(unit(2, "+-", Exps{3, 0}));
  EXPECT_FALSE(m.member);
  EXPECT_TRUE(m.outside);
}

TEST(Fusion, ChannelWeightsAtN2) {
  // FUS generator of (+,-) at grade 0: F_{+-,(0,0)} - (-q) F_vacuum; of (-,+): F_{-+,(0,0)} - F_vacuum
  auto g = fus_generators<R>(2, 0, 0, 0);
  V pm = unit(2, "+-", Exps{0, 0});
  sv_add(pm, Sym{0, 0, Exps{}}, R::qpow(1));
  V mp = unit(2, "-+", Exps{0, 0});
  sv_add(mp, Sym{0, 0, Exps{}}, R(-1));
  bool seen_pm = false, seen_mp = false;
  for (const auto& v : g) {
    seen_pm = seen_pm || sv_sub(v, pm).empty();
    seen_mp = seen_mp || sv_sub(v, mp).empty();
  }
  EXPECT_TRUE(seen_pm);
  EXPECT_TRUE(seen_mp);
}

TEST(Fusion, TripletHasNoSpectatorPart) {
  for (const auto& v : fus_generators<R>(2, 2, 2, 0))
    for (const auto& [s, c] : v) EXPECT_EQ(s.N, 2);
}

TEST(Fusion, PrefactorVanishesPattern) {
  // prod_{i<j}(z_i - q^2 z_j) prod_{i>=j+2}(q^-2 z_j - q^2 z_i): at N=3, j=0 one factor (q^-2 z_1 - q^2 z_3)
  using P = LaurentPoly<R>;
  EXPECT_EQ(fusion_prefactor<R>(3, 0), P::var(2, 0, R::qpow(-2)) - P::var(2, 1, R::qpow(2)));
  EXPECT_EQ(fusion_prefactor<R>(3, 1), P::var(2, 0) - P::var(2, 1, R::qpow(2)));
  EXPECT_EQ(fusion_prefactor<R>(2, 0), P::constant(1, R(1)));
}

TEST(Prop8, N2MembersAndControl) {
  auto rep = prop8_check<R>(2, 3);
  for (const char* id : {"prop8/N2/A", "prop8/N2/B", "prop8/N2/control"}) {
    auto* r = find(rep, id);
    ASSERT_NE(r, nullptr) << id;
    EXPECT_EQ(r->status, Status::pass) << id;
  }
}

TEST(Prop9, N2EqualSpansAndMutatedControl) {
  auto rep = prop9_check<R>(2, 3);
  auto* r = find(rep, "prop9/N2");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->status, Status::pass);
  EXPECT_GT(r->detail["control_sectors_where_mutated_span_differs"].get<long>(), 0);
}

TEST(Prop9, DegenerateWindow) {
  auto rep = prop9_check<R>(2, 0);
  EXPECT_EQ(rep.records.front().status, Status::pass);
}

TEST(Rhof, N2AtQ4) {
  auto rep = rhof_check<R>(2, 3, 4);
  for (const auto& r : rep.records) EXPECT_EQ(r.status, Status::pass) << r.id;
}

TEST(Rhof, N3TripletChannel) {
  auto rep = rhof_check<R>(3, 2, 4);
  auto* r = find(rep, "rhof/N3/p=q4/e0/triplet");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->status, Status::pass);
}

TEST(Rhof, N2AtQ3FailsInTheSingletChannel) {
  auto rep = rhof_check<R>(2, 3, 3);
  auto* s = find(rep, "rhof/N2/p=q3/e0/singlet");
  auto* t = find(rep, "rhof/N2/p=q3/e0/triplet");
  ASSERT_NE(s, nullptr);
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(s->status, Status::fail);
  EXPECT_GT(s->residual, 0);
  EXPECT_EQ(t->status, Status::pass);
}

TEST(Rewriter, EqualSignPairIsReordered) {
  Level0<R> L(4);
  const auto win = sector_symbols(2, -2, 1);
  Rewriter<R> rw(win, hec_generators(L, 2, -2, 1));
  const Sym unsorted{2, signs_from("--"), Exps{0, 1}};
  ASSERT_FALSE(block_sorted(unsorted));
  V nf = rw.normal_form(sv_unit<R>(unsorted));
  ASSERT_EQ(nf.size(), 1u);
  EXPECT_TRUE(block_sorted(nf.begin()->first));
}

TEST(Rewriter, PlusMinusPairRewritesToTwoTerms) {
  Level0<R> L(4);
  const auto win = sector_symbols(2, 0, 1);
  Rewriter<R> rw(win, hec_generators(L, 2, 0, 1));
  V nf = rw.normal_form(unit(2, "+-", Exps{1, 0}));
  EXPECT_EQ(nf.size(), 2u);
  for (const auto& [s, c] : nf) EXPECT_EQ(inversions(s.eps, 2), 0);
}

TEST(Rewriter, StandardSymbolsAreFixedPoints) {
  Level0<R> L(4);
  const auto win = sector_symbols(3, 1, 2);
  Rewriter<R> rw(win, hec_generators(L, 3, 1, 2));
  for (const auto& s : rw.standard()) EXPECT_EQ(rw.normal_form(sv_unit<R>(s)), sv_unit<R>(s));
}

TEST(Rewriter, Check) {
  auto rep = rewriter_check<R>(3, 4);
  for (const auto& r : rep.records) EXPECT_EQ(r.status, Status::pass) << r.id;
}

TEST(Character, OracleAgreesWithSeriesExpansion) {
  for (int D = 0; D <= 8; ++D)
    for (int w = -6; w <= 6; ++w) EXPECT_EQ(weyl_kac(D, w), series_oracle(D, w)) << D << " " << w;
}

TEST(Character, DegreeZeroAndOne) {
  long deg0 = 0, deg1_even = 0;
  for (int w = -3; w <= 3; ++w) {
    deg0 += character_cell<R>(w, 0, sectors_for(w, 3)).quotient();
    if (w % 2 == 0) deg1_even += character_cell<R>(w, 1, sectors_for(w, 4)).quotient();
  }
  EXPECT_EQ(deg1_even, 3);
  // |0> in V(L0) and the doublet of |1> in V(L1); two of these cells are highest weight
  EXPECT_EQ(deg0, 3);
  EXPECT_EQ(character_cell<R>(0, 0, {0, 2}).quotient(), 1);
  EXPECT_EQ(character_cell<R>(1, 0, {1, 3}).quotient(), 1);
}

TEST(Character, DualModelMatchesTheFullKernel) {
  Level0<R> L(4);
  for (int w = -2; w <= 2; ++w)
    for (int D = 0; D <= 2; ++D) {
      KernelSpec sp = spec_of(sectors_for(w, 4), w, D);
      auto kb = build_kernel(sp, L);
      EXPECT_EQ(static_cast<long>(kb.quotient_dim()), character_cell<R>(w, D, sp.sectors).quotient())
          << w << " " << D;
    }
}

TEST(Character, TableToGradeFour) {
  CharacterOptions o;
  o.Dmax = 4;
  o.truncation_Dmax = 1;
  auto rep = character_check<R, ModP>(o);
  for (const auto& r : rep.records) EXPECT_EQ(r.status, Status::pass) << r.id;
}

TEST(Persistence, SaveLoadRoundTrip) {
  Level0<R> L(4);
  auto spec = spec_of({1, 3}, 1, 2);
  auto kb = build_kernel(spec, L);
  const auto dir = std::filesystem::temp_directory_path() / "qlzero_kernel_roundtrip";
  std::filesystem::remove_all(dir);
  kb.save(dir);
  auto back = KernelBasis<R>::load(dir);
  EXPECT_EQ(back.rank(), kb.rank());
  EXPECT_EQ(back.dim(), kb.dim());
  EXPECT_EQ(back.manifest()["sectors"], kb.manifest()["sectors"]);
  for (auto& [x, f] : kernel_generators(spec, L)) EXPECT_TRUE(back.member(x).member);
  // sparse triplets: "row col value"
  std::ifstream rows(dir / "rows.txt");
  std::string line;
  ASSERT_TRUE(static_cast<bool>(std::getline(rows, line)));
  std::istringstream is(line);
  int r = -1, c = -1;
  std::string val;
  is >> r >> c >> val;
  EXPECT_EQ(r, 0);
  EXPECT_GE(c, 0);
  EXPECT_FALSE(R::parse(val).is_zero());
  std::filesystem::remove_all(dir);
}
