#include "qlzero/tensor.hpp"

#include <gtest/gtest.h>

using namespace qlzero;
using R = RatFuncQ;
using P = LaurentPoly<R>;
using T = TensorPoly<R>;

namespace {

T singlet(int vars) {
  return T::basis(2, vars, signs_from("+-"), P::constant(vars, R(1))) -
         T::basis(2, vars, signs_from("-+"), P::constant(vars, R::qpow(-1)));
}

}  // namespace

TEST(UqAction, E1KillsTheSinglet) { EXPECT_TRUE(uq_apply(UqGen::e1, singlet(2)).is_zero()); }

TEST(UqAction, F1AndT1OnTheSinglet) {
  EXPECT_TRUE(uq_apply(UqGen::f1, singlet(2)).is_zero());
  EXPECT_EQ(uq_apply(UqGen::t1, singlet(2)), singlet(2));
}

TEST(UqAction, AffineE0ShiftsTheMode) {
  T x = T::basis("+", P::constant(1, R(1)));
  EXPECT_EQ(uq_apply(UqGen::e0, x), T::basis("-", P::var(1, 0)));
}

TEST(UqAction, T1OnPlusPlus) {
  T x = T::basis("++", P::constant(2, R(1)));
  EXPECT_EQ(uq_apply(UqGen::t1, x), R::qpow(2) * x);
  EXPECT_EQ(uq_apply(UqGen::t1inv, uq_apply(UqGen::t1, x)), x);
}

TEST(UqAction, SerreTypeCommutatorOnOneSlot) {
  // [e1, f1] = (t1 - t1^-1)/(q - q^-1) on V
  for (const char* s : {"+", "-"}) {
    T x = T::basis(s, P::constant(1, R(1)));
    T lhs = uq_apply(UqGen::e1, uq_apply(UqGen::f1, x)) - uq_apply(UqGen::f1, uq_apply(UqGen::e1, x));
    T rhs = (R(1) / (R::qpow(1) - R::qpow(-1))) * (uq_apply(UqGen::t1, x) - uq_apply(UqGen::t1inv, x));
    EXPECT_EQ(lhs, rhs) << s;
  }
}

TEST(UqAction, UnknownGeneratorTagThrows) { EXPECT_THROW(uq_gen_from("h7"), std::invalid_argument); }

TEST(SingletContract, PlusMinusGivesTheScalarSector) {
  T x = T::basis("+-", P::constant(2, R(1)));
  T c = singlet_contract(x, 0, R(5), R(7));
  EXPECT_EQ(c.slots(), 0);
  EXPECT_EQ(c.component(0), P::constant(2, R(5)));
}

TEST(SingletContract, EqualSignsVanish) {
  T x = T::basis("++", P::var(2, 0) + P::var(2, 1));
  EXPECT_TRUE(singlet_contract(x, 0).is_zero());
}

TEST(SingletContract, CommutesWithSpectatorPolynomials) {
  T x = T::basis(3, 3, signs_from("+-+"), P::var(3, 2)) + T::basis(3, 3, signs_from("-++"), P::var(3, 0));
  P g = P::monomial(3, Exps{0, 0, -2}, R::qpow(3));
  EXPECT_EQ(singlet_contract(x.times(g), 0), singlet_contract(x, 0).times(g));
}

TEST(SingletContract, ArityErrors) {
  EXPECT_THROW(singlet_contract(T::basis("+", P::constant(1, R(1))), 0), std::invalid_argument);
  EXPECT_THROW(singlet_contract(T::basis("++", P::constant(2, R(1))), 1), std::out_of_range);
}

TEST(WeightDegree, Examples) {
  auto a = weight_degree(T::basis("+-", P::constant(2, R(1))));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a.begin()->weight, 0);
  auto b = weight_degree(T::basis("+", P::monomial(1, Exps{-2})));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.begin()->weight, 1);
  EXPECT_EQ(b.begin()->degree, 2);
  // tensor product adds weights
  auto c = weight_degree(T::basis("++-", P::monomial(3, Exps{-1, 0, -1})));
  EXPECT_EQ(c.begin()->weight, 1);
  EXPECT_EQ(c.begin()->degree, 2);
}

TEST(Kappa, OffsetsAndSums) {
  EXPECT_EQ(kappa(1), std::vector<int>({0}));
  EXPECT_EQ(kappa(2), std::vector<int>({0, 0}));
  EXPECT_EQ(kappa(3), std::vector<int>({1, 0, 0}));
  const int expect[] = {0, 0, 0, 1, 2, 4, 6, 9, 12};
  for (int N = 0; N <= 8; ++N) EXPECT_EQ(kappa_sum(N), expect[N]) << N;
}

TEST(BasisChange, SingleSlotIsIdentity) {
  auto x = basis_change_F_monomial(BasisDir::forward, 1, signs_from("+"), Exps{-2}, 4);
  EXPECT_EQ(x, T::basis(1, 1, signs_from("+"), P::monomial(1, Exps{-2})));
}

TEST(BasisChange, LeadingCoefficientIsOne) {
  const Exps m{-1, -2};
  auto x = basis_change_F_monomial(BasisDir::forward, 2, signs_from("+-"), m, 3);
  auto kap = kappa(2);
  Exps lead{static_cast<int>(m[0] + kap[0]), static_cast<int>(m[1] + kap[1])};
  EXPECT_TRUE(x.component(signs_from("+-")).coeff(lead).is_one());
}

TEST(BasisChange, ForwardThenBackwardIsIdentityUpToDepth) {
  const int D = 3;
  for (int N : {2, 3}) {
    const Signs eps = N == 2 ? signs_from("+-") : signs_from("+-+");
    Exps m;
    for (int i = 0; i < N; ++i) m[i] = static_cast<std::int16_t>(-i);
    auto fw = basis_change_F_monomial(BasisDir::forward, N, eps, m, D);
    P acc(N);
    const P fwe = fw.component(eps);
    for (const auto& [n, c] : fwe.terms()) {
      const P bwe = basis_change_F_monomial(BasisDir::backward, N, eps, n, D).component(eps);
      for (const auto& [k, a] : bwe.terms()) {
        Exps shift;
        for (int i = 0; i < N; ++i) shift[i] = static_cast<std::int16_t>(k[i] - m[i]);
        if (lattice_depth(shift, N) <= D) acc.add_term(k, c * a);
      }
    }
    EXPECT_EQ(acc, P::monomial(N, m)) << "N=" << N;
  }
}
