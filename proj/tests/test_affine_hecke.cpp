#include "qlzero/affine.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qlzero;
using R = RatFuncQ;
using P = LaurentPoly<R>;

namespace {

bool all_pass(const CheckReport& rep) {
  for (const auto& r : rep.records)
    if (r.status != Status::pass) return false;
  return !rep.records.empty();
}

}  // namespace

TEST(Z, SingleVariableIsAScale) {
  EXPECT_EQ(Z_apply(P::monomial(1, Exps{-3}), 4), P::monomial(1, Exps{-3}, R::qpow(-12)));
  EXPECT_EQ(Z_apply(P::constant(3, R(2)), 4), P::constant(3, R(2)));
}

TEST(Z, SquareIsTheGlobalScaleAtN2) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    P f = random_laurent<R>(2, 5, 3, rng);
    P g = f.scale(0, 4).scale(1, 4);
    EXPECT_EQ(Z_apply(Z_apply(f, 4), 4), g);
    EXPECT_EQ(Zinv_apply(Z_apply(f, 4), 4), f);
  }
}

TEST(Y, SingleVariable) {
  P f = P::monomial(1, Exps{-2});
  EXPECT_EQ(Y_apply(f, 0, 4), f.scale(0, 4));
}

TEST(Y, OnConstantsAtN2) {
  P one = P::constant(2, R(1));
  EXPECT_EQ(Y_apply(one, 0, 4), R::qpow(-1) * one);
  EXPECT_EQ(Y_apply(one, 1, 4), R::qpow(1) * one);
}

TEST(Y, InverseOnRandomElements) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    P f = random_laurent<R>(3, 4, 3, rng);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(Y_apply(Y_apply(f, j, 4), j, 4, -1), f);
  }
}

TEST(Y, OutOfRangeSlotThrows) { EXPECT_THROW(Y_apply(P::constant(2, R(1)), 2, 4), std::out_of_range); }

TEST(AffineSuite, N3AtQ4) {
  Window w;
  w.lo = -4;
  w.hi = 0;
  EXPECT_TRUE(all_pass(affine_hecke_suite<R>(3, 4, w)));
}

TEST(AffineSuite, N2GYGOnSmallWindow) {
  Window w;
  w.lo = -3;
  w.hi = 0;
  auto rep = affine_hecke_suite<R>(2, 3, w);
  bool seen = false;
  for (const auto& r : rep.records)
    if (r.id == "affine/N2/p=q3/GYG") seen = r.status == Status::pass;
  EXPECT_TRUE(seen);
}

TEST(AffineSuite, N4CommutingFamily) {
  Window w;
  w.lo = -2;
  w.hi = 0;
  EXPECT_TRUE(all_pass(affine_hecke_suite<R>(4, 5, w)));
}

TEST(AffineSuite, WrongCrossRelationFails) {
  // G Y_1 G^-1 is not Y_2: the relation needs G on both sides
  P f = P::monomial(2, Exps{-1, 0});
  P lhs = G_apply(Y_apply(G_apply(f, 0, 1, -1), 0, 4), 0, 1);
  EXPECT_NE(lhs, Y_apply(f, 1, 4));
  EXPECT_EQ(G_apply(Y_apply(G_apply(f, 0, 1), 0, 4), 0, 1), Y_apply(f, 1, 4));
}

TEST(Lemmas, AllPass) {
  auto rep = lemma_suite<R>(20, 3);
  EXPECT_TRUE(all_pass(rep));
  for (const char* id : {"lemma/singlet-transport", "lemma/triplet-transport", "lemma/singlet-fusion"}) {
    bool seen = false;
    for (const auto& r : rep.records) seen = seen || r.id == id;
    EXPECT_TRUE(seen) << id;
  }
}

TEST(FusionWeight, Exponents) {
  // (-q)^{N-j+(eps_j-1)/2}, j 1-based in the formula
  EXPECT_EQ(fusion_weight<R>(2, 0, 1), R(-1) * R::qpow(1));
  EXPECT_EQ(fusion_weight<R>(2, 0, -1), R(1));
  EXPECT_EQ(fusion_weight<R>(4, 0, 1), R(-1) * R::qpow(3));
  EXPECT_EQ(fusion_weight<R>(3, 1, -1), R(1));
}

TEST(FusionWeight, SingletConstant) {
  // the singlet v+ (x) v- - q^-1 v- (x) v+ fuses to -(q + q^-1) = (1 + q^-2)(-q)^{N-j}
  const R c = fusion_weight<R>(2, 0, 1) - R::qpow(-1) * fusion_weight<R>(2, 0, -1);
  EXPECT_EQ(c, R(-1) * (R::qpow(1) + R::qpow(-1)));
  EXPECT_EQ(c, (R(1) + R::qpow(-2)) * R(-1) * R::qpow(1));
}
