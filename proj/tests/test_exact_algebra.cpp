#include <gtest/gtest.h>

#include "iceasm/cyclo.hpp"
#include "iceasm/laurent.hpp"

using namespace iceasm;

namespace {

const CycloRational w = CycloRational::omega();

}  // namespace

TEST(Cyclo, OmegaRelations) {
  EXPECT_EQ(w * w, w - 1);
  EXPECT_EQ(w.pow(3), CycloRational(-1));
  EXPECT_EQ(w.pow(6), CycloRational(1));
  for (long k = -7; k <= 7; ++k) EXPECT_EQ(CycloRational::omega_pow(k), w.pow(k)) << k;
  EXPECT_EQ(w + w.conj(), CycloRational(1));
  EXPECT_EQ(w * w.conj(), CycloRational(1));
}

TEST(Cyclo, FieldOperations) {
  CycloRational x(Rational(3, 2), Rational(-5, 7));
  CycloRational y(Rational(-2), Rational(1, 3));
  EXPECT_EQ(x * x.inverse(), CycloRational(1));
  EXPECT_EQ((x / y) * y, x);
  EXPECT_EQ(x - x, CycloRational(0));
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
  EXPECT_EQ(x.norm(), (x * x.conj()).re());
  EXPECT_TRUE((x * x.conj()).is_rational());
  EXPECT_THROW(CycloRational(0).inverse(), ArithmeticError);
  EXPECT_EQ(cyclo_arith(x, y, CycloOp::add), x + y);
  EXPECT_EQ(cyclo_arith(x, y, CycloOp::mul), x * y);
  EXPECT_EQ(cyclo_arith(x, y, CycloOp::div), x / y);
}

TEST(Cyclo, CanonicalRationals) {
  CycloRational x(Rational(2, 4), Rational(-6, 3));
  EXPECT_EQ(x.re(), Rational(1, 2));
  EXPECT_EQ(x.om(), Rational(-2));
  EXPECT_EQ(x, CycloRational(Rational(1, 2), Rational(-2)));
}

TEST(Cyclo, SigmaAndISqrt3) {
  EXPECT_EQ(sigma(w), i_sqrt3());
  EXPECT_EQ(i_sqrt3() * i_sqrt3(), CycloRational(-3));
  EXPECT_EQ(sigma(CycloRational(1)), CycloRational(0));
  EXPECT_EQ(sigma(CycloRational(2)), CycloRational(Rational(3, 2)));
  EXPECT_EQ(sigma(w * w), i_sqrt3());
}

TEST(Cyclo, TextRoundTrip) {
  EXPECT_EQ(w.str(), "w");
  EXPECT_EQ((-w).str(), "-w");
  EXPECT_EQ(i_sqrt3().str(), "-1+2*w");
  EXPECT_EQ(CycloRational(Rational(3, 4)).str(), "3/4");
  std::vector<CycloRational> samples{0, 1, -5, w, -w, i_sqrt3(), {Rational(2, 3), Rational(-7, 5)}, {Rational(-1, 9), 1}};
  for (const auto& s : samples) EXPECT_EQ(parse_cyclo(s.str()), s) << s.str();
  EXPECT_EQ(parse_cyclo("3/2w"), CycloRational(0, Rational(3, 2)));
  EXPECT_EQ(parse_cyclo(" 1 - 2 * w "), CycloRational(1, -2));
  EXPECT_EQ(parse_cyclo("w+w"), CycloRational(0, 2));
}

TEST(Cyclo, ParseRejectsMalformed) {
  for (const char* bad : {"", "x", "1/", "/2", "1/0", "2**w", "*w", "1 2", "w2", "1/2/3", "+"}) {
    EXPECT_THROW(parse_cyclo(bad), std::invalid_argument) << bad;
  }
}

TEST(Laurent, ArithmeticAndCancellation) {
  auto S = make_space({"a", "x", "y"});
  QPoly x = QPoly::variable(S, "x"), y = QPoly::variable(S, "y");
  QPoly xi = QPoly::variable(S, "x", -1);
  EXPECT_EQ(x * xi, QPoly::constant(S, 1));
  QPoly p = x + y;
  QPoly q = x - y;
  EXPECT_EQ(p * q, x * x - y * y);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p.pow(3).term_count(), 4u);
  EXPECT_EQ(sigma(x), x - xi);
  EXPECT_EQ(sigma_mono<Rational>(S, mono(*S, {{"a", 2}, {"x", -1}})),
            QPoly::monomial(S, mono(*S, {{"a", 2}, {"x", -1}})) - QPoly::monomial(S, mono(*S, {{"a", -2}, {"x", 1}})));
  EXPECT_THROW(sigma(p), std::invalid_argument);
}

TEST(Laurent, SpaceMismatchIsRejected) {
  auto S = make_space({"x"});
  auto T = make_space({"y"});
  EXPECT_THROW(QPoly::variable(S, "x") + QPoly::variable(T, "y"), std::invalid_argument);
  EXPECT_THROW(make_space({"x", "x"}), std::invalid_argument);
  EXPECT_THROW(QPoly::variable(S, "z"), std::invalid_argument);
}

TEST(Laurent, ParityAndHalfWidth) {
  auto S = make_space({"a", "x"});
  QPoly x = QPoly::variable(S, "x");
  QPoly xi = QPoly::variable(S, "x", -1);
  QPoly p = x * x * x + x + QPoly::constant(S, 5) + xi + xi * xi * xi;
  auto [even, odd] = p.parity_split("x");
  EXPECT_EQ(even, QPoly::constant(S, 5));
  EXPECT_EQ(odd, p - QPoly::constant(S, 5));
  HalfWidth hw = odd.half_width("x");
  EXPECT_EQ(hw.width, 3);
  EXPECT_TRUE(hw.centered);
  HalfWidth off = (x * x + xi).half_width("x");
  EXPECT_EQ(off.width, 2);
  EXPECT_FALSE(off.centered);
  EXPECT_THROW(QPoly::zero(S).half_width("x"), std::invalid_argument);
}

TEST(Laurent, SubstitutionAndSwap) {
  auto S = make_space({"a", "x", "y"});
  QPoly x = QPoly::variable(S, "x"), y = QPoly::variable(S, "y");
  QPoly p = x * x + QPoly::constant(S, 3) * y;
  EXPECT_EQ(p.swap_vars("x", "y"), y * y + QPoly::constant(S, 3) * x);
  QPoly sub = p.substitute("x", mono(*S, {{"a", 1}, {"y", 1}}));
  QPoly ay = QPoly::monomial(S, mono(*S, {{"a", 1}, {"y", 1}}));
  EXPECT_EQ(sub, ay * ay + QPoly::constant(S, 3) * y);
}

TEST(Laurent, SpecializeAndEvaluate) {
  auto S = make_space({"a", "x"});
  QPoly p = sigma_mono<Rational>(S, mono(*S, {{"a", 1}, {"x", 1}}));
  auto T = make_space({"x"});
  WPoly r = reduce_generic_a(p);
  EXPECT_EQ(*r.space(), *T);
  EXPECT_EQ(eval(r, {{"x", 2}}), sigma(w * 2));
  EXPECT_EQ(eval(p, {{"a", w}, {"x", 2}}), sigma(w * 2));
  EXPECT_THROW(eval(p, {{"a", w}}), std::invalid_argument);
  VarAssignment v;
  EXPECT_THROW(v.set("x", 0), std::invalid_argument);
}

TEST(Laurent, DeterministicText) {
  auto S = make_space({"a", "x"});
  QPoly p = QPoly::variable(S, "x") * QPoly::constant(S, Rational(-3, 2)) + QPoly::variable(S, "a", -2);
  EXPECT_EQ(p.str(), "1 * a^-2 + -3/2 * x^1");
  EXPECT_EQ(QPoly::zero(S).str(), "0");
}
