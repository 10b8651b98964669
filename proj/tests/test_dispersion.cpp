#include <gtest/gtest.h>

#include <algorithm>

#include "diffalg/dispersion.hpp"
#include "diffalg/error.hpp"
#include "support/random.hpp"

using namespace diffalg;
using diffalg::testing::Gen;

namespace {

const RatFun x = RatFun::x();
const Poly X = Poly::x();
const DiffStructure S = DiffStructure::shift();
const DiffStructure Q2 = DiffStructure::q_dilation(Rat(2));

Poly lin(long r) { return Poly::linear(Rat(r)); }

// Dispersion of a product of linear factors, straight from the roots.
std::int64_t disp_from_roots(const std::vector<long>& roots) {
    std::int64_t best = 0;
    for (long a : roots)
        for (long b : roots) best = std::max<std::int64_t>(best, b - a);
    return best;
}

void expect_decomp_holds(const DiffStructure& ds, const RatFun& f, const Rat& a, const StandardDecomp& d) {
    EXPECT_EQ(d.standard_part + apply_sigma(ds, d.certificate_g) - RatFun(a) * d.certificate_g, f);
    EXPECT_EQ(polar_dispersion(ds, d.standard_part), 0);
}

} // namespace

TEST(Dispersion, Examples) {
    EXPECT_EQ(dispersion(S, X * lin(-3)), 3);
    EXPECT_EQ(dispersion(S, X * X + Poly(1)), 0);
    EXPECT_EQ(dispersion(Q2, lin(1) * lin(4)), 2);
    EXPECT_THROW(dispersion(S, Poly()), PreconditionError);
}

TEST(Dispersion, QIgnoresPowersOfX) {
    EXPECT_EQ(dispersion(Q2, X * X * lin(3)), 0);
    EXPECT_EQ(dispersion(DiffStructure::q_dilation(Rat(1, 3)), lin(1) * lin(9) * X), 2);
    EXPECT_EQ(dispersion(DiffStructure::q_dilation(Rat(-2)), lin(1) * lin(-8)), 3);
}

TEST(Dispersion, ConjugatePairsWithoutFactoring) {
    // (x^2 + 1) and its shift by 7
    Poly p = X * X + Poly(1);
    EXPECT_EQ(dispersion(S, p * taylor_shift(p, Rat(7))), 7);
    EXPECT_EQ(dispersion(Q2, p * dilate(p, Rat(8))), 3);
}

TEST(Dispersion, WideWindowUsesResultant) {
    // roots 0 and 100000 force the resultant route
    EXPECT_EQ(dispersion(S, X * lin(100000)), 100000);
    EXPECT_EQ(dispersion(S, lin(-70000) * lin(70001) * (X * X + Poly(2))), 140001);
    EXPECT_EQ(shift_set(S, lin(0), lin(99999)), (std::vector<std::int64_t>{99999}));
}

TEST(Dispersion, AgreesWithRootOracle) {
    Gen g(21);
    for (int t = 0; t < 200; ++t) {
        std::vector<long> roots;
        Poly p(Rat(1));
        for (int i = 0, k = static_cast<int>(g.integer(1, 5)); i < k; ++i) {
            roots.push_back(g.integer(-12, 12));
            p *= lin(roots.back());
        }
        EXPECT_EQ(dispersion(S, p), disp_from_roots(roots));
    }
}

TEST(Dispersion, ShiftedCopyLowerBound) {
    Gen g(22);
    for (int t = 0; t < 100; ++t) {
        Poly Q = g.poly(static_cast<int>(g.integer(1, 4)));
        const long k = g.integer(1, 5);
        EXPECT_GE(dispersion(S, Q * taylor_shift(Q, Rat(k))), k);
        Poly R = g.poly(static_cast<int>(g.integer(1, 3)));
        if (R[0] == 0) R += Poly(1);
        EXPECT_GE(dispersion(Q2, R * dilate(R, Rat(mpz_class(1) << k))), k);
    }
}

TEST(PolarDispersion, Examples) {
    EXPECT_EQ(polar_dispersion(S, RatFun(1) / x), 0);
    EXPECT_EQ(polar_dispersion(S, RatFun(1) / x + RatFun(1) / (x + 2)), 2);
    EXPECT_EQ(polar_dispersion(Q2, RatFun(1) / ((x - 1) * (x - 2))), 1);
    EXPECT_EQ(polar_dispersion(S, x * x), 0);
}

TEST(IsStandard, Examples) {
    EXPECT_TRUE(is_standard(S, x));
    EXPECT_FALSE(is_standard(S, (x + 1) / x));
    EXPECT_TRUE(is_standard(Q2, x - 1));
    EXPECT_TRUE(is_standard(Q2, 5 * x * x * x));
    EXPECT_THROW(is_standard(S, RatFun()), PreconditionError);
}

TEST(AdditiveDecomp, Examples) {
    auto d1 = additive_standard_decomp(S, RatFun(1) / (x + 1), Rat(1));
    EXPECT_EQ(d1.standard_part, RatFun(1) / (x + 1));
    EXPECT_TRUE(d1.certificate_g.is_zero());

    auto d2 = additive_standard_decomp(S, RatFun(1) / x - RatFun(1) / (x + 1), Rat(1));
    EXPECT_TRUE(d2.standard_part.is_zero());
    EXPECT_EQ(d2.certificate_g, RatFun(-1) / x);

    auto d3 = additive_standard_decomp(S, RatFun(1) / x + RatFun(1) / (x + 2), Rat(1));
    EXPECT_EQ(d3.standard_part, RatFun(2) / x);
    EXPECT_EQ(d3.certificate_g, RatFun(1) / x + RatFun(1) / (x + 1));

    EXPECT_THROW(additive_standard_decomp(S, x, Rat(0)), PreconditionError);
}

TEST(AdditiveDecomp, LaurentPartPassesThroughInQCase) {
    RatFun f = x * x + RatFun(3) / x + RatFun(1) / (x - 1) + RatFun(1) / (x - 4);
    auto d = additive_standard_decomp(Q2, f, Rat(5));
    expect_decomp_holds(Q2, f, Rat(5), d);
    // the x^2 and 3/x terms are untouched; 1/(x-1) joined its orbit mate
    RatFun rest = d.standard_part - x * x - RatFun(3) / x;
    EXPECT_EQ(rest.den(), Poly::linear(Rat(4)));
}

TEST(MultForm, Examples) {
    auto m1 = multiplicative_standard_form(S, x);
    EXPECT_EQ(m1.standard_part, x);
    EXPECT_EQ(m1.certificate_g, RatFun(1));

    auto m2 = multiplicative_standard_form(S, (x + 1) / x);
    EXPECT_EQ(m2.standard_part, RatFun(1));
    EXPECT_EQ(m2.certificate_g, x);

    auto m3 = multiplicative_standard_form(Q2, 2 * x * (2 * x - 1) / (x - 1));
    EXPECT_EQ(m3.standard_part, 2 * x);
    EXPECT_EQ(m3.certificate_g, x - 1);

    EXPECT_THROW(multiplicative_standard_form(S, RatFun()), PreconditionError);
}

class RoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(RoundTrip, AdditiveAndMultiplicative) {
    const DiffStructure ds = GetParam() == 0 ? S : DiffStructure::q_dilation(Rat(-1, 2));
    Gen g(400 + static_cast<std::uint64_t>(GetParam()));
    for (int t = 0; t < 200; ++t) {
        // seed orbit collisions by multiplying in sigma-images of a factor
        Poly base = g.factored(static_cast<int>(g.integer(1, 3)));
        Poly den = base * sigma_poly(ds, base, g.integer(1, 3)) * g.factored(static_cast<int>(g.integer(0, 2)));
        RatFun f(g.poly(static_cast<int>(g.integer(0, 5))), den);
        const Rat a = g.nonzero_rat();
        auto d = additive_standard_decomp(ds, f, a);
        expect_decomp_holds(ds, f, a, d);
        if (f.is_zero()) continue;
        auto m = multiplicative_standard_form(ds, f);
        EXPECT_EQ(m.standard_part * apply_sigma(ds, m.certificate_g) / m.certificate_g, f);
        EXPECT_TRUE(is_standard(ds, m.standard_part));
    }
}

TEST_P(RoundTrip, PositivePolarDispersionOfTwistedDifference) {
    const DiffStructure ds = GetParam() == 0 ? S : DiffStructure::q_dilation(Rat(3));
    Gen g(500 + static_cast<std::uint64_t>(GetParam()));
    for (int t = 0; t < 200; ++t) {
        Poly den = g.factored(static_cast<int>(g.integer(1, 3)));
        if (ds.is_q()) den = strip_x(den);
        if (den.degree() < 1) den = Poly::linear(Rat(g.integer(1, 4)));
        RatFun f(g.poly(static_cast<int>(g.integer(0, 3))), den);
        if (f.is_polynomial()) continue;
        const Rat a = g.nonzero_rat();
        EXPECT_GE(polar_dispersion(ds, apply_sigma(ds, f) - RatFun(a) * f), 1);
    }
}

INSTANTIATE_TEST_SUITE_P(BothStructures, RoundTrip, ::testing::Values(0, 1));
