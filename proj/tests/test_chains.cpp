#include "rbw/chains.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rbw;

namespace {

struct GF8 : ::testing::Test {
    RingPtr R = Ring::build("gf(2,3)");
    ChainCalculus C{R};
    std::vector<Mat2> elems = C.sl2().enumerate(1000);
    std::mt19937 rng{2024};

    const Mat2& any() { return elems[std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng)]; }
    std::vector<Mat2> torus() const {
        std::vector<Mat2> out;
        for (const auto& g : elems)
            if (C.sl2().in_T(g)) out.push_back(g);
        return out;
    }
    std::vector<Mat2> borel() const {
        std::vector<Mat2> out;
        for (const auto& g : elems)
            if (C.sl2().in_B(g)) out.push_back(g);
        return out;
    }
    BarChain random_bar(std::size_t n, int terms) {
        BarChain c(n);
        for (int i = 0; i < terms; ++i) {
            std::vector<Mat2> t;
            for (std::size_t j = 0; j < n; ++j) t.push_back(any());
            c.add(t, 1 + i % 3);
        }
        return c;
    }
    TensorChain random_tensor(std::size_t n, std::size_t level, int terms) {
        TensorChain c(n, level);
        const XGen std = C.standard(level);
        for (int i = 0; i < terms; ++i) {
            std::vector<Mat2> t;
            for (std::size_t j = 0; j < n; ++j) t.push_back(any());
            C.add(c, any(), t, C.act(any(), std), (i % 2) ? 1 : -2);
        }
        return c;
    }
};

}  // namespace

TEST_F(GF8, NormalizationDropsIdentityTuples) {
    BarChain c(2);
    c.add({C.sl2().identity(), any()}, 3);
    EXPECT_TRUE(c.empty());
    UnitBarChain u(2, {{{1, 2}, 1}, {{2, 3}, 2}, {{2, 3}, -2}});
    EXPECT_TRUE(u.empty());
    EXPECT_THROW(u.add({2}, 1), InvalidInput);
}

TEST_F(GF8, BarBoundaryFormulas) {
    UnitOps u = C.unit_ops();
    const Elem a = 2, b = 3, ab = R->mul(a, b);
    UnitBarChain c(2, {{{a, b}, 1}});
    UnitBarChain expect(1, {{{b}, 1}, {{ab}, -1}, {{a}, 1}});
    EXPECT_EQ(bar_d(c, u), expect);
    // [g] -> g[] - [] vanishes once g acts trivially.
    BarChain g(1, {{{any()}, 1}});
    EXPECT_TRUE(bar_d(g, C.mat_ops()).empty());
}

TEST_F(GF8, BoundarySquaresToZero) {
    for (int i = 0; i < 100; ++i) {
        BarChain c(3, {{{any(), any(), any()}, 1}});
        EXPECT_TRUE(bar_d(bar_d(c, C.mat_ops()), C.mat_ops()).empty());
        HomogChain h(3, {{{any(), any(), any(), any()}, 1}});
        EXPECT_TRUE(homog_d(homog_d(h)).empty());
    }
}

TEST_F(GF8, Conversions) {
    UnitOps u = C.unit_ops();
    const Elem a = 2, b = 5;
    UnitHomogChain h(2, {{{1, a, R->mul(a, b)}, 1}});
    EXPECT_EQ(to_homog(UnitBarChain(2, {{{a, b}, 1}}), u), h);
    const Mat2 g0 = any(), g1 = any();
    auto [coef, tuple] = homog_to_bar_tuple(std::vector<Mat2>{g0, g1}, C.mat_ops());
    EXPECT_EQ(coef, g0);
    EXPECT_EQ(tuple, std::vector<Mat2>{C.sl2().mul(C.sl2().inv(g0), g1)});
    for (int i = 0; i < 20; ++i) {
        BarChain c = random_bar(3, 5);
        EXPECT_EQ(to_bar(to_homog(c, C.mat_ops()), C.mat_ops()), c);
        EXPECT_EQ(to_bar(homog_d(to_homog(c, C.mat_ops())), C.mat_ops()), bar_d(c, C.mat_ops()));
    }
}

TEST_F(GF8, TensorCanonicalization) {
    const SL2& G = C.sl2();
    const XGen std = C.standard(1);
    const Mat2 g = any();
    TensorChain a(1, 1), b(1, 1);
    C.add(a, {g}, std, 1);
    EXPECT_EQ(a.terms().begin()->first.first, std);
    for (int i = 0; i < 50; ++i) {
        const Mat2 h = any();
        TensorChain x(1, 1), y(1, 1);
        C.add(x, h, {g}, std, 1);
        C.add(y, {g}, C.act(G.inv(h), std), 1);
        EXPECT_EQ(x, y);
        // The coefficient read off the standard form lies in T h^{-1}.
        TensorChain z(1, 1);
        C.add(z, {g}, C.act(h, std), 1);
        const auto terms = C.standard_terms(z);
        ASSERT_EQ(terms.size(), 1u);
        EXPECT_TRUE(G.in_T(G.mul(terms[0].coef, h)));
    }
    // Stabilizer elements of (inf, 0) leave the pair unchanged.
    for (const auto& t : torus()) {
        TensorChain x(1, 1);
        C.add(x, t, {g}, std, 1);
        EXPECT_EQ(x, a);
    }
    EXPECT_THROW(C.add(b, {g}, XGen{0, 0}, 1), InvalidInput);
}

TEST_F(GF8, DoubleComplexSquares) {
    for (int i = 0; i < 20; ++i) {
        TensorChain c = random_tensor(3, 1, 4);
        EXPECT_TRUE(C.d_bar(C.d_bar(c)).empty());
        EXPECT_EQ(C.d_x(C.d_bar(c)), C.d_bar(C.d_x(c)));
        TensorChain x(2, 2);
        const XGen t{C.lines().infinity(), C.lines().zero(), C.lines().affine(3)};
        C.add(x, any(), {any(), any()}, t, 1);
        EXPECT_TRUE(C.d_x(C.d_x(x)).empty());
    }
}

TEST_F(GF8, TorusSection) {
    const SL2& G = C.sl2();
    for (const auto& t : torus()) EXPECT_EQ(C.section_T(t).gbar, t);
    EXPECT_EQ(C.section_T(G.w()).gbar, G.identity());
    for (Elem x = 1; x < R->size(); ++x) EXPECT_EQ(C.section_T(G.h(x)).gbar, G.identity());
    // The a = 0 representative is [[0,1],[1,bd]] in characteristic 2.
    EXPECT_EQ(C.section_T(G.mul(G.diag(5), G.w())).s, (Mat2{0, 1, 1, 0}));
    for (int i = 0; i < 200; ++i) {
        const Mat2 g = any();
        auto v = C.section_T(g);
        EXPECT_TRUE(G.in_T(v.gbar));
        EXPECT_EQ(G.mul(v.gbar, v.s), g);
        for (const auto& t : torus()) {
            auto w = C.section_T(G.mul(t, g));
            EXPECT_EQ(w.s, v.s);
            EXPECT_EQ(w.gbar, G.mul(t, v.gbar));
        }
    }
}

TEST_F(GF8, BorelSection) {
    const SL2& G = C.sl2();
    const auto B = borel();
    EXPECT_EQ(B.size(), 56u);
    for (const auto& b : B) {
        EXPECT_EQ(C.section_B(b).gbar, b);
        EXPECT_EQ(C.alpha(b), G.diag(b.a));
    }
    for (const auto& x : B)
        for (const auto& y : B) EXPECT_EQ(C.alpha(G.mul(x, y)), G.mul(C.alpha(x), C.alpha(y)));
    for (int i = 0; i < 200; ++i) {
        const Mat2 g = any();
        auto v = C.section_B(g);
        EXPECT_TRUE(G.in_B(v.gbar));
        EXPECT_EQ(G.mul(v.gbar, v.s), g);
        for (const auto& b : B) EXPECT_EQ(C.section_B(G.mul(b, g)).gbar, G.mul(b, v.gbar));
    }
    EXPECT_THROW(C.alpha(G.w()), InvalidInput);
}

TEST(Sections, LocalRings) {
    ChainCalculus C(Ring::build("z/9"));
    const SL2& G = C.sl2();
    EXPECT_THROW(C.section_T(Mat2{3, 1, 1, 3}), InvalidInput);
    EXPECT_TRUE(G.in_B(C.section_B(Mat2{1, 0, 3, 1}).gbar));
    for (const auto& g : G.enumerate(1000)) {
        auto v = C.section_B(g);
        EXPECT_EQ(G.mul(v.gbar, v.s), g);
        EXPECT_EQ(C.section_B(G.mul(G.upper(2, 4), g)).s, v.s);
    }
}

TEST_F(GF8, PushdownsFixTorusAndBorelChains) {
    const SL2& G = C.sl2();
    TensorChain t(2, 1);
    C.add(t, {G.diag(2), G.diag(6)}, C.standard(1), 1);
    EXPECT_EQ(C.push_X1_to_T(t), UnitBarChain(2, {{{2, 6}, 1}}));
    EXPECT_TRUE(C.push_X1_to_T(TensorChain(2, 1)).empty());
    const auto B = borel();
    TensorChain b(3, 0);
    C.add(b, {B[9], B[20], B[41]}, C.standard(0), 1);
    EXPECT_EQ(C.push_X0_to_T(b), UnitBarChain(3, {{{B[9].a, B[20].a, B[41].a}, 1}}));
    EXPECT_TRUE(C.push_X0_to_T(TensorChain(3, 0)).empty());
    EXPECT_THROW(C.push_X0_to_T(t), InvalidInput);
}

TEST_F(GF8, PushdownsAreChainMaps) {
    UnitOps u = C.unit_ops();
    for (int i = 0; i < 20; ++i) {
        TensorChain c1 = random_tensor(3, 1, 5);
        EXPECT_EQ(C.push_X1_to_T(C.d_bar(c1)), bar_d(C.push_X1_to_T(c1), u));
        TensorChain c0 = random_tensor(3, 0, 5);
        EXPECT_EQ(C.push_X0_to_T(C.d_bar(c0)), bar_d(C.push_X0_to_T(c0), u));
    }
}

TEST_F(GF8, IsBoundary) {
    UnitOps u = C.unit_ops();
    const Elem a = 2, b = 3;
    UnitBarChain c(2, {{{a, b}, 1}, {{b, a}, -1}});
    auto r = C.is_boundary(c);
    ASSERT_TRUE(r.found());
    EXPECT_EQ(bar_d(*r.witness, u), c);
    EXPECT_TRUE(C.is_boundary(UnitBarChain(2)).witness->empty());
    auto g = C.is_boundary(UnitBarChain(1, {{{a}, 1}}));
    EXPECT_FALSE(g.found());
    EXPECT_GT(g.basis_size, 0u);
    EXPECT_THROW(C.is_boundary(UnitBarChain(2, {{{a, b}, 1}})), InvalidInput);
    // [z|z^-1|z] + [z^-1|z|z^-1] is a degree-3 boundary.
    for (Elem z = 2; z < 8; ++z) {
        UnitBarChain s(3, {{{z, R->inv(z), z}, 1}, {{R->inv(z), z, R->inv(z)}, 1}});
        EXPECT_TRUE(C.is_boundary(s).found()) << z;
    }
}

TEST(IsBoundary, BudgetGivesNotFound) {
    ChainCalculus C(Ring::build("gf(2,4)"), 10);
    UnitBarChain c(2, {{{2, 3}, 1}, {{3, 2}, -1}});
    auto r = C.is_boundary(c);
    EXPECT_FALSE(r.found());
    EXPECT_GT(r.basis_size, 10u);
}
