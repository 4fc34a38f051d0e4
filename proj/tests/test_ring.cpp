#include "rbw/mat2.hpp"
#include "rbw/ring.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace rbw;

TEST(RingSpec, ParsesAllForms) {
    auto a = RingSpec::parse("gf(2,7)");
    EXPECT_EQ(a.kind, RingKind::galois_field);
    EXPECT_EQ(a.k, 7u);
    auto b = RingSpec::parse("GF(2, 3; x^3 + x + 1)");
    EXPECT_EQ(b.canonical(), "gf(2,3)");
    auto c = RingSpec::parse("gf(2,3;x^3+x^2+1)");
    EXPECT_EQ(c.canonical(), "gf(2,3;x^3+x^2+1)");
    auto d = RingSpec::parse("z/9");
    EXPECT_EQ(d.kind, RingKind::residue_ring);
    EXPECT_EQ(d.m, 9u);
    auto e = RingSpec::parse("gf(2,1)[t]/t^3");
    EXPECT_EQ(e.kind, RingKind::truncated_poly);
    EXPECT_EQ(e.trunc, 3u);
    EXPECT_EQ(e.canonical(), "gf(2,1)[t]/t^3");
    EXPECT_EQ(RingSpec::parse("gf(5)").canonical(), "gf(5,1)");
}

TEST(RingSpec, RejectsMalformed) {
    EXPECT_THROW(RingSpec::parse("gf(4,1)"), InvalidInput);
    EXPECT_THROW(RingSpec::parse("gf(2,3"), InvalidInput);
    EXPECT_THROW(RingSpec::parse("q/9"), InvalidInput);
    EXPECT_THROW(RingSpec::parse("z/9x"), InvalidInput);
}

TEST(Ring, ReducibleModulusRejected) {
    EXPECT_THROW(Ring::build("gf(2,3;x^3+1)"), InvalidInput);
    EXPECT_THROW(Ring::build("gf(2,2;x^2)"), InvalidInput);
}

TEST(Ring, SizeBound) {
    EXPECT_THROW(Ring::build("gf(2,15)"), BudgetExceeded);
    EXPECT_NO_THROW(Ring::build("gf(2,14)"));
    EXPECT_THROW(Ring::build("gf(2,3)", RingLimits{4}), BudgetExceeded);
}

TEST(Ring, Sizes) {
    EXPECT_EQ(Ring::build("gf(2,3;x^3+x+1)")->size(), 8u);
    auto f2 = Ring::build("gf(2,1)");
    EXPECT_EQ(f2->size(), 2u);
    EXPECT_TRUE(f2->units().wset.empty());
    auto z9 = Ring::build("z/9");
    EXPECT_TRUE(z9->is_local());
    EXPECT_FALSE(z9->is_field());
    EXPECT_EQ(z9->residue_field_size(), 3u);
    EXPECT_FALSE(Ring::build("z/15")->is_local());
}

// Field and ring axioms by exhaustive check on small rings.
class RingAxioms : public ::testing::TestWithParam<const char*> {};

TEST_P(RingAxioms, Exhaustive) {
    auto R = Ring::build(GetParam());
    const Elem n = R->size();
    for (Elem x = 0; x < n; ++x) {
        EXPECT_EQ(R->add(x, R->neg(x)), 0u);
        EXPECT_EQ(R->mul(x, 1), x);
        if (R->is_unit(x)) EXPECT_EQ(R->mul(x, R->inv(x)), 1u);
        for (Elem y = 0; y < n; ++y) {
            EXPECT_EQ(R->mul(x, y), R->mul(y, x));
            EXPECT_EQ(R->add(x, y), R->add(y, x));
            for (Elem z = 0; z < n; z += 3) {
                ASSERT_EQ(R->mul(R->mul(x, y), z), R->mul(x, R->mul(y, z)));
                ASSERT_EQ(R->mul(x, R->add(y, z)), R->add(R->mul(x, y), R->mul(x, z)));
            }
        }
    }
    std::size_t units = 0;
    for (Elem x = 0; x < n; ++x) units += R->is_unit(x);
    EXPECT_EQ(units, R->unit_count());
}

INSTANTIATE_TEST_SUITE_P(Small, RingAxioms,
                         ::testing::Values("gf(2,1)", "gf(2,2)", "gf(2,3)", "gf(2,4)", "gf(3,2)", "gf(5,1)", "z/9",
                                           "z/12", "gf(2,1)[t]/t^3", "gf(3,1)[t]/t^2", "gf(2,2)[t]/t^2"));

TEST(Ring, LargeFieldLogTables) {
    auto R = Ring::build("gf(2,9)");
    for (Elem x = 1; x < R->size(); x += 37) {
        EXPECT_EQ(R->mul(x, R->inv(x)), 1u);
        EXPECT_EQ(R->pow(x, R->size() - 1), 1u);
    }
}

TEST(Ring, MultiplicationMatchesModulus) {
    // In gf(2,3) with x^3+x+1: x * x^2 = x^3 = x + 1.
    auto R = Ring::build("gf(2,3)");
    EXPECT_EQ(R->mul(2, 4), 3u);
    EXPECT_EQ(R->format(6), "x^2+x");
}

TEST(UnitData, GF8) {
    auto R = Ring::build("gf(2,3)");
    const auto& u = R->units();
    EXPECT_EQ(u.units.size(), 7u);
    EXPECT_EQ(u.wset.size(), 6u);
    EXPECT_EQ(u.class_count(), 1u);
    EXPECT_EQ(u.mu2, std::vector<Elem>{1});
    EXPECT_TRUE(u.cyclic());
}

TEST(UnitData, TruncatedF2) {
    auto R = Ring::build("gf(2,1)[t]/t^3");
    const auto& u = R->units();
    // Encoding: 1 = 1, 1+t = 3, 1+t^2 = 5, 1+t+t^2 = 7.
    EXPECT_EQ(u.units, (std::vector<Elem>{1, 3, 5, 7}));
    EXPECT_EQ(u.squares, (std::vector<Elem>{1, 5}));
    EXPECT_EQ(u.class_count(), 2u);
    EXPECT_EQ(u.mu2, (std::vector<Elem>{1, 5}));
    EXPECT_TRUE(u.wset.empty());
}

TEST(UnitData, Z9) {
    auto R = Ring::build("z/9");
    const auto& u = R->units();
    EXPECT_EQ(u.units.size(), 6u);
    EXPECT_EQ(u.squares, (std::vector<Elem>{1, 4, 7}));
    EXPECT_EQ(u.class_count(), 2u);
    EXPECT_EQ(u.mu2, (std::vector<Elem>{1, 8}));
}

TEST(UnitData, ClassMapIsHomomorphismWithSquareKernel) {
    for (const char* s : {"z/9", "z/25", "gf(2,1)[t]/t^3", "gf(3,2)", "z/15", "gf(2,2)[t]/t^3"}) {
        auto R = Ring::build(s);
        const auto& u = R->units();
        std::set<Elem> kernel;
        for (Elem a : u.units) {
            if (u.class_of[a] == u.class_of[1]) kernel.insert(a);
            for (Elem b : u.units)
                ASSERT_EQ(u.class_of[R->mul(a, b)], u.class_mul[u.class_of[a]][u.class_of[b]]) << s;
        }
        EXPECT_EQ(kernel, std::set<Elem>(u.squares.begin(), u.squares.end())) << s;
    }
}

TEST(UnitData, CharacteristicTwoFieldsHaveTrivialClasses) {
    for (int k = 1; k <= 8; ++k) {
        auto R = Ring::build("gf(2," + std::to_string(k) + ")");
        EXPECT_EQ(R->units().class_count(), 1u);
        EXPECT_EQ(R->units().mu2, std::vector<Elem>{1});
    }
}

TEST(UnitData, InstallRejectsMismatch) {
    auto R = Ring::build("z/9");
    UnitData bogus;
    bogus.units = {1, 2};
    EXPECT_THROW(R->install_units(bogus), InvalidInput);
}

TEST(Mat2, CharTwoIdentities) {
    for (const char* s : {"gf(2,3)", "gf(2,4)", "gf(2,1)[t]/t^3"}) {
        SL2 G(Ring::build(s));
        const Ring& R = G.ring();
        EXPECT_EQ(G.mul(G.w(), G.w()), G.identity());
        for (Elem z : R.units().units) {
            Elem zi = R.inv(z);
            EXPECT_EQ(G.mul(G.diag(zi), G.g(zi)), G.mul(G.g(z), G.diag(z)));
            EXPECT_EQ(G.mul(G.diag(z), G.h(z)), G.mul(G.h(zi), G.diag(z)));
            EXPECT_EQ(G.mul(G.inv(G.g(z)), G.w()), G.h(zi));
            EXPECT_EQ(G.inv(G.h(z)), G.h(z));
            EXPECT_TRUE(G.is_sl2(G.g(z)));
        }
    }
}

TEST(Mat2, GxDeterminantIsMinusOne) {
    SL2 G(Ring::build("gf(3,1)"));
    EXPECT_EQ(G.det(G.g(1)), 2u);
    EXPECT_FALSE(G.is_sl2(G.g(1)));
}

TEST(Mat2, EnumerationOrders) {
    SL2 G8(Ring::build("gf(2,3)"));
    auto all = G8.enumerate(1'000'000);
    EXPECT_EQ(all.size(), 504u);
    std::set<std::uint64_t> keys;
    for (auto& m : all) {
        EXPECT_TRUE(G8.is_sl2(m));
        keys.insert(m.key());
    }
    EXPECT_EQ(keys.size(), 504u);
    EXPECT_EQ(SL2(Ring::build("z/9")).enumerate(1'000'000).size(), 648u);
    EXPECT_EQ(SL2(Ring::build("z/6")).order(), 144u);
    EXPECT_THROW(G8.enumerate(100), BudgetExceeded);
}

TEST(Mat2, KeyRoundTrip) {
    Mat2 m{3, 7, 11, 13};
    EXPECT_EQ(Mat2::from_key(m.key()), m);
}
