#include "rbw/certify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rbw;

namespace {

std::vector<Elem> square_roots_of_one(const Ring& R) {
    std::vector<Elem> out;
    for (Elem a = 0; a < R.size(); ++a)
        if (R.is_unit(a) && a != R.one() && R.mul(a, a) == R.one()) out.push_back(a);
    return out;
}

std::vector<Elem> letters(const UnitBarChain& c) {
    std::vector<Elem> out;
    for (const auto& [t, k] : c.terms()) {
        EXPECT_EQ(k, 1);
        out.push_back(t.at(0));
    }
    return out;
}

bool witness_grade(Verdict v) { return v == Verdict::exact_match || v == Verdict::match_after_witness; }

}  // namespace

TEST(Kernel, D111IsSquareRootsOfOne) {
    for (const char* spec : {"gf(2,1)", "gf(2,2)", "gf(2,3)", "gf(2,4)", "gf(2,5)", "gf(2,6)", "gf(2,7)", "z/9",
                             "gf(2,1)[t]/t^3", "gf(3,2)"}) {
        auto R = Ring::build(spec);
        auto cert = Certifier(R).d1_11_kernel_check();
        EXPECT_TRUE(cert.passed()) << spec;
        EXPECT_EQ(cert.verdict, Verdict::exact_match) << spec;
        EXPECT_EQ(letters(cert.computed), square_roots_of_one(*R)) << spec;
    }
    EXPECT_EQ(letters(Certifier(Ring::build("z/9")).d1_11_kernel_check().computed), std::vector<Elem>{8});
}

TEST(Kernel, D121ReturnsB) {
    for (const char* spec : {"gf(2,3)", "z/9", "gf(2,1)[t]/t^3", "gf(3,2)", "z/25"}) {
        auto R = Ring::build(spec);
        Certifier cf(R);
        for (Elem b : R->units().mu2) {
            auto cert = cf.d1_21_check(b);
            EXPECT_TRUE(cert.passed()) << spec << " b=" << R->format(b);
            if (b == R->one()) EXPECT_TRUE(cert.computed.empty());
            else EXPECT_EQ(h1_class(*R, cert.computed), b);
        }
    }
    auto R = Ring::build("gf(2,1)[t]/t^3");
    const Elem b = R->units().mu2.back();
    EXPECT_EQ(R->format(b), "1+t^2");
    EXPECT_THROW(Certifier(R).d1_21_check(R->add(R->one(), 2)), InvalidInput);
}

TEST(Kernel, D110AndD112Vanish) {
    auto R = Ring::build("gf(2,3)");
    Certifier cf(R);
    EXPECT_EQ(cf.d1_10_check().verdict, Verdict::exact_match);
    for (Elem a : cf.units())
        for (Elem b : cf.units()) {
            auto cert = cf.d1_12_check(a, b);
            EXPECT_TRUE(cert.passed()) << a << "," << b;
            EXPECT_TRUE(cert.expected.empty());
        }
}

TEST(D122, AllPairsOverGF8) {
    auto R = Ring::build("gf(2,3)");
    Certifier cf(R);
    for (Elem a : cf.units())
        for (Elem b : cf.units()) {
            auto cert = cf.d1_22_certificate(a, b);
            ASSERT_TRUE(cert.passed()) << a << "," << b << " residual " << cf.calculus().format(cert.residual);
            // The printed witness degenerates exactly when a or b is 1.
            const bool trivial = a == R->one() || b == R->one();
            EXPECT_EQ(cert.verdict, trivial ? Verdict::exact_match : Verdict::match_after_witness) << a << "," << b;
        }
    auto one = cf.d1_22_certificate(1, 1);
    EXPECT_TRUE(one.computed.empty());
    EXPECT_TRUE(one.expected.empty());
}

TEST(D122, SampleOverGF16AndGF32) {
    std::mt19937 rng(5);
    for (const char* spec : {"gf(2,4)", "gf(2,5)"}) {
        Certifier cf(Ring::build(spec));
        auto u = cf.units();
        std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
        for (int i = 0; i < 20; ++i) {
            auto cert = cf.d1_22_certificate(u[pick(rng)], u[pick(rng)]);
            EXPECT_TRUE(cert.passed() && witness_grade(cert.verdict)) << spec;
        }
    }
}

TEST(D122, LambdaIsACycleInZ1) {
    Certifier cf(Ring::build("gf(2,2)"));
    for (Elem a : cf.units())
        for (Elem b : cf.units()) {
            auto l = cf.lambda(a, b);
            EXPECT_TRUE(cf.calculus().d_bar(l).empty());
            EXPECT_TRUE(cf.calculus().d_x(l).empty());
        }
}

TEST(Theta, EveryUnitOverGF8AndGF16) {
    for (const char* spec : {"gf(2,3)", "gf(2,4)"}) {
        auto R = Ring::build(spec);
        Certifier cf(R);
        for (Elem z : cf.units()) {
            auto cert = cf.theta_certificate(z);
            EXPECT_TRUE(cert.passed()) << spec << " z=" << z;
            EXPECT_EQ(cert.verdict, Verdict::exact_match);
            EXPECT_EQ(cert.computed, UnitBarChain(3, {{{z, R->inv(z), z}, 1}}));
        }
    }
}

TEST(Theta, PrintedFifthTermFails) {
    Certifier cf(Ring::build("gf(2,3)"));
    const auto& C = cf.calculus();
    for (Elem z : cf.units()) {
        TensorChain rhs(2, 1);
        C.add(rhs, {cf.W(z), cf.W(z)}, cf.Y0(), 1);
        rhs += C.d_bar(cf.tensor(cf.theta(z, true), cf.Y0()));
        EXPECT_EQ(cf.boundary_term(z) == rhs, z == 1) << z;
    }
}

TEST(D222, AllTriplesOverGF8) {
    auto R = Ring::build("gf(2,3)");
    const auto u = R->units().units;
    const std::size_t n = u.size();
    auto certs = certify_batch(R, n * n * n, [&](const Certifier& cf, std::size_t i) {
        return cf.d2_22_certificate(u[i / (n * n)], u[i / n % n], u[i % n]);
    });
    ASSERT_EQ(certs.size(), 343u);
    for (const auto& c : certs) {
        EXPECT_TRUE(c.passed());
        EXPECT_TRUE(witness_grade(c.verdict));
    }
    EXPECT_EQ(certs.front().verdict, Verdict::exact_match);
    EXPECT_TRUE(certs.front().computed.empty());
    EXPECT_TRUE(certs.front().witnesses.empty());
}

TEST(D222, SampleOverGF16) {
    auto R = Ring::build("gf(2,4)");
    Certifier cf(R);
    auto u = cf.units();
    std::mt19937 rng(50);
    std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
    for (int i = 0; i < 50; ++i) {
        const Elem a = u[pick(rng)], b = u[pick(rng)], c = u[pick(rng)];
        auto cert = cf.d2_22_certificate(a, b, c);
        EXPECT_TRUE(cert.passed()) << a << "," << b << "," << c;
    }
}

TEST(D222, LambdaIsTheDefinedCombination) {
    auto R = Ring::build("gf(2,3)");
    Certifier cf(R);
    const Elem a = 3, b = 5, c = 6;
    auto cert = cf.d2_22_certificate(a, b, c);
    ASSERT_EQ(cert.tensors.front().first, "Lambda(a,b,c)");
    EXPECT_EQ(cert.tensors.front().second, cf.lambda(R->mul(a, b), c) - cf.lambda(a, c) - cf.lambda(b, c));
    EXPECT_EQ(cert.witnesses.front().second, cf.d4_witness(a, b, c));
}

TEST(Certify, BatchMatchesSequential) {
    auto R = Ring::build("gf(2,2)");
    const auto u = R->units().units;
    auto par = certify_batch(R, 9, [&](const Certifier& cf, std::size_t i) { return cf.d1_22_certificate(u[i / 3], u[i % 3]); }, 4);
    Certifier cf(R);
    for (std::size_t i = 0; i < 9; ++i) {
        auto s = cf.d1_22_certificate(u[i / 3], u[i % 3]);
        EXPECT_EQ(par[i].computed, s.computed);
        EXPECT_EQ(par[i].verdict, s.verdict);
    }
}

TEST(Certify, RejectsOutsideCharacteristicTwoFields) {
    EXPECT_THROW(Certifier(Ring::build("z/9")).d1_22_certificate(2, 4), InvalidInput);
    EXPECT_THROW(Certifier(Ring::build("gf(2,1)[t]/t^3")).theta_certificate(1), InvalidInput);
    EXPECT_THROW(Certifier(Ring::build("gf(2,3)")).d2_22_certificate(0, 1, 1), InvalidInput);
}

TEST(Conditions, FlagLogic) {
    auto r128 = condition_report(Ring::build("gf(2,7)"));
    EXPECT_TRUE(r128.all_pass());
    EXPECT_EQ(r128.c3.basis, "analytic");
    EXPECT_EQ(r128.c2.basis, "analytic");
    auto r64 = condition_report(Ring::build("gf(2,6)"));
    EXPECT_FALSE(*r64.inequality);
    EXPECT_EQ(r64.c3.status, FlagStatus::not_guaranteed);
    EXPECT_TRUE(r64.direct.empty());
    auto z9 = condition_report(Ring::build("z/9"));
    EXPECT_EQ(z9.c1.status, FlagStatus::fail);
    EXPECT_FALSE(z9.inequality.has_value());
}

TEST(Conditions, DirectCheckAgreesWithFullCoinvariants) {
    // Oracle: the full bar path computes H_n(N) with the induced actions and their coinvariants.
    for (const char* spec : {"gf(2,2)", "gf(2,3)"}) {
        auto R = Ring::build(spec);
        const auto N = additive_group(*R);
        std::vector<BarComplex::Perm> acts;
        for (Elem x : R->units().units) {
            BarComplex::Perm p(R->size());
            for (Elem b = 0; b < R->size(); ++b) p[b] = R->mul(R->mul(x, x), b);
            acts.push_back(p);
        }
        for (std::size_t n : {2, 3})
            EXPECT_EQ(unipotent_coinvariants(*R, n).coinvariants, *bar_homology(N, n, acts).coinvariants) << spec << n;
    }
}

TEST(Conditions, DirectCheckOverGF8AndGF16) {
    auto r8 = condition_report(Ring::build("gf(2,3)"));
    ASSERT_EQ(r8.direct.size(), 2u);
    EXPECT_TRUE(r8.direct[0].vanishes());
    // The norm character u -> u^(1+2+4) = 1 survives on the top exterior power.
    EXPECT_EQ(r8.direct[1].coinvariants, std::vector<Integer>{2});
    EXPECT_EQ(r8.c3.status, FlagStatus::fail);
    EXPECT_EQ(r8.c2.basis, "audit");
    EXPECT_TRUE(r8.c2.passed());
    auto r16 = condition_report(Ring::build("gf(2,4)"));
    ASSERT_EQ(r16.direct.size(), 2u);
    EXPECT_TRUE(r16.direct[0].vanishes() && r16.direct[1].vanishes());
    EXPECT_TRUE(r16.all_pass());
}

TEST(BlochWigner, SmallFields) {
    auto r8 = bw_report(Ring::build("gf(2,3)"));
    EXPECT_EQ(r8.tor, std::vector<Integer>{7});
    EXPECT_EQ(r8.tor_fixed, r8.tor);
    EXPECT_EQ(r8.rb, std::vector<Integer>{9});
    EXPECT_TRUE(r8.snf_paths_agree());
    EXPECT_TRUE(r8.rb_equals_b);
    EXPECT_FALSE(r8.predicted_h3.has_value());
    auto r16 = bw_report(Ring::build("gf(2,4)"));
    EXPECT_EQ(r16.tor, std::vector<Integer>{15});
    EXPECT_EQ(r16.rb, std::vector<Integer>{17});
    ASSERT_TRUE(r16.predicted_h3.has_value());
    // Agrees with the classical order q^2 - 1 of H_3(SL_2(F_q)).
    EXPECT_EQ(*r16.predicted_h3, 255);
}

TEST(BlochWigner, TorFixedPointsOfCyclicGroups) {
    for (long n : {2, 6, 15, 31}) {
        auto t = tor1(AbPresentation::cyclic_sum({Integer(n)}));
        EXPECT_EQ(t.fixed.group.invariants(), t.tor.invariants()) << n;
    }
}
