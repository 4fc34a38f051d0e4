#include "rbw/abelian.hpp"
#include "rbw/bar_homology.hpp"
#include "rbw/ring.hpp"
#include "rbw/smith.hpp"
#include "rbw/unit_group.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rbw;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
    std::vector<Integer> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

DenseMatrix mul(const DenseMatrix& a, const DenseMatrix& b, std::size_t inner, std::size_t cols) {
    DenseMatrix c(a.size(), std::vector<Integer>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

std::vector<Integer> nonzero(const std::vector<Integer>& d) {
    std::vector<Integer> out;
    for (auto& x : d)
        if (x != 0) out.push_back(x);
    return out;
}

}  // namespace

TEST(Smith, Diag23) {
    DenseMatrix m{{2, 0}, {0, 3}};
    auto r = smith_normal_form(m, 2);
    EXPECT_EQ(r.diagonal, ints({1, 6}));
    EXPECT_EQ(oracle::invariant_factors_by_minors(m, 2), ints({1, 6}));
}

TEST(Smith, IdentityAndZero) {
    DenseMatrix id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    EXPECT_EQ(smith_normal_form(id, 3).diagonal, ints({1, 1, 1}));
    DenseMatrix z(3, std::vector<Integer>(4, 0));
    EXPECT_EQ(smith_normal_form(z, 4).diagonal, ints({0, 0, 0}));
}

TEST(Smith, AgreesWithDeterminantalDivisors) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        auto m = oracle::random_sparse(rng, r, c, 0.7, 9);
        auto expected = oracle::invariant_factors_by_minors(m, c);
        EXPECT_EQ(nonzero(smith_normal_form(m, c).diagonal), expected);
        EXPECT_EQ(nonzero(smith_normal_form_reference(m, c).diagonal), expected);
        auto im = IntMatrix::from_dense(m, c);
        EXPECT_EQ(invariant_factors(im, SnfPath::sparse), expected);
        EXPECT_EQ(invariant_factors(im, SnfPath::lattice), expected);
        EXPECT_EQ(invariant_factors(im, SnfPath::dense), expected);
    }
}

TEST(Smith, TransformsAreExactOnRandomSparse) {
    std::mt19937_64 rng(11);
    for (std::size_t n : {5u, 17u, 40u, 200u}) {
        auto m = oracle::random_sparse(rng, n, n, n >= 200 ? 0.02 : 0.2, 50);
        auto r = smith_normal_form(m, n);
        auto umv = mul(mul(r.U, m, n, n), r.V, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(umv[i][j], i == j ? r.diagonal[i] : Integer(0)) << n;
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (r.diagonal[i + 1] != 0) ASSERT_TRUE(divides(r.diagonal[i], r.diagonal[i + 1]));
        for (auto& d : r.diagonal) ASSERT_GE(d, 0);
        if (n <= 40) {
            EXPECT_EQ(abs(oracle::det(r.U)), 1);
            EXPECT_EQ(abs(oracle::det(r.V)), 1);
        }
    }
}

TEST(Smith, ReferenceTransformsOnSmallInputs) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 2 + rng() % 8, c = 2 + rng() % 8;
        auto m = oracle::random_sparse(rng, r, c, 0.5, 20);
        auto res = smith_normal_form_reference(m, c);
        auto umv = mul(mul(res.U, m, r, c), res.V, c, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) ASSERT_EQ(umv[i][j], i == j ? res.diagonal[i] : Integer(0));
        EXPECT_EQ(res.diagonal, smith_normal_form(m, c).diagonal);
    }
}

TEST(Smith, InvariantUnderPermutationAndUnimodularChange) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = oracle::random_sparse(rng, 12, 9, 0.3, 6);
        auto base = invariant_factors(IntMatrix::from_dense(m, 9));
        auto p = m;
        std::shuffle(p.begin(), p.end(), rng);
        // Unimodular row operation and a column swap.
        for (std::size_t j = 0; j < 9; ++j) p[0][j] += 3 * p[1][j];
        for (auto& row : p) std::swap(row[0], row[8]);
        EXPECT_EQ(invariant_factors(IntMatrix::from_dense(p, 9)), base);
        EXPECT_EQ(invariant_factors(IntMatrix::from_dense(p, 9), SnfPath::lattice), base);
    }
}

TEST(Smith, PathsAgreeOnLargerSparse) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        auto m = oracle::random_sparse(rng, 150, 60, 0.05, 3);
        auto im = IntMatrix::from_dense(m, 60);
        auto a = invariant_factors(im, SnfPath::sparse);
        EXPECT_EQ(a, invariant_factors(im, SnfPath::lattice));
        EXPECT_EQ(a, invariant_factors(im, SnfPath::dense));
    }
}

TEST(Lattice, MembershipAndCoordinates) {
    Lattice L(3);
    L.insert(make_row({{0, Integer(2)}, {1, Integer(4)}}));
    L.insert(make_row({{0, Integer(3)}, {2, Integer(1)}}));
    EXPECT_EQ(L.rank(), 2u);
    SparseRow v = make_row({{0, Integer(5)}, {1, Integer(4)}, {2, Integer(1)}});
    auto c = L.coordinates(v);
    ASSERT_TRUE(c);
    auto B = L.basis();
    EXPECT_EQ(row_times(*c, B), v);
    EXPECT_FALSE(L.contains(make_row({{0, Integer(1)}})));
}

TEST(Lattice, Intersection) {
    Lattice a(2), b(2);
    a.insert({{0, Integer(2)}});
    a.insert({{1, Integer(1)}});
    b.insert({{0, Integer(3)}});
    b.insert({{1, Integer(5)}});
    auto c = Lattice::intersection(a, b);
    EXPECT_TRUE(c.contains({{0, Integer(6)}}));
    EXPECT_TRUE(c.contains({{1, Integer(5)}}));
    EXPECT_FALSE(c.contains({{0, Integer(3)}}));
    EXPECT_EQ(c.rank(), 2u);
}

TEST(Subquotient, KernelOfTimesTwo) {
    AbMap f(AbPresentation::free(1), AbPresentation::free(1), {{{0, Integer(2)}}});
    EXPECT_TRUE(kernel(f).group.is_trivial());
}

TEST(Subquotient, CokernelOfTimesSix) {
    AbMap f(AbPresentation::free(1), AbPresentation::free(1), {{{0, Integer(6)}}});
    EXPECT_EQ(cokernel(f).group.invariants(), ints({6}));
    EXPECT_EQ(image(f).group.invariants(), ints({0}));
}

TEST(Subquotient, KernelOfTimesFourOnZ12) {
    auto z12 = AbPresentation::cyclic_sum(ints({12}));
    AbMap f(z12, z12, {{{0, Integer(4)}}});
    auto k = kernel(f);
    EXPECT_EQ(k.group.invariants(), ints({4}));
    // Enumeration oracle: {x : 4x = 0 mod 12} = {0,3,6,9}.
    std::vector<int> elems;
    for (int x = 0; x < 12; ++x)
        if ((4 * x) % 12 == 0) elems.push_back(x);
    EXPECT_EQ(elems, (std::vector<int>{0, 3, 6, 9}));
    ASSERT_EQ(k.basis.size(), 1u);
    Integer g = k.basis[0].front().second;
    EXPECT_TRUE(g % 12 == 3 || g % 12 == 9 || g % 12 == -3 || g % 12 == -9);
}

TEST(AbMap, RejectsNonHomomorphism) {
    auto z2 = AbPresentation::cyclic_sum(ints({2}));
    auto z3 = AbPresentation::cyclic_sum(ints({3}));
    EXPECT_THROW(AbMap(z2, z3, {{{0, Integer(1)}}}), ConstructionError);
}

TEST(Multilinear, Sym2OfZ7IsZeroUnderTheSumRelation) {
    auto z7 = AbPresentation::cyclic_sum(ints({7}));
    auto s = multilinear(z7, MultilinearOp::sym2Z);
    // Oracle: Z/7 (x) Z/7 = Z/7 on e(x)e; the relation adds 2 e(x)e.
    auto sub = oracle::subgroup_order({7}, {{2}});
    EXPECT_EQ(7 / sub, 1u);
    EXPECT_TRUE(s.group.is_trivial());
    EXPECT_EQ(multilinear(z7, MultilinearOp::tensor_self).group.invariants(), ints({7}));
}

TEST(Multilinear, Sym2OfEvenCyclic) {
    auto s = multilinear(AbPresentation::cyclic_sum(ints({6})), MultilinearOp::sym2Z);
    EXPECT_EQ(s.group.invariants(), ints({2}));
}

TEST(Multilinear, Wedge3) {
    EXPECT_TRUE(multilinear(AbPresentation::cyclic_sum(ints({12})), MultilinearOp::wedge3).group.is_trivial());
    auto w = multilinear(AbPresentation::cyclic_sum(ints({2, 2, 2})), MultilinearOp::wedge3);
    EXPECT_EQ(w.group.invariants(), ints({2}));
    EXPECT_EQ(w.group.invariants_via(SnfPath::dense), ints({2}));
    EXPECT_EQ(multilinear(AbPresentation::cyclic_sum(ints({2, 4})), MultilinearOp::wedge2).group.invariants(), ints({2}));
}

TEST(Multilinear, TensorOfSum) {
    auto t = multilinear(AbPresentation::cyclic_sum(ints({4, 6})), MultilinearOp::tensor_self);
    EXPECT_EQ(t.group.invariants(), ints({2, 2, 2, 12}));  // Z/4 + Z/2 + Z/2 + Z/6 in invariant form
}

TEST(Tor, Cyclic) {
    auto t = tor1(AbPresentation::cyclic_sum(ints({6})));
    EXPECT_EQ(t.tor.invariants(), ints({6}));
    EXPECT_EQ(t.fixed.group.invariants(), ints({6}));
}

TEST(Tor, FreeGroupHasNoTor) {
    auto t = tor1(AbPresentation::free(1));
    EXPECT_TRUE(t.tor.is_trivial());
}

TEST(Tor, Z2PlusZ4) {
    auto t = tor1(AbPresentation::cyclic_sum(ints({2, 4})));
    EXPECT_EQ(t.tor.invariants(), ints({2, 2, 2, 4}));
    // Enumeration oracle: generators t11 (Z/2), t12, t21 (Z/2), t22 (Z/4); swap t12 <-> t21.
    std::uint64_t fixed = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 4; ++d)
                    if (b == c) ++fixed;
    EXPECT_EQ(t.fixed.group.order(), Integer(static_cast<unsigned long>(fixed)));
}

TEST(Tor, InvolutionsSquareToIdentity) {
    auto t = tor1(AbPresentation::cyclic_sum(ints({2, 4, 12})));
    for (std::size_t g = 0; g < t.sigma1.size(); ++g) {
        SparseRow e{{static_cast<std::uint32_t>(g), Integer(1)}};
        EXPECT_EQ(row_times(row_times(e, t.sigma1), t.sigma1), e);
        EXPECT_EQ(row_times(row_times(e, t.sigma_prime), t.sigma_prime), e);
    }
    for (int n = 1; n <= 30; ++n) {
        auto c = tor1(AbPresentation::cyclic_sum({Integer(n)}));
        EXPECT_EQ(c.fixed.group.order(), c.tor.order());
    }
}

TEST(BarHomology, Examples) {
    EXPECT_EQ(bar_homology_invariants(FiniteAbelianGroup({5}), 3), ints({5}));
    EXPECT_TRUE(bar_homology_invariants(FiniteAbelianGroup({3}), 2).empty());
    EXPECT_EQ(bar_homology_invariants(FiniteAbelianGroup({6}), 0), ints({0}));
}

TEST(BarHomology, CyclicLowDegrees) {
    for (std::uint32_t m = 2; m <= 16; ++m) {
        EXPECT_EQ(bar_homology_invariants(FiniteAbelianGroup({m}), 1), std::vector<Integer>{Integer(m)}) << m;
        EXPECT_TRUE(bar_homology_invariants(FiniteAbelianGroup({m}), 2).empty()) << m;
    }
}

TEST(BarHomology, BudgetIsTyped) {
    BarLimits lim{100};
    EXPECT_THROW(bar_homology_invariants(FiniteAbelianGroup({7}), 3, lim), BudgetExceeded);
}

TEST(BarHomology, ThirdHomologyOrderSplitsAsWedgeTimesFixedTor) {
    for (auto orders : std::vector<std::vector<std::uint32_t>>{{2}, {3}, {4}, {2, 2}, {2, 4}, {15}}) {
        auto h3 = bar_homology_invariants(FiniteAbelianGroup(orders), 3);
        std::vector<Integer> o(orders.begin(), orders.end());
        auto B = AbPresentation::cyclic_sum(o);
        auto w3 = multilinear(B, MultilinearOp::wedge3).group.order();
        auto fixed = tor1(B).fixed.group.order();
        EXPECT_EQ(order_of(h3), w3 * fixed);
    }
}

TEST(BarHomology, FullPathMatchesFastPathAndCoinvariantRoutesAgree) {
    // N = (GF(8), +) with the unit group acting by u^2 scaling.
    auto R = Ring::build("gf(2,3)");
    FiniteAbelianGroup N({2, 2, 2});
    std::vector<BarComplex::Perm> acts;
    for (Elem u : R->units().units) {
        BarComplex::Perm p(8);
        for (Elem x = 0; x < 8; ++x) p[x] = R->mul(R->mul(u, u), x);
        acts.push_back(p);
    }
    for (std::size_t n : {1u, 2u, 3u}) {
        auto full = bar_homology(N, n, acts);
        EXPECT_EQ(full.invariants, bar_homology_invariants(N, n));
        EXPECT_EQ(*full.coinvariants, bar_coinvariants_coprime(N, n, acts)) << n;
    }
}

TEST(UnitGroup, StructureMatchesEnumeration) {
    for (const char* s : {"gf(2,3)", "z/9", "z/15", "gf(2,1)[t]/t^3", "gf(2,2)[t]/t^3", "z/16"}) {
        auto R = Ring::build(s);
        auto ug = unit_group_structure(*R);
        EXPECT_EQ(ug.group.order(), Integer(static_cast<unsigned long>(R->unit_count()))) << s;
        const auto& u = R->units();
        // coords respect multiplication modulo relations.
        for (Elem a : u.units)
            for (Elem b : u.units) {
                SparseRow diff = axpy(axpy(ug.row(u, R->mul(a, b)), Integer(-1), ug.row(u, a)), Integer(-1), ug.row(u, b));
                ASSERT_TRUE(ug.group.is_zero(diff)) << s;
            }
    }
    auto z16 = unit_group_structure(*Ring::build("z/16"));
    EXPECT_EQ(z16.group.invariants(), ints({2, 4}));
}
