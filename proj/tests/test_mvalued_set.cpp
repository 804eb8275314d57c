#include <gtest/gtest.h>

#include "mvl/error.hpp"
#include "mvl/mvalued_set.hpp"

using namespace mvl;

namespace {

AlgebraPtr alg(const char* name) { return DeMorganAlgebra::builtin(name); }

// Pointwise oracles: an element of M(P(U^d)) is the same thing as a map U^d -> M.
std::vector<ElemId> pointwise(const MValuedSet& x) { return x.values(); }

MValuedSet oracle_join(const MCylSetAlgebra& A, const MValuedSet& x, const MValuedSet& y, bool join) {
    auto vx = pointwise(x), vy = pointwise(y);
    std::vector<ElemId> out(vx.size());
    for (std::size_t i = 0; i < vx.size(); ++i)
        out[i] = join ? A.algebra().join(vx[i], vy[i]) : A.algebra().meet(vx[i], vy[i]);
    return MValuedSet::from_values(A.algebra_ptr(), A.space(), out);
}

// Value of the existential at s is the sup of the values at all k-variants of s.
MValuedSet oracle_cyl(const MCylSetAlgebra& A, unsigned k, const MValuedSet& x) {
    const Space& sp = A.space();
    auto v = pointwise(x);
    std::vector<ElemId> out(sp.size());
    for (std::uint32_t s = 0; s < sp.size(); ++s) {
        ElemId acc = A.algebra().zero();
        for (unsigned y = 0; y < sp.base(); ++y) {
            auto t = sp.decode(s);
            t[k] = y;
            acc = A.algebra().join(acc, v[sp.encode(t)]);
        }
        out[s] = acc;
    }
    return MValuedSet::from_values(A.algebra_ptr(), sp, out);
}

std::vector<MValuedSet> all_elements(const MCylSetAlgebra& A) {
    std::vector<MValuedSet> out;
    for (std::uint64_t i = 0; i < A.carrier_size(); ++i) out.push_back(A.element(i));
    return out;
}

bool crisp(const MCylSetAlgebra& A, const MValuedSet& x) {
    for (ElemId p : A.algebra().elements())
        if (p != A.algebra().zero() && p != A.algebra().one() && !x.layer(p).empty()) return false;
    return true;
}

}  // namespace

TEST(MValuedSet, PartitionValidation) {
    Space sp(2, 1);
    auto k3 = alg("K3");
    std::vector<PointSet> bad(3, PointSet(sp));
    bad[0] = PointSet::full(sp);
    bad[1].insert(0);
    EXPECT_THROW(MValuedSet::from_layers(k3, bad), InputError);
    bad[1] = PointSet(sp);
    EXPECT_NO_THROW(MValuedSet::from_layers(k3, bad));
    std::vector<PointSet> missing(3, PointSet(sp));
    EXPECT_THROW(MValuedSet::from_layers(k3, missing), InputError);
    EXPECT_THROW(MValuedSet(k3, std::vector<PointSet>(2, PointSet(sp))), InputError);
}

TEST(MValuedSet, JoinExamples) {
    for (const char* n : {"B2", "K3", "FOUR"}) {
        MCylSetAlgebra A(alg(n), Space(2, 1));
        for (const auto& a : all_elements(A)) EXPECT_EQ(A.join(A.unit(A.algebra().zero()), a), a);
    }
    MCylSetAlgebra B(alg("B2"), Space(2, 2));
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        auto x = B.random_element(rng), y = B.random_element(rng);
        const ElemId one = B.algebra().one();
        EXPECT_EQ(B.join(x, y).layer(one), x.layer(one) | y.layer(one));
    }
    MCylSetAlgebra K(alg("K3"), Space(1, 1));
    auto x = K.unit(K.algebra().at("u"));
    EXPECT_EQ(K.join(x, x), x);
}

TEST(MValuedSet, UnitsAndDiagonals) {
    MCylSetAlgebra A(alg("K3"), Space(2, 2));
    EXPECT_TRUE(A.unit(A.algebra().one()).layer(A.algebra().one()).is_full());
    EXPECT_EQ(A.diag(1, 1), A.unit(A.algebra().one()));
    EXPECT_TRUE(A.diag(0, 1).layer(A.algebra().at("u")).empty());
    EXPECT_EQ(A.diag(0, 1).layer(A.algebra().one()), diag(A.space(), 0, 1));
    EXPECT_THROW(A.diag(0, 2), InputError);
}

TEST(MValuedSet, CylExamples) {
    MCylSetAlgebra B(alg("B2"), Space(2, 2));
    for (const auto& x : all_elements(B))
        for (unsigned k = 0; k < 2; ++k)
            EXPECT_EQ(B.cyl(k, x).layer(B.algebra().one()), cyl(k, x.layer(B.algebra().one())));

    auto k3 = alg("K3");
    MCylSetAlgebra K(k3, Space(2, 1));
    std::vector<ElemId> v{k3->one(), k3->at("u")};
    auto x = MValuedSet::from_values(k3, K.space(), v);
    EXPECT_EQ(K.cyl(0, x), K.unit(k3->one()));
    EXPECT_EQ(K.ecyl(0, x), K.unit(k3->one()));
    EXPECT_EQ(K.cyl(0, K.unit(k3->zero())), K.unit(k3->zero()));
    EXPECT_THROW(K.cyl(1, x), InputError);
}

TEST(MValuedSet, EcylCapAndUnits) {
    for (const char* n : {"K3", "FOUR"}) {
        MCylSetAlgebra A(alg(n), Space(3, 2));
        for (ElemId p : A.algebra().elements()) EXPECT_EQ(A.ecyl(1, A.unit(p)), A.unit(p));
    }
    MCylSetAlgebra big(alg("K3"), Space(5, 1));
    EXPECT_THROW(big.ecyl(0, big.unit(big.algebra().one())), BudgetExceeded);
}

TEST(MValuedSet, Deltas) {
    MCylSetAlgebra A(alg("FOUR"), Space(2, 2));
    const auto& m = A.algebra();
    for (ElemId p : m.elements())
        for (ElemId q : m.elements())
            EXPECT_EQ(A.delta(p, A.unit(q)), A.unit(p == q ? m.one() : m.zero()));
    EXPECT_EQ(A.big_delta(A.diag(0, 1)), A.unit(m.one()));
}

TEST(MValuedSet, OrderExamples) {
    for (const char* n : {"B2", "K3", "FOUR"}) {
        MCylSetAlgebra A(alg(n), Space(2, 1));
        const auto& m = A.algebra();
        for (const auto& a : all_elements(A)) {
            EXPECT_TRUE(A.leq(A.unit(m.zero()), a));
            EXPECT_TRUE(A.leq_layerwise(A.unit(m.zero()), a));
            EXPECT_TRUE(A.leq(a, A.unit(m.one())));
            EXPECT_TRUE(A.leq(a, a));
        }
    }
}

TEST(MValuedSet, DerivedOperators) {
    MCylSetAlgebra A(alg("K3"), Space(2, 2));
    const auto& m = A.algebra();
    for (ElemId p : m.elements()) EXPECT_EQ(A.subst(0, 1, A.unit(p)), A.unit(p));
    EXPECT_EQ(A.q(0, A.unit(m.one())), A.unit(m.one()));

    MCylSetAlgebra L(alg("K3"), Space(2, 1));
    for (const auto& a : all_elements(L)) EXPECT_EQ(L.strong_imp(a, a), L.unit(m.one()));

    // t in (S^k_l x)^p iff t(k/t_l) in x^p.
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        auto x = A.random_element(rng);
        for (unsigned k = 0; k < 2; ++k)
            for (unsigned l = 0; l < 2; ++l) {
                if (k == l) continue;
                auto s = A.subst(k, l, x);
                for (std::uint32_t t = 0; t < A.space().size(); ++t) {
                    auto tt = A.space().decode(t);
                    tt[k] = tt[l];
                    EXPECT_EQ(s.value_at(t), x.value_at(A.space().encode(tt)));
                }
            }
        auto y = A.random_element(rng);
        auto si = A.strong_imp(x, y);
        for (ElemId p : m.elements())
            if (p != m.zero() && p != m.one()) EXPECT_TRUE(si.layer(p).empty());
    }
}

TEST(MValuedSet, DimensionsAndDependence) {
    MCylSetAlgebra A(alg("K3"), Space(2, 2));
    const auto& m = A.algebra();
    for (ElemId p : m.elements()) {
        EXPECT_TRUE(A.dim(A.unit(p)).empty());
        EXPECT_TRUE(A.depends_on(A.unit(p), {}));
    }
    EXPECT_EQ(A.dim(A.diag(0, 1)), (std::vector<unsigned>{0, 1}));
    std::vector<unsigned> just0{0};
    EXPECT_FALSE(A.depends_on(A.diag(0, 1), just0));

    // Value determined by coordinate 0 alone: 1 where s_0 = 0, u where s_0 = 1.
    std::vector<ElemId> v(4);
    for (std::uint32_t s = 0; s < 4; ++s) v[s] = A.space().coord(s, 0) == 0 ? m.one() : m.at("u");
    auto x = MValuedSet::from_values(A.algebra_ptr(), A.space(), v);
    EXPECT_EQ(A.dim(x), just0);
    EXPECT_TRUE(A.depends_on(x, just0));

    for (const auto& y : all_elements(A)) EXPECT_TRUE(A.is_regular_element(y));
}

TEST(MValuedSetProperties, AgreesWithPointwiseOracles) {
    for (const char* n : {"B2", "K3", "FOUR"}) {
        for (auto [base, dim] : {std::pair{2u, 1u}, std::pair{2u, 2u}, std::pair{3u, 1u}}) {
            MCylSetAlgebra A(alg(n), Space(base, dim));
            const auto els = all_elements(A);
            for (const auto& x : els) {
                for (unsigned k = 0; k < dim; ++k) {
                    auto c = A.cyl(k, x);
                    ASSERT_EQ(c, oracle_cyl(A, k, x)) << n;
                    ASSERT_EQ(A.ecyl(k, x), c) << n;
                    EXPECT_TRUE(c.is_partition());
                    EXPECT_TRUE(A.q(k, x).is_partition());
                    for (unsigned l = 0; l < dim; ++l) EXPECT_TRUE(A.subst(k, l, x).is_partition());
                }
                EXPECT_TRUE(A.neg(x).is_partition());
                for (ElemId p : A.algebra().elements()) EXPECT_TRUE(A.delta(p, x).is_partition());
            }
        }
    }
}

TEST(MValuedSetProperties, BinaryOperationsOnAllPairs) {
    for (const char* n : {"B2", "K3", "FOUR"}) {
        MCylSetAlgebra A(alg(n), Space(2, 1));
        const auto els = all_elements(A);
        for (const auto& x : els)
            for (const auto& y : els) {
                auto j = A.join(x, y), mt = A.meet(x, y);
                ASSERT_EQ(j, oracle_join(A, x, y, true));
                ASSERT_EQ(mt, oracle_join(A, x, y, false));
                EXPECT_EQ(A.leq(x, y), A.leq_layerwise(x, y));
                EXPECT_EQ(A.cyl(0, j), A.join(A.cyl(0, x), A.cyl(0, y)));
                if (A.leq(x, y)) EXPECT_TRUE(A.leq(A.cyl(0, x), A.cyl(0, y)));
            }
    }
}

TEST(MValuedSetProperties, PairsAtDimensionTwo) {
    MCylSetAlgebra A(alg("K3"), Space(2, 2));
    const auto els = all_elements(A);
    for (const auto& x : els)
        for (const auto& y : els) {
            ASSERT_TRUE(A.join(x, y).is_partition());
            ASSERT_TRUE(A.meet(x, y).is_partition());
            for (unsigned k = 0; k < 2; ++k) ASSERT_EQ(A.cyl(k, A.join(x, y)), A.join(A.cyl(k, x), A.cyl(k, y)));
        }
}

TEST(MValuedSetProperties, DimensionTransfer) {
    for (const char* n : {"K3", "FOUR"}) {
        MCylSetAlgebra A(alg(n), Space(2, 2));
        for (const auto& x : all_elements(A)) {
            auto d = A.dim(x);
            std::vector<bool> from_layers(2, false);
            for (const auto& layer : x.layers())
                for (unsigned k : dim_set(layer)) from_layers[k] = true;
            std::vector<unsigned> expected;
            for (unsigned k = 0; k < 2; ++k)
                if (from_layers[k]) expected.push_back(k);
            EXPECT_EQ(d, expected);
            for (unsigned k = 0; k < 2; ++k)
                if (!(A.cyl(k, x) == x)) EXPECT_NE(std::find(d.begin(), d.end(), k), d.end());
        }
    }
}

// The twelve facts about elements whose only nonempty layers are 0 and 1.
TEST(MValuedSetProperties, CrispElementFacts) {
    for (const char* n : {"K3", "FOUR"}) {
        MCylSetAlgebra A(alg(n), Space(2, 2));
        const auto& m = A.algebra();
        const ElemId z = m.zero(), o = m.one();
        std::vector<MValuedSet> star;
        for (const auto& x : all_elements(A))
            if (crisp(A, x)) star.push_back(x);
        ASSERT_EQ(star.size(), 16u);
        auto inner = [&](unsigned k, const MValuedSet& x) { return A.neg(A.cyl(k, A.neg(x))); };
        auto bicond = [&](const MValuedSet& a, const MValuedSet& b) { return A.meet(A.imp(a, b), A.imp(b, a)); };
        for (const auto& x : all_elements(A))
            for (ElemId p : m.elements()) EXPECT_TRUE(crisp(A, A.delta(p, x)));  // 3
        for (unsigned k = 0; k < 2; ++k)
            for (unsigned l = 0; l < 2; ++l) EXPECT_TRUE(crisp(A, A.diag(k, l)));  // 4
        for (const auto& a : star) {
            EXPECT_EQ(a.layer(z), ~a.layer(o));  // 2
            EXPECT_TRUE(crisp(A, A.neg(a)));
            EXPECT_EQ(A.neg(a).layer(o), ~a.layer(o));  // 8a
            EXPECT_EQ(A.neg(a).layer(z), ~a.layer(z));  // 8b
            for (unsigned k = 0; k < 2; ++k) {
                EXPECT_TRUE(crisp(A, A.cyl(k, a)));
                EXPECT_TRUE(crisp(A, inner(k, a)));
                EXPECT_EQ(A.cyl(k, a).layer(o), cyl(k, a.layer(o)));          // 9a
                EXPECT_EQ(A.cyl(k, a).layer(z), inner_cyl(k, a.layer(z)));    // 9b
                EXPECT_EQ(inner(k, a).layer(o), inner_cyl(k, a.layer(o)));    // 10a
                EXPECT_EQ(inner(k, a).layer(z), cyl(k, a.layer(z)));          // 10b
            }
            for (const auto& b : star) {
                EXPECT_TRUE(crisp(A, A.join(a, b)));  // 1
                EXPECT_TRUE(crisp(A, A.meet(a, b)));
                EXPECT_TRUE(crisp(A, A.imp(a, b)));
                EXPECT_TRUE(crisp(A, bicond(a, b)));
                EXPECT_EQ(a == b, a.layer(o) == b.layer(o));  // 5
                EXPECT_EQ(a == b, a.layer(z) == b.layer(z));
                EXPECT_EQ(A.join(a, b).layer(o), a.layer(o) | b.layer(o));  // 6
                EXPECT_EQ(A.join(a, b).layer(z), a.layer(z) & b.layer(z));
                EXPECT_EQ(A.meet(a, b).layer(o), a.layer(o) & b.layer(o));  // 7
                EXPECT_EQ(A.meet(a, b).layer(z), a.layer(z) | b.layer(z));
                EXPECT_EQ(A.imp(a, b).layer(o), ~a.layer(o) | b.layer(o));  // 11
                // 12, read as a product of the two implications.
                EXPECT_EQ(bicond(a, b).layer(o), ~(a.layer(o) - b.layer(o)) & ~(b.layer(o) - a.layer(o)));
            }
        }
    }
}
