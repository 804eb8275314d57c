#include <gtest/gtest.h>

#include <algorithm>

#include "mvl/laws.hpp"

using namespace mvl;

namespace {

AlgebraPtr alg(const char* name) { return DeMorganAlgebra::builtin(name); }

void expect_all_hold(const std::vector<LawReport>& rs) {
    ASSERT_EQ(rs.size(), 31u);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        EXPECT_EQ(rs[i].law, std::to_string(i + 1));
        EXPECT_TRUE(rs[i].holds) << rs[i].to_json().dump();
    }
}

// Cylindrification with the subtracted union left out: layer p is the union over sup A = p only.
MValuedSet cyl_without_minus(const MCylSetAlgebra& A, unsigned k, const MValuedSet& x) {
    const auto& m = A.algebra();
    const auto& t = A.table();
    std::vector<PointSet> c, out;
    for (ElemId q : m.elements()) c.push_back(cyl(k, x.layer(q)));
    for (ElemId p : m.elements()) {
        PointSet plus(A.space());
        for (ElemMask s : t.with_sup(p)) {
            PointSet acc = PointSet::full(A.space());
            for (ElemId q : m.elements())
                if (s & bit(q)) acc &= c[index(q)];
            plus |= acc;
        }
        out.push_back(plus);
    }
    return MValuedSet(A.algebra_ptr(), std::move(out));
}

}  // namespace

TEST(Laws, K3AllAxiomsHold) {
    MCylSetAlgebra A(alg("K3"), Space(2, 2));
    expect_all_hold(check_mca_axioms(A));
}

TEST(Laws, B2AndFourAllAxiomsHold) {
    MCylSetAlgebra B(alg("B2"), Space(2, 2));
    expect_all_hold(check_mca_axioms(B));
    MCylSetAlgebra F(alg("FOUR"), Space(2, 2));
    expect_all_hold(check_mca_axioms(F));
}

TEST(Laws, OtherShapes) {
    expect_all_hold(check_mca_axioms(MCylSetAlgebra(alg("K3"), Space(3, 1))));
    expect_all_hold(check_mca_axioms(MCylSetAlgebra(alg("K3"), Space(2, 3)), LawBudget{1 << 12, 300, 7}));
}

TEST(Laws, ModesAndCounts) {
    MCylSetAlgebra A(alg("K3"), Space(2, 2));
    auto rs = check_mca_axioms(A);
    // 81 elements: pairs are exhaustive, triples exceed 2^16 and are sampled.
    EXPECT_EQ(rs[0].mode, LawMode::exhaustive);
    EXPECT_EQ(rs[0].instances, 81u * 81u);
    EXPECT_EQ(rs[1].mode, LawMode::sampled);
    EXPECT_EQ(rs[1].instances, 10000u);
    EXPECT_EQ(rs[1].seed, kDefaultSeed);
    // Axiom 10 with k outside {l, m} has no instances at d = 2 unless l = m.
    EXPECT_EQ(rs[9].instances, 2u);
    // Axiom 19 over p outside {0, 1}: only u in K3.
    EXPECT_EQ(rs[18].instances, 4u);
    auto b2 = check_mca_axioms(MCylSetAlgebra(alg("B2"), Space(2, 2)));
    EXPECT_EQ(b2[18].instances, 0u);
    EXPECT_FALSE(b2[18].note.empty());
}

TEST(Laws, SampledRunsAreDeterministic) {
    MCylSetAlgebra A(alg("FOUR"), Space(2, 2));
    LawBudget b{1 << 10, 500, 12345};
    auto r1 = check_mca_axioms(A, b), r2 = check_mca_axioms(A, b);
    for (std::size_t i = 0; i < r1.size(); ++i) EXPECT_EQ(r1[i].to_json(), r2[i].to_json());
}

TEST(Laws, DroppedSubtractionIsCaught) {
    MCylSetAlgebra A(alg("K3"), Space(2, 2));
    auto ops = MCAOps::of(A);
    ops.cyl = [&A](unsigned k, const MValuedSet& x) { return cyl_without_minus(A, k, x); };
    auto rs = check_mca_axioms(ops, Carrier::of(A));
    std::vector<std::string> failed;
    for (const auto& r : rs)
        if (!r.holds) {
            failed.push_back(r.law);
            EXPECT_TRUE(witness_reproduces(ops, r)) << r.law;
            EXPECT_FALSE(witness_reproduces(MCAOps::of(A), r)) << r.law;
        }
    ASSERT_FALSE(failed.empty());
    EXPECT_TRUE(std::count(failed.begin(), failed.end(), "23") || std::count(failed.begin(), failed.end(), "31"));
}

TEST(Laws, BrokenNegationIsCaught) {
    MCylSetAlgebra A(alg("K3"), Space(2, 1));
    auto ops = MCAOps::of(A);
    ops.neg = [](const MValuedSet& x) { return x; };
    auto rs = check_mca_axioms(ops, Carrier::of(A));
    EXPECT_FALSE(rs[19].holds);  // delta_p(-a) = delta_{-p} a
    EXPECT_TRUE(witness_reproduces(ops, rs[19]));
    const auto j = rs[19].to_json();
    EXPECT_EQ(j.at("status"), "counterexample");
    EXPECT_TRUE(j.at("witness").contains("elements"));
}

TEST(Laws, LiteralReadingsFail) {
    MCylSetAlgebra A(alg("K3"), Space(2, 2));
    auto ops = MCAOps::of(A);
    auto rs = check_literal_readings(ops, Carrier::of(A));
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_EQ(rs[0].law, "10-literal");
    EXPECT_FALSE(rs[0].holds);
    EXPECT_EQ(rs[1].law, "31-literal");
    EXPECT_FALSE(rs[1].holds);
    for (const auto& r : rs) EXPECT_TRUE(witness_reproduces(ops, r));
}

TEST(Laws, B2LayerOneIsAClassicalCylindricSetAlgebra) {
    const Space sp(2, 2);
    MCylSetAlgebra A(alg("B2"), sp);
    const auto& m = A.algebra();
    auto one = [&](const MValuedSet& x) { return x.layer(m.one()); };
    for (std::uint64_t i = 0; i < A.carrier_size(); ++i) {
        auto x = A.element(i);
        EXPECT_EQ(one(A.neg(x)), ~one(x));
        for (unsigned k = 0; k < 2; ++k) EXPECT_EQ(one(A.cyl(k, x)), cyl(k, one(x)));
        for (std::uint64_t j = 0; j < A.carrier_size(); ++j) {
            auto y = A.element(j);
            EXPECT_EQ(one(A.join(x, y)), one(x) | one(y));
            EXPECT_EQ(one(A.meet(x, y)), one(x) & one(y));
        }
    }
    for (unsigned k = 0; k < 2; ++k)
        for (unsigned l = 0; l < 2; ++l) EXPECT_EQ(one(A.diag(k, l)), diag(sp, k, l));
}

TEST(BooleanIdentities, SupFormulaMatchesPointwiseSup) {
    for (const char* name : {"K3", "FOUR"}) {
        const auto& m = *alg(name);
        const Space sp(6, 1);
        Rng rng(kDefaultSeed);
        for (int t = 0; t < 200; ++t) {
            std::vector<PointSet> u(m.size(), PointSet(sp));
            for (auto& s : u)
                for (std::uint32_t x = 0; x < sp.size(); ++x)
                    if (draw(rng, 2)) s.insert(x);
            auto v = sup_formula(MCylOpsTable(m), u);
            // Oracle: x lands in layer sup{q : x in U_q}, or nowhere if that set is empty.
            for (std::uint32_t x = 0; x < sp.size(); ++x) {
                ElemMask a = 0;
                for (ElemId q : m.elements())
                    if (u[index(q)].contains(x)) a |= bit(q);
                for (ElemId p : m.elements()) EXPECT_EQ(v[index(p)].contains(x), a != 0 && m.sup(a) == p);
            }
        }
    }
}

TEST(BooleanIdentities, RandomTrials) {
    for (const char* name : {"B2", "K3", "FOUR"}) {
        auto r1 = check_boolean_identity_1(*alg(name), 6, 1000);
        EXPECT_TRUE(r1.holds) << r1.to_json().dump();
        EXPECT_EQ(r1.instances, 1000u * alg(name)->size());
        auto r2 = check_boolean_identity_2(*alg(name), 6, 1000);
        EXPECT_TRUE(r2.holds) << r2.to_json().dump();
    }
}

TEST(BooleanIdentities, UnitPartitionReducesToSupFormula) {
    const auto& m = *alg("FOUR");
    const Space sp(5, 1);
    std::vector<PointSet> w(m.size(), PointSet(sp));
    w[index(m.one())] = PointSet::full(sp);
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        std::vector<PointSet> u(m.size(), PointSet(sp));
        for (auto& s : u)
            for (std::uint32_t x = 0; x < sp.size(); ++x)
                if (draw(rng, 2)) s.insert(x);
        auto v = sup_formula(MCylOpsTable(m), u);
        EXPECT_EQ(boolean_identity_1_lhs(m, u, w), v);
        EXPECT_EQ(boolean_identity_1_rhs(m, u, w), v);
    }
}

TEST(Embedding, HoldsForK3AndFour) {
    for (const char* name : {"K3", "FOUR"}) {
        MCylSetAlgebra A(alg(name), Space(2, 2));
        auto r = check_embed(A, 2000);
        EXPECT_TRUE(r.holds) << r.to_json().dump();
    }
}

TEST(Embedding, ExtractedCIsClosedAndDimensionBounded) {
    MCylSetAlgebra A(alg("K3"), Space(2, 2));
    auto v = extract_c(A);
    EXPECT_TRUE(v.closed);
    // delta_1 maps onto crisp elements: one per subset of the four points.
    EXPECT_EQ(v.carrier.size(), 16u);
    for (const auto& a : v.carrier) {
        auto d = A.dim(a);
        for (unsigned k = 0; k < 2; ++k)
            if (!(A.cyl(k, a) == a)) EXPECT_NE(std::find(d.begin(), d.end(), k), d.end());
    }
}

TEST(Isomorphism, CrispPartOfMB) {
    for (const char* name : {"B2", "K3", "FOUR"}) {
        MCylSetAlgebra A(alg(name), Space(2, 2));
        auto r = check_iso(A);
        EXPECT_TRUE(r.holds) << r.to_json().dump();
        EXPECT_EQ(r.mode, LawMode::exhaustive);
    }
}

TEST(Isomorphism, CrispElementsHaveNoFixedPointsUnderNegation) {
    MCylSetAlgebra A(alg("K3"), Space(2, 1));
    auto v = extract_c(A);
    EXPECT_EQ(v.carrier.size(), 4u);
    for (const auto& x : v.carrier) EXPECT_FALSE(A.neg(x) == x);
}

TEST(BooleanIdentities, ProductReadingOfIdentity2Fails) {
    // Reading the outer operator of identity 2 as an intersection over q <= p breaks it.
    const auto& m = *alg("K3");
    const Space sp(4, 1);
    Rng rng(kDefaultSeed);
    bool mismatch = false;
    for (int t = 0; t < 100 && !mismatch; ++t) {
        std::vector<PointSet> y(m.size(), PointSet(sp));
        for (auto& s : y)
            for (std::uint32_t x = 0; x < sp.size(); ++x)
                if (draw(rng, 2)) s.insert(x);
        const auto v = sup_formula(MCylOpsTable(m), y);
        const auto rhs = boolean_identity_2_rhs(m, y);
        for (ElemId p : m.elements()) {
            PointSet prod = PointSet::full(sp);
            for (ElemId q : m.elements())
                if (m.leq(q, p)) prod &= v[index(q)];
            if (!(prod == rhs[index(p)])) mismatch = true;
        }
    }
    EXPECT_TRUE(mismatch);
}
