#include <gtest/gtest.h>

#include "mvl/catalog.hpp"
#include "mvl/error.hpp"
#include "mvl/parser.hpp"
#include "mvl/truth.hpp"

using namespace mvl;

namespace {

std::vector<AlgebraPtr> algebras() {
    return {DeMorganAlgebra::builtin("B2"), DeMorganAlgebra::builtin("K3"), DeMorganAlgebra::builtin("FOUR")};
}

Formula P(const char* name) { return fm::rel(name, {}); }

Formula parse(const std::string& text, const DeMorganAlgebra& m) {
    Signature s;
    return parse_formula(text, m, s, ParseOptions{true});
}

Valuation valuation_from(const TautologyResult& r) {
    Valuation v;
    for (const auto& [p, e] : r.witness) v.emplace(p, e);
    return v;
}

}  // namespace

TEST(TruthEval, Clauses) {
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        const auto a = P("a"), b = P("b");
        for (ElemId x : m.elements())
            for (ElemId y : m.elements()) {
                Valuation v{{a, x}, {b, y}};
                EXPECT_EQ(t_eval(fm::konst(y), v, m), y);
                EXPECT_EQ(t_eval(fm::neg(a), v, m), m.neg(x));
                EXPECT_EQ(t_eval(fm::conj(a, b), v, m), m.meet(x, y));
                EXPECT_EQ(t_eval(fm::disj(a, b), v, m), m.join(x, y));
                EXPECT_EQ(t_eval(fm::gamma(y, a), v, m), x == y ? m.one() : m.zero());
            }
    }
}

TEST(TruthEval, ExcludedMiddleInK3) {
    const auto& m = *DeMorganAlgebra::builtin("K3");
    const auto u = m.at("u");
    const auto phi = P("phi");
    EXPECT_EQ(t_eval(fm::disj(phi, fm::neg(phi)), Valuation{{phi, u}}, m), u);

    auto r = is_tautology(fm::disj(phi, fm::neg(phi)), m);
    ASSERT_FALSE(r.tautology);
    ASSERT_EQ(r.witness.size(), 1u);
    EXPECT_EQ(r.witness[0].first, phi);
    EXPECT_EQ(r.witness[0].second, u);
    EXPECT_EQ(r.witness_value, u);
    EXPECT_EQ(r.to_json(m).dump(),
              R"({"counter_valuation":[{"prime":"phi","value":"u"}],"tautology":false,"valuations":2,"value":"u"})");

    EXPECT_TRUE(is_tautology(fm::disj(phi, fm::neg(phi)), *DeMorganAlgebra::builtin("B2")).tautology);
}

TEST(TruthEval, UncoveredPrimeThrows) {
    const auto& m = *DeMorganAlgebra::builtin("K3");
    EXPECT_THROW(t_eval(fm::conj(P("a"), P("b")), Valuation{{P("a"), m.one()}}, m), InputError);
}

TEST(TruthEval, PrimesAreOpaque) {
    // Quantified and equality formulas are read from the valuation, never evaluated.
    const auto& m = *DeMorganAlgebra::builtin("FOUR");
    const auto ex = fm::exists(0, fm::rel("R", {0})), e = fm::eq(0, 0);
    for (ElemId x : m.elements()) {
        Valuation v{{ex, x}, {e, m.neg(x)}};
        EXPECT_EQ(t_eval(ex, v, m), x);
        EXPECT_EQ(t_eval(e, v, m), m.neg(x));
    }
}

TEST(TruthEval, OnlyPrimesOfTheFormulaMatter) {
    Rng rng(kDefaultSeed);
    const Signature sig({{"R", 1}, {"B", 2}, {"P", 0}});
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        for (int i = 0; i < 300; ++i) {
            auto f = random_formula(sig, m, 3, 4, rng);
            Valuation v;
            for (const auto& p : prime_subformulas(f)) v.emplace(p, elem(static_cast<unsigned>(draw(rng, m.size()))));
            const ElemId base = t_eval(f, v, m);
            // Extra primes outside f change nothing.
            Valuation w = v;
            for (int j = 0; j < 5; ++j) {
                auto g = random_formula(sig, m, 3, 2, rng);
                for (const auto& p : prime_subformulas(g))
                    w.emplace(p, elem(static_cast<unsigned>(draw(rng, m.size()))));
            }
            EXPECT_EQ(t_eval(f, w, m), base);
            // The compiled program agrees with the recursive evaluator.
            TruthProgram prog(f, m);
            std::vector<ElemId> vals;
            for (const auto& p : prog.primes()) vals.push_back(v.at(p));
            EXPECT_EQ(prog.run(vals), base);
        }
    }
}

TEST(TruthEval, StrongConnectivesAreCrispOrderTests) {
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        const auto a = P("theta"), b = P("phi");
        const auto si = fm::strong_imp(a, b, m), bi = fm::iff(a, b, m), g = fm::big_gamma(a, m);
        for (ElemId x : m.elements())
            for (ElemId y : m.elements()) {
                Valuation v{{a, x}, {b, y}};
                EXPECT_EQ(t_eval(si, v, m), m.leq(x, y) ? m.one() : m.zero()) << m.name();
                EXPECT_EQ(t_eval(bi, v, m), x == y ? m.one() : m.zero()) << m.name();
                EXPECT_EQ(iff_value(a, b, v, m), x == y ? m.one() : m.zero());
                const bool classical = x == m.zero() || x == m.one();
                EXPECT_EQ(t_eval(g, v, m), classical ? m.one() : m.zero());
                EXPECT_EQ(crispness_value(a, v, m), classical ? m.one() : m.zero());
                EXPECT_EQ(crispness_value(g, v, m), m.one());
            }
    }
    const auto& four = *DeMorganAlgebra::builtin("FOUR");
    EXPECT_EQ(crispness_value(P("phi"), Valuation{{P("phi"), four.at("a")}}, four), four.zero());
}

TEST(Tautology, WholeCatalogOverBuiltins) {
    const auto metas = atom_metavariables();
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        std::set<unsigned> seen;
        for (const auto& e : tautology_instances(metas, m)) {
            auto r = is_tautology(e.formula, m);
            EXPECT_TRUE(r.tautology) << m.name() << " #" << e.id << " " << r.to_json(m).dump();
            EXPECT_LE(prime_subformulas(e.formula).size(), 4u) << e.id;
            seen.insert(static_cast<unsigned>(std::stoul(e.id)));
        }
        // Schema 45 needs a middle truth value; B2 has none.
        EXPECT_EQ(seen.size(), m.size() == 2 ? 50u : 51u) << m.name();
    }
}

TEST(Tautology, SpecExamples) {
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        EXPECT_TRUE(is_tautology(parse("(p => p)", m), m).tautology);
        for (ElemId p : m.elements())
            for (ElemId q : m.elements()) {
                auto f = fm::iff(fm::gamma(p, fm::konst(q)), fm::konst(m.zero()), m);
                EXPECT_EQ(is_tautology(f, m).tautology, p != q);
            }
    }
}

TEST(Tautology, ExcludedZeroInSchema8) {
    // With 0 in Q, t_0^Q is t_1 and the implication fails.
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        auto f = fm::imp(fm::q_restrict(fm::konst(m.zero()), bit(m.zero()), m), fm::konst(m.zero()));
        auto r = is_tautology(f, m);
        EXPECT_FALSE(r.tautology);
        EXPECT_EQ(r.witness_value, m.zero());
    }
}

TEST(Tautology, Schema19WithRepeatedPhiIsMalformed) {
    const auto& m = *DeMorganAlgebra::builtin("K3");
    EXPECT_THROW(parse("((phi <=> phi) -> (g[u] <=> g[u] phi))", m), ParseError);
    EXPECT_TRUE(is_tautology(parse("((phi <=> theta) -> (g[u] phi <=> g[u] theta))", m), m).tautology);
}

TEST(Tautology, NonTautologiesHaveReproducibleWitnesses) {
    Rng rng(99);
    const Signature sig({{"R", 1}, {"P", 0}, {"Z", 0}});
    int refuted = 0;
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        for (int i = 0; i < 300; ++i) {
            auto f = random_formula(sig, m, 2, 4, rng);
            auto slow = is_tautology(f, m, kTautologyBudget, EnumerationOrder::first_prime_slowest);
            auto fast = is_tautology(f, m, kTautologyBudget, EnumerationOrder::first_prime_fastest);
            ASSERT_EQ(slow.tautology, fast.tautology) << print_formula(f, m);
            if (slow.tautology) {
                EXPECT_EQ(slow.valuations, fast.valuations);
                continue;
            }
            ++refuted;
            for (const auto* r : {&slow, &fast}) {
                EXPECT_EQ(t_eval(f, valuation_from(*r), m), r->witness_value);
                EXPECT_NE(r->witness_value, m.one());
            }
        }
    }
    EXPECT_GT(refuted, 100);
}

TEST(Tautology, SubstitutionInstancesStayTautologies) {
    Rng rng(kDefaultSeed);
    const Signature sig({{"R", 1}, {"B", 2}});
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        const auto metas = atom_metavariables();
        const auto entries = tautology_instances(metas, m);
        for (int i = 0; i < 200; ++i) {
            const auto& e = entries[draw(rng, entries.size())];
            std::map<std::string, Formula> sub;
            for (const char* name : {"phi", "theta", "psi", "chi", "theta1", "theta2", "psi1", "psi2"})
                sub[name] = random_formula(sig, m, 2, 2, rng);
            auto f = substitute_atoms(e.formula, sub);
            try {
                EXPECT_TRUE(is_tautology(f, m, 1'000'000).tautology) << e.id << ": " << print_formula(f, m);
            } catch (const BudgetExceeded&) {
            }
        }
    }
}

TEST(Tautology, BudgetIsEnforced) {
    const auto& m = *DeMorganAlgebra::builtin("FOUR");
    std::vector<Formula> atoms;
    for (int i = 0; i < 12; ++i) atoms.push_back(fm::rel("p" + std::to_string(i), {}));
    auto f = fm::big_or(atoms, m);
    EXPECT_THROW(is_tautology(f, m), BudgetExceeded);  // 4^12 > 10^7
    atoms.resize(11);
    EXPECT_NO_THROW(is_tautology(fm::big_or(atoms, m), m));
    EXPECT_THROW(is_tautology(fm::big_or(atoms, m), m, 1000), BudgetExceeded);
    // A constant formula has exactly one (empty) valuation.
    auto r = is_tautology(fm::konst(m.one()), m, 1);
    EXPECT_TRUE(r.tautology);
    EXPECT_EQ(r.valuations, 1u);
}
