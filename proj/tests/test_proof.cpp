#include <gtest/gtest.h>

#include "mvl/catalog.hpp"
#include "mvl/error.hpp"
#include "mvl/parser.hpp"
#include "mvl/proof.hpp"
#include "mvl/semantics.hpp"
#include "support/proof_mutations.hpp"

using namespace mvl;

namespace {

std::vector<AlgebraPtr> algebras() {
    return {DeMorganAlgebra::builtin("B2"), DeMorganAlgebra::builtin("K3"), DeMorganAlgebra::builtin("FOUR")};
}

const Signature kSig({{"R", 1}, {"U", 1}, {"B", 2}, {"P", 0}, {"Z", 0}});

Formula parse(const std::string& text, const DeMorganAlgebra& m) { return parse_formula(text, m, kSig); }

void expect_accepted(const Proof& p, const DeMorganAlgebra& m) {
    auto v = check_proof(p, m);
    EXPECT_TRUE(v.accepted) << m.name() << " " << v.to_json().dump() << "\n" << p.to_json(m).dump(1);
}

// Conclusion (and, for hypothesis-free proofs, every line) true in sampled models of sigma.
void expect_sound(const Proof& p, const AlgebraPtr& m, int structures) {
    Rng rng(kDefaultSeed);
    int models = 0;
    for (unsigned base : {1u, 2u, 3u}) {
        StructureSpace space(m, kSig, base, 3);
        for (int i = 0; i < structures; ++i) {
            auto a = space.random(rng);
            if (!is_model(p.sigma, a)) continue;
            ++models;
            EXPECT_TRUE(is_true(p.conclusion(), a)) << print_formula(p.conclusion(), *m);
            if (p.sigma.empty())
                for (const auto& l : p.lines) EXPECT_TRUE(is_true(l.formula, a)) << print_formula(l.formula, *m);
        }
    }
    if (p.sigma.empty()) EXPECT_EQ(models, 3 * structures);
}

}  // namespace

TEST(Checker, SingleHypothesis) {
    const auto& m = *algebras()[1];
    Proof p{{parse("R(v0)", m)}, {{parse("R(v0)", m), {Rule::hypothesis, {0}}}}};
    expect_accepted(p, m);
    EXPECT_EQ(p.conclusion(), parse("R(v0)", m));
}

TEST(Checker, RejectsBadLines) {
    const auto& m = *algebras()[1];
    const auto r = parse("R(v0)", m), u = parse("U(v0)", m);
    auto first_failure = [&](const Proof& p) {
        auto v = check_proof(p, m);
        EXPECT_FALSE(v.accepted);
        return v.first_failure.value_or(999);
    };
    // Modus ponens citing a line whose antecedent differs by one symbol.
    Proof p{{r, fm::imp(u, u)}, {{r, {Rule::hypothesis, {0}}}, {fm::imp(u, u), {Rule::hypothesis, {1}}}, {u, {Rule::mp, {1, 0}}}}};
    EXPECT_EQ(first_failure(p), 2u);
    // Forward references.
    Proof fwd{{r}, {{fm::big_gamma(r, m), {Rule::gamma, {1}}}, {r, {Rule::hypothesis, {0}}}}};
    EXPECT_EQ(first_failure(fwd), 0u);
    EXPECT_NE(check_proof(fwd, m).lines[0].reason.find("earlier"), std::string::npos);
    // Self reference is not earlier either.
    Proof self{{}, {{fm::big_gamma(r, m), {Rule::gamma, {0}}}}};
    EXPECT_EQ(first_failure(self), 0u);
    // Excluded middle is not a tautology over K3.
    Proof em{{}, {{fm::disj(r, fm::neg(r)), {Rule::tautology, {}}}}};
    EXPECT_EQ(first_failure(em), 0u);
    // Wrong arity of arguments, missing hypothesis, bad schema numbers.
    EXPECT_EQ(first_failure(Proof{{r}, {{r, {Rule::hypothesis, {}}}}}), 0u);
    EXPECT_EQ(first_failure(Proof{{r}, {{r, {Rule::hypothesis, {3}}}}}), 0u);
    EXPECT_EQ(first_failure(Proof{{}, {{r, {Rule::validity, {15}}}}}), 0u);
    EXPECT_EQ(first_failure(Proof{{}, {{r, {Rule::validity, {7}}}}}), 0u);
    EXPECT_FALSE(check_proof(Proof{}, m).accepted);
}

TEST(Checker, ExistsRuleNamesTheFreeVariable) {
    const auto& m = *algebras()[1];
    const auto r0 = parse("R(v0)", m);
    const auto taut = fm::strong_imp(r0, fm::disj(r0, parse("U(v1)", m)), m);
    Proof p{{}, {{taut, {Rule::tautology, {}}},
                 {fm::strong_imp(fm::exists(0, r0), fm::disj(r0, parse("U(v1)", m)), m), {Rule::exists, {0, 0}}}}};
    auto v = check_proof(p, m);
    ASSERT_EQ(v.first_failure, std::optional<std::size_t>(1));
    EXPECT_NE(v.lines[1].reason.find("v0 is free"), std::string::npos) << v.lines[1].reason;
    // Binding a variable that does not occur free on the right is fine.
    Proof ok{{}, {{taut, {Rule::tautology, {}}},
                  {fm::strong_imp(fm::exists(2, r0), fm::disj(r0, parse("U(v1)", m)), m), {Rule::exists, {0, 2}}}}};
    expect_accepted(ok, m);
}

TEST(Checker, OverBudgetTautologyIsRejectedDistinctly) {
    const auto& m = *algebras()[2];
    std::vector<Formula> atoms;
    for (int i = 0; i < 6; ++i) atoms.push_back(fm::rel("p" + std::to_string(i), {}));
    const auto f = fm::strong_imp(fm::big_or(atoms, m), fm::big_or(atoms, m), m);
    Proof p{{}, {{f, {Rule::tautology, {}}}}};
    auto v = check_proof(p, m, 1000);
    EXPECT_FALSE(v.accepted);
    EXPECT_TRUE(v.budget_exceeded());
    EXPECT_TRUE(check_proof(p, m).accepted);
    // An ordinary failure is not a budget failure.
    Proof q{{}, {{fm::imp(atoms[0], atoms[1]), {Rule::tautology, {}}}}};
    EXPECT_FALSE(check_proof(q, m).budget_exceeded());
}

TEST(Derived, AllTheoremsCheck) {
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        DerivedParams a;
        a.phi = parse("B(v0,v1)", m);
        a.theta = parse("(R(v0) | U(v1))", m);
        a.k = 1;

        auto pa = build_derived('a', a, m);
        expect_accepted(pa, m);
        EXPECT_EQ(pa.conclusion(), fm::strong_imp(a.phi, fm::exists(1, a.phi), m));
        EXPECT_EQ(pa.lines.size(), 7u);
        EXPECT_TRUE(pa.sigma.empty());

        auto pb = build_derived('b', a, m);
        expect_accepted(pb, m);
        EXPECT_EQ(pb.conclusion(), a.phi);
        EXPECT_EQ(pb.sigma, std::vector<Formula>{fm::forall(1, a.phi)});

        auto pc = build_derived('c', a, m);
        expect_accepted(pc, m);
        EXPECT_EQ(pc.conclusion(), fm::strong_imp(fm::exists(1, a.phi), fm::exists(1, a.theta), m));

        auto pd = build_derived('d', a, m);
        expect_accepted(pd, m);
        EXPECT_EQ(pd.conclusion(), fm::iff(fm::exists(1, a.phi), fm::exists(1, a.theta), m));
        EXPECT_EQ(pd.sigma, std::vector<Formula>{fm::iff(a.phi, a.theta, m)});

        DerivedParams e;
        e.phi = parse("R(v0)", m);
        e.k = 2;
        auto pe = build_derived('e', e, m);
        expect_accepted(pe, m);
        EXPECT_EQ(pe.conclusion(), fm::iff(fm::exists(2, e.phi), e.phi, m));
        e.k = 0;
        EXPECT_THROW(build_derived('e', e, m), InputError);

        DerivedParams f;
        f.conjuncts = {parse("R(v0)", m), parse("P", m), parse("E v1 . B(v0,v1)", m)};
        auto pf = build_derived('f', f, m);
        expect_accepted(pf, m);
        EXPECT_EQ(pf.conclusion(), fm::big_and(f.conjuncts, m));
        EXPECT_EQ(pf.sigma, f.conjuncts);
        f.conjuncts.resize(2);
        EXPECT_EQ(build_derived('f', f, m).conclusion(), fm::conj(f.conjuncts[0], f.conjuncts[1]));

        EXPECT_THROW(build_derived('g', a, m), InputError);
        EXPECT_THROW(build_derived('f', DerivedParams{}, m), InputError);
    }
}

TEST(Derived, PremisesCanBeProofs) {
    const auto& m = *algebras()[1];
    DerivedParams a;
    a.phi = parse("R(v0)", m);
    a.k = 0;
    auto pa = build_derived('a', a, m);
    // (c) applied to the proof of (a): E v1 R(v0) => E v1 E v0 R(v0), from no hypotheses.
    DerivedParams c;
    c.phi = a.phi;
    c.theta = fm::exists(0, a.phi);
    c.k = 1;
    c.premises = {pa};
    auto pc = build_derived('c', c, m);
    expect_accepted(pc, m);
    EXPECT_TRUE(pc.sigma.empty());
    EXPECT_EQ(pc.conclusion(), fm::strong_imp(fm::exists(1, a.phi), fm::exists(1, fm::exists(0, a.phi)), m));
    expect_sound(pc, DeMorganAlgebra::builtin("K3"), 20);

    // (f) over two theorem proofs.
    DerivedParams f;
    f.conjuncts = {pa.conclusion(), pc.conclusion()};
    f.premises = {pa, pc};
    auto pf = build_derived('f', f, m);
    expect_accepted(pf, m);
    EXPECT_TRUE(pf.sigma.empty());

    c.premises = {pf};
    EXPECT_THROW(build_derived('c', c, m), InputError);
}

TEST(Derived, UncurriedChainCannotCloseA) {
    // With the uncurried chaining tautology the antecedent never appears as a line,
    // so the two closing modus ponens steps have nothing to cite.
    const auto& m = *algebras()[1];
    DerivedParams a;
    a.phi = parse("R(v0)", m);
    a.k = 1;
    auto pa = build_derived('a', a, m);
    const auto ex = fm::exists(1, a.phi), x = fm::disj(a.phi, ex);
    const auto left = fm::imp(fm::strong_imp(a.phi, x, m), fm::strong_imp(x, ex, m));
    const auto uncurried = fm::imp(left, fm::strong_imp(a.phi, ex, m));
    EXPECT_TRUE(is_tautology(uncurried, m).tautology);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NE(pa.lines[i].formula, left);
}

TEST(Deduction, Cases) {
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        const auto phi = parse("P", m), q = parse("Z", m), gphi = fm::big_gamma(phi, m);
        const Proof gamma_proof{{gphi}, {{gphi, {Rule::hypothesis, {0}}}}};

        auto run = [&](const Proof& inner) {
            expect_accepted(inner, m);
            auto out = deduction_transform(inner, gamma_proof, phi, m);
            expect_accepted(out, m);
            EXPECT_EQ(out.conclusion(), fm::imp(phi, inner.conclusion()));
            for (const auto& s : out.sigma) EXPECT_NE(s, phi);
            return out;
        };
        // Axiom line.
        run(Proof{{gphi, phi}, {{fm::strong_imp(q, q, m), {Rule::tautology, {}}}}});
        // The hypothesis itself.
        run(Proof{{gphi, phi}, {{phi, {Rule::hypothesis, {1}}}}});
        // Modus ponens.
        const auto pq = fm::imp(phi, q);
        auto mp_out = run(Proof{{gphi, phi, pq}, {{phi, {Rule::hypothesis, {1}}}, {pq, {Rule::hypothesis, {2}}}, {q, {Rule::mp, {1, 0}}}}});
        EXPECT_EQ(mp_out.sigma, (std::vector<Formula>{gphi, pq}));
        // Gamma rule.
        run(Proof{{gphi, phi}, {{phi, {Rule::hypothesis, {1}}}, {gphi, {Rule::gamma, {0}}}}});
        // Exists rule, with a premise that mentions phi.
        const auto chi = parse("(R(v0) & P)", m);
        run(Proof{{gphi, phi},
                  {{fm::strong_imp(chi, phi, m), {Rule::tautology, {}}},
                   {fm::strong_imp(fm::exists(0, chi), phi, m), {Rule::exists, {0, 0}}}}});
        // Validity axiom line.
        ValidityParams v;
        v.k = 0;
        v.phi = parse("R(v0)", m);
        run(Proof{{gphi, phi}, {{validity(7, v, m), {Rule::validity, {7}}}}});
    }
}

TEST(Deduction, Preconditions) {
    const auto& m = *algebras()[1];
    const auto phi = parse("R(v0)", m), gphi = fm::big_gamma(phi, m);
    const Proof gp{{gphi}, {{gphi, {Rule::hypothesis, {0}}}}};
    const Proof inner{{phi}, {{phi, {Rule::hypothesis, {0}}}}};
    EXPECT_THROW(deduction_transform(inner, gp, phi, m), InputError);
    const auto p = parse("P", m);
    const Proof wrong{{p}, {{p, {Rule::hypothesis, {0}}}}};
    EXPECT_THROW(deduction_transform(wrong, wrong, p, m), InputError);
    const Proof broken{{}, {{p, {Rule::tautology, {}}}}};
    const Proof gpp{{fm::big_gamma(p, m)}, {{fm::big_gamma(p, m), {Rule::hypothesis, {0}}}}};
    EXPECT_THROW(deduction_transform(broken, gpp, p, m), InputError);
}

TEST(Soundness, AcceptedTheoremsAreTrue) {
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        DerivedParams a;
        a.phi = parse("B(v0,v1)", m);
        a.k = 1;
        expect_sound(build_derived('a', a, m), mp, 20);
        DerivedParams e;
        e.phi = parse("(R(v0) | U(v1))", m);
        e.k = 2;
        expect_sound(build_derived('e', e, m), mp, 20);
        a.theta = parse("U(v0)", m);
        for (char id : {'b', 'c', 'd'}) expect_sound(build_derived(id, a, m), mp, 20);

        // A deduction with no remaining hypotheses: phi = G P has a crisp G phi by tautology.
        const auto phi = fm::big_gamma(parse("P", m), m), gphi = fm::big_gamma(phi, m);
        const Proof gp{{}, {{gphi, {Rule::tautology, {}}}}};
        const Proof inner{{phi}, {{phi, {Rule::hypothesis, {0}}}, {fm::big_gamma(phi, m), {Rule::gamma, {0}}}}};
        auto out = deduction_transform(inner, gp, phi, m);
        expect_accepted(out, m);
        EXPECT_TRUE(out.sigma.empty());
        expect_sound(out, mp, 20);
    }
}

TEST(Mutations, RejectedAtTheMutatedLine) {
    const auto& m = *algebras()[1];
    DerivedParams a;
    a.phi = parse("B(v0,v1)", m);
    a.theta = parse("U(v0)", m);
    a.k = 1;
    DerivedParams f;
    f.conjuncts = {parse("R(v0)", m), parse("P", m), parse("Z", m)};
    std::vector<Proof> proofs;
    for (char id : {'a', 'b', 'c', 'd'}) proofs.push_back(build_derived(id, a, m));
    DerivedParams e;
    e.phi = parse("R(v0)", m);
    e.k = 1;
    proofs.push_back(build_derived('e', e, m));
    proofs.push_back(build_derived('f', f, m));
    auto ms = mutation::mutations(proofs, 40);
    ASSERT_GE(ms.size(), 20u);
    for (const auto& mu : ms) {
        auto v = check_proof(mu.proof, m);
        EXPECT_FALSE(v.accepted);
        EXPECT_EQ(v.first_failure, std::optional<std::size_t>(mu.line)) << v.to_json().dump();
    }
}

TEST(ProofJson, RoundTrip) {
    const auto& m = *algebras()[2];
    DerivedParams a;
    a.phi = parse("B(v0,v1)", m);
    a.theta = parse("U(v0)", m);
    a.k = 1;
    auto p = build_derived('d', a, m);
    Signature sig;
    auto q = Proof::from_json(p.to_json(m), m, sig);
    EXPECT_EQ(q.sigma, p.sigma);
    ASSERT_EQ(q.lines.size(), p.lines.size());
    for (std::size_t i = 0; i < p.lines.size(); ++i) {
        EXPECT_EQ(q.lines[i].formula, p.lines[i].formula);
        EXPECT_EQ(q.lines[i].by, p.lines[i].by);
    }
    EXPECT_EQ(q.to_json(m), p.to_json(m));
    EXPECT_EQ(sig.arity("B"), 2u);
}

TEST(ProofJson, Errors) {
    const auto& m = *algebras()[1];
    Signature sig;
    auto load = [&](const char* text) { return Proof::from_json(Json::parse(text), m, sig); };
    EXPECT_THROW(load(R"({"sigma":[]})"), InputError);
    EXPECT_THROW(load(R"({"lines":[{"formula":"P"}]})"), InputError);
    EXPECT_THROW(load(R"({"lines":[{"formula":"P","by":{"rule":"magic"}}]})"), InputError);
    EXPECT_THROW(load(R"({"lines":[{"formula":"(P &","by":{"rule":"tautology"}}]})"), ParseError);
    EXPECT_THROW(load(R"({"lines":[{"formula":"P","by":{"rule":"mp","args":[-1]}}]})"), InputError);
    EXPECT_THROW(load(R"({"sigma":[3],"lines":[]})"), InputError);
    EXPECT_EQ(rule_from_name("exists"), Rule::exists);
    EXPECT_STREQ(rule_name(Rule::gamma), "gamma");
}

TEST(QLift, Examples) {
    for (const auto& mp : algebras()) {
        const auto& m = *mp;
        const auto phi = parse("R(v0)", m);
        auto [s, goal] = q_lift({phi, parse("P", m)}, phi, m.all_mask(), m);
        EXPECT_EQ(s.size(), 2u);
        EXPECT_TRUE(is_tautology(fm::iff(goal, fm::konst(m.one()), m), m).tautology);
        EXPECT_EQ(q_lift({}, phi, 0, m).second, fm::konst(m.zero()));
        EXPECT_EQ(q_lift({}, phi, bit(m.one()), m).second, fm::gamma(m.one(), phi));
        // A proof of the lifted goal checks like any other: here by tautology 30.
        Proof p{{}, {{fm::iff(goal, fm::konst(m.one()), m), {Rule::tautology, {}}}}};
        expect_accepted(p, m);
    }
}
