#include "mvl/proof.hpp"

#include <array>

#include "mvl/catalog.hpp"
#include "mvl/error.hpp"
#include "mvl/parser.hpp"

namespace mvl {

namespace {

constexpr std::array<std::pair<Rule, const char*>, 6> kRuleNames{{{Rule::hypothesis, "hypothesis"},
                                                                  {Rule::tautology, "tautology"},
                                                                  {Rule::validity, "validity"},
                                                                  {Rule::mp, "mp"},
                                                                  {Rule::gamma, "gamma"},
                                                                  {Rule::exists, "exists"}}};

std::size_t arg_count(Rule r) {
    switch (r) {
        case Rule::tautology: return 0;
        case Rule::hypothesis:
        case Rule::validity:
        case Rule::gamma: return 1;
        case Rule::mp:
        case Rule::exists: return 2;
    }
    return 0;
}

std::string line_ref(unsigned j) { return "line " + std::to_string(j); }

LineVerdict fail(std::string reason) { return LineVerdict{false, false, std::move(reason)}; }

LineVerdict check_line(const Proof& p, std::size_t i, const DeMorganAlgebra& m, std::uint64_t budget) {
    const Formula& f = p.lines[i].formula;
    const Justification& by = p.lines[i].by;
    if (by.args.size() != arg_count(by.rule))
        return fail(std::string(rule_name(by.rule)) + " takes " + std::to_string(arg_count(by.rule)) + " arguments");
    auto earlier = [&](unsigned j) { return j < i; };
    switch (by.rule) {
        case Rule::hypothesis: {
            const unsigned h = by.args[0];
            if (h >= p.sigma.size()) return fail("hypothesis " + std::to_string(h) + " does not exist");
            if (p.sigma[h] != f) return fail("formula is not hypothesis " + std::to_string(h));
            return {};
        }
        case Rule::tautology:
            try {
                auto r = is_tautology(f, m, budget);
                if (!r.tautology) return fail("not a tautology: " + r.to_json(m).dump());
            } catch (const BudgetExceeded& e) {
                return LineVerdict{false, true, std::string("tautology check over budget: ") + e.what()};
            }
            return {};
        case Rule::validity: {
            const unsigned n = by.args[0];
            if (n < 1 || n > kValidityCount) return fail("no validity schema " + std::to_string(n));
            if (!match_validity(n, f, m)) return fail("not an instance of validity " + std::to_string(n));
            return {};
        }
        case Rule::mp: {
            const unsigned j = by.args[0], k = by.args[1];
            if (!earlier(j) || !earlier(k)) return fail("modus ponens must cite earlier lines");
            if (p.lines[j].formula != fm::imp(p.lines[k].formula, f))
                return fail(line_ref(j) + " is not " + line_ref(k) + " -> this line");
            return {};
        }
        case Rule::gamma: {
            const unsigned j = by.args[0];
            if (!earlier(j)) return fail("gamma rule must cite an earlier line");
            if (fm::big_gamma(p.lines[j].formula, m) != f) return fail("formula is not G of " + line_ref(j));
            return {};
        }
        case Rule::exists: {
            const unsigned j = by.args[0], k = by.args[1];
            if (!earlier(j)) return fail("exists rule must cite an earlier line");
            auto si = match::strong_imp(p.lines[j].formula, m);
            if (!si) return fail(line_ref(j) + " is not a strong implication");
            if (fm::strong_imp(fm::exists(k, si->first), si->second, m) != f)
                return fail("formula is not E v" + std::to_string(k) + " applied to the antecedent of " + line_ref(j));
            if (free_vars(si->second).count(k)) return fail("v" + std::to_string(k) + " is free in the consequent");
            return {};
        }
    }
    return fail("unknown rule");
}

class Builder {
public:
    explicit Builder(const DeMorganAlgebra& m) : m_(m) {}

    Proof& proof() { return p_; }
    const Formula& at(unsigned i) const { return p_.lines.at(i).formula; }

    unsigned add(Formula f, Justification by) {
        p_.lines.push_back(ProofLine{std::move(f), std::move(by)});
        return static_cast<unsigned>(p_.lines.size() - 1);
    }
    unsigned hyp(const Formula& f) {
        unsigned h = 0;
        while (h < p_.sigma.size() && p_.sigma[h] != f) ++h;
        if (h == p_.sigma.size()) p_.sigma.push_back(f);
        return add(f, {Rule::hypothesis, {h}});
    }
    unsigned taut(const Formula& f) { return add(f, {Rule::tautology, {}}); }
    unsigned taut(unsigned n, const TautologyParams& a) { return taut(tautology(n, a, m_)); }
    unsigned validity(unsigned n, const ValidityParams& a) { return add(mvl::validity(n, a, m_), {Rule::validity, {n}}); }
    unsigned mp(unsigned j, unsigned k) {
        auto im = match::imp(at(j));
        if (!im || im->first != at(k)) throw Error("internal: modus ponens shape mismatch");
        return add(im->second, {Rule::mp, {j, k}});
    }
    unsigned gamma(unsigned j) { return add(fm::big_gamma(at(j), m_), {Rule::gamma, {j}}); }
    unsigned exists(unsigned j, unsigned k) {
        auto si = match::strong_imp(at(j), m_);
        if (!si) throw Error("internal: exists rule needs a strong implication");
        return add(fm::strong_imp(fm::exists(k, si->first), si->second, m_), {Rule::exists, {j, k}});
    }
    /// Appends q's lines; its hypotheses are located in (or added to) this proof's sigma.
    unsigned splice(const Proof& q) {
        if (q.lines.empty()) throw InputError("cannot use an empty proof");
        const auto off = static_cast<unsigned>(p_.lines.size());
        for (const auto& l : q.lines) {
            if (l.by.rule == Rule::hypothesis) {
                hyp(l.formula);
                continue;
            }
            Justification by = l.by;
            switch (by.rule) {
                case Rule::mp: by.args = {by.args[0] + off, by.args[1] + off}; break;
                case Rule::gamma: by.args[0] += off; break;
                case Rule::exists: by.args[0] += off; break;
                default: break;
            }
            add(l.formula, by);
        }
        return static_cast<unsigned>(p_.lines.size() - 1);
    }
    /// A line holding f: the end of a supplied proof of f, or f as a hypothesis.
    unsigned premise(const Formula& f, const Proof* q) {
        if (!q) return hyp(f);
        if (q->conclusion() != f) throw InputError("premise proof does not conclude " + print_formula(f, m_));
        return splice(*q);
    }

private:
    const DeMorganAlgebra& m_;
    Proof p_;
};

TautologyParams tp(Formula phi, Formula theta = nullptr, Formula psi = nullptr, Formula chi = nullptr) {
    TautologyParams a;
    a.phi = std::move(phi);
    a.theta = std::move(theta);
    a.psi = std::move(psi);
    a.chi = std::move(chi);
    return a;
}

// phi => E v_k phi; returns the index of its last line.
unsigned derive_a(Builder& b, const Formula& phi, unsigned k) {
    const auto ex = fm::exists(k, phi);
    const auto x = fm::disj(phi, ex);
    const unsigned l0 = b.taut(48, tp(phi, ex));
    ValidityParams v;
    v.k = k;
    v.phi = phi;
    const unsigned l1 = b.validity(7, v);
    const unsigned l2 = b.taut(2, tp(x, ex));
    const unsigned l3 = b.mp(l2, l1);
    // The chaining step, curried: (phi => X) -> ((X => E) -> (phi => E)).
    const unsigned l4 = b.taut(1, tp(phi, x, ex));
    const unsigned l5 = b.mp(l4, l0);
    return b.mp(l5, l3);
}

// From a line phi => theta, E v_k phi => E v_k theta.
unsigned derive_c_from(Builder& b, unsigned line, unsigned k, const DeMorganAlgebra& m) {
    auto si = match::strong_imp(b.at(line), m);
    const Formula phi = si->first, theta = si->second;
    const auto ex = fm::exists(k, theta);
    const unsigned a = derive_a(b, theta, k);
    const unsigned t = b.taut(1, tp(phi, theta, ex));
    const unsigned x = b.mp(t, line);
    const unsigned y = b.mp(x, a);
    return b.exists(y, k);
}

const Proof* premise_proof(const DerivedParams& a, std::size_t i) {
    return i < a.premises.size() ? &a.premises[i] : nullptr;
}

}  // namespace

const char* rule_name(Rule r) {
    for (const auto& [rule, name] : kRuleNames)
        if (rule == r) return name;
    return "?";
}

Rule rule_from_name(const std::string& name) {
    for (const auto& [rule, n] : kRuleNames)
        if (name == n) return rule;
    throw InputError("unknown rule '" + name + "'");
}

const Formula& Proof::conclusion() const {
    if (lines.empty()) throw InputError("empty proof");
    return lines.back().formula;
}

Json Proof::to_json(const DeMorganAlgebra& m) const {
    Json s = Json::array(), ls = Json::array();
    for (const auto& f : sigma) s.push_back(print_formula(f, m));
    for (const auto& l : lines)
        ls.push_back(Json{{"formula", print_formula(l.formula, m)}, {"by", {{"rule", rule_name(l.by.rule)}, {"args", l.by.args}}}});
    return Json{{"sigma", s}, {"lines", ls}};
}

Proof Proof::from_json(const Json& j, const DeMorganAlgebra& m, Signature& sig) {
    if (!j.is_object() || !j.contains("lines") || !j.at("lines").is_array())
        throw InputError("proof must be an object with a 'lines' array");
    Proof p;
    ParseOptions opts{true};
    if (j.contains("sigma")) {
        if (!j.at("sigma").is_array()) throw InputError("'sigma' must be a list of formulas");
        for (const auto& s : j.at("sigma")) {
            if (!s.is_string()) throw InputError("'sigma' must be a list of formulas");
            p.sigma.push_back(parse_formula(s.get<std::string>(), m, sig, opts));
        }
    }
    std::size_t i = 0;
    for (const auto& l : j.at("lines")) {
        const std::string where = "proof line " + std::to_string(i++) + ": ";
        try {
            if (!l.is_object() || !l.contains("formula") || !l.contains("by")) throw InputError("needs 'formula' and 'by'");
            ProofLine line;
            line.formula = parse_formula(l.at("formula").get<std::string>(), m, sig, opts);
            const Json& by = l.at("by");
            line.by.rule = rule_from_name(by.at("rule").get<std::string>());
            if (by.contains("args")) {
                if (!by.at("args").is_array()) throw InputError("'args' must be a list");
                for (const auto& x : by.at("args")) {
                    if (!x.is_number_unsigned()) throw InputError("rule arguments must be non-negative integers");
                    line.by.args.push_back(x.get<unsigned>());
                }
            }
            p.lines.push_back(std::move(line));
        } catch (const ParseError& e) {
            throw ParseError(e.position(), where + e.what());
        } catch (const InputError& e) {
            throw InputError(where + e.what());
        } catch (const nlohmann::json::exception& e) {
            throw InputError(where + e.what());
        }
    }
    return p;
}

Json ProofVerdict::to_json() const {
    Json ls = Json::array();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        Json l{{"line", i}, {"ok", lines[i].ok}};
        if (!lines[i].ok) l["reason"] = lines[i].reason;
        ls.push_back(l);
    }
    Json j{{"accepted", accepted}, {"lines", ls}};
    if (first_failure) j["first_failure"] = *first_failure;
    return j;
}

ProofVerdict check_proof(const Proof& p, const DeMorganAlgebra& m, std::uint64_t tautology_budget) {
    ProofVerdict v;
    if (p.lines.empty()) {
        v.accepted = false;
        return v;
    }
    for (std::size_t i = 0; i < p.lines.size(); ++i) {
        v.lines.push_back(check_line(p, i, m, tautology_budget));
        if (!v.lines.back().ok && !v.first_failure) {
            v.accepted = false;
            v.first_failure = i;
        }
    }
    return v;
}

Proof build_derived(char id, const DerivedParams& a, const DeMorganAlgebra& m) {
    Builder b(m);
    auto need = [&](const Formula& f, const char* what) {
        if (!f) throw InputError(std::string("derived proof ") + id + " needs " + what);
    };
    switch (id) {
        case 'a':
            need(a.phi, "phi");
            derive_a(b, a.phi, a.k);
            break;
        case 'b': {
            need(a.phi, "phi");
            const unsigned all = b.premise(fm::forall(a.k, a.phi), premise_proof(a, 0));
            const unsigned g = b.gamma(all);
            ValidityParams v;
            v.k = a.k;
            v.phi = a.phi;
            const unsigned ax = b.validity(1, v);
            b.mp(b.mp(ax, g), all);
            break;
        }
        case 'c': {
            need(a.phi, "phi");
            need(a.theta, "theta");
            derive_c_from(b, b.premise(fm::strong_imp(a.phi, a.theta, m), premise_proof(a, 0)), a.k, m);
            break;
        }
        case 'd': {
            need(a.phi, "phi");
            need(a.theta, "theta");
            const unsigned eq = b.premise(fm::iff(a.phi, a.theta, m), premise_proof(a, 0));
            const unsigned fwd = derive_c_from(b, b.mp(b.taut(2, tp(a.phi, a.theta)), eq), a.k, m);
            const unsigned bwd = derive_c_from(b, b.mp(b.taut(3, tp(a.phi, a.theta)), eq), a.k, m);
            const auto ep = fm::exists(a.k, a.phi), et = fm::exists(a.k, a.theta);
            const unsigned t = b.taut(4, tp(ep, et));
            b.mp(b.mp(t, bwd), fwd);
            break;
        }
        case 'e': {
            need(a.phi, "phi");
            if (free_vars(a.phi).count(a.k))
                throw InputError("derived proof e requires v" + std::to_string(a.k) + " not free in phi");
            const unsigned refl = b.taut(12, tp(a.phi));
            const unsigned down = b.exists(refl, a.k);
            const unsigned up = derive_a(b, a.phi, a.k);
            const unsigned t = b.taut(4, tp(fm::exists(a.k, a.phi), a.phi));
            b.mp(b.mp(t, up), down);
            break;
        }
        case 'f': {
            if (a.conjuncts.empty()) throw InputError("derived proof f needs at least one conjunct");
            unsigned acc = b.premise(a.conjuncts[0], premise_proof(a, 0));
            for (std::size_t i = 1; i < a.conjuncts.size(); ++i) {
                const unsigned next = b.premise(a.conjuncts[i], premise_proof(a, i));
                const unsigned ga = b.gamma(acc), gn = b.gamma(next);
                const unsigned t = b.taut(50, tp(a.conjuncts[i], b.at(acc)));
                acc = b.mp(b.mp(b.mp(b.mp(t, ga), gn), acc), next);
            }
            break;
        }
        default: throw InputError(std::string("no derived proof '") + id + "'");
    }
    return std::move(b.proof());
}

Proof deduction_transform(const Proof& with_phi, const Proof& gamma_phi, const Formula& phi, const DeMorganAlgebra& m) {
    if (!free_vars(phi).empty()) throw InputError("deduction theorem needs phi to be a sentence");
    for (const auto* q : {&with_phi, &gamma_phi}) {
        auto v = check_proof(*q, m);
        if (!v.accepted)
            throw InputError("input proof fails" +
                             (v.first_failure ? " at line " + std::to_string(*v.first_failure) + ": " +
                                                    v.lines[*v.first_failure].reason
                                              : std::string(": empty")));
    }
    const Formula gphi = fm::big_gamma(phi, m);
    if (gamma_phi.conclusion() != gphi) throw InputError("second proof does not conclude G phi");

    Builder b(m);
    b.proof().sigma = gamma_phi.sigma;
    const unsigned g = b.splice(gamma_phi);
    std::vector<unsigned> out(with_phi.lines.size());
    for (std::size_t i = 0; i < with_phi.lines.size(); ++i) {
        const Formula& psi = with_phi.lines[i].formula;
        const Justification& by = with_phi.lines[i].by;
        if (psi == phi) {
            out[i] = b.mp(b.taut(fm::imp(gphi, fm::imp(phi, phi))), g);
            continue;
        }
        switch (by.rule) {
            case Rule::hypothesis:
            case Rule::tautology:
            case Rule::validity: {
                const unsigned l = by.rule == Rule::hypothesis ? b.hyp(psi) : b.add(psi, by);
                const unsigned gl = b.gamma(l);
                const unsigned t = b.taut(fm::imp(fm::big_gamma(psi, m), fm::imp(psi, fm::imp(phi, psi))));
                out[i] = b.mp(b.mp(t, gl), l);
                break;
            }
            case Rule::mp: {
                const unsigned j = out[by.args[0]], k = out[by.args[1]];
                const unsigned g1 = b.gamma(j), g2 = b.gamma(k);
                const unsigned t = b.taut(5, tp(phi, with_phi.lines[by.args[1]].formula, psi));
                out[i] = b.mp(b.mp(b.mp(b.mp(b.mp(t, g), g1), g2), j), k);
                break;
            }
            case Rule::gamma: {
                const unsigned j = out[by.args[0]];
                const unsigned g1 = b.gamma(j);
                const unsigned t = b.taut(51, tp(phi, nullptr, with_phi.lines[by.args[0]].formula));
                out[i] = b.mp(b.mp(b.mp(t, g), g1), j);
                break;
            }
            case Rule::exists: {
                const unsigned j = out[by.args[0]], k = by.args[1];
                auto si = match::strong_imp(with_phi.lines[by.args[0]].formula, m);
                const Formula chi = si->first, theta = si->second;
                const unsigned g1 = b.gamma(j);
                const unsigned t7 = b.taut(7, tp(phi, theta, nullptr, chi));
                const unsigned swapped = b.mp(b.mp(b.mp(t7, g), g1), j);
                const unsigned lifted = b.exists(swapped, k);
                const unsigned g2 = b.gamma(lifted);
                const unsigned t6 = b.taut(6, tp(phi, theta, nullptr, fm::exists(k, chi)));
                out[i] = b.mp(b.mp(b.mp(t6, g), g2), lifted);
                break;
            }
        }
    }
    return std::move(b.proof());
}

std::pair<std::vector<Formula>, Formula> q_lift(const std::vector<Formula>& sigma, const Formula& phi, ElemMask q,
                                                const DeMorganAlgebra& m) {
    std::vector<Formula> s;
    for (const auto& f : sigma) s.push_back(fm::q_restrict(f, q, m));
    return {s, fm::q_restrict(phi, q, m)};
}

}  // namespace mvl
