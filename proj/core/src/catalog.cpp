#include "mvl/catalog.hpp"

#include <algorithm>

#include "mvl/construction.hpp"
#include "mvl/error.hpp"

namespace mvl {

namespace match {

std::optional<std::pair<Formula, Formula>> imp(const Formula& f) {
    if (f->op != Op::disj || f->lhs->op != Op::neg) return std::nullopt;
    return std::pair{f->lhs->lhs, f->rhs};
}

std::optional<std::pair<Formula, Formula>> strong_imp(const Formula& f, const DeMorganAlgebra& m) {
    // The first conjunct is (g[r0] phi -> (g[q] theta | ...)); read phi and theta off it, then rebuild.
    Formula c = f;
    for (unsigned i = 1; i < m.size(); ++i) {
        if (c->op != Op::conj) return std::nullopt;
        c = c->lhs;
    }
    auto parts = imp(c);
    if (!parts || parts->first->op != Op::gamma) return std::nullopt;
    const Formula b = parts->first->lhs;
    Formula d = parts->second;
    while (d->op == Op::disj) d = d->lhs;
    if (d->op != Op::gamma) return std::nullopt;
    const Formula a = d->lhs;
    if (fm::strong_imp(a, b, m) != f) return std::nullopt;
    return std::pair{a, b};
}

std::optional<std::pair<Formula, Formula>> iff(const Formula& f, const DeMorganAlgebra& m) {
    if (f->op != Op::conj) return std::nullopt;
    auto ab = strong_imp(f->lhs, m);
    if (!ab || fm::iff(ab->first, ab->second, m) != f) return std::nullopt;
    return ab;
}

std::optional<Formula> big_gamma(const Formula& f, const DeMorganAlgebra& m) {
    if (f->op != Op::disj || f->lhs->op != Op::gamma) return std::nullopt;
    const Formula a = f->lhs->lhs;
    if (fm::big_gamma(a, m) != f) return std::nullopt;
    return a;
}

std::optional<std::pair<unsigned, Formula>> forall(const Formula& f) {
    if (f->op != Op::neg || f->lhs->op != Op::exists || f->lhs->lhs->op != Op::neg) return std::nullopt;
    return std::pair{f->lhs->var(), f->lhs->lhs->lhs};
}

std::optional<std::tuple<unsigned, unsigned, Formula>> subst(const Formula& f) {
    if (f->op != Op::exists) return std::nullopt;
    const Formula body = f->lhs;
    if (body->op != Op::conj || body->lhs->op != Op::eq || body->lhs->vars[0] != f->var()) return std::nullopt;
    return std::tuple{f->var(), body->lhs->vars[1], body->rhs};
}

}  // namespace match

namespace {

std::string elem_list(ElemMask q, const DeMorganAlgebra& m) {
    std::string s = "{";
    bool first = true;
    for (ElemId p : m.elements())
        if (q & bit(p)) {
            if (!first) s += ',';
            s += m.label(p);
            first = false;
        }
    return s + "}";
}

bool middle(ElemId p, const DeMorganAlgebra& m) { return p != m.zero() && p != m.one(); }

}  // namespace

Formula tautology(unsigned n, const TautologyParams& a, const DeMorganAlgebra& m) {
    using namespace fm;
    auto S = [&](const Formula& x, const Formula& y) { return strong_imp(x, y, m); };
    auto I = [&](const Formula& x, const Formula& y) { return iff(x, y, m); };
    auto G = [&](const Formula& x) { return big_gamma(x, m); };
    const Formula t0 = konst(m.zero()), t1 = konst(m.one());
    const Formula &phi = a.phi, &theta = a.theta, &psi = a.psi, &chi = a.chi;
    switch (n) {
        case 1: return imp(S(phi, theta), imp(S(theta, psi), S(phi, psi)));
        case 2: return imp(I(phi, theta), S(phi, theta));
        case 3: return imp(I(phi, theta), S(theta, phi));
        case 4: return imp(S(theta, phi), imp(S(phi, theta), I(phi, theta)));
        case 5:
            return imp(G(phi), imp(G(imp(phi, imp(theta, psi))),
                                   imp(G(imp(phi, theta)),
                                       imp(imp(phi, imp(theta, psi)), imp(imp(phi, theta), imp(phi, psi))))));
        case 6:
            return imp(G(phi), imp(G(S(chi, imp(phi, theta))), imp(S(chi, imp(phi, theta)), imp(phi, S(chi, theta)))));
        case 7:
            return imp(G(phi), imp(G(imp(phi, S(chi, theta))), imp(imp(phi, S(chi, theta)), S(chi, imp(phi, theta)))));
        case 8:
            if (a.qset & bit(m.zero())) throw InputError("tautology 8 requires 0 outside Q");
            return imp(q_restrict(t0, a.qset, m), t0);
        case 9: return imp(t0, q_restrict(t0, a.qset, m));
        case 10: return imp(G(phi), G(neg(phi)));
        case 11: return imp(G(phi), imp(imp(neg(phi), t0), phi));
        case 12: return S(phi, phi);
        case 13: return I(phi, phi);
        case 14: return imp(I(phi, theta), I(theta, phi));
        case 15: return imp(I(phi, theta), imp(I(theta, psi), I(phi, psi)));
        case 16:
            return imp(I(a.theta1, a.psi1), imp(I(a.theta2, a.psi2), I(disj(a.theta1, a.theta2), disj(a.psi1, a.psi2))));
        case 17:
            return imp(I(a.theta1, a.psi1), imp(I(a.theta2, a.psi2), I(conj(a.theta1, a.theta2), conj(a.psi1, a.psi2))));
        case 18: return imp(I(theta, psi), I(neg(theta), neg(psi)));
        case 19: return imp(I(phi, theta), I(gamma(a.p, phi), gamma(a.p, theta)));
        case 20: return imp(I(t1, t0), t0);
        case 21: return imp(G(phi), imp(phi, I(phi, t1)));
        case 22: {
            auto x = disj(gamma(m.one(), phi), gamma(m.one(), theta));
            return I(gamma(m.one(), x), x);
        }
        case 23: {
            auto x = conj(gamma(m.one(), phi), gamma(m.one(), theta));
            return I(gamma(m.one(), x), x);
        }
        case 24: return I(gamma(m.one(), neg(gamma(m.one(), phi))), neg(gamma(m.one(), phi)));
        case 25: return I(t0, gamma(m.one(), t0));
        case 26: return I(t1, gamma(m.one(), t1));
        case 27:
        case 28: {
            std::vector<Formula> terms;
            for (ElemId q : m.elements())
                for (ElemId r : m.elements())
                    if ((n == 27 ? m.join(q, r) : m.meet(q, r)) == a.p)
                        terms.push_back(conj(gamma(q, phi), gamma(r, theta)));
            return I(gamma(a.p, n == 27 ? disj(phi, theta) : conj(phi, theta)), big_or(terms, m));
        }
        case 29:
            if (a.p == a.q) throw InputError("tautology 29 requires p != q");
            return I(conj(gamma(a.p, phi), gamma(a.q, phi)), t0);
        case 30: return I(q_restrict(phi, m.all_mask(), m), t1);
        case 31: return I(gamma(a.p, neg(phi)), gamma(m.neg(a.p), phi));
        case 32: return I(gamma(a.p, konst(a.p)), t1);
        case 33:
            if (a.p == a.q) throw InputError("tautology 33 requires p != q");
            return I(gamma(a.p, konst(a.q)), t0);
        case 34: return I(disj(phi, theta), disj(theta, phi));
        case 35: return I(conj(phi, theta), conj(theta, phi));
        case 36: return I(disj(phi, disj(theta, psi)), disj(disj(phi, theta), psi));
        case 37: return I(conj(phi, conj(theta, psi)), conj(conj(phi, theta), psi));
        case 38: return I(conj(phi, disj(theta, psi)), disj(conj(phi, theta), conj(phi, psi)));
        case 39: return I(disj(phi, conj(theta, psi)), conj(disj(phi, theta), disj(phi, psi)));
        case 40: return I(disj(phi, t0), phi);
        case 41: return I(conj(phi, t1), phi);
        case 42: return I(disj(gamma(m.one(), phi), neg(gamma(m.one(), phi))), t1);
        case 43: return I(conj(gamma(m.one(), phi), neg(gamma(m.one(), phi))), t0);
        case 44: return I(gamma(m.one(), gamma(a.q, phi)), gamma(a.q, phi));
        case 45:
            if (!middle(a.p, m)) throw InputError("tautology 45 requires p outside {0,1}");
            return I(gamma(a.p, gamma(a.q, phi)), t0);
        case 46: return I(gamma(m.zero(), gamma(a.q, phi)), neg(gamma(a.q, phi)));
        case 47: {
            std::vector<Formula> xs;
            for (ElemId p : m.elements()) xs.push_back(I(gamma(p, phi), gamma(p, theta)));
            return imp(big_and(xs, m), I(phi, theta));
        }
        case 48: return S(phi, disj(phi, theta));
        case 49: return G(G(phi));
        case 50: return imp(G(theta), imp(G(phi), imp(theta, imp(phi, conj(theta, phi)))));
        case 51: return imp(G(phi), imp(G(imp(phi, psi)), imp(imp(phi, psi), imp(phi, G(psi)))));
        default: throw InputError("no tautology schema " + std::to_string(n));
    }
}

TautologyParams atom_metavariables() {
    using fm::rel;
    return TautologyParams{rel("phi", {}),    rel("theta", {}),  rel("psi", {}),   rel("chi", {}),
                           rel("theta1", {}), rel("theta2", {}), rel("psi1", {}),  rel("psi2", {})};
}

std::vector<CatalogEntry> tautology_instances(const TautologyParams& metas, const DeMorganAlgebra& m) {
    std::vector<CatalogEntry> out;
    auto add = [&](unsigned n, std::string suffix, TautologyParams a) {
        out.push_back(CatalogEntry{std::to_string(n) + suffix, tautology(n, a, m)});
    };
    for (unsigned n = 1; n <= kTautologyCount; ++n) {
        TautologyParams a = metas;
        switch (n) {
            case 8:
            case 9:
                for (ElemMask q = 0; q <= m.all_mask(); ++q) {
                    if (n == 8 && (q & bit(m.zero()))) continue;
                    a.qset = q;
                    add(n, "[Q=" + elem_list(q, m) + "]", a);
                }
                break;
            case 19:
            case 27:
            case 28:
            case 31:
            case 32:
                for (ElemId p : m.elements()) {
                    a.p = p;
                    add(n, "[p=" + m.label(p) + "]", a);
                }
                break;
            case 29:
            case 33:
                for (ElemId p : m.elements())
                    for (ElemId q : m.elements())
                        if (p != q) {
                            a.p = p;
                            a.q = q;
                            add(n, "[p=" + m.label(p) + ",q=" + m.label(q) + "]", a);
                        }
                break;
            case 44:
            case 46:
                for (ElemId q : m.elements()) {
                    a.q = q;
                    add(n, "[q=" + m.label(q) + "]", a);
                }
                break;
            case 45:
                for (ElemId p : m.elements())
                    if (middle(p, m))
                        for (ElemId q : m.elements()) {
                            a.p = p;
                            a.q = q;
                            add(n, "[p=" + m.label(p) + ",q=" + m.label(q) + "]", a);
                        }
                break;
            default: add(n, "", a);
        }
    }
    return out;
}

std::optional<std::vector<unsigned>> fresh_indices(const std::vector<unsigned>& js, unsigned window) {
    const auto n = static_cast<unsigned>(js.size());
    std::vector<unsigned> ks;
    for (unsigned c = n; ks.size() < n; ++c) {
        if (c >= window) return std::nullopt;
        if (std::find(js.begin(), js.end(), c) == js.end()) ks.push_back(c);
    }
    return ks;
}

Formula validity(unsigned n, const ValidityParams& a, const DeMorganAlgebra& m) {
    using namespace fm;
    auto I = [&](const Formula& x, const Formula& y) { return iff(x, y, m); };
    const Formula t0 = konst(m.zero()), t1 = konst(m.one());
    const ElemId one = m.one(), zero = m.zero();
    switch (n) {
        case 1: return imp(big_gamma(forall(a.k, a.phi), m), imp(forall(a.k, a.phi), a.phi));
        case 2: return I(gamma(one, exists(a.k, gamma(one, a.phi))), exists(a.k, gamma(one, a.phi)));
        case 3: return I(gamma(one, eq(a.k, a.l)), eq(a.k, a.l));
        case 4:
            if (!middle(a.p, m)) throw InputError("validity 4 requires p outside {0,1}");
            return I(gamma(a.p, eq(a.k, a.l)), t0);
        case 5: return I(gamma(zero, eq(a.k, a.l)), neg(eq(a.k, a.l)));
        case 6: return I(exists(a.k, t0), t0);
        case 7: return I(disj(a.phi, exists(a.k, a.phi)), exists(a.k, a.phi));
        case 8: return I(exists(a.k, conj(a.phi, exists(a.k, a.theta))), conj(exists(a.k, a.phi), exists(a.k, a.theta)));
        case 9: return I(exists(a.k, exists(a.l, a.phi)), exists(a.l, exists(a.k, a.phi)));
        case 10: return I(eq(a.k, a.k), t1);
        case 11:
            if (a.k == a.l || a.k == a.m) throw InputError("validity 11 requires k outside {l,m}");
            return I(eq(a.l, a.m), exists(a.k, conj(eq(a.l, a.k), eq(a.k, a.m))));
        case 12: {
            if (a.k == a.l) throw InputError("validity 12 requires k != l");
            auto d = eq(a.k, a.l);
            auto g1 = gamma(one, a.phi);
            return I(conj(exists(a.k, conj(d, g1)), exists(a.k, conj(d, neg(g1)))), t0);
        }
        case 13: {
            const MCylOpsTable table(m);
            auto prod = [&](ElemMask s) {
                std::vector<Formula> xs;
                for (ElemId q : m.elements())
                    if (s & bit(q)) xs.push_back(exists(a.k, gamma(q, a.phi)));
                return big_and(xs, m);
            };
            std::vector<Formula> plus, minus;
            for (ElemMask s : table.with_sup(a.p)) plus.push_back(prod(s));
            for (ElemMask s : table.above(a.p)) minus.push_back(prod(s));
            return I(gamma(a.p, exists(a.k, a.phi)), conj(big_or(plus, m), neg(big_or(minus, m))));
        }
        case 14: {
            const auto ar = static_cast<unsigned>(a.js.size());
            if (a.ks.size() != ar) throw InputError("validity 14 needs one fresh index per argument");
            for (unsigned i = 0; i < ar; ++i) {
                const unsigned k = a.ks[i];
                if (k < ar || std::find(a.js.begin(), a.js.end(), k) != a.js.end() ||
                    std::count(a.ks.begin(), a.ks.end(), k) > 1)
                    throw InputError("validity 14: index " + std::to_string(k) + " is not fresh");
            }
            std::vector<unsigned> base(ar);
            for (unsigned i = 0; i < ar; ++i) base[i] = i;
            Formula f = rel(a.relation, base);
            for (unsigned i = ar; i-- > 0;) f = subst(i, a.ks[i], f);
            for (unsigned i = ar; i-- > 0;) f = subst(a.ks[i], a.js[i], f);
            return I(rel(a.relation, a.js), f);
        }
        default: throw InputError("no validity schema " + std::to_string(n));
    }
}

std::vector<CatalogEntry> validity_instances(const Formula& phi, const Formula& theta, const std::string& relation,
                                             unsigned arity, unsigned window, const DeMorganAlgebra& m) {
    std::vector<CatalogEntry> out;
    auto add = [&](unsigned n, std::string suffix, const ValidityParams& a) {
        out.push_back(CatalogEntry{std::to_string(n) + suffix, validity(n, a, m)});
    };
    auto base = [&] {
        ValidityParams a;
        a.phi = phi;
        a.theta = theta;
        return a;
    };
    auto ks = [](unsigned k) { return "[k=" + std::to_string(k) + "]"; };
    auto kl = [](unsigned k, unsigned l) { return "[k=" + std::to_string(k) + ",l=" + std::to_string(l) + "]"; };
    for (unsigned n = 1; n <= kValidityCount; ++n) {
        if (n == 14) {
            std::vector<unsigned> js(arity, 0);
            while (true) {
                if (auto fresh = fresh_indices(js, window)) {
                    ValidityParams a = base();
                    a.relation = relation;
                    a.js = js;
                    a.ks = *fresh;
                    std::string id = "[j=";
                    for (std::size_t i = 0; i < js.size(); ++i) id += (i ? "," : "") + std::to_string(js[i]);
                    add(n, id + "]", a);
                }
                std::size_t i = 0;
                while (i < js.size() && ++js[i] == window) js[i++] = 0;
                if (i == js.size()) break;
            }
            continue;
        }
        for (unsigned k = 0; k < window; ++k) {
            ValidityParams a = base();
            a.k = k;
            switch (n) {
                case 3:
                case 5:
                case 9:
                case 12:
                    for (unsigned l = 0; l < window; ++l) {
                        if (n == 12 && l == k) continue;
                        a.l = l;
                        add(n, kl(k, l), a);
                    }
                    break;
                case 4:
                    for (unsigned l = 0; l < window; ++l)
                        for (ElemId p : m.elements())
                            if (middle(p, m)) {
                                a.l = l;
                                a.p = p;
                                add(n, "[k=" + std::to_string(k) + ",l=" + std::to_string(l) + ",p=" + m.label(p) + "]",
                                    a);
                            }
                    break;
                case 11:
                    for (unsigned l = 0; l < window; ++l)
                        for (unsigned mm = 0; mm < window; ++mm)
                            if (k != l && k != mm) {
                                a.l = l;
                                a.m = mm;
                                add(n,
                                    "[k=" + std::to_string(k) + ",l=" + std::to_string(l) + ",m=" + std::to_string(mm) +
                                        "]",
                                    a);
                            }
                    break;
                case 13:
                    for (ElemId p : m.elements()) {
                        a.p = p;
                        add(n, "[k=" + std::to_string(k) + ",p=" + m.label(p) + "]", a);
                    }
                    break;
                default: add(n, ks(k), a);
            }
        }
    }
    return out;
}

std::optional<ValidityParams> match_validity(unsigned n, const Formula& f, const DeMorganAlgebra& m) {
    ValidityParams a;
    auto rebuilt = [&]() -> std::optional<ValidityParams> {
        try {
            if (validity(n, a, m) == f) return a;
        } catch (const InputError&) {
        }
        return std::nullopt;
    };
    if (n == 1) {
        auto outer = match::imp(f);
        if (!outer) return std::nullopt;
        auto g = match::big_gamma(outer->first, m);
        if (!g) return std::nullopt;
        auto fa = match::forall(*g);
        if (!fa) return std::nullopt;
        a.k = fa->first;
        a.phi = fa->second;
        return rebuilt();
    }
    auto xy = match::iff(f, m);
    if (!xy) return std::nullopt;
    const Formula x = xy->first, y = xy->second;
    switch (n) {
        case 2:
            if (y->op != Op::exists || y->lhs->op != Op::gamma) return std::nullopt;
            a.k = y->var();
            a.phi = y->lhs->lhs;
            break;
        case 3:
            if (y->op != Op::eq) return std::nullopt;
            a.k = y->vars[0];
            a.l = y->vars[1];
            break;
        case 4:
            if (x->op != Op::gamma || x->lhs->op != Op::eq) return std::nullopt;
            a.p = x->elem;
            a.k = x->lhs->vars[0];
            a.l = x->lhs->vars[1];
            break;
        case 5:
            if (y->op != Op::neg || y->lhs->op != Op::eq) return std::nullopt;
            a.k = y->lhs->vars[0];
            a.l = y->lhs->vars[1];
            break;
        case 6:
            if (x->op != Op::exists) return std::nullopt;
            a.k = x->var();
            break;
        case 7:
            if (y->op != Op::exists) return std::nullopt;
            a.k = y->var();
            a.phi = y->lhs;
            break;
        case 8:
            if (y->op != Op::conj || y->lhs->op != Op::exists || y->rhs->op != Op::exists) return std::nullopt;
            a.k = y->lhs->var();
            a.phi = y->lhs->lhs;
            a.theta = y->rhs->lhs;
            break;
        case 9:
            if (x->op != Op::exists || x->lhs->op != Op::exists) return std::nullopt;
            a.k = x->var();
            a.l = x->lhs->var();
            a.phi = x->lhs->lhs;
            break;
        case 10:
            if (x->op != Op::eq) return std::nullopt;
            a.k = x->vars[0];
            break;
        case 11:
            if (x->op != Op::eq || y->op != Op::exists) return std::nullopt;
            a.l = x->vars[0];
            a.m = x->vars[1];
            a.k = y->var();
            break;
        case 12: {
            if (x->op != Op::conj) return std::nullopt;
            auto s = match::subst(x->lhs);
            if (!s || std::get<2>(*s)->op != Op::gamma) return std::nullopt;
            a.k = std::get<0>(*s);
            a.l = std::get<1>(*s);
            a.phi = std::get<2>(*s)->lhs;
            break;
        }
        case 13:
            if (x->op != Op::gamma || x->lhs->op != Op::exists) return std::nullopt;
            a.p = x->elem;
            a.k = x->lhs->var();
            a.phi = x->lhs->lhs;
            break;
        case 14: {
            if (x->op != Op::rel) return std::nullopt;
            a.relation = x->name;
            const std::size_t ar = x->vars.size();
            Formula rest = y;
            for (std::size_t i = 0; i < ar; ++i) {
                auto s = match::subst(rest);
                if (!s) return std::nullopt;
                a.ks.push_back(std::get<0>(*s));
                a.js.push_back(std::get<1>(*s));
                rest = std::get<2>(*s);
            }
            break;
        }
        default: return std::nullopt;
    }
    return rebuilt();
}

}  // namespace mvl
