#include "mvl/laws.hpp"

#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "mvl/error.hpp"

namespace mvl {

Json LawReport::to_json() const {
    Json j{{"law", law},
           {"mode", mode == LawMode::exhaustive ? "exhaustive" : "sampled"},
           {"instances", instances},
           {"status", holds ? "holds" : "counterexample"}};
    if (mode == LawMode::sampled) j["seed"] = seed;
    if (!holds) j["witness"] = witness;
    if (!note.empty()) j["note"] = note;
    return j;
}

MCAOps MCAOps::of(const MCylSetAlgebra& a) {
    MCAOps o;
    o.algebra = a.algebra_ptr();
    o.space = a.space();
    const MCylSetAlgebra* A = &a;
    o.join = [A](const MValuedSet& x, const MValuedSet& y) { return A->join(x, y); };
    o.meet = [A](const MValuedSet& x, const MValuedSet& y) { return A->meet(x, y); };
    o.neg = [A](const MValuedSet& x) { return A->neg(x); };
    o.unit = [A](ElemId p) { return A->unit(p); };
    o.cyl = [A](unsigned k, const MValuedSet& x) { return A->cyl(k, x); };
    o.diag = [A](unsigned k, unsigned l) { return A->diag(k, l); };
    o.delta = [A](ElemId p, const MValuedSet& x) { return A->delta(p, x); };
    return o;
}

Carrier Carrier::of(const MCylSetAlgebra& a) {
    const MCylSetAlgebra* A = &a;
    return Carrier{a.carrier_size(), [A](std::uint64_t i) { return A->element(i); }};
}

namespace {

struct Params {
    std::optional<unsigned> k, l, m;
    std::optional<ElemId> p, q;
};

struct Ctx {
    const MCAOps& ops;
    const DeMorganAlgebra& m;
    MCylOpsTable table;
    unsigned dim;

    MValuedSet u0() const { return ops.unit(m.zero()); }
    MValuedSet u1() const { return ops.unit(m.one()); }
    MValuedSet d1(const MValuedSet& a) const { return ops.delta(m.one(), a); }

    // Left fold of join; the empty sum is u_0.
    MValuedSet sum(const std::vector<MValuedSet>& xs) const {
        if (xs.empty()) return u0();
        MValuedSet acc = xs.front();
        for (std::size_t i = 1; i < xs.size(); ++i) acc = ops.join(acc, xs[i]);
        return acc;
    }
    MValuedSet product(const std::vector<MValuedSet>& xs) const {
        if (xs.empty()) return u1();
        MValuedSet acc = xs.front();
        for (std::size_t i = 1; i < xs.size(); ++i) acc = ops.meet(acc, xs[i]);
        return acc;
    }
};

using Elems = std::span<const MValuedSet>;
using Pred = std::function<bool(const Ctx&, Elems, const Params&)>;
using ParamGen = std::function<std::vector<Params>(const Ctx&)>;

struct Axiom {
    std::string id;
    unsigned arity;
    ParamGen params;
    Pred holds;
};

std::vector<Params> none(const Ctx&) { return {Params{}}; }

std::vector<Params> over_p(const Ctx& c) {
    std::vector<Params> out;
    for (ElemId p : c.m.elements()) out.push_back(Params{{}, {}, {}, p, {}});
    return out;
}

std::vector<Params> over_q(const Ctx& c) {
    std::vector<Params> out;
    for (ElemId q : c.m.elements()) out.push_back(Params{{}, {}, {}, {}, q});
    return out;
}

std::vector<Params> over_p_ne_q(const Ctx& c) {
    std::vector<Params> out;
    for (ElemId p : c.m.elements())
        for (ElemId q : c.m.elements())
            if (p != q) out.push_back(Params{{}, {}, {}, p, q});
    return out;
}

std::vector<Params> over_k(const Ctx& c) {
    std::vector<Params> out;
    for (unsigned k = 0; k < c.dim; ++k) out.push_back(Params{k, {}, {}, {}, {}});
    return out;
}

std::vector<Params> over_kl(const Ctx& c) {
    std::vector<Params> out;
    for (unsigned k = 0; k < c.dim; ++k)
        for (unsigned l = 0; l < c.dim; ++l) out.push_back(Params{k, l, {}, {}, {}});
    return out;
}

std::vector<Params> over_k_ne_l(const Ctx& c) {
    std::vector<Params> out;
    for (unsigned k = 0; k < c.dim; ++k)
        for (unsigned l = 0; l < c.dim; ++l)
            if (k != l) out.push_back(Params{k, l, {}, {}, {}});
    return out;
}

std::vector<Params> over_klm(const Ctx& c, bool literal) {
    std::vector<Params> out;
    for (unsigned k = 0; k < c.dim; ++k)
        for (unsigned l = 0; l < c.dim; ++l)
            for (unsigned m = 0; m < c.dim; ++m)
                if (literal || (k != l && k != m)) out.push_back(Params{k, l, m, {}, {}});
    return out;
}

bool middle(const Ctx& c, ElemId p) { return p != c.m.zero() && p != c.m.one(); }

std::vector<Params> over_kl_middle_p(const Ctx& c) {
    std::vector<Params> out;
    for (const auto& kl : over_kl(c))
        for (ElemId p : c.m.elements())
            if (middle(c, p)) out.push_back(Params{kl.k, kl.l, {}, p, {}});
    return out;
}

std::vector<Params> over_middle_p_q(const Ctx& c) {
    std::vector<Params> out;
    for (ElemId p : c.m.elements())
        if (middle(c, p))
            for (ElemId q : c.m.elements()) out.push_back(Params{{}, {}, {}, p, q});
    return out;
}

std::vector<Params> over_kp(const Ctx& c) {
    std::vector<Params> out;
    for (unsigned k = 0; k < c.dim; ++k)
        for (ElemId p : c.m.elements()) out.push_back(Params{k, {}, {}, p, {}});
    return out;
}

// Right-hand side of Axiom 31. With `literal`, the inner product ranges over all of M.
MValuedSet axiom31_rhs(const Ctx& c, unsigned k, ElemId p, const MValuedSet& a, bool literal) {
    std::vector<MValuedSet> cd;
    for (ElemId q : c.m.elements()) cd.push_back(c.ops.cyl(k, c.ops.delta(q, a)));
    auto prod = [&](ElemMask set) {
        std::vector<MValuedSet> xs;
        for (ElemId q : c.m.elements())
            if (literal || (set & bit(q))) xs.push_back(cd[index(q)]);
        return c.product(xs);
    };
    std::vector<MValuedSet> plus, minus;
    for (ElemMask s : c.table.with_sup(p)) plus.push_back(prod(s));
    for (ElemMask s : c.table.above(p)) minus.push_back(prod(s));
    return c.ops.meet(c.sum(plus), c.ops.neg(c.sum(minus)));
}

std::vector<Axiom> axioms() {
    std::vector<Axiom> ax;
    auto add = [&](std::string id, unsigned arity, ParamGen g, Pred p) {
        ax.push_back(Axiom{std::move(id), arity, std::move(g), std::move(p)});
    };
    add("1", 2, none, [](const Ctx& c, Elems e, const Params&) {
        return c.ops.join(e[0], e[1]) == c.ops.join(e[1], e[0]) && c.ops.meet(e[0], e[1]) == c.ops.meet(e[1], e[0]);
    });
    add("2", 3, none, [](const Ctx& c, Elems e, const Params&) {
        const auto& o = c.ops;
        return o.join(o.join(e[0], e[1]), e[2]) == o.join(e[0], o.join(e[1], e[2])) &&
               o.meet(o.meet(e[0], e[1]), e[2]) == o.meet(e[0], o.meet(e[1], e[2]));
    });
    add("3", 3, none, [](const Ctx& c, Elems e, const Params&) {
        const auto& o = c.ops;
        return o.meet(e[0], o.join(e[1], e[2])) == o.join(o.meet(e[0], e[1]), o.meet(e[0], e[2])) &&
               o.join(e[0], o.meet(e[1], e[2])) == o.meet(o.join(e[0], e[1]), o.join(e[0], e[2]));
    });
    add("4", 1, none, [](const Ctx& c, Elems e, const Params&) {
        return c.ops.join(e[0], c.u0()) == e[0] && c.ops.meet(e[0], c.u1()) == e[0];
    });
    add("5", 1, over_p, [](const Ctx& c, Elems e, const Params& p) {
        auto d = c.ops.delta(*p.p, e[0]);
        return c.ops.join(d, c.ops.neg(d)) == c.u1() && c.ops.meet(d, c.ops.neg(d)) == c.u0();
    });
    add("6", 0, over_k, [](const Ctx& c, Elems, const Params& p) { return c.ops.cyl(*p.k, c.u0()) == c.u0(); });
    add("7", 1, over_k, [](const Ctx& c, Elems e, const Params& p) {
        auto ca = c.ops.cyl(*p.k, e[0]);
        return c.ops.join(e[0], ca) == ca;
    });
    add("8", 2, over_k, [](const Ctx& c, Elems e, const Params& p) {
        const auto& o = c.ops;
        const unsigned k = *p.k;
        return o.cyl(k, o.meet(e[0], o.cyl(k, e[1]))) == o.meet(o.cyl(k, e[0]), o.cyl(k, e[1]));
    });
    add("9", 1, over_kl, [](const Ctx& c, Elems e, const Params& p) {
        return c.ops.cyl(*p.k, c.ops.cyl(*p.l, e[0])) == c.ops.cyl(*p.l, c.ops.cyl(*p.k, e[0]));
    });
    add("10", 0, [](const Ctx& c) { return over_klm(c, false); }, [](const Ctx& c, Elems, const Params& p) {
        const auto& o = c.ops;
        return o.diag(*p.l, *p.m) == o.cyl(*p.k, o.meet(o.diag(*p.l, *p.k), o.diag(*p.k, *p.m)));
    });
    add("11", 0, over_k, [](const Ctx& c, Elems, const Params& p) { return c.ops.diag(*p.k, *p.k) == c.u1(); });
    add("12", 1, over_k_ne_l, [](const Ctx& c, Elems e, const Params& p) {
        const auto& o = c.ops;
        const auto d = o.diag(*p.k, *p.l);
        const auto da = c.d1(e[0]);
        return o.meet(o.cyl(*p.k, o.meet(d, da)), o.cyl(*p.k, o.meet(d, o.neg(da)))) == c.u0();
    });
    add("13", 2, none, [](const Ctx& c, Elems e, const Params&) {
        auto x = c.ops.join(c.d1(e[0]), c.d1(e[1]));
        return c.d1(x) == x;
    });
    add("14", 2, none, [](const Ctx& c, Elems e, const Params&) {
        auto x = c.ops.meet(c.d1(e[0]), c.d1(e[1]));
        return c.d1(x) == x;
    });
    add("15", 1, none, [](const Ctx& c, Elems e, const Params&) {
        auto x = c.ops.neg(c.d1(e[0]));
        return c.d1(x) == x;
    });
    add("16", 1, over_k, [](const Ctx& c, Elems e, const Params& p) {
        auto x = c.ops.cyl(*p.k, c.d1(e[0]));
        return c.d1(x) == x;
    });
    add("17", 0, over_kl, [](const Ctx& c, Elems, const Params& p) {
        auto d = c.ops.diag(*p.k, *p.l);
        return c.d1(d) == d;
    });
    add("18", 0, over_kl, [](const Ctx& c, Elems, const Params& p) {
        auto d = c.ops.diag(*p.k, *p.l);
        return c.ops.delta(c.m.zero(), d) == c.ops.neg(d);
    });
    add("19", 0, over_kl_middle_p, [](const Ctx& c, Elems, const Params& p) {
        return c.ops.delta(*p.p, c.ops.diag(*p.k, *p.l)) == c.u0();
    });
    add("20", 1, over_p, [](const Ctx& c, Elems e, const Params& p) {
        return c.ops.delta(*p.p, c.ops.neg(e[0])) == c.ops.delta(c.m.neg(*p.p), e[0]);
    });
    add("21", 0, over_p, [](const Ctx& c, Elems, const Params& p) {
        return c.ops.delta(*p.p, c.ops.unit(*p.p)) == c.u1();
    });
    add("22", 0, over_p_ne_q, [](const Ctx& c, Elems, const Params& p) {
        return c.ops.delta(*p.p, c.ops.unit(*p.q)) == c.u0();
    });
    add("23", 1, over_p_ne_q, [](const Ctx& c, Elems e, const Params& p) {
        return c.ops.meet(c.ops.delta(*p.p, e[0]), c.ops.delta(*p.q, e[0])) == c.u0();
    });
    add("24", 1, none, [](const Ctx& c, Elems e, const Params&) {
        std::vector<MValuedSet> ds;
        for (ElemId p : c.m.elements()) ds.push_back(c.ops.delta(p, e[0]));
        return c.sum(ds) == c.u1();
    });
    auto split = [](bool is_join) {
        return [is_join](const Ctx& c, Elems e, const Params& p) {
            std::vector<MValuedSet> terms;
            for (ElemId q : c.m.elements())
                for (ElemId r : c.m.elements()) {
                    const ElemId s = is_join ? c.m.join(q, r) : c.m.meet(q, r);
                    if (s == *p.p) terms.push_back(c.ops.meet(c.ops.delta(q, e[0]), c.ops.delta(r, e[1])));
                }
            const auto combined = is_join ? c.ops.join(e[0], e[1]) : c.ops.meet(e[0], e[1]);
            return c.ops.delta(*p.p, combined) == c.sum(terms);
        };
    };
    add("25", 2, over_p, split(true));
    add("26", 2, over_p, split(false));
    add("27", 1, over_q, [](const Ctx& c, Elems e, const Params& p) {
        auto d = c.ops.delta(*p.q, e[0]);
        return c.d1(d) == d;
    });
    add("28", 1, over_middle_p_q, [](const Ctx& c, Elems e, const Params& p) {
        return c.ops.delta(*p.p, c.ops.delta(*p.q, e[0])) == c.u0();
    });
    add("29", 1, over_q, [](const Ctx& c, Elems e, const Params& p) {
        auto d = c.ops.delta(*p.q, e[0]);
        return c.ops.delta(c.m.zero(), d) == c.ops.neg(d);
    });
    add("30", 2, none, [](const Ctx& c, Elems e, const Params&) {
        for (ElemId p : c.m.elements())
            if (!(c.ops.delta(p, e[0]) == c.ops.delta(p, e[1]))) return true;
        return e[0] == e[1];
    });
    add("31", 1, over_kp, [](const Ctx& c, Elems e, const Params& p) {
        return c.ops.delta(*p.p, c.ops.cyl(*p.k, e[0])) == axiom31_rhs(c, *p.k, *p.p, e[0], false);
    });
    return ax;
}

std::vector<Axiom> literal_axioms() {
    std::vector<Axiom> ax;
    ax.push_back(Axiom{"10-literal", 0, [](const Ctx& c) { return over_klm(c, true); },
                       [](const Ctx& c, Elems, const Params& p) {
                           const auto& o = c.ops;
                           return o.diag(*p.l, *p.m) == o.cyl(*p.k, o.meet(o.diag(*p.l, *p.k), o.diag(*p.k, *p.m)));
                       }});
    ax.push_back(Axiom{"31-literal", 1, over_kp, [](const Ctx& c, Elems e, const Params& p) {
                           return c.ops.delta(*p.p, c.ops.cyl(*p.k, e[0])) == axiom31_rhs(c, *p.k, *p.p, e[0], true);
                       }});
    return ax;
}

Json params_json(const Ctx& c, const Params& p) {
    Json j = Json::object();
    if (p.k) j["k"] = *p.k;
    if (p.l) j["l"] = *p.l;
    if (p.m) j["m"] = *p.m;
    if (p.p) j["p"] = c.m.label(*p.p);
    if (p.q) j["q"] = c.m.label(*p.q);
    return j;
}

Params params_from_json(const Ctx& c, const Json& j) {
    Params p;
    if (j.contains("k")) p.k = j.at("k").get<unsigned>();
    if (j.contains("l")) p.l = j.at("l").get<unsigned>();
    if (j.contains("m")) p.m = j.at("m").get<unsigned>();
    if (j.contains("p")) p.p = c.m.at(j.at("p").get<std::string>());
    if (j.contains("q")) p.q = c.m.at(j.at("q").get<std::string>());
    return p;
}

std::uint64_t ipow_capped(std::uint64_t b, unsigned e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (b != 0 && r > cap / b) return cap + 1;
        r *= b;
    }
    return r;
}

constexpr std::uint64_t kUnaryExhaustiveCap = std::uint64_t{1} << 22;

LawReport run_axiom(const Ctx& c, const Axiom& ax, std::size_t ordinal, const Carrier& carrier, const LawBudget& b) {
    LawReport r;
    r.law = ax.id;
    r.seed = b.seed;
    const auto params = ax.params(c);
    if (params.empty()) r.note = "no instances at this dimension and algebra";

    const std::uint64_t tuples = ipow_capped(carrier.size, ax.arity, b.exhaustive_limit);
    const bool exhaustive =
        ax.arity == 0 || (ax.arity == 1 && carrier.size <= kUnaryExhaustiveCap) || tuples <= b.exhaustive_limit;
    r.mode = exhaustive ? LawMode::exhaustive : LawMode::sampled;

    std::vector<MValuedSet> cache;
    if (exhaustive && ax.arity > 0)
        for (std::uint64_t i = 0; i < carrier.size; ++i) cache.push_back(carrier.element(i));

    std::vector<MValuedSet> elems(ax.arity);
    auto evaluate = [&]() {
        for (const auto& p : params) {
            ++r.instances;
            if (!ax.holds(c, elems, p)) {
                r.holds = false;
                Json es = Json::array();
                for (const auto& e : elems) es.push_back(layers_to_json(e));
                r.witness = Json{{"elements", es}, {"params", params_json(c, p)}};
                return false;
            }
        }
        return true;
    };

    if (exhaustive) {
        const std::uint64_t n = ax.arity == 0 ? 1 : ipow_capped(carrier.size, ax.arity, ~std::uint64_t{0} >> 1);
        for (std::uint64_t t = 0; t < n; ++t) {
            std::uint64_t rest = t;
            for (unsigned i = 0; i < ax.arity; ++i) {
                elems[ax.arity - 1 - i] = cache[rest % carrier.size];
                rest /= carrier.size;
            }
            if (!evaluate()) break;
        }
    } else {
        Rng rng(b.seed ^ (0x9E3779B97F4A7C15ull * (ordinal + 1)));
        for (std::uint64_t s = 0; s < b.samples; ++s) {
            for (auto& e : elems) e = carrier.element(draw(rng, carrier.size));
            if (!evaluate()) break;
        }
    }
    return r;
}

std::vector<LawReport> run_all(const std::vector<Axiom>& axs, const MCAOps& ops, const Carrier& carrier,
                               const LawBudget& budget) {
    Ctx c{ops, *ops.algebra, MCylOpsTable(*ops.algebra), ops.space.dim()};
    std::vector<LawReport> out;
    for (std::size_t i = 0; i < axs.size(); ++i) out.push_back(run_axiom(c, axs[i], i, carrier, budget));
    return out;
}

}  // namespace

std::vector<LawReport> check_mca_axioms(const MCAOps& ops, const Carrier& carrier, const LawBudget& budget) {
    return run_all(axioms(), ops, carrier, budget);
}

std::vector<LawReport> check_mca_axioms(const MCylSetAlgebra& a, const LawBudget& budget) {
    return check_mca_axioms(MCAOps::of(a), Carrier::of(a), budget);
}

std::vector<LawReport> check_literal_readings(const MCAOps& ops, const Carrier& carrier, const LawBudget& budget) {
    return run_all(literal_axioms(), ops, carrier, budget);
}

bool witness_reproduces(const MCAOps& ops, const LawReport& report) {
    if (report.holds) return false;
    Ctx c{ops, *ops.algebra, MCylOpsTable(*ops.algebra), ops.space.dim()};
    auto all = axioms();
    for (auto& a : literal_axioms()) all.push_back(std::move(a));
    for (const auto& ax : all) {
        if (ax.id != report.law) continue;
        std::vector<MValuedSet> elems;
        for (const auto& e : report.witness.at("elements")) elems.push_back(layers_from_json(e, ops.algebra, ops.space));
        return !ax.holds(c, elems, params_from_json(c, report.witness.at("params")));
    }
    throw InputError("unknown law '" + report.law + "'");
}

std::vector<PointSet> sup_formula(const MCylOpsTable& table, const std::vector<PointSet>& u) {
    const Space& sp = u.front().space();
    auto meet_of = [&](ElemMask a) {
        PointSet acc = PointSet::full(sp);
        for (ElemMask m = a; m; m &= m - 1) acc &= u[static_cast<unsigned>(std::countr_zero(m))];
        return acc;
    };
    std::vector<PointSet> v;
    for (unsigned p = 0; p < table.algebra_size(); ++p) {
        PointSet plus(sp), minus(sp);
        for (ElemMask a : table.with_sup(elem(p))) plus |= meet_of(a);
        for (ElemMask a : table.above(elem(p))) minus |= meet_of(a);
        v.push_back(plus - minus);
    }
    return v;
}

namespace {

// R_p = union over r.t = p of X_r and W_t.
std::vector<PointSet> meet_spread(const DeMorganAlgebra& m, const std::vector<PointSet>& x,
                                  const std::vector<PointSet>& w) {
    std::vector<PointSet> out(m.size(), PointSet(x.front().space()));
    for (ElemId r : m.elements())
        for (ElemId t : m.elements()) out[index(m.meet(r, t))] |= x[index(r)] & w[index(t)];
    return out;
}

}  // namespace

std::vector<PointSet> boolean_identity_1_lhs(const DeMorganAlgebra& m, const std::vector<PointSet>& u,
                                             const std::vector<PointSet>& w) {
    return sup_formula(MCylOpsTable(m), meet_spread(m, u, w));
}

std::vector<PointSet> boolean_identity_1_rhs(const DeMorganAlgebra& m, const std::vector<PointSet>& u,
                                             const std::vector<PointSet>& w) {
    return meet_spread(m, sup_formula(MCylOpsTable(m), u), w);
}

std::vector<PointSet> boolean_identity_2_lhs(const DeMorganAlgebra& m, const std::vector<PointSet>& y) {
    const auto v = sup_formula(MCylOpsTable(m), y);
    std::vector<PointSet> out;
    for (ElemId p : m.elements()) {
        PointSet acc(y.front().space());
        for (ElemId q : m.elements())
            if (m.leq(q, p)) acc |= v[index(q)];
        out.push_back(acc);
    }
    return out;
}

std::vector<PointSet> boolean_identity_2_rhs(const DeMorganAlgebra& m, const std::vector<PointSet>& y) {
    std::vector<PointSet> out;
    for (ElemId p : m.elements()) {
        PointSet below(y.front().space());
        PointSet outside = PointSet::full(y.front().space());
        for (ElemId q : m.elements()) {
            if (m.leq(q, p)) below |= y[index(q)];
            else outside -= y[index(q)];
        }
        out.push_back(below & outside);
    }
    return out;
}

namespace {

std::vector<PointSet> random_family(const DeMorganAlgebra& m, const Space& sp, Rng& rng) {
    std::vector<PointSet> out;
    for (unsigned i = 0; i < m.size(); ++i) {
        PointSet s(sp);
        for (std::uint32_t x = 0; x < sp.size(); ++x)
            if (draw(rng, 2)) s.insert(x);
        out.push_back(s);
    }
    return out;
}

std::vector<PointSet> random_partition(const DeMorganAlgebra& m, const Space& sp, Rng& rng) {
    std::vector<PointSet> out(m.size(), PointSet(sp));
    for (std::uint32_t x = 0; x < sp.size(); ++x) out[draw(rng, m.size())].insert(x);
    return out;
}

Json family_json(const DeMorganAlgebra& m, const std::vector<PointSet>& f) {
    Json j = Json::object();
    for (ElemId p : m.elements()) j[m.label(p)] = point_set_to_json(f[index(p)]);
    return j;
}

}  // namespace

LawReport check_boolean_identity_1(const DeMorganAlgebra& m, unsigned points, std::uint64_t trials,
                                   std::uint64_t seed) {
    LawReport r{"boolean-identity-1", LawMode::sampled, 0, seed, true, nullptr, ""};
    const Space sp(points, 1);
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials && r.holds; ++t) {
        auto u = random_family(m, sp, rng);
        auto w = random_partition(m, sp, rng);
        auto lhs = boolean_identity_1_lhs(m, u, w), rhs = boolean_identity_1_rhs(m, u, w);
        for (ElemId p : m.elements()) {
            ++r.instances;
            if (!(lhs[index(p)] == rhs[index(p)])) {
                r.holds = false;
                r.witness = Json{{"U", family_json(m, u)}, {"W", family_json(m, w)}, {"p", m.label(p)}};
                break;
            }
        }
    }
    return r;
}

LawReport check_boolean_identity_2(const DeMorganAlgebra& m, unsigned points, std::uint64_t trials,
                                   std::uint64_t seed) {
    LawReport r{"boolean-identity-2", LawMode::sampled, 0, seed, true, nullptr, ""};
    const Space sp(points, 1);
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials && r.holds; ++t) {
        auto y = random_family(m, sp, rng);
        auto lhs = boolean_identity_2_lhs(m, y), rhs = boolean_identity_2_rhs(m, y);
        for (ElemId p : m.elements()) {
            ++r.instances;
            if (!(lhs[index(p)] == rhs[index(p)])) {
                r.holds = false;
                r.witness = Json{{"Y", family_json(m, y)}, {"p", m.label(p)}};
                break;
            }
        }
    }
    return r;
}

namespace {

struct SetHash {
    std::size_t operator()(const MValuedSet& x) const noexcept { return x.hash(); }
};

constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;

// C(A) as the CA parameter of MConstruction: elements are members of A, operations are A's.
struct CView {
    using Elem = MValuedSet;
    const MCylSetAlgebra* a;

    MValuedSet zero() const { return a->unit(a->algebra().zero()); }
    MValuedSet one() const { return a->unit(a->algebra().one()); }
    MValuedSet join(const MValuedSet& x, const MValuedSet& y) const { return a->join(x, y); }
    MValuedSet meet(const MValuedSet& x, const MValuedSet& y) const { return a->meet(x, y); }
    MValuedSet neg(const MValuedSet& x) const { return a->neg(x); }
    MValuedSet cyl(unsigned k, const MValuedSet& x) const { return a->cyl(k, x); }
    MValuedSet diag(unsigned k, unsigned l) const { return a->diag(k, l); }
    bool equal(const MValuedSet& x, const MValuedSet& y) const { return x == y; }
    bool is_zero(const MValuedSet& x) const { return x == zero(); }
};

}  // namespace

CAlgebraView extract_c(const MCylSetAlgebra& a) {
    const std::uint64_t n = a.carrier_size();
    if (n > kEnumerationCap) throw BudgetExceeded("carrier too large to extract C(A)");
    CAlgebraView v;
    std::unordered_set<MValuedSet, SetHash> seen;
    for (std::uint64_t i = 0; i < n; ++i) {
        auto d = a.delta(a.algebra().one(), a.element(i));
        if (seen.insert(d).second) v.carrier.push_back(d);
    }
    auto fail = [&](const std::string& op, Json args) {
        if (!v.closed) return;
        v.closed = false;
        v.closure_failure = Json{{"operation", op}, {"arguments", std::move(args)}};
    };
    auto in = [&](const MValuedSet& x) { return seen.count(x) > 0; };
    const auto& m = a.algebra();
    if (!in(a.unit(m.zero()))) fail("u0", Json::array());
    if (!in(a.unit(m.one()))) fail("u1", Json::array());
    for (unsigned k = 0; k < a.space().dim(); ++k)
        for (unsigned l = 0; l < a.space().dim(); ++l)
            if (!in(a.diag(k, l))) fail("diag", Json{k, l});
    for (const auto& x : v.carrier) {
        if (!in(a.neg(x))) fail("neg", Json{layers_to_json(x)});
        for (unsigned k = 0; k < a.space().dim(); ++k)
            if (!in(a.cyl(k, x))) fail("cyl", Json{k, layers_to_json(x)});
    }
    const bool all_pairs = v.carrier.size() * v.carrier.size() <= (std::uint64_t{1} << 16);
    Rng rng(kDefaultSeed);
    const std::uint64_t pairs = all_pairs ? v.carrier.size() * v.carrier.size() : 10000;
    for (std::uint64_t t = 0; t < pairs && v.closed; ++t) {
        const auto& x = all_pairs ? v.carrier[t / v.carrier.size()] : v.carrier[draw(rng, v.carrier.size())];
        const auto& y = all_pairs ? v.carrier[t % v.carrier.size()] : v.carrier[draw(rng, v.carrier.size())];
        if (!in(a.join(x, y))) fail("join", Json{layers_to_json(x), layers_to_json(y)});
        if (!in(a.meet(x, y))) fail("meet", Json{layers_to_json(x), layers_to_json(y)});
    }
    return v;
}

LawReport check_embed(const MCylSetAlgebra& a, std::uint64_t samples, std::uint64_t seed) {
    LawReport r{"embed", LawMode::exhaustive, 0, seed, true, nullptr, ""};
    const std::uint64_t n = a.carrier_size();
    if (n > kEnumerationCap) throw BudgetExceeded("carrier too large for the embedding check");
    const auto& m = a.algebra();
    MConstruction<CView> mc(m, CView{&a});
    auto f = [&](const MValuedSet& x) {
        std::vector<MValuedSet> out;
        for (ElemId p : m.elements()) out.push_back(a.delta(p, x));
        return out;
    };
    auto fail = [&](const std::string& what, Json args) {
        r.holds = false;
        r.witness = Json{{"check", what}, {"arguments", std::move(args)}};
    };

    std::vector<MValuedSet> all;
    std::vector<std::vector<MValuedSet>> images;
    for (std::uint64_t i = 0; i < n; ++i) {
        all.push_back(a.element(i));
        images.push_back(f(all.back()));
    }
    // Injectivity: equal images must come from equal elements.
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < images.size() && r.holds; ++i) {
        ++r.instances;
        if (!mc.is_partition(images[i])) {
            fail("image is not a member of M(C(A))", Json{layers_to_json(all[i])});
            break;
        }
        std::size_t h = 0;
        for (const auto& x : images[i]) h = h * 31 + x.hash();
        for (std::size_t j : buckets[h])
            if (mc.equal(images[i], images[j])) {
                fail("injectivity", Json{layers_to_json(all[i]), layers_to_json(all[j])});
                break;
            }
        buckets[h].push_back(i);
    }
    const unsigned dim = a.space().dim();
    for (ElemId p : m.elements()) {
        ++r.instances;
        if (r.holds && !mc.equal(f(a.unit(p)), mc.unit(p))) fail("unit", Json{m.label(p)});
    }
    for (unsigned k = 0; k < dim; ++k)
        for (unsigned l = 0; l < dim; ++l) {
            ++r.instances;
            if (r.holds && !mc.equal(f(a.diag(k, l)), mc.diag(k, l))) fail("diag", Json{k, l});
        }
    for (std::size_t i = 0; i < all.size() && r.holds; ++i) {
        const auto& x = all[i];
        ++r.instances;
        if (!mc.equal(f(a.neg(x)), mc.neg(images[i]))) fail("neg", Json{layers_to_json(x)});
        for (unsigned k = 0; k < dim && r.holds; ++k) {
            ++r.instances;
            if (!mc.equal(f(a.cyl(k, x)), mc.cyl(k, images[i]))) fail("cyl", Json{k, layers_to_json(x)});
        }
        for (ElemId p : m.elements()) {
            if (!r.holds) break;
            ++r.instances;
            if (!mc.equal(f(a.delta(p, x)), mc.delta(p, images[i])))
                fail("delta", Json{m.label(p), layers_to_json(x)});
        }
    }
    // Binary operations: all pairs of generators, then sampled pairs of arbitrary elements.
    std::vector<MValuedSet> gens;
    for (ElemId p : m.elements()) gens.push_back(a.unit(p));
    for (unsigned k = 0; k < dim; ++k)
        for (unsigned l = 0; l < dim; ++l) gens.push_back(a.diag(k, l));
    auto check_pair = [&](const MValuedSet& x, const MValuedSet& y) {
        r.instances += 2;
        const auto fx = f(x), fy = f(y);
        if (!mc.equal(f(a.join(x, y)), mc.join(fx, fy))) fail("join", Json{layers_to_json(x), layers_to_json(y)});
        else if (!mc.equal(f(a.meet(x, y)), mc.meet(fx, fy)))
            fail("meet", Json{layers_to_json(x), layers_to_json(y)});
    };
    for (const auto& x : gens)
        for (const auto& y : gens)
            if (r.holds) check_pair(x, y);
    Rng rng(seed);
    for (std::uint64_t s = 0; s < samples && r.holds; ++s) check_pair(all[draw(rng, n)], all[draw(rng, n)]);
    if (samples) r.note = "unary operations and generator pairs exhaustive; " + std::to_string(samples) +
                          " sampled pairs for join and meet";
    return r;
}

LawReport check_iso(const MCylSetAlgebra& a, std::uint64_t samples, std::uint64_t seed) {
    LawReport r{"iso", LawMode::exhaustive, 0, seed, true, nullptr, ""};
    const Space& sp = a.space();
    if (sp.size() > 20) throw BudgetExceeded("cylindric set algebra too large for the isomorphism check");
    const auto& m = a.algebra();
    const auto view = extract_c(a);
    if (!view.closed) {
        r.holds = false;
        r.witness = Json{{"check", "closure of C(M(B))"}, {"failure", view.closure_failure}};
        return r;
    }
    auto g = [&](const PointSet& x) {
        std::vector<PointSet> layers(m.size(), PointSet(sp));
        layers[index(m.one())] = x;
        layers[index(m.zero())] |= ~x;
        return MValuedSet(a.algebra_ptr(), std::move(layers));
    };
    auto f = [&](const PointSet& x) { return a.delta(m.one(), g(x)); };
    auto fail = [&](const std::string& what, Json args) {
        if (!r.holds) return;
        r.holds = false;
        r.witness = Json{{"check", what}, {"arguments", std::move(args)}};
    };

    const std::uint64_t nb = std::uint64_t{1} << sp.size();
    std::vector<PointSet> bs;
    std::unordered_set<MValuedSet, SetHash> image, carrier(view.carrier.begin(), view.carrier.end());
    for (std::uint64_t i = 0; i < nb; ++i) {
        PointSet x(sp);
        for (std::uint32_t pt = 0; pt < sp.size(); ++pt)
            if ((i >> pt) & 1u) x.insert(pt);
        bs.push_back(x);
        const auto fx = f(x);
        ++r.instances;
        if (!carrier.count(fx)) fail("image outside C(M(B))", point_set_to_json(x));
        if (!image.insert(fx).second) fail("injectivity", point_set_to_json(x));
    }
    if (r.holds && image.size() != carrier.size())
        fail("surjectivity", Json{{"image", image.size()}, {"carrier", carrier.size()}});

    ++r.instances;
    if (!(f(PointSet(sp)) == a.unit(m.zero()))) fail("zero", Json::array());
    ++r.instances;
    if (!(f(PointSet::full(sp)) == a.unit(m.one()))) fail("one", Json::array());
    for (unsigned k = 0; k < sp.dim(); ++k)
        for (unsigned l = 0; l < sp.dim(); ++l) {
            ++r.instances;
            if (!(f(diag(sp, k, l)) == a.diag(k, l))) fail("diag", Json{k, l});
        }
    for (const auto& x : bs) {
        ++r.instances;
        if (!(f(~x) == a.neg(f(x)))) fail("neg", point_set_to_json(x));
        for (unsigned k = 0; k < sp.dim(); ++k) {
            ++r.instances;
            if (!(f(cyl(k, x)) == a.cyl(k, f(x)))) fail("cyl", Json{k, point_set_to_json(x)});
        }
    }
    auto check_pair = [&](const PointSet& x, const PointSet& y) {
        r.instances += 2;
        if (!(f(x | y) == a.join(f(x), f(y)))) fail("join", Json{point_set_to_json(x), point_set_to_json(y)});
        if (!(f(x & y) == a.meet(f(x), f(y)))) fail("meet", Json{point_set_to_json(x), point_set_to_json(y)});
    };
    if (nb * nb <= (std::uint64_t{1} << 16)) {
        for (const auto& x : bs)
            for (const auto& y : bs) check_pair(x, y);
    } else {
        r.mode = LawMode::sampled;
        Rng rng(seed);
        for (std::uint64_t s = 0; s < samples && r.holds; ++s) check_pair(bs[draw(rng, nb)], bs[draw(rng, nb)]);
    }
    r.note = "|B| = " + std::to_string(nb) + ", |C(M(B))| = " + std::to_string(carrier.size());
    return r;
}

}  // namespace mvl
