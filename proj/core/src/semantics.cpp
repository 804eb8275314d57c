#include "mvl/semantics.hpp"

#include <functional>

#include "mvl/catalog.hpp"
#include "mvl/error.hpp"
#include "mvl/parser.hpp"

namespace mvl {

namespace {

void collect_relations(const Formula& f, Signature& sig) {
    std::unordered_map<const Node*, bool> seen;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (!seen.emplace(g.get(), true).second) return;
        if (g->op == Op::rel) sig.declare(g->name, static_cast<unsigned>(g->vars.size()));
        if (g->lhs) go(g->lhs);
        if (g->rhs) go(g->rhs);
    };
    go(f);
}

std::optional<std::uint64_t> checked_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (r > (std::uint64_t{1} << 63) / b) return std::nullopt;
        r *= b;
    }
    return r;
}

Json mask_json(ElemMask q, const DeMorganAlgebra& m) {
    Json out = Json::array();
    for (ElemId p : m.elements())
        if (q & bit(p)) out.push_back(m.label(p));
    return out;
}

}  // namespace

MStructure MStructure::make(AlgebraPtr algebra, unsigned base, unsigned window,
                            std::map<std::string, MValuedSet> relations, std::shared_ptr<const MCylSetAlgebra> csa) {
    if (!algebra) throw InputError("structure without an algebra");
    if (base == 0) throw InputError("structure base must be nonempty");
    for (const auto& [name, r] : relations) {
        if (r.algebra().name() != algebra->name() || r.algebra().size() != algebra->size())
            throw InputError("relation '" + name + "' is over a different algebra");
        if (r.space().base() != base) throw InputError("relation '" + name + "' is over a different base");
        if (!r.is_partition()) throw InputError("relation '" + name + "' does not partition its space");
    }
    if (!csa) csa = std::make_shared<const MCylSetAlgebra>(algebra, Space(base, window));
    else if (!(csa->space() == Space(base, window)))
        throw InputError("shared set algebra does not match the structure's window");
    return MStructure{std::move(algebra), base, window, std::move(relations), std::move(csa)};
}

Signature MStructure::signature() const {
    Signature s;
    for (const auto& [name, r] : relations) s.declare(name, r.space().dim());
    return s;
}

Json MStructure::to_json() const {
    Json rels = Json::object();
    for (const auto& [name, r] : relations) rels[name] = layers_to_json(r);
    Json alg = DeMorganAlgebra::is_builtin(algebra->name()) ? Json(algebra->name()) : algebra_to_json(*algebra);
    return Json{{"algebra", alg}, {"base", base}, {"window", window}, {"relations", rels}};
}

MStructure MStructure::from_json(const Json& j) {
    if (!j.is_object()) throw InputError("structure must be a JSON object");
    for (const char* key : {"algebra", "base", "window", "relations"})
        if (!j.contains(key)) throw InputError(std::string("structure is missing '") + key + "'");
    AlgebraPtr algebra;
    const Json& ja = j.at("algebra");
    if (ja.is_string()) algebra = load_algebra(ja.get<std::string>());
    else algebra = std::make_shared<const DeMorganAlgebra>(DeMorganAlgebra::from_tables(algebra_tables_from_json(ja)));
    unsigned base = 0, window = 0;
    try {
        base = j.at("base").get<unsigned>();
        window = j.at("window").get<unsigned>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad structure size: ") + e.what());
    }
    if (!j.at("relations").is_object()) throw InputError("'relations' must be an object");
    std::map<std::string, MValuedSet> rels;
    for (const auto& [name, layers] : j.at("relations").items()) {
        if (!layers.is_object()) throw InputError("relation '" + name + "' must map labels to tuple lists");
        std::optional<std::size_t> arity;
        for (const auto& [label, tuples] : layers.items())
            if (tuples.is_array() && !tuples.empty() && tuples.front().is_array()) {
                arity = tuples.front().size();
                break;
            }
        if (!arity) throw InputError("relation '" + name + "' has no tuples");
        try {
            rels.emplace(name, layers_from_json(layers, algebra, Space(base, static_cast<unsigned>(*arity))));
        } catch (const InputError& e) {
            throw InputError("relation '" + name + "': " + e.what());
        }
    }
    return make(algebra, base, window, std::move(rels));
}

MValuedSet Evaluator::atom(const Node& n) const {
    auto it = a_.relations.find(n.name);
    if (it == a_.relations.end()) throw InputError("relation '" + n.name + "' is not interpreted in the structure");
    const MValuedSet& r = it->second;
    if (r.space().dim() != n.vars.size())
        throw InputError("relation '" + n.name + "' has arity " + std::to_string(r.space().dim()) + ", used with " +
                         std::to_string(n.vars.size()));
    const Space& w = a_.csa->space();
    for (unsigned j : n.vars)
        if (j >= w.dim())
            throw InputError("variable v" + std::to_string(j) + " is outside the window of " + std::to_string(w.dim()));
    const auto pv = r.values();
    std::vector<ElemId> out(w.size());
    for (std::uint32_t s = 0; s < w.size(); ++s) {
        std::uint32_t idx = 0;
        for (std::size_t i = 0; i < n.vars.size(); ++i) idx += w.coord(s, n.vars[i]) * r.space().stride(static_cast<unsigned>(i));
        out[s] = pv[idx];
    }
    return MValuedSet::from_values(a_.algebra, w, out);
}

const MValuedSet& Evaluator::eval(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    const MCylSetAlgebra& A = *a_.csa;
    auto in_window = [&](unsigned k) {
        if (k >= A.space().dim())
            throw InputError("variable v" + std::to_string(k) + " is outside the window of " +
                             std::to_string(A.space().dim()));
    };
    MValuedSet r;
    switch (f->op) {
        case Op::rel: r = atom(*f); break;
        case Op::eq:
            in_window(f->vars[0]);
            in_window(f->vars[1]);
            r = A.diag(f->vars[0], f->vars[1]);
            break;
        case Op::konst: r = A.unit(f->elem); break;
        case Op::neg: r = A.neg(eval(f->lhs)); break;
        case Op::conj: {
            auto x = eval(f->lhs);
            r = A.meet(x, eval(f->rhs));
            break;
        }
        case Op::disj: {
            auto x = eval(f->lhs);
            r = A.join(x, eval(f->rhs));
            break;
        }
        case Op::exists:
            in_window(f->var());
            r = A.cyl(f->var(), eval(f->lhs));
            break;
        case Op::gamma: r = A.delta(f->elem, eval(f->lhs)); break;
    }
    return memo_.emplace(f, std::move(r)).first->second;
}

MValuedSet eval(const Formula& f, const MStructure& a) { return Evaluator(a).eval(f); }

bool is_true(const Formula& f, const MStructure& a) { return eval(f, a).layer(a.algebra->one()).is_full(); }

bool is_q_true(const Formula& f, const MStructure& a, ElemMask q) {
    const auto x = eval(f, a);
    PointSet u(x.space());
    for (ElemId p : a.algebra->elements())
        if (q & bit(p)) u |= x.layer(p);
    return u.is_full();
}

bool is_model(const std::vector<Formula>& sigma, const MStructure& a) {
    Evaluator ev(a);
    for (const auto& f : sigma)
        if (!ev.eval(f).layer(a.algebra->one()).is_full()) return false;
    return true;
}

bool is_q_model(const std::vector<Formula>& sigma, const MStructure& a, ElemMask q) {
    for (const auto& f : sigma)
        if (!is_q_true(f, a, q)) return false;
    return true;
}

MValuedSet extend_window(const MValuedSet& x, unsigned extra) {
    const Space big(x.space().base(), x.space().dim() + extra);
    const std::uint32_t block = big.size() / x.space().size();
    const auto v = x.values();
    std::vector<ElemId> out(big.size());
    for (std::uint32_t s = 0; s < big.size(); ++s) out[s] = v[s / block];
    return MValuedSet::from_values(x.algebra_ptr(), big, out);
}

StructureSpace::StructureSpace(AlgebraPtr algebra, Signature sig, unsigned base, unsigned window)
    : algebra_(std::move(algebra)), sig_(std::move(sig)), base_(base), window_(window) {
    csa_ = std::make_shared<const MCylSetAlgebra>(algebra_, Space(base_, window_));
    std::optional<std::uint64_t> total = 1;
    for (const auto& [name, arity] : sig_.relations()) {
        rels_.emplace_back(name, Space(base_, arity));
        auto radix = checked_pow(algebra_->size(), rels_.back().second.size());
        if (total && radix && *total <= (std::uint64_t{1} << 63) / *radix) *total *= *radix;
        else total.reset();
    }
    size_ = total;
}

MStructure StructureSpace::build(const std::vector<std::vector<ElemId>>& values) const {
    std::map<std::string, MValuedSet> rels;
    for (std::size_t i = 0; i < rels_.size(); ++i)
        rels.emplace(rels_[i].first, MValuedSet::from_values(algebra_, rels_[i].second, values[i]));
    return MStructure{algebra_, base_, window_, std::move(rels), csa_};
}

MStructure StructureSpace::at(std::uint64_t index) const {
    if (!size_ || index >= *size_) throw InputError("structure index out of range");
    std::vector<std::vector<ElemId>> values;
    for (const auto& [name, space] : rels_) {
        std::vector<ElemId> v(space.size());
        for (auto& e : v) {
            e = elem(static_cast<unsigned>(index % algebra_->size()));
            index /= algebra_->size();
        }
        values.push_back(std::move(v));
    }
    return build(values);
}

MStructure StructureSpace::random(Rng& rng) const {
    std::vector<std::vector<ElemId>> values;
    for (const auto& [name, space] : rels_) {
        std::vector<ElemId> v(space.size());
        for (auto& e : v) e = elem(static_cast<unsigned>(draw(rng, algebra_->size())));
        values.push_back(std::move(v));
    }
    return build(values);
}

EnumerationStats for_each_structure(const StructureSpace& space, std::uint64_t cap, std::uint64_t seed,
                                    const std::function<bool(std::uint64_t, const MStructure&)>& visit) {
    EnumerationStats st;
    if (space.size() && *space.size() <= cap) {
        for (std::uint64_t i = 0; i < *space.size(); ++i) {
            ++st.visited;
            if (!visit(i, space.at(i))) break;
        }
        return st;
    }
    st.exhaustive = false;
    Rng rng(seed);
    for (std::uint64_t i = 0; i < cap; ++i) {
        ++st.visited;
        if (!visit(i, space.random(rng))) break;
    }
    return st;
}

Json EntailResult::to_json() const {
    Json j{{"verdict", countermodel_found ? "countermodel" : "no-countermodel-found"},
           {"structures_checked", structures_checked},
           {"exhaustive", exhaustive},
           {"bounds", {{"min_base", bounds.min_base}, {"max_base", bounds.max_base}, {"window", window},
                       {"max_structures", bounds.max_structures}}},
           {"seed", bounds.seed}};
    if (bounds.q && countermodel) j["q"] = mask_json(*bounds.q, *countermodel->algebra);
    if (countermodel) j["countermodel"] = countermodel->to_json();
    return j;
}

EntailResult entails(const std::vector<Formula>& sigma, const Formula& phi, const Signature& sig, AlgebraPtr algebra,
                     const EntailBounds& bounds) {
    if (bounds.min_base == 0 || bounds.min_base > bounds.max_base) throw InputError("bad base-size bounds");
    Signature all = sig;
    int top = max_var(phi);
    collect_relations(phi, all);
    for (const auto& s : sigma) {
        collect_relations(s, all);
        top = std::max(top, max_var(s));
    }
    EntailResult r;
    r.bounds = bounds;
    r.window = bounds.window ? bounds.window : static_cast<unsigned>(std::max(top + 1, 1));
    if (static_cast<int>(r.window) <= top) throw InputError("window is smaller than the largest variable index");

    auto holds = [&](const Formula& f, const MStructure& a) {
        return bounds.q ? is_q_true(f, a, *bounds.q) : is_true(f, a);
    };
    for (unsigned base = bounds.min_base; base <= bounds.max_base && !r.countermodel_found; ++base) {
        StructureSpace space(algebra, all, base, r.window);
        auto st = for_each_structure(space, bounds.max_structures, bounds.seed + base, [&](std::uint64_t, const MStructure& a) {
            for (const auto& s : sigma)
                if (!holds(s, a)) return true;
            if (holds(phi, a)) return true;
            r.countermodel_found = true;
            r.countermodel = a;
            return false;
        });
        r.structures_checked += st.visited;
        r.exhaustive = r.exhaustive && st.exhaustive;
    }
    return r;
}

LawReport check_substitution_semantics(const MStructure& a, const std::string& relation) {
    auto it = a.relations.find(relation);
    if (it == a.relations.end()) throw InputError("relation '" + relation + "' is not interpreted in the structure");
    const unsigned n = it->second.space().dim();
    const unsigned d = a.window;
    LawReport rep;
    rep.law = "substitution";
    const auto total = checked_pow(d, n);
    if (!total || *total > (std::uint64_t{1} << 20)) throw BudgetExceeded("too many index tuples");
    std::uint64_t skipped = 0;
    Evaluator ev(a);
    for (std::uint64_t t = 0; t < *total; ++t) {
        std::vector<unsigned> js(n);
        std::uint64_t rest = t;
        for (unsigned i = n; i-- > 0;) {
            js[i] = static_cast<unsigned>(rest % d);
            rest /= d;
        }
        auto ks = fresh_indices(js, d);
        if (!ks) {
            ++skipped;
            continue;
        }
        ValidityParams p;
        p.relation = relation;
        p.js = js;
        p.ks = *ks;
        auto sides = match::iff(validity(14, p, *a.algebra), *a.algebra);
        ++rep.instances;
        if (!(ev.eval(sides->first) == ev.eval(sides->second))) {
            rep.holds = false;
            rep.witness = Json{{"js", js}, {"ks", *ks}};
            break;
        }
    }
    if (rep.instances == 0)
        throw InputError("window " + std::to_string(d) + " leaves no room for fresh variables of relation '" +
                         relation + "'");
    if (skipped) rep.note = std::to_string(skipped) + " index tuples need fresh variables beyond the window";
    return rep;
}

}  // namespace mvl
