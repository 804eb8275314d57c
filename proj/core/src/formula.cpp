#include "mvl/formula.hpp"

#include <functional>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

#include "mvl/error.hpp"

namespace mvl {

unsigned Signature::arity(const std::string& name) const {
    auto it = rel_.find(name);
    if (it == rel_.end()) throw InputError("unknown relation '" + name + "'");
    return it->second;
}

void Signature::declare(const std::string& name, unsigned arity) {
    auto [it, added] = rel_.emplace(name, arity);
    if (!added && it->second != arity)
        throw InputError("relation '" + name + "' used with arity " + std::to_string(arity) + ", declared " +
                         std::to_string(it->second));
}

Json Signature::to_json() const { return Json{{"relations", rel_}}; }

Signature Signature::from_json(const Json& j) {
    if (!j.is_object() || !j.contains("relations") || !j.at("relations").is_object())
        throw InputError("signature must be {\"relations\": {name: arity}}");
    Signature s;
    for (const auto& [name, a] : j.at("relations").items()) {
        if (!a.is_number_unsigned()) throw InputError("arity of '" + name + "' must be a natural number");
        s.declare(name, a.get<unsigned>());
    }
    return s;
}

namespace {

class Interner {
public:
    Formula intern(Node n) {
        std::size_t h = static_cast<std::size_t>(n.op);
        boost::hash_combine(h, n.name);
        boost::hash_combine(h, n.vars);
        boost::hash_combine(h, index(n.elem));
        boost::hash_combine(h, n.lhs.get());
        boost::hash_combine(h, n.rhs.get());
        n.hash = h;
        std::lock_guard lock(mu_);
        auto [lo, hi] = table_.equal_range(h);
        for (auto it = lo; it != hi; ++it)
            if (auto f = it->second.lock(); f && same(*f, n)) return f;
        if (table_.size() > 2 * live_floor_) purge();
        auto f = std::make_shared<const Node>(std::move(n));
        table_.emplace(h, f);
        return f;
    }

private:
    static bool same(const Node& a, const Node& b) {
        return a.op == b.op && a.elem == b.elem && a.lhs == b.lhs && a.rhs == b.rhs && a.vars == b.vars &&
               a.name == b.name;
    }

    void purge() {
        for (auto it = table_.begin(); it != table_.end();)
            it = it->second.expired() ? table_.erase(it) : std::next(it);
        live_floor_ = std::max<std::size_t>(table_.size(), 1024);
    }

    std::mutex mu_;
    std::unordered_multimap<std::size_t, std::weak_ptr<const Node>> table_;
    std::size_t live_floor_ = 1024;
};

Interner& interner() {
    static Interner in;
    return in;
}

Formula make(Op op, std::string name, std::vector<unsigned> vars, ElemId elem, Formula lhs, Formula rhs) {
    return interner().intern(Node{op, std::move(name), std::move(vars), elem, std::move(lhs), std::move(rhs), 0});
}

}  // namespace

namespace fm {

Formula rel(const std::string& name, std::vector<unsigned> vars) {
    return make(Op::rel, name, std::move(vars), ElemId{}, nullptr, nullptr);
}
Formula eq(unsigned j, unsigned k) { return make(Op::eq, {}, {j, k}, ElemId{}, nullptr, nullptr); }
Formula konst(ElemId p) { return make(Op::konst, {}, {}, p, nullptr, nullptr); }
Formula neg(const Formula& a) { return make(Op::neg, {}, {}, ElemId{}, a, nullptr); }
Formula conj(const Formula& a, const Formula& b) { return make(Op::conj, {}, {}, ElemId{}, a, b); }
Formula disj(const Formula& a, const Formula& b) { return make(Op::disj, {}, {}, ElemId{}, a, b); }
Formula exists(unsigned k, const Formula& a) { return make(Op::exists, {}, {k}, ElemId{}, a, nullptr); }
Formula gamma(ElemId p, const Formula& a) { return make(Op::gamma, {}, {}, p, a, nullptr); }

Formula big_or(const std::vector<Formula>& xs, const DeMorganAlgebra& m) {
    if (xs.empty()) return konst(m.zero());
    Formula acc = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) acc = disj(acc, xs[i]);
    return acc;
}

Formula big_and(const std::vector<Formula>& xs, const DeMorganAlgebra& m) {
    if (xs.empty()) return konst(m.one());
    Formula acc = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) acc = conj(acc, xs[i]);
    return acc;
}

Formula imp(const Formula& a, const Formula& b) { return disj(neg(a), b); }

Formula strong_imp(const Formula& a, const Formula& b, const DeMorganAlgebra& m) {
    std::vector<Formula> conjuncts;
    for (ElemId r : m.elements()) {
        std::vector<Formula> below;
        for (ElemId q : m.elements())
            if (m.leq(q, r)) below.push_back(gamma(q, a));
        conjuncts.push_back(imp(gamma(r, b), big_or(below, m)));
    }
    return big_and(conjuncts, m);
}

Formula iff(const Formula& a, const Formula& b, const DeMorganAlgebra& m) {
    return conj(strong_imp(a, b, m), strong_imp(b, a, m));
}

Formula forall(unsigned k, const Formula& a) { return neg(exists(k, neg(a))); }

Formula big_gamma(const Formula& a, const DeMorganAlgebra& m) { return disj(gamma(m.zero(), a), gamma(m.one(), a)); }

Formula q_restrict(const Formula& a, ElemMask q, const DeMorganAlgebra& m) {
    std::vector<Formula> xs;
    for (ElemId p : m.elements())
        if (q & bit(p)) xs.push_back(gamma(p, a));
    return big_or(xs, m);
}

Formula subst(unsigned k, unsigned l, const Formula& a) { return exists(k, conj(eq(k, l), a)); }

}  // namespace fm

bool is_prime(const Formula& f) { return f->op == Op::rel || f->op == Op::eq || f->op == Op::exists; }

std::set<unsigned> free_vars(const Formula& root) {
    std::unordered_map<const Node*, std::set<unsigned>> memo;
    std::function<const std::set<unsigned>&(const Formula&)> go = [&](const Formula& f) -> const std::set<unsigned>& {
        if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
        std::set<unsigned> out;
        switch (f->op) {
            case Op::rel:
            case Op::eq: out.insert(f->vars.begin(), f->vars.end()); break;
            case Op::konst: break;
            case Op::neg:
            case Op::gamma: out = go(f->lhs); break;
            case Op::conj:
            case Op::disj: {
                out = go(f->lhs);
                const auto& r = go(f->rhs);
                out.insert(r.begin(), r.end());
                break;
            }
            case Op::exists:
                out = go(f->lhs);
                out.erase(f->var());
                break;
        }
        return memo.emplace(f.get(), std::move(out)).first->second;
    };
    return go(root);
}

int max_var(const Formula& root) {
    std::unordered_map<const Node*, int> memo;
    std::function<int(const Formula&)> go = [&](const Formula& f) {
        if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
        int m = -1;
        for (unsigned v : f->vars) m = std::max(m, static_cast<int>(v));
        if (f->lhs) m = std::max(m, go(f->lhs));
        if (f->rhs) m = std::max(m, go(f->rhs));
        memo.emplace(f.get(), m);
        return m;
    };
    return go(root);
}

std::vector<Formula> prime_subformulas(const Formula& root) {
    std::vector<Formula> out;
    std::unordered_set<const Node*> seen;
    std::function<void(const Formula&)> go = [&](const Formula& f) {
        if (!seen.insert(f.get()).second) return;
        if (is_prime(f)) {
            out.push_back(f);
            return;
        }
        if (f->lhs) go(f->lhs);
        if (f->rhs) go(f->rhs);
    };
    go(root);
    return out;
}

std::uint64_t tree_size(const Formula& root) {
    constexpr std::uint64_t cap = std::uint64_t{1} << 62;
    std::unordered_map<const Node*, std::uint64_t> memo;
    std::function<std::uint64_t(const Formula&)> go = [&](const Formula& f) {
        if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
        std::uint64_t n = 1;
        if (f->lhs) n = std::min(cap, n + go(f->lhs));
        if (f->rhs) n = std::min(cap, n + go(f->rhs));
        memo.emplace(f.get(), n);
        return n;
    };
    return go(root);
}

std::size_t dag_size(const Formula& root) {
    std::unordered_set<const Node*> seen;
    std::function<void(const Formula&)> go = [&](const Formula& f) {
        if (!seen.insert(f.get()).second) return;
        if (f->lhs) go(f->lhs);
        if (f->rhs) go(f->rhs);
    };
    go(root);
    return seen.size();
}

Formula substitute_atoms(const Formula& root, const std::map<std::string, Formula>& map) {
    std::unordered_map<const Node*, Formula> memo;
    std::function<Formula(const Formula&)> go = [&](const Formula& f) -> Formula {
        if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
        Formula out;
        switch (f->op) {
            case Op::rel: {
                auto it = map.find(f->name);
                out = it == map.end() ? f : it->second;
                break;
            }
            case Op::eq:
            case Op::konst: out = f; break;
            case Op::neg: out = fm::neg(go(f->lhs)); break;
            case Op::gamma: out = fm::gamma(f->elem, go(f->lhs)); break;
            case Op::exists: out = fm::exists(f->var(), go(f->lhs)); break;
            case Op::conj: out = fm::conj(go(f->lhs), go(f->rhs)); break;
            case Op::disj: out = fm::disj(go(f->lhs), go(f->rhs)); break;
        }
        memo.emplace(f.get(), out);
        return out;
    };
    return go(root);
}

Formula random_formula(const Signature& sig, const DeMorganAlgebra& m, unsigned window, unsigned depth, Rng& rng) {
    if (window == 0) throw InputError("random formulas need a window of at least one variable");
    std::vector<std::pair<std::string, unsigned>> rels(sig.relations().begin(), sig.relations().end());
    auto var = [&] { return static_cast<unsigned>(draw(rng, window)); };
    auto atom = [&]() -> Formula {
        const std::uint64_t pick = draw(rng, rels.empty() ? 2 : 6);
        if (pick == 0) return fm::konst(elem(static_cast<unsigned>(draw(rng, m.size()))));
        if (pick == 1) return fm::eq(var(), var());
        const auto& [name, arity] = rels[draw(rng, rels.size())];
        std::vector<unsigned> vs;
        for (unsigned i = 0; i < arity; ++i) vs.push_back(var());
        return fm::rel(name, vs);
    };
    std::function<Formula(unsigned)> go = [&](unsigned d) -> Formula {
        if (d == 0 || draw(rng, 4) == 0) return atom();
        switch (draw(rng, 5)) {
            case 0: return fm::neg(go(d - 1));
            case 1: return fm::conj(go(d - 1), go(d - 1));
            case 2: return fm::disj(go(d - 1), go(d - 1));
            case 3: return fm::exists(var(), go(d - 1));
            default: return fm::gamma(elem(static_cast<unsigned>(draw(rng, m.size()))), go(d - 1));
        }
    };
    return go(depth);
}

}  // namespace mvl
