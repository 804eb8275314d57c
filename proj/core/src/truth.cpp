#include "mvl/truth.hpp"

#include <functional>

#include "mvl/error.hpp"
#include "mvl/parser.hpp"

namespace mvl {

ElemId t_eval(const Formula& root, const Valuation& v, const DeMorganAlgebra& m) {
    std::unordered_map<const Node*, ElemId> memo;
    std::function<ElemId(const Formula&)> go = [&](const Formula& f) -> ElemId {
        if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
        ElemId r{};
        if (is_prime(f)) {
            auto it = v.find(f);
            if (it == v.end()) throw InputError("valuation does not cover prime " + print_formula(f, m));
            r = it->second;
        } else {
            switch (f->op) {
                case Op::konst: r = f->elem; break;
                case Op::neg: r = m.neg(go(f->lhs)); break;
                case Op::conj: r = m.meet(go(f->lhs), go(f->rhs)); break;
                case Op::disj: r = m.join(go(f->lhs), go(f->rhs)); break;
                case Op::gamma: r = m.delta_star(f->elem, go(f->lhs)); break;
                default: break;
            }
        }
        memo.emplace(f.get(), r);
        return r;
    };
    return go(root);
}

ElemId crispness_value(const Formula& f, const Valuation& v, const DeMorganAlgebra& m) {
    return t_eval(fm::big_gamma(f, m), v, m);
}

ElemId iff_value(const Formula& a, const Formula& b, const Valuation& v, const DeMorganAlgebra& m) {
    return t_eval(fm::iff(a, b, m), v, m);
}

TruthProgram::TruthProgram(const Formula& root, const DeMorganAlgebra& m) : m_(m), primes_(prime_subformulas(root)) {
    std::unordered_map<const Node*, std::uint32_t> slot;
    for (std::size_t i = 0; i < primes_.size(); ++i) slot.emplace(primes_[i].get(), static_cast<std::uint32_t>(i));
    const auto base = static_cast<std::uint32_t>(primes_.size());
    std::function<std::uint32_t(const Formula&)> go = [&](const Formula& f) -> std::uint32_t {
        if (auto it = slot.find(f.get()); it != slot.end()) return it->second;
        Step s{f->op, f->elem, 0, 0};
        if (f->lhs) s.a = go(f->lhs);
        if (f->rhs) s.b = go(f->rhs);
        steps_.push_back(s);
        const auto id = base + static_cast<std::uint32_t>(steps_.size() - 1);
        slot.emplace(f.get(), id);
        return id;
    };
    go(root);
}

ElemId TruthProgram::run(const std::vector<ElemId>& values) const {
    // Registers: primes first, then one per step.
    std::vector<ElemId> reg(values);
    reg.reserve(values.size() + steps_.size());
    for (const Step& s : steps_) {
        ElemId r{};
        switch (s.op) {
            case Op::konst: r = s.elem; break;
            case Op::neg: r = m_.neg(reg[s.a]); break;
            case Op::conj: r = m_.meet(reg[s.a], reg[s.b]); break;
            case Op::disj: r = m_.join(reg[s.a], reg[s.b]); break;
            case Op::gamma: r = m_.delta_star(s.elem, reg[s.a]); break;
            default: break;
        }
        reg.push_back(r);
    }
    return reg.back();
}

Json TautologyResult::to_json(const DeMorganAlgebra& m) const {
    Json j{{"tautology", tautology}, {"valuations", valuations}};
    if (!tautology) {
        Json w = Json::array();
        for (const auto& [p, e] : witness) w.push_back(Json{{"prime", print_formula(p, m)}, {"value", m.label(e)}});
        j["counter_valuation"] = w;
        j["value"] = m.label(witness_value);
    }
    return j;
}

TautologyResult is_tautology(const Formula& f, const DeMorganAlgebra& m, std::uint64_t budget, EnumerationOrder order) {
    TruthProgram prog(f, m);
    const std::size_t n = prog.primes().size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > budget / m.size()) throw BudgetExceeded("truth table exceeds the budget of " + std::to_string(budget));
        total *= m.size();
    }
    if (total > budget) throw BudgetExceeded("truth table exceeds the budget of " + std::to_string(budget));

    TautologyResult r;
    std::vector<ElemId> vals(n, elem(0));
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t rest = t;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pos = order == EnumerationOrder::first_prime_fastest ? i : n - 1 - i;
            vals[pos] = elem(static_cast<unsigned>(rest % m.size()));
            rest /= m.size();
        }
        ++r.valuations;
        const ElemId out = prog.run(vals);
        if (out != m.one()) {
            r.tautology = false;
            r.witness_value = out;
            for (std::size_t i = 0; i < n; ++i) r.witness.emplace_back(prog.primes()[i], vals[i]);
            break;
        }
    }
    return r;
}

}  // namespace mvl
