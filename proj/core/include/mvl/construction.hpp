#pragma once

#include <bit>
#include <utility>
#include <vector>

#include "mvl/demorgan.hpp"

namespace mvl {

/// Nonempty subsets of M with their sups, grouped for the cylindrification formula.
class MCylOpsTable {
public:
    explicit MCylOpsTable(const DeMorganAlgebra& m);

    unsigned algebra_size() const noexcept { return n_; }
    /// sup of a nonempty mask.
    ElemId sup_of(ElemMask a) const noexcept { return sups_[a]; }
    ElemMask downset(ElemId p) const noexcept { return down_[index(p)]; }
    ElemMask non_downset(ElemId p) const noexcept { return ~down_[index(p)] & full_; }
    /// Nonempty A with sup A = p, increasing mask order.
    const std::vector<ElemMask>& with_sup(ElemId p) const noexcept { return eq_[index(p)]; }
    /// Nonempty A with sup A > p, increasing mask order.
    const std::vector<ElemMask>& above(ElemId p) const noexcept { return gt_[index(p)]; }

private:
    unsigned n_;
    ElemMask full_;
    std::vector<ElemId> sups_;
    std::vector<ElemMask> down_;
    std::vector<std::vector<ElemMask>> eq_;
    std::vector<std::vector<ElemMask>> gt_;
};

/// The construction x : M -> B over any cylindric algebra B. `CA` supplies
///   using Elem; Elem zero(); Elem one(); Elem join(a,b); Elem meet(a,b); Elem neg(a);
///   Elem cyl(k,a); Elem diag(k,l); bool equal(a,b); bool is_zero(a).
/// Values are layer vectors indexed by ElemId. Nothing here checks the partition property,
/// so a deliberately broken operation stays observable to the law checker.
template <class CA>
class MConstruction {
public:
    using Elem = typename CA::Elem;
    using Value = std::vector<Elem>;

    MConstruction(const DeMorganAlgebra& m, CA ca) : m_(m), ca_(std::move(ca)), table_(m) {}

    const DeMorganAlgebra& algebra() const noexcept { return m_; }
    const CA& base() const noexcept { return ca_; }
    const MCylOpsTable& table() const noexcept { return table_; }

    Value empty() const { return Value(m_.size(), ca_.zero()); }

    Value unit(ElemId p) const {
        Value r = empty();
        r[index(p)] = ca_.one();
        return r;
    }

    Value diag(unsigned k, unsigned l) const { return crisp(ca_.diag(k, l)); }

    /// Layer 1 = a, layer 0 = -a.
    Value crisp(const Elem& a) const {
        Value r = empty();
        r[index(m_.one())] = a;
        r[index(m_.zero())] = ca_.join(r[index(m_.zero())], ca_.neg(a));
        return r;
    }

    Value join(const Value& x, const Value& y) const { return combine(x, y, true); }
    Value meet(const Value& x, const Value& y) const { return combine(x, y, false); }

    Value neg(const Value& x) const {
        Value r;
        r.reserve(x.size());
        for (ElemId p : m_.elements()) r.push_back(x[index(m_.neg(p))]);
        return r;
    }

    Value delta(ElemId p, const Value& x) const { return crisp(x[index(p)]); }

    Value cyl(unsigned k, const Value& x) const {
        const unsigned n = m_.size();
        std::vector<Elem> c;
        c.reserve(n);
        for (unsigned q = 0; q < n; ++q) c.push_back(ca_.cyl(k, x[q]));
        // prod[A] = product of c[q] over q in A, built from A minus its lowest member.
        const ElemMask total = ElemMask{1} << n;
        std::vector<Elem> prod(total, ca_.one());
        for (ElemMask a = 1; a < total; ++a) {
            const unsigned low = static_cast<unsigned>(std::countr_zero(a));
            const ElemMask rest = a & (a - 1);
            prod[a] = rest ? ca_.meet(prod[rest], c[low]) : c[low];
        }
        Value r = empty();
        for (unsigned p = 0; p < n; ++p) {
            Elem plus = ca_.zero();
            for (ElemMask a : table_.with_sup(elem(p))) plus = ca_.join(plus, prod[a]);
            Elem minus = ca_.zero();
            for (ElemMask a : table_.above(elem(p))) minus = ca_.join(minus, prod[a]);
            r[p] = ca_.meet(plus, ca_.neg(minus));
        }
        return r;
    }

    Value subst(unsigned k, unsigned l, const Value& x) const { return cyl(k, meet(diag(k, l), x)); }
    Value q(unsigned k, const Value& x) const { return neg(cyl(k, neg(x))); }
    Value imp(const Value& a, const Value& b) const { return join(neg(a), b); }
    Value big_delta(const Value& x) const { return join(delta(m_.zero(), x), delta(m_.one(), x)); }

    Value strong_imp(const Value& a, const Value& b) const {
        Value acc;
        bool first = true;
        for (ElemId r : m_.elements()) {
            Value down;
            bool dfirst = true;
            for (ElemId q : m_.elements()) {
                if (!m_.leq(q, r)) continue;
                Value d = delta(q, a);
                down = dfirst ? d : join(down, d);
                dfirst = false;
            }
            Value term = imp(delta(r, b), down);
            acc = first ? term : meet(acc, term);
            first = false;
        }
        return acc;
    }

    bool equal(const Value& x, const Value& y) const {
        for (unsigned p = 0; p < m_.size(); ++p)
            if (!ca_.equal(x[p], y[p])) return false;
        return true;
    }

    bool leq(const Value& a, const Value& b) const { return equal(join(a, b), b); }

    /// b^p <= sum of a^q over q <= p, for every p.
    bool leq_layerwise(const Value& a, const Value& b) const {
        for (ElemId p : m_.elements()) {
            Elem below = ca_.zero();
            for (ElemId q : m_.elements())
                if (m_.leq(q, p)) below = ca_.join(below, a[index(q)]);
            if (!ca_.equal(ca_.meet(b[index(p)], below), b[index(p)])) return false;
        }
        return true;
    }

    bool is_partition(const Value& x) const {
        Elem acc = ca_.zero();
        for (unsigned p = 0; p < m_.size(); ++p) {
            if (!ca_.is_zero(ca_.meet(acc, x[p]))) return false;
            acc = ca_.join(acc, x[p]);
        }
        return ca_.equal(acc, ca_.one());
    }

private:
    Value combine(const Value& x, const Value& y, bool is_join) const {
        Value r = empty();
        const unsigned n = m_.size();
        for (unsigned q = 0; q < n; ++q) {
            if (ca_.is_zero(x[q])) continue;
            for (unsigned s = 0; s < n; ++s) {
                const ElemId p = is_join ? m_.join(elem(q), elem(s)) : m_.meet(elem(q), elem(s));
                r[index(p)] = ca_.join(r[index(p)], ca_.meet(x[q], y[s]));
            }
        }
        return r;
    }

    const DeMorganAlgebra& m_;
    CA ca_;
    MCylOpsTable table_;
};

}  // namespace mvl
