#include "mvl/mvalued_set.hpp"

#include <algorithm>

#include "mvl/error.hpp"

namespace mvl {

MCylOpsTable::MCylOpsTable(const DeMorganAlgebra& m)
    : n_(m.size()), full_(m.all_mask()), sups_(std::size_t{1} << m.size()), eq_(m.size()), gt_(m.size()) {
    for (ElemId p : m.elements()) down_.push_back(m.downset(p));
    for (ElemMask a = 1; a <= full_; ++a) {
        const ElemId s = m.sup(a);
        sups_[a] = s;
        eq_[index(s)].push_back(a);
        for (ElemId p : m.elements())
            if (m.lt(p, s)) gt_[index(p)].push_back(a);
    }
}

MValuedSet::MValuedSet(AlgebraPtr algebra, std::vector<PointSet> layers)
    : algebra_(std::move(algebra)), layers_(std::move(layers)) {
    if (!algebra_) throw InputError("missing algebra");
    if (layers_.size() != algebra_->size())
        throw InputError("expected " + std::to_string(algebra_->size()) + " layers, got " +
                         std::to_string(layers_.size()));
    space_ = layers_.front().space();
    for (const auto& l : layers_)
        if (!(l.space() == space_)) throw InputError("layers over different spaces");
}

MValuedSet MValuedSet::from_layers(AlgebraPtr algebra, std::vector<PointSet> layers) {
    MValuedSet x(std::move(algebra), std::move(layers));
    if (!x.is_partition()) throw InputError("layers do not partition the space");
    return x;
}

MValuedSet MValuedSet::from_values(AlgebraPtr algebra, const Space& space, std::span<const ElemId> values) {
    if (values.size() != space.size()) throw InputError("value vector does not match the space");
    std::vector<PointSet> layers(algebra->size(), PointSet(space));
    for (std::uint32_t i = 0; i < space.size(); ++i) {
        if (index(values[i]) >= algebra->size()) throw InputError("element id out of range");
        layers[index(values[i])].insert(i);
    }
    return MValuedSet(std::move(algebra), std::move(layers));
}

MValuedSet MValuedSet::constant(AlgebraPtr algebra, const Space& space, ElemId p) {
    std::vector<PointSet> layers(algebra->size(), PointSet(space));
    layers.at(index(p)) = PointSet::full(space);
    return MValuedSet(std::move(algebra), std::move(layers));
}

bool MValuedSet::is_partition() const {
    PointSet acc(space());
    for (const auto& l : layers_) {
        if (!acc.disjoint(l)) return false;
        acc |= l;
    }
    return acc.is_full();
}

ElemId MValuedSet::value_at(std::uint32_t point) const {
    if (point >= space().size()) throw InputError("point index out of range");
    int found = -1;
    for (unsigned p = 0; p < layers_.size(); ++p) {
        if (!layers_[p].contains(point)) continue;
        if (found >= 0) throw InputError("point lies in two layers");
        found = static_cast<int>(p);
    }
    if (found < 0) throw InputError("point lies in no layer");
    return elem(static_cast<unsigned>(found));
}

std::vector<ElemId> MValuedSet::values() const {
    std::vector<ElemId> out;
    out.reserve(space().size());
    for (std::uint32_t i = 0; i < space().size(); ++i) out.push_back(value_at(i));
    return out;
}

bool MValuedSet::operator==(const MValuedSet& o) const {
    return layers_ == o.layers_ && (algebra_ == o.algebra_ || same_algebra(*algebra_, *o.algebra_));
}

std::size_t MValuedSet::hash() const noexcept {
    std::size_t h = 0;
    for (const auto& l : layers_) h = h * 1000003u ^ l.hash();
    return h;
}

MCylSetAlgebra::MCylSetAlgebra(AlgebraPtr algebra, const Space& space)
    : algebra_(std::move(algebra)), space_(space), impl_(*algebra_, SetCA{space}) {}

void MCylSetAlgebra::check(const MValuedSet& x) const {
    if (!(x.space() == space_)) throw InputError("operand over a different space");
    if (x.algebra_ptr() != algebra_ && !same_algebra(x.algebra(), *algebra_))
        throw InputError("operand over a different algebra");
}

MValuedSet MCylSetAlgebra::wrap(std::vector<PointSet> layers) const { return MValuedSet(algebra_, std::move(layers)); }

MValuedSet MCylSetAlgebra::unit(ElemId p) const {
    if (index(p) >= algebra_->size()) throw InputError("element id out of range");
    return wrap(impl_.unit(p));
}

MValuedSet MCylSetAlgebra::diag(unsigned k, unsigned l) const { return wrap(impl_.diag(k, l)); }

MValuedSet MCylSetAlgebra::join(const MValuedSet& x, const MValuedSet& y) const {
    check(x);
    check(y);
    return wrap(impl_.join(x.layers(), y.layers()));
}

MValuedSet MCylSetAlgebra::meet(const MValuedSet& x, const MValuedSet& y) const {
    check(x);
    check(y);
    return wrap(impl_.meet(x.layers(), y.layers()));
}

MValuedSet MCylSetAlgebra::neg(const MValuedSet& x) const {
    check(x);
    return wrap(impl_.neg(x.layers()));
}

MValuedSet MCylSetAlgebra::cyl(unsigned k, const MValuedSet& x) const {
    check(x);
    space_.check_coord(k);
    return wrap(impl_.cyl(k, x.layers()));
}

MValuedSet MCylSetAlgebra::ecyl(unsigned k, const MValuedSet& x) const {
    check(x);
    space_.check_coord(k);
    const unsigned base = space_.base();
    if (base > kMaxEcylBase)
        throw BudgetExceeded("witness-assignment cylindrification limited to base size " +
                             std::to_string(kMaxEcylBase));
    const unsigned n = algebra_->size();
    // witness[y][q] = y o_k x^q
    std::vector<std::vector<PointSet>> witness(base);
    for (unsigned y = 0; y < base; ++y)
        for (unsigned q = 0; q < n; ++q) witness[y].push_back(witness_set(y, k, x.layer(elem(q))));

    std::vector<PointSet> out(n, PointSet(space_));
    std::vector<unsigned> j(base, 0);
    while (true) {
        PointSet acc = PointSet::full(space_);
        ElemId top = elem(j[0]);
        for (unsigned y = 0; y < base; ++y) {
            acc &= witness[y][j[y]];
            top = algebra_->join(top, elem(j[y]));
        }
        out[index(top)] |= acc;
        unsigned pos = 0;
        while (pos < base && ++j[pos] == n) j[pos++] = 0;
        if (pos == base) break;
    }
    return wrap(std::move(out));
}

MValuedSet MCylSetAlgebra::delta(ElemId p, const MValuedSet& x) const {
    check(x);
    if (index(p) >= algebra_->size()) throw InputError("element id out of range");
    return wrap(impl_.delta(p, x.layers()));
}

MValuedSet MCylSetAlgebra::big_delta(const MValuedSet& x) const {
    check(x);
    return wrap(impl_.big_delta(x.layers()));
}

MValuedSet MCylSetAlgebra::subst(unsigned k, unsigned l, const MValuedSet& x) const {
    check(x);
    space_.check_coord(k);
    space_.check_coord(l);
    return wrap(impl_.subst(k, l, x.layers()));
}

MValuedSet MCylSetAlgebra::q(unsigned k, const MValuedSet& x) const {
    check(x);
    space_.check_coord(k);
    return wrap(impl_.q(k, x.layers()));
}

MValuedSet MCylSetAlgebra::imp(const MValuedSet& a, const MValuedSet& b) const {
    check(a);
    check(b);
    return wrap(impl_.imp(a.layers(), b.layers()));
}

MValuedSet MCylSetAlgebra::strong_imp(const MValuedSet& a, const MValuedSet& b) const {
    check(a);
    check(b);
    return wrap(impl_.strong_imp(a.layers(), b.layers()));
}

bool MCylSetAlgebra::leq(const MValuedSet& a, const MValuedSet& b) const {
    check(a);
    check(b);
    return impl_.leq(a.layers(), b.layers());
}

bool MCylSetAlgebra::leq_layerwise(const MValuedSet& a, const MValuedSet& b) const {
    check(a);
    check(b);
    return impl_.leq_layerwise(a.layers(), b.layers());
}

std::vector<unsigned> MCylSetAlgebra::dim(const MValuedSet& x) const {
    check(x);
    std::vector<unsigned> out;
    for (unsigned k = 0; k < space_.dim(); ++k) {
        for (ElemId p : algebra_->elements()) {
            auto d = impl_.delta(p, x.layers());
            if (!impl_.equal(impl_.cyl(k, d), d)) {
                out.push_back(k);
                break;
            }
        }
    }
    return out;
}

bool MCylSetAlgebra::depends_on(const MValuedSet& x, std::span<const unsigned> coords) const {
    check(x);
    std::vector<bool> keep(space_.dim(), false);
    for (unsigned k : coords) {
        space_.check_coord(k);
        keep[k] = true;
    }
    // Points agreeing on coords are compared through a representative with the rest zeroed.
    for (std::uint32_t s = 0; s < space_.size(); ++s) {
        std::uint32_t rep = s;
        for (unsigned k = 0; k < space_.dim(); ++k)
            if (!keep[k]) rep -= space_.coord(s, k) * space_.stride(k);
        for (const auto& layer : x.layers())
            if (layer.contains(s) != layer.contains(rep)) return false;
    }
    return true;
}

bool MCylSetAlgebra::is_regular_element(const MValuedSet& x) const {
    const auto d = dim(x);
    return depends_on(x, d);
}

std::uint64_t MCylSetAlgebra::carrier_size() const {
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < space_.size(); ++i) {
        if (n > (std::uint64_t{1} << 62) / algebra_->size())
            throw BudgetExceeded("carrier of M(B) is too large to enumerate");
        n *= algebra_->size();
    }
    return n;
}

MValuedSet MCylSetAlgebra::element(std::uint64_t i) const {
    std::vector<ElemId> values(space_.size());
    for (auto& v : values) {
        v = elem(static_cast<unsigned>(i % algebra_->size()));
        i /= algebra_->size();
    }
    return MValuedSet::from_values(algebra_, space_, values);
}

MValuedSet MCylSetAlgebra::random_element(Rng& rng) const {
    std::vector<ElemId> values(space_.size());
    for (auto& v : values) v = elem(static_cast<unsigned>(draw(rng, algebra_->size())));
    return MValuedSet::from_values(algebra_, space_, values);
}

}  // namespace mvl
