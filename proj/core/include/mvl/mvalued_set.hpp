#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mvl/construction.hpp"
#include "mvl/demorgan.hpp"
#include "mvl/point_set.hpp"
#include "mvl/rng.hpp"

namespace mvl {

/// x : M -> P(U^d). Layers are indexed by ElemId. The partition property is checked by
/// from_layers() and is_partition(), not by the constructor.
class MValuedSet {
public:
    MValuedSet() = default;
    MValuedSet(AlgebraPtr algebra, std::vector<PointSet> layers);

    /// Validating constructor: throws InputError unless layers partition U^d.
    static MValuedSet from_layers(AlgebraPtr algebra, std::vector<PointSet> layers);
    /// values[i] is the element whose layer holds point i.
    static MValuedSet from_values(AlgebraPtr algebra, const Space& space, std::span<const ElemId> values);
    static MValuedSet constant(AlgebraPtr algebra, const Space& space, ElemId p);

    const DeMorganAlgebra& algebra() const noexcept { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
    const Space& space() const noexcept { return space_; }

    const PointSet& layer(ElemId p) const { return layers_.at(index(p)); }
    const std::vector<PointSet>& layers() const noexcept { return layers_; }

    bool is_partition() const;
    /// The element whose layer contains the point; throws InputError if none or several do.
    ElemId value_at(std::uint32_t point) const;
    std::vector<ElemId> values() const;

    bool operator==(const MValuedSet& o) const;
    std::size_t hash() const noexcept;

private:
    AlgebraPtr algebra_;
    Space space_;
    std::vector<PointSet> layers_;
};

/// The full cylindric set algebra P(U^d), as the CA parameter of MConstruction.
struct SetCA {
    using Elem = PointSet;
    Space space;

    PointSet zero() const { return PointSet(space); }
    PointSet one() const { return PointSet::full(space); }
    PointSet join(const PointSet& a, const PointSet& b) const { return a | b; }
    PointSet meet(const PointSet& a, const PointSet& b) const { return a & b; }
    PointSet neg(const PointSet& a) const { return ~a; }
    PointSet cyl(unsigned k, const PointSet& a) const { return mvl::cyl(k, a); }
    PointSet diag(unsigned k, unsigned l) const { return mvl::diag(space, k, l); }
    bool equal(const PointSet& a, const PointSet& b) const { return a == b; }
    bool is_zero(const PointSet& a) const { return a.empty(); }
};

/// M(B) for B the full cylindric set algebra over a space.
class MCylSetAlgebra {
public:
    MCylSetAlgebra(AlgebraPtr algebra, const Space& space);

    const DeMorganAlgebra& algebra() const noexcept { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
    const Space& space() const noexcept { return space_; }
    const MCylOpsTable& table() const noexcept { return impl_.table(); }

    MValuedSet unit(ElemId p) const;
    MValuedSet diag(unsigned k, unsigned l) const;

    MValuedSet join(const MValuedSet& x, const MValuedSet& y) const;
    MValuedSet meet(const MValuedSet& x, const MValuedSet& y) const;
    MValuedSet neg(const MValuedSet& x) const;

    /// Sup-over-subsets cylindrification.
    MValuedSet cyl(unsigned k, const MValuedSet& x) const;
    /// Cylindrification by enumerating witness assignments j in M^U; base size at most 4.
    MValuedSet ecyl(unsigned k, const MValuedSet& x) const;

    MValuedSet delta(ElemId p, const MValuedSet& x) const;
    MValuedSet big_delta(const MValuedSet& x) const;

    MValuedSet subst(unsigned k, unsigned l, const MValuedSet& x) const;
    MValuedSet q(unsigned k, const MValuedSet& x) const;
    MValuedSet imp(const MValuedSet& a, const MValuedSet& b) const;
    MValuedSet strong_imp(const MValuedSet& a, const MValuedSet& b) const;

    /// a + b = b.
    bool leq(const MValuedSet& a, const MValuedSet& b) const;
    /// b^p is contained in the union of a^q over q <= p, for every p.
    bool leq_layerwise(const MValuedSet& a, const MValuedSet& b) const;

    std::vector<unsigned> dim(const MValuedSet& x) const;
    bool depends_on(const MValuedSet& x, std::span<const unsigned> coords) const;
    bool is_regular_element(const MValuedSet& x) const;

    /// |M|^|U^d|; throws BudgetExceeded past 2^62.
    std::uint64_t carrier_size() const;
    /// Element number i: the value at point j is digit j of i in base |M| (point 0 least significant).
    MValuedSet element(std::uint64_t i) const;
    MValuedSet random_element(Rng& rng) const;

    const MConstruction<SetCA>& construction() const noexcept { return impl_; }

private:
    void check(const MValuedSet& x) const;
    MValuedSet wrap(std::vector<PointSet> layers) const;

    AlgebraPtr algebra_;
    Space space_;
    MConstruction<SetCA> impl_;
};

inline constexpr unsigned kMaxEcylBase = 4;

}  // namespace mvl
