#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mvl {

/// Dense id of an element of a finite De Morgan algebra, in declared order.
enum class ElemId : std::uint8_t {};

constexpr unsigned index(ElemId e) noexcept { return static_cast<unsigned>(e); }
constexpr ElemId elem(unsigned i) noexcept { return static_cast<ElemId>(i); }

/// Bit i set <=> element i is in the subset.
using ElemMask = std::uint32_t;

constexpr ElemMask bit(ElemId e) noexcept { return ElemMask{1} << index(e); }

inline constexpr unsigned kMaxAlgebraSize = 16;

/// Unvalidated candidate tables, as read from a file. Entries are raw integers so that
/// out-of-range ids survive until validation can report them.
struct AlgebraTables {
    std::string name;
    std::vector<std::string> elements;
    std::vector<std::vector<int>> join;
    std::vector<std::vector<int>> meet;
    std::vector<int> neg;
    int zero = 0;
    int one = 0;
};

struct AxiomViolation {
    std::string axiom;  // "1a" ... "7", "derived-2a", "order-antisymmetry", ...
    std::vector<ElemId> witness;
};

struct ValidationReport {
    std::vector<std::string> malformed;  // structural problems; axioms are not checked if non-empty
    std::vector<AxiomViolation> violations;

    bool ok() const noexcept { return malformed.empty() && violations.empty(); }
};

class DeMorganAlgebra {
public:
    /// Exhaustive O(|M|^3) check of the De Morgan axioms. First witness per axiom.
    static ValidationReport validate(const AlgebraTables& tables);

    /// Throws InputError carrying the first problem when validation fails.
    static DeMorganAlgebra from_tables(const AlgebraTables& tables);

    static DeMorganAlgebra b2();
    static DeMorganAlgebra k3();
    static DeMorganAlgebra four();

    /// Shared instance of "B2", "K3" or "FOUR"; throws InputError for other names.
    static std::shared_ptr<const DeMorganAlgebra> builtin(std::string_view name);
    static bool is_builtin(std::string_view name);

    const std::string& name() const noexcept { return name_; }
    unsigned size() const noexcept { return static_cast<unsigned>(labels_.size()); }
    std::vector<ElemId> elements() const;
    ElemMask all_mask() const noexcept { return size() == 32 ? ~ElemMask{0} : (ElemMask{1} << size()) - 1; }

    const std::string& label(ElemId e) const { return labels_.at(index(e)); }
    std::optional<ElemId> find(std::string_view label) const;
    /// find() that throws InputError on unknown labels.
    ElemId at(std::string_view label) const;

    ElemId zero() const noexcept { return zero_; }
    ElemId one() const noexcept { return one_; }

    ElemId join(ElemId a, ElemId b) const noexcept { return join_[index(a) * size() + index(b)]; }
    ElemId meet(ElemId a, ElemId b) const noexcept { return meet_[index(a) * size() + index(b)]; }
    ElemId neg(ElemId a) const noexcept { return neg_[index(a)]; }

    bool leq(ElemId a, ElemId b) const noexcept { return meet(a, b) == a; }
    bool lt(ElemId a, ElemId b) const noexcept { return a != b && leq(a, b); }

    /// Least upper bound of a nonempty subset; throws InputError on the empty set.
    ElemId sup(ElemMask subset) const;
    ElemId sup(std::span<const ElemId> subset) const;

    /// Iterated join/meet with the empty-family conventions (join of nothing is 0, meet is 1).
    ElemId join_all(ElemMask subset) const noexcept;
    ElemId meet_all(ElemMask subset) const noexcept;

    /// {q : q <= p} as a mask.
    ElemMask downset(ElemId p) const noexcept { return downsets_[index(p)]; }

    /// q is covered by p: q < p with nothing strictly between.
    bool covers(ElemId q, ElemId p) const noexcept;
    /// V_1 = {1}, V_{n+1} = elements covered by some member of V_n; stops at the first empty level.
    std::vector<std::vector<ElemId>> level_sets() const;

    /// The crisp indicator "q equals p" used by the truth-value semantics.
    ElemId delta_star(ElemId p, ElemId q) const noexcept { return p == q ? one_ : zero_; }

    AlgebraTables tables() const;

    bool operator==(const DeMorganAlgebra& other) const;

private:
    DeMorganAlgebra() = default;

    std::string name_;
    std::vector<std::string> labels_;
    std::vector<ElemId> join_;
    std::vector<ElemId> meet_;
    std::vector<ElemId> neg_;
    std::vector<ElemMask> downsets_;
    ElemId zero_{};
    ElemId one_{};
};

using AlgebraPtr = std::shared_ptr<const DeMorganAlgebra>;

/// Same object or identical tables.
bool same_algebra(const DeMorganAlgebra& a, const DeMorganAlgebra& b);

}  // namespace mvl
