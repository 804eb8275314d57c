#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mvl/formula.hpp"
#include "mvl/laws.hpp"

namespace mvl {

/// An M-structure: base set {0..base-1} and M-valued relations P over U^arity. Formulas are
/// evaluated in the window U^window, so every variable index must lie below `window`.
struct MStructure {
    AlgebraPtr algebra;
    unsigned base = 1;
    unsigned window = 1;
    std::map<std::string, MValuedSet> relations;
    /// M(P(U^window)), shared between structures with the same algebra, base and window.
    std::shared_ptr<const MCylSetAlgebra> csa;

    /// Validates relation spaces and partitions; throws InputError.
    static MStructure make(AlgebraPtr algebra, unsigned base, unsigned window,
                           std::map<std::string, MValuedSet> relations,
                           std::shared_ptr<const MCylSetAlgebra> csa = nullptr);

    Signature signature() const;
    Json to_json() const;
    /// {"algebra": name, path or inline tables, "base", "window", "relations": {name: {label: [tuples]}}}.
    /// A relation's arity is the length of its tuples.
    static MStructure from_json(const Json& j);
};

/// phi^A restricted to the window, memoized per node over the evaluator's lifetime.
class Evaluator {
public:
    explicit Evaluator(const MStructure& a) : a_(a) {}
    const MValuedSet& eval(const Formula& f);

private:
    MValuedSet atom(const Node& n) const;

    const MStructure& a_;
    std::unordered_map<Formula, MValuedSet, FormulaHash> memo_;
};

MValuedSet eval(const Formula& f, const MStructure& a);
bool is_true(const Formula& f, const MStructure& a);
/// The union of the layers in Q covers U^window.
bool is_q_true(const Formula& f, const MStructure& a, ElemMask q);
bool is_model(const std::vector<Formula>& sigma, const MStructure& a);
bool is_q_model(const std::vector<Formula>& sigma, const MStructure& a, ElemMask q);

/// Value at each point of U^(dim+extra) is the value at its first `dim` coordinates.
MValuedSet extend_window(const MValuedSet& x, unsigned extra);

/// Structures over a signature with a fixed base and window, in enumeration order: relations in
/// name order, relation i's assignment is digit i of the index in mixed radix |M|^(base^arity),
/// and within an assignment the value at point j is digit j in base |M| (point 0 least significant).
class StructureSpace {
public:
    StructureSpace(AlgebraPtr algebra, Signature sig, unsigned base, unsigned window);

    /// Total number of structures, or nullopt when it exceeds 2^63.
    std::optional<std::uint64_t> size() const noexcept { return size_; }
    MStructure at(std::uint64_t index) const;
    MStructure random(Rng& rng) const;

private:
    MStructure build(const std::vector<std::vector<ElemId>>& values) const;

    AlgebraPtr algebra_;
    Signature sig_;
    unsigned base_, window_;
    std::vector<std::pair<std::string, Space>> rels_;
    std::shared_ptr<const MCylSetAlgebra> csa_;
    std::optional<std::uint64_t> size_;
};

/// Runs `visit` over every structure if there are at most `cap`, otherwise over `cap` random
/// ones drawn with `seed`. Stops early when visit returns false. Returns the number visited.
struct EnumerationStats {
    std::uint64_t visited = 0;
    bool exhaustive = true;
};
EnumerationStats for_each_structure(const StructureSpace& space, std::uint64_t cap, std::uint64_t seed,
                                    const std::function<bool(std::uint64_t, const MStructure&)>& visit);

struct EntailBounds {
    unsigned min_base = 1;
    unsigned max_base = 2;
    /// 0 means one more than the largest variable index in the query.
    unsigned window = 0;
    /// Per base size: enumerate when the count fits, otherwise sample this many.
    std::uint64_t max_structures = 100000;
    std::uint64_t seed = kDefaultSeed;
    /// Q-entailment when set.
    std::optional<ElemMask> q;
};

struct EntailResult {
    bool countermodel_found = false;
    std::optional<MStructure> countermodel;
    std::uint64_t structures_checked = 0;
    bool exhaustive = true;  // every structure within the bounds was checked
    EntailBounds bounds;
    unsigned window = 0;

    Json to_json() const;
};

/// Bounded search for a model of sigma in which phi is not (Q-)true. A countermodel is definitive;
/// its absence only covers the searched structures. The first countermodel in enumeration order
/// (smallest base first) is returned.
EntailResult entails(const std::vector<Formula>& sigma, const Formula& phi, const Signature& sig, AlgebraPtr algebra,
                     const EntailBounds& bounds = {});

/// eval(S-chain R(v0..)) = eval(R(v_j0..)) for every index tuple j within the window, with the
/// smallest fresh indices. Throws InputError when the window has no room for them.
LawReport check_substitution_semantics(const MStructure& a, const std::string& relation);

}  // namespace mvl
