#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mvl/demorgan.hpp"
#include "mvl/json_io.hpp"
#include "mvl/rng.hpp"

namespace mvl {

enum class Op : std::uint8_t { rel, eq, konst, neg, conj, disj, exists, gamma };

struct Node;
/// Formulas are hash-consed: structurally equal formulas share one node, so == is pointer equality.
using Formula = std::shared_ptr<const Node>;

struct Node {
    Op op;
    std::string name;             // rel
    std::vector<unsigned> vars;   // rel arguments; eq: {j, k}; exists: {k}
    ElemId elem{};                // konst, gamma
    Formula lhs, rhs;             // neg/exists/gamma use lhs
    std::size_t hash = 0;

    unsigned var() const { return vars.front(); }
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return f->hash; }
};

/// Relation name -> arity. Arity 0 is allowed and behaves as a propositional atom.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::map<std::string, unsigned> relations) : rel_(std::move(relations)) {}

    bool has(const std::string& name) const { return rel_.count(name) > 0; }
    unsigned arity(const std::string& name) const;
    /// Adds the relation, or checks the arity if it is already declared. Throws InputError.
    void declare(const std::string& name, unsigned arity);
    const std::map<std::string, unsigned>& relations() const noexcept { return rel_; }

    Json to_json() const;
    static Signature from_json(const Json& j);

    bool operator==(const Signature&) const = default;

private:
    std::map<std::string, unsigned> rel_;
};

namespace fm {

Formula rel(const std::string& name, std::vector<unsigned> vars);
Formula eq(unsigned j, unsigned k);
Formula konst(ElemId p);
Formula neg(const Formula& a);
Formula conj(const Formula& a, const Formula& b);
Formula disj(const Formula& a, const Formula& b);
Formula exists(unsigned k, const Formula& a);
Formula gamma(ElemId p, const Formula& a);

// Derived forms. Generalized connectives fold left over their arguments; the empty
// disjunction is t_0 and the empty conjunction is t_1.
Formula big_or(const std::vector<Formula>& xs, const DeMorganAlgebra& m);
Formula big_and(const std::vector<Formula>& xs, const DeMorganAlgebra& m);
Formula imp(const Formula& a, const Formula& b);
Formula strong_imp(const Formula& a, const Formula& b, const DeMorganAlgebra& m);
Formula iff(const Formula& a, const Formula& b, const DeMorganAlgebra& m);
Formula forall(unsigned k, const Formula& a);
Formula big_gamma(const Formula& a, const DeMorganAlgebra& m);
/// phi^Q, Q given as a mask over element ids.
Formula q_restrict(const Formula& a, ElemMask q, const DeMorganAlgebra& m);
/// S^k_l phi = E v_k (v_k = v_l & phi).
Formula subst(unsigned k, unsigned l, const Formula& a);

}  // namespace fm

std::set<unsigned> free_vars(const Formula& f);
/// Largest variable index occurring anywhere (free or bound), or -1 when there are none.
int max_var(const Formula& f);
/// Maximal prime subformulas (relational, equality, exists-rooted) in first-occurrence order.
std::vector<Formula> prime_subformulas(const Formula& f);
bool is_prime(const Formula& f);
/// Number of nodes in the tree (shared subterms counted once per occurrence); saturates.
std::uint64_t tree_size(const Formula& f);
std::size_t dag_size(const Formula& f);

/// Replaces every occurrence of the named relation atoms (any arity) by the mapped formulas.
Formula substitute_atoms(const Formula& f, const std::map<std::string, Formula>& map);

/// Random core formula over the signature with variable indices below `window`.
Formula random_formula(const Signature& sig, const DeMorganAlgebra& m, unsigned window, unsigned depth, Rng& rng);

}  // namespace mvl
