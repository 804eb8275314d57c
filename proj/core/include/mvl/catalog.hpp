#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvl/formula.hpp"

namespace mvl {

/// Inverse of the derived-form builders: recover the operands of a desugared tree, or nullopt.
namespace match {
std::optional<std::pair<Formula, Formula>> imp(const Formula& f);
std::optional<std::pair<Formula, Formula>> strong_imp(const Formula& f, const DeMorganAlgebra& m);
std::optional<std::pair<Formula, Formula>> iff(const Formula& f, const DeMorganAlgebra& m);
std::optional<Formula> big_gamma(const Formula& f, const DeMorganAlgebra& m);
/// forall v_k phi, returned as (k, phi).
std::optional<std::pair<unsigned, Formula>> forall(const Formula& f);
/// S^k_l phi, returned as (k, l, phi).
std::optional<std::tuple<unsigned, unsigned, Formula>> subst(const Formula& f);
}  // namespace match

/// Metavariables and parameters of the tautology schemas.
struct TautologyParams {
    Formula phi, theta, psi, chi, theta1, theta2, psi1, psi2;
    ElemId p{}, q{};
    ElemMask qset = 0;
};

struct CatalogEntry {
    std::string id;  // schema number plus any parameter instantiation, e.g. "27[p=u]"
    Formula formula;
};

constexpr unsigned kTautologyCount = 51;
constexpr unsigned kValidityCount = 14;

/// One instance of tautology schema `n` (1..51). Schemas with side conditions on p, q or Q
/// throw InputError when the parameters violate them.
Formula tautology(unsigned n, const TautologyParams& a, const DeMorganAlgebra& m);
/// Every parameter instance of every schema over m, for the given metavariables.
std::vector<CatalogEntry> tautology_instances(const TautologyParams& metas, const DeMorganAlgebra& m);
/// Metavariables as distinct 0-ary relation atoms named phi, theta, psi, chi, theta1, ...
TautologyParams atom_metavariables();

struct ValidityParams {
    unsigned k = 0, l = 0, m = 0;
    ElemId p{};
    Formula phi, theta;
    // Schema 14: the relation, its arity-many argument indices j and the fresh indices k.
    std::string relation;
    std::vector<unsigned> js, ks;
};

/// Instance of validity schema `n` (1..14); side conditions are checked (InputError).
Formula validity(unsigned n, const ValidityParams& a, const DeMorganAlgebra& m);
/// All instances with variable indices below `window`; schema 14 uses the given relation.
std::vector<CatalogEntry> validity_instances(const Formula& phi, const Formula& theta, const std::string& relation,
                                             unsigned arity, unsigned window, const DeMorganAlgebra& m);
/// Smallest fresh indices for schema 14, or nullopt if they do not fit below `window`.
std::optional<std::vector<unsigned>> fresh_indices(const std::vector<unsigned>& js, unsigned window);

/// Recognizes an instance of validity schema `n`; returns the bindings when f matches.
std::optional<ValidityParams> match_validity(unsigned n, const Formula& f, const DeMorganAlgebra& m);

}  // namespace mvl
