#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mvl/json_io.hpp"
#include "mvl/mvalued_set.hpp"
#include "mvl/rng.hpp"

namespace mvl {

enum class LawMode { exhaustive, sampled };

struct LawReport {
    std::string law;
    LawMode mode = LawMode::exhaustive;
    std::uint64_t instances = 0;  // instantiations evaluated
    std::uint64_t seed = 0;       // meaningful for sampled mode
    bool holds = true;
    Json witness;                 // first violating instantiation, null when the law holds
    std::string note;

    Json to_json() const;
};

/// The operations of an M-CA over MValuedSet carriers. Built from MCylSetAlgebra by default;
/// tests replace individual members to confirm that broken operations are caught.
struct MCAOps {
    AlgebraPtr algebra;
    Space space;
    std::function<MValuedSet(const MValuedSet&, const MValuedSet&)> join;
    std::function<MValuedSet(const MValuedSet&, const MValuedSet&)> meet;
    std::function<MValuedSet(const MValuedSet&)> neg;
    std::function<MValuedSet(ElemId)> unit;
    std::function<MValuedSet(unsigned, const MValuedSet&)> cyl;
    std::function<MValuedSet(unsigned, unsigned)> diag;
    std::function<MValuedSet(ElemId, const MValuedSet&)> delta;

    static MCAOps of(const MCylSetAlgebra& a);
};

struct Carrier {
    std::uint64_t size = 0;
    std::function<MValuedSet(std::uint64_t)> element;

    static Carrier of(const MCylSetAlgebra& a);
};

struct LawBudget {
    /// A law with element arity n runs exhaustively when size^n fits here (arity <= 1 always does).
    std::uint64_t exhaustive_limit = std::uint64_t{1} << 16;
    std::uint64_t samples = 10000;
    std::uint64_t seed = kDefaultSeed;
};

/// Axioms 1-31 of M-cylindric algebras, one report each, in numbering order. Axiom 10 is
/// instantiated with k outside {l, m}; Axiom 31 uses the product over q in A.
std::vector<LawReport> check_mca_axioms(const MCAOps& ops, const Carrier& carrier, const LawBudget& budget = {});
std::vector<LawReport> check_mca_axioms(const MCylSetAlgebra& a, const LawBudget& budget = {});

/// Axiom 31 and Axiom 10 in their unrestricted readings (product over all q in M; any k). These are
/// diagnostics outside the 31 reports; in M(B) both readings fail.
std::vector<LawReport> check_literal_readings(const MCAOps& ops, const Carrier& carrier, const LawBudget& budget = {});

/// Re-evaluates a counterexample recorded in a report; true iff the violation reproduces.
bool witness_reproduces(const MCAOps& ops, const LawReport& report);

/// V_r = union over sup A = r of the meet of U_q (q in A), minus the same union over sup A > r.
std::vector<PointSet> sup_formula(const MCylOpsTable& table, const std::vector<PointSet>& u);

std::vector<PointSet> boolean_identity_1_lhs(const DeMorganAlgebra& m, const std::vector<PointSet>& u,
                                             const std::vector<PointSet>& w);
std::vector<PointSet> boolean_identity_1_rhs(const DeMorganAlgebra& m, const std::vector<PointSet>& u,
                                             const std::vector<PointSet>& w);
std::vector<PointSet> boolean_identity_2_lhs(const DeMorganAlgebra& m, const std::vector<PointSet>& y);
std::vector<PointSet> boolean_identity_2_rhs(const DeMorganAlgebra& m, const std::vector<PointSet>& y);

/// Random trials over subsets of an n-point set; W is drawn as a partition in identity 1.
LawReport check_boolean_identity_1(const DeMorganAlgebra& m, unsigned points, std::uint64_t trials,
                                   std::uint64_t seed = kDefaultSeed);
LawReport check_boolean_identity_2(const DeMorganAlgebra& m, unsigned points, std::uint64_t trials,
                                   std::uint64_t seed = kDefaultSeed);

/// {delta_1 x : x in A} with A's operations restricted to it.
struct CAlgebraView {
    std::vector<MValuedSet> carrier;  // in first-seen enumeration order
    bool closed = true;
    Json closure_failure;
};

CAlgebraView extract_c(const MCylSetAlgebra& a);

/// a -> (p -> delta_p a) is an injective homomorphism from A into M(C(A)).
LawReport check_embed(const MCylSetAlgebra& a, std::uint64_t samples = 10000, std::uint64_t seed = kDefaultSeed);
/// a -> delta_1 g(a), with g(a) = (layer 1: a, layer 0: -a), is an isomorphism from B onto C(M(B)).
LawReport check_iso(const MCylSetAlgebra& a, std::uint64_t samples = 10000, std::uint64_t seed = kDefaultSeed);

}  // namespace mvl
