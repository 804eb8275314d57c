#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvl/formula.hpp"
#include "mvl/truth.hpp"

namespace mvl {

enum class Rule { hypothesis, tautology, validity, mp, gamma, exists };

const char* rule_name(Rule r);
Rule rule_from_name(const std::string& name);

/// Line references are 0-based indices of earlier lines.
///   hypothesis {i}   the i-th member of sigma
///   tautology  {}
///   validity   {n}   schema 1..14
///   mp         {j,k} line j is (line k -> this line)
///   gamma      {j}   this line is G(line j)
///   exists     {j,k} line j is (theta => phi), this line is (E v_k theta => phi), k not free in phi
struct Justification {
    Rule rule = Rule::tautology;
    std::vector<unsigned> args;

    bool operator==(const Justification&) const = default;
};

struct ProofLine {
    Formula formula;
    Justification by;
};

struct Proof {
    std::vector<Formula> sigma;
    std::vector<ProofLine> lines;

    /// Last line; throws InputError for an empty proof.
    const Formula& conclusion() const;

    Json to_json(const DeMorganAlgebra& m) const;
    /// {"sigma": [text], "lines": [{"formula": text, "by": {"rule": name, "args": [...]}}]}.
    /// Relations are declared in `sig` as they are first used.
    static Proof from_json(const Json& j, const DeMorganAlgebra& m, Signature& sig);
};

struct LineVerdict {
    bool ok = true;
    bool budget_exceeded = false;  // tautology line too large to check
    std::string reason;
};

struct ProofVerdict {
    bool accepted = true;
    std::optional<std::size_t> first_failure;
    std::vector<LineVerdict> lines;

    bool budget_exceeded() const { return first_failure && lines[*first_failure].budget_exceeded; }
    Json to_json() const;
};

/// Checks every line against its justification; the proof is accepted when all lines pass.
ProofVerdict check_proof(const Proof& p, const DeMorganAlgebra& m, std::uint64_t tautology_budget = kTautologyBudget);

/// Parameters of the derived proofs. Premises (the "if Sigma |- ..." parts) are taken from
/// `premises` when given, each a proof of the premise from the same sigma, otherwise they
/// become hypotheses.
struct DerivedParams {
    Formula phi, theta;
    unsigned k = 0;
    std::vector<Formula> conjuncts;  // (f)
    std::vector<Proof> premises;
};

/// Theorems (a)-(f):
///   a  |- phi => E v_k phi
///   b  Sigma |- A v_k phi  gives  Sigma |- phi
///   c  Sigma |- phi => theta  gives  Sigma |- E v_k phi => E v_k theta
///   d  Sigma |- phi <=> theta  gives  Sigma |- E v_k phi <=> E v_k theta
///   e  k not free in phi:  |- E v_k phi <=> phi
///   f  Sigma |- theta_i for each i  gives  Sigma |- the conjunction of the theta_i
Proof build_derived(char id, const DerivedParams& a, const DeMorganAlgebra& m);

/// From a proof of Sigma u {phi} |- theta and a proof of Sigma |- G phi, a proof of
/// Sigma |- phi -> theta. phi must be a sentence; both inputs must check.
Proof deduction_transform(const Proof& with_phi, const Proof& gamma_phi, const Formula& phi, const DeMorganAlgebra& m);

/// (Sigma^Q, phi^Q): a proof of the lifted goal certifies Sigma |-_Q phi.
std::pair<std::vector<Formula>, Formula> q_lift(const std::vector<Formula>& sigma, const Formula& phi, ElemMask q,
                                                const DeMorganAlgebra& m);

}  // namespace mvl
