#pragma once

#include <string>
#include <string_view>

#include "mvl/formula.hpp"

namespace mvl {

struct ParseOptions {
    /// Undeclared relations are added to the signature with the arity they are used at.
    bool declare_relations = false;
};

/// Text grammar:
///   v<N>  R(v0,...)  R  v<j> = v<k>  t[label]  ~phi  (phi & psi)  (phi | psi)
///   E v<k> . phi  g[label] phi
/// and the derived forms, expanded while parsing:
///   (phi -> psi)  (phi => psi)  (phi <=> psi)  A v<k> . phi  G phi  Q[l1,l2,...] phi  S[k,l] phi
/// Throws ParseError (with a 0-based character offset) or InputError for signature clashes.
Formula parse_formula(std::string_view text, const DeMorganAlgebra& m, Signature& sig, ParseOptions opts = {});
/// Parses against a fixed signature.
Formula parse_formula(std::string_view text, const DeMorganAlgebra& m, const Signature& sig);

/// Core syntax only; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f, const DeMorganAlgebra& m);

}  // namespace mvl
