#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mvl/formula.hpp"

namespace mvl {

/// Truth values of prime formulas.
using Valuation = std::unordered_map<Formula, ElemId, FormulaHash>;

/// T(phi, v). Throws InputError if v misses a prime of phi.
ElemId t_eval(const Formula& f, const Valuation& v, const DeMorganAlgebra& m);

/// T(G phi, v) and T(theta <=> phi, v).
ElemId crispness_value(const Formula& f, const Valuation& v, const DeMorganAlgebra& m);
ElemId iff_value(const Formula& a, const Formula& b, const Valuation& v, const DeMorganAlgebra& m);

/// phi flattened to a straight-line program over its primes, for repeated evaluation.
class TruthProgram {
public:
    TruthProgram(const Formula& f, const DeMorganAlgebra& m);

    const std::vector<Formula>& primes() const noexcept { return primes_; }
    /// values[i] is the value of primes()[i].
    ElemId run(const std::vector<ElemId>& values) const;

private:
    struct Step {
        Op op;
        ElemId elem;
        std::uint32_t a, b;
    };
    const DeMorganAlgebra& m_;
    std::vector<Formula> primes_;
    std::vector<Step> steps_;
};

enum class EnumerationOrder { first_prime_slowest, first_prime_fastest };

constexpr std::uint64_t kTautologyBudget = 10'000'000;

struct TautologyResult {
    bool tautology = true;
    std::uint64_t valuations = 0;
    /// First falsifying valuation in enumeration order, as (prime, value) in prime order.
    std::vector<std::pair<Formula, ElemId>> witness;
    ElemId witness_value{};

    Json to_json(const DeMorganAlgebra& m) const;
};

/// Exhaustive over M^primes(phi). Throws BudgetExceeded when that exceeds `budget`.
TautologyResult is_tautology(const Formula& f, const DeMorganAlgebra& m, std::uint64_t budget = kTautologyBudget,
                             EnumerationOrder order = EnumerationOrder::first_prime_slowest);

}  // namespace mvl
