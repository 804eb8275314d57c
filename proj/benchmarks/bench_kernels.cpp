#include <benchmark/benchmark.h>

#include "mvl/catalog.hpp"
#include "mvl/parser.hpp"
#include "mvl/proof.hpp"
#include "mvl/semantics.hpp"
#include "mvl/truth.hpp"

using namespace mvl;

namespace {

const char* kNames[] = {"B2", "K3", "FOUR"};

// range(0): algebra index, range(1): base size; dim 2 throughout.
template <bool Witness>
void BM_Cylindrification(benchmark::State& st) {
    MCylSetAlgebra a(DeMorganAlgebra::builtin(kNames[st.range(0)]), Space(static_cast<unsigned>(st.range(1)), 2));
    Rng rng(kDefaultSeed);
    std::vector<MValuedSet> xs;
    for (int i = 0; i < 64; ++i) xs.push_back(a.random_element(rng));
    std::size_t i = 0;
    for (auto _ : st) {
        const auto& x = xs[i++ % xs.size()];
        benchmark::DoNotOptimize(Witness ? a.ecyl(0, x) : a.cyl(0, x));
    }
    st.SetLabel(kNames[st.range(0)]);
}
BENCHMARK(BM_Cylindrification<false>)->Name("cyl")->ArgsProduct({{0, 1, 2}, {2, 3, 4}});
BENCHMARK(BM_Cylindrification<true>)->Name("ecyl")->ArgsProduct({{0, 1, 2}, {2, 3, 4}});

void BM_TautologyCatalog(benchmark::State& st) {
    const auto& m = *DeMorganAlgebra::builtin(kNames[st.range(0)]);
    const auto entries = tautology_instances(atom_metavariables(), m);
    for (auto _ : st)
        for (const auto& e : entries) benchmark::DoNotOptimize(is_tautology(e.formula, m).tautology);
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * entries.size()));
    st.SetLabel(kNames[st.range(0)]);
}
BENCHMARK(BM_TautologyCatalog)->DenseRange(0, 2);

// Strong implication between two formulas over n atoms: |M|^n valuations.
void BM_TautologyAtoms(benchmark::State& st) {
    const auto& m = *DeMorganAlgebra::builtin("FOUR");
    const auto n = static_cast<unsigned>(st.range(0));
    std::vector<Formula> atoms;
    for (unsigned i = 0; i < n; ++i) atoms.push_back(fm::rel("P" + std::to_string(i), {}));
    const auto f = fm::strong_imp(fm::big_and(atoms, m), fm::big_or(atoms, m), m);
    for (auto _ : st) benchmark::DoNotOptimize(is_tautology(f, m).tautology);
}
BENCHMARK(BM_TautologyAtoms)->DenseRange(2, 8, 2);

// Evaluation of random depth-5 formulas; range(0) is the base size, window 3.
void BM_Eval(benchmark::State& st) {
    const auto m = DeMorganAlgebra::builtin("K3");
    const Signature sig({{"R", 1}, {"B", 2}});
    Rng rng(kDefaultSeed);
    auto a = StructureSpace(m, sig, static_cast<unsigned>(st.range(0)), 3).random(rng);
    std::vector<Formula> fs;
    for (int i = 0; i < 32; ++i) fs.push_back(random_formula(sig, *m, 3, 5, rng));
    std::size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(eval(fs[i++ % fs.size()], a));
}
BENCHMARK(BM_Eval)->DenseRange(2, 5);

void BM_CheckDerivedProof(benchmark::State& st) {
    const auto& m = *DeMorganAlgebra::builtin(kNames[st.range(0)]);
    const Signature sig({{"R", 1}, {"B", 2}});
    DerivedParams a;
    a.phi = parse_formula("B(v0,v1)", m, sig);
    a.theta = parse_formula("(R(v0) | R(v1))", m, sig);
    a.k = 1;
    const auto p = build_derived('d', a, m);
    for (auto _ : st) benchmark::DoNotOptimize(check_proof(p, m).accepted);
    st.SetLabel(kNames[st.range(0)]);
}
BENCHMARK(BM_CheckDerivedProof)->DenseRange(0, 2);

}  // namespace

BENCHMARK_MAIN();
