// mvl: batch front end for the algebra, law, logic and proof modules.
// Results go to stdout as JSON; diagnostics to stderr.
//
// Exit codes: 0 ok, 1 property violated / countermodel / rejected proof,
//             2 input or usage error, 3 budget exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvl/error.hpp"
#include "mvl/json_io.hpp"
#include "mvl/laws.hpp"
#include "mvl/parser.hpp"
#include "mvl/proof.hpp"
#include "mvl/semantics.hpp"
#include "mvl/truth.hpp"

using namespace mvl;

namespace {

enum Exit { kOk = 0, kViolation = 1, kInput = 2, kBudget = 3 };

int emit(const Json& j, bool ok) {
    std::cout << j.dump(2) << '\n';
    return ok ? kOk : kViolation;
}

ElemMask parse_mask(const std::string& csv, const DeMorganAlgebra& m) {
    ElemMask q = 0;
    std::stringstream ss(csv);
    std::string lab;
    while (std::getline(ss, lab, ','))
        if (!lab.empty()) q |= bit(m.at(lab));
    if (!q) throw InputError("--q names no truth values");
    return q;
}

Json mask_labels(ElemMask q, const DeMorganAlgebra& m) {
    Json out = Json::array();
    for (ElemId e : m.elements())
        if (q & bit(e)) out.push_back(m.label(e));
    return out;
}

AlgebraPtr algebra_from_field(const Json& j) {
    if (j.is_string()) return load_algebra(j.get<std::string>());
    return std::make_shared<const DeMorganAlgebra>(DeMorganAlgebra::from_tables(algebra_tables_from_json(j)));
}

std::vector<Formula> read_sigma_file(const std::string& path, const DeMorganAlgebra& m, Signature& sig) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::vector<Formula> out;
    std::string line;
    unsigned n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            out.push_back(parse_formula(line, m, sig, {true}));
        } catch (const InputError& e) {
            throw InputError(path + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

Proof read_proof(const std::string& path, const DeMorganAlgebra& m, Signature& sig) {
    return Proof::from_json(read_json_file(path), m, sig);
}

struct LawArgs {
    std::string algebra = "K3";
    unsigned base = 2, dim = 2;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t samples = 10000;
};

void law_options(CLI::App* c, LawArgs& a) {
    c->add_option("--algebra", a.algebra, "B2, K3, FOUR or an algebra file")->capture_default_str();
    c->add_option("--base", a.base, "size of U")->capture_default_str();
    c->add_option("--dim", a.dim, "dimension d")->capture_default_str();
    c->add_option("--seed", a.seed)->capture_default_str();
    c->add_option("--samples", a.samples, "sampled instances per law")->capture_default_str();
}

Json law_header(const LawArgs& a, const DeMorganAlgebra& m) {
    return Json{{"algebra", m.name()}, {"base", a.base}, {"dim", a.dim}, {"seed", a.seed}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite De Morgan algebras, M-cylindric set algebras and M-valued first-order logic"};
    app.require_subcommand(1);

    // algebra check
    auto* alg = app.add_subcommand("algebra", "De Morgan algebra tables");
    alg->require_subcommand(1);
    auto* alg_check = alg->add_subcommand("check", "validate algebra tables");
    std::string alg_source;
    alg_check->add_option("source", alg_source, "built-in name or JSON file")->required();

    // laws
    auto* laws = app.add_subcommand("laws", "check algebraic laws in M(B)");
    laws->require_subcommand(1);
    LawArgs la;
    bool literal = false;
    std::uint64_t exhaustive_limit = std::uint64_t{1} << 16;
    auto* axioms = laws->add_subcommand("axioms", "the 31 M-CA axioms over the full cylindric set algebra");
    law_options(axioms, la);
    axioms->add_option("--exhaustive-limit", exhaustive_limit, "largest instance count run exhaustively")
        ->capture_default_str();
    axioms->add_flag("--literal", literal, "also run the literal readings of axioms 10 and 31");

    std::vector<std::string> id_algebras;
    unsigned points = 4;
    std::uint64_t trials = 1000, id_seed = kDefaultSeed;
    auto* ids = laws->add_subcommand("identities", "the two Boolean identities on random subsets");
    ids->add_option("--algebra", id_algebras, "repeatable; default B2, K3 and FOUR");
    ids->add_option("--points", points, "size of the underlying set")->capture_default_str();
    ids->add_option("--trials", trials)->capture_default_str();
    ids->add_option("--seed", id_seed)->capture_default_str();

    auto* embed = laws->add_subcommand("embed", "A embeds into M(c(A)) for A = M(B)");
    law_options(embed, la);
    auto* iso = laws->add_subcommand("iso", "c(M(B)) is isomorphic to B");
    law_options(iso, la);

    // taut
    auto* taut = app.add_subcommand("taut", "truth-table tautology check");
    std::string formula_text, algebra_name = "K3";
    std::uint64_t budget = kTautologyBudget;
    taut->add_option("formula", formula_text)->required();
    taut->add_option("--algebra", algebra_name)->capture_default_str();
    taut->add_option("--budget", budget, "maximum number of valuations")->capture_default_str();

    // eval
    auto* ev = app.add_subcommand("eval", "denotation of a formula in a structure");
    std::string structure_path, q_csv;
    ev->add_option("--structure", structure_path, "structure JSON")->required();
    ev->add_option("formula", formula_text)->required();
    ev->add_option("--q", q_csv, "comma-separated truth values for Q-truth");

    // models
    auto* models = app.add_subcommand("models", "bounded search for a countermodel to sigma |= phi");
    std::string sigma_path;
    EntailBounds eb;
    models->add_option("--sigma", sigma_path, "one formula per line; blank lines and # comments skipped");
    models->add_option("--formula", formula_text)->required();
    models->add_option("--algebra", algebra_name)->capture_default_str();
    models->add_option("--min-base", eb.min_base)->capture_default_str();
    models->add_option("--max-base", eb.max_base)->capture_default_str();
    models->add_option("--window", eb.window, "0 means one past the largest variable index")->capture_default_str();
    models->add_option("--max-structures", eb.max_structures, "per base size")->capture_default_str();
    models->add_option("--seed", eb.seed)->capture_default_str();
    models->add_option("--q", q_csv, "Q-entailment over these truth values");

    // proof
    auto* proof = app.add_subcommand("proof", "proof checking and derived proofs");
    proof->require_subcommand(1);
    auto* pcheck = proof->add_subcommand("check", "check every line of a proof");
    std::string proof_path;
    std::optional<std::string> proof_algebra;
    pcheck->add_option("proof", proof_path, "proof JSON")->required();
    pcheck->add_option("--algebra", proof_algebra, "used when the proof has no 'algebra' field");
    pcheck->add_option("--budget", budget, "truth-table budget per tautology line")->capture_default_str();

    auto* derive = proof->add_subcommand("derive", "emit a derived proof");
    std::string which, phi_text, theta_text, with_phi_path, gamma_path;
    std::vector<std::string> conjuncts;
    unsigned k = 0;
    derive->add_option("which", which, "a, b, c, d, e, f or deduction")
        ->required()
        ->check(CLI::IsMember({"a", "b", "c", "d", "e", "f", "deduction"}));
    derive->add_option("--algebra", algebra_name)->capture_default_str();
    derive->add_option("--phi", phi_text);
    derive->add_option("--theta", theta_text);
    derive->add_option("--k", k, "quantified variable index")->capture_default_str();
    derive->add_option("--conjunct", conjuncts, "repeatable, for f");
    derive->add_option("--with-phi", with_phi_path, "deduction: proof of sigma + {phi} |- theta");
    derive->add_option("--gamma-proof", gamma_path, "deduction: proof of sigma |- G phi");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (*alg_check) {
            AlgebraTables t = DeMorganAlgebra::is_builtin(alg_source)
                                  ? DeMorganAlgebra::builtin(alg_source)->tables()
                                  : algebra_tables_from_json(read_json_file(alg_source));
            ValidationReport r = DeMorganAlgebra::validate(t);
            Json j = validation_report_to_json(r, t);
            j["name"] = t.name;
            return emit(j, r.ok());
        }

        if (*axioms || *embed || *iso) {
            AlgebraPtr m = load_algebra(la.algebra);
            MCylSetAlgebra a(m, Space(la.base, la.dim));
            Json out = law_header(la, *m);
            bool ok = true;
            if (*axioms) {
                LawBudget b{exhaustive_limit, la.samples, la.seed};
                Json reps = Json::array();
                for (const auto& r : check_mca_axioms(a, b)) {
                    ok = ok && r.holds;
                    reps.push_back(r.to_json());
                }
                out["reports"] = reps;
                if (literal) {
                    Json lit = Json::array();
                    for (const auto& r : check_literal_readings(MCAOps::of(a), Carrier::of(a), b))
                        lit.push_back(r.to_json());
                    out["literal_readings"] = lit;
                }
            } else {
                LawReport r = *embed ? check_embed(a, la.samples, la.seed) : check_iso(a, la.samples, la.seed);
                ok = r.holds;
                out["reports"] = Json::array({r.to_json()});
            }
            out["holds"] = ok;
            return emit(out, ok);
        }

        if (*ids) {
            if (id_algebras.empty()) id_algebras = {"B2", "K3", "FOUR"};
            Json reps = Json::array();
            bool ok = true;
            for (const auto& name : id_algebras) {
                AlgebraPtr m = load_algebra(name);
                for (const auto& r : {check_boolean_identity_1(*m, points, trials, id_seed),
                                      check_boolean_identity_2(*m, points, trials, id_seed)}) {
                    ok = ok && r.holds;
                    Json j = r.to_json();
                    j["algebra"] = m->name();
                    reps.push_back(j);
                }
            }
            return emit(Json{{"points", points}, {"trials", trials}, {"seed", id_seed}, {"reports", reps}, {"holds", ok}},
                        ok);
        }

        if (*taut) {
            AlgebraPtr m = load_algebra(algebra_name);
            Signature sig;
            Formula f = parse_formula(formula_text, *m, sig, {true});
            TautologyResult r = is_tautology(f, *m, budget);
            Json out{{"algebra", m->name()},
                     {"formula", print_formula(f, *m)},
                     {"verdict", r.tautology ? "tautology" : "not-a-tautology"},
                     {"valuations", r.valuations}};
            if (!r.tautology) {
                Json cv = Json::object();
                for (const auto& [p, e] : r.witness) cv[print_formula(p, *m)] = m->label(e);
                out["counter_valuation"] = cv;
                out["value"] = m->label(r.witness_value);
            }
            return emit(out, r.tautology);
        }

        if (*ev) {
            MStructure a = MStructure::from_json(read_json_file(structure_path));
            Formula f = parse_formula(formula_text, *a.algebra, a.signature());
            MValuedSet x = eval(f, a);
            Json out{{"formula", print_formula(f, *a.algebra)},
                     {"window", a.window},
                     {"denotation", layers_to_json(x)},
                     {"true", is_true(f, a)}};
            if (!q_csv.empty()) {
                ElemMask q = parse_mask(q_csv, *a.algebra);
                out["q"] = mask_labels(q, *a.algebra);
                out["q_true"] = is_q_true(f, a, q);
            }
            return emit(out, true);
        }

        if (*models) {
            AlgebraPtr m = load_algebra(algebra_name);
            Signature sig;
            std::vector<Formula> sigma;
            if (!sigma_path.empty()) sigma = read_sigma_file(sigma_path, *m, sig);
            Formula phi = parse_formula(formula_text, *m, sig, {true});
            if (!q_csv.empty()) eb.q = parse_mask(q_csv, *m);
            EntailResult r = entails(sigma, phi, sig, m, eb);
            Json out = r.to_json();
            out["algebra"] = m->name();
            out["formula"] = print_formula(phi, *m);
            if (eb.q) out["q"] = mask_labels(*eb.q, *m);
            return emit(out, !r.countermodel_found);
        }

        if (*pcheck) {
            Json j = read_json_file(proof_path);
            AlgebraPtr m;
            if (j.is_object() && j.contains("algebra"))
                m = algebra_from_field(j.at("algebra"));
            else if (proof_algebra)
                m = load_algebra(*proof_algebra);
            else
                throw InputError("proof has no 'algebra' field and --algebra was not given");
            Signature sig;
            Proof p = Proof::from_json(j, *m, sig);
            ProofVerdict v = check_proof(p, *m, budget);
            Json out = v.to_json();
            out["algebra"] = m->name();
            std::cout << out.dump(2) << '\n';
            if (v.accepted) return kOk;
            return v.budget_exceeded() ? kBudget : kViolation;
        }

        if (*derive) {
            AlgebraPtr m = load_algebra(algebra_name);
            Signature sig;
            auto parse_opt = [&](const std::string& s) { return s.empty() ? Formula{} : parse_formula(s, *m, sig, {true}); };
            Proof p;
            if (which == "deduction") {
                if (phi_text.empty() || with_phi_path.empty() || gamma_path.empty())
                    throw InputError("deduction needs --phi, --with-phi and --gamma-proof");
                Formula phi = parse_opt(phi_text);
                p = deduction_transform(read_proof(with_phi_path, *m, sig), read_proof(gamma_path, *m, sig), phi, *m);
            } else {
                DerivedParams dp;
                dp.phi = parse_opt(phi_text);
                dp.theta = parse_opt(theta_text);
                dp.k = k;
                for (const auto& c : conjuncts) dp.conjuncts.push_back(parse_opt(c));
                p = build_derived(which[0], dp, *m);
            }
            Json out = p.to_json(*m);
            out["algebra"] = m->name();
            return emit(out, true);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "mvl: budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const Error& e) {
        std::cerr << "mvl: " << e.what() << '\n';
        return kInput;
    } catch (const Json::exception& e) {
        std::cerr << "mvl: bad JSON: " << e.what() << '\n';
        return kInput;
    }
    return kInput;
}
