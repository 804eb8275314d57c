#include "mvl/demorgan.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "mvl/error.hpp"

namespace mvl {

namespace {

void check_table(const std::vector<std::vector<int>>& t, const char* what, std::size_t n,
                 std::vector<std::string>& out) {
    if (t.size() != n) {
        out.push_back(std::string(what) + " table has " + std::to_string(t.size()) + " rows, expected " +
                      std::to_string(n));
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (t[i].size() != n) {
            out.push_back(std::string(what) + " row " + std::to_string(i) + " has " + std::to_string(t[i].size()) +
                          " entries, expected " + std::to_string(n));
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (t[i][j] < 0 || static_cast<std::size_t>(t[i][j]) >= n)
                out.push_back(std::string(what) + "[" + std::to_string(i) + "][" + std::to_string(j) +
                              "] = " + std::to_string(t[i][j]) + " is out of range");
        }
    }
}

// Records the first witness for each law; later witnesses of the same law are dropped.
class Recorder {
public:
    explicit Recorder(std::vector<AxiomViolation>& out) : out_(out) {}

    void check(bool holds, const char* law, std::initializer_list<unsigned> w) {
        if (holds || seen_.count(law)) return;
        seen_.insert(law);
        AxiomViolation v{law, {}};
        for (unsigned i : w) v.witness.push_back(elem(i));
        out_.push_back(std::move(v));
    }

private:
    std::vector<AxiomViolation>& out_;
    std::set<std::string> seen_;
};

// Order of report entries is fixed: axioms in numbering order, then derived laws.
const std::vector<std::string> kLawOrder = {
    "1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b", "5a", "5b", "6a", "6b", "7",
    "derived-neg-zero", "derived-neg-one", "derived-idempotent-join", "derived-idempotent-meet",
    "derived-zero-meet", "derived-one-join", "order-criteria", "order-antisymmetry", "order-transitivity"};

}  // namespace

ValidationReport DeMorganAlgebra::validate(const AlgebraTables& t) {
    ValidationReport r;
    const std::size_t n = t.elements.size();
    if (n == 0) r.malformed.push_back("carrier is empty");
    if (n > kMaxAlgebraSize)
        r.malformed.push_back("carrier has " + std::to_string(n) + " elements, at most " +
                              std::to_string(kMaxAlgebraSize) + " supported");
    {
        std::set<std::string> seen;
        for (const auto& l : t.elements) {
            if (l.empty()) r.malformed.push_back("empty element label");
            else if (!seen.insert(l).second) r.malformed.push_back("duplicate element label '" + l + "'");
        }
    }
    if (!r.malformed.empty()) return r;

    check_table(t.join, "join", n, r.malformed);
    check_table(t.meet, "meet", n, r.malformed);
    if (t.neg.size() != n)
        r.malformed.push_back("neg has " + std::to_string(t.neg.size()) + " entries, expected " + std::to_string(n));
    else
        for (std::size_t i = 0; i < n; ++i)
            if (t.neg[i] < 0 || static_cast<std::size_t>(t.neg[i]) >= n)
                r.malformed.push_back("neg[" + std::to_string(i) + "] = " + std::to_string(t.neg[i]) +
                                      " is out of range");
    auto in_range = [n](int v) { return v >= 0 && static_cast<std::size_t>(v) < n; };
    if (!in_range(t.zero)) r.malformed.push_back("zero is out of range");
    if (!in_range(t.one)) r.malformed.push_back("one is out of range");
    if (!r.malformed.empty()) return r;

    auto J = [&](unsigned a, unsigned b) { return static_cast<unsigned>(t.join[a][b]); };
    auto Mt = [&](unsigned a, unsigned b) { return static_cast<unsigned>(t.meet[a][b]); };
    auto N = [&](unsigned a) { return static_cast<unsigned>(t.neg[a]); };
    const unsigned z = static_cast<unsigned>(t.zero), o = static_cast<unsigned>(t.one);

    std::vector<AxiomViolation> found;
    Recorder rec(found);
    for (unsigned x = 0; x < n; ++x) {
        rec.check(J(x, z) == x, "4a", {x});
        rec.check(Mt(x, o) == x, "4b", {x});
        rec.check(N(N(x)) == x, "7", {x});
        rec.check(J(x, x) == x, "derived-idempotent-join", {x});
        rec.check(Mt(x, x) == x, "derived-idempotent-meet", {x});
        rec.check(Mt(z, x) == z, "derived-zero-meet", {x});
        rec.check(J(x, o) == o, "derived-one-join", {x});
        for (unsigned y = 0; y < n; ++y) {
            rec.check(J(x, y) == J(y, x), "1a", {x, y});
            rec.check(Mt(x, y) == Mt(y, x), "1b", {x, y});
            rec.check(J(x, Mt(x, y)) == x, "5a", {x, y});
            rec.check(Mt(x, J(x, y)) == x, "5b", {x, y});
            rec.check(N(J(x, y)) == Mt(N(x), N(y)), "6a", {x, y});
            rec.check(N(Mt(x, y)) == J(N(x), N(y)), "6b", {x, y});
            rec.check((Mt(x, y) == x) == (J(x, y) == y), "order-criteria", {x, y});
            rec.check(!(Mt(x, y) == x && Mt(y, x) == y) || x == y, "order-antisymmetry", {x, y});
            for (unsigned w = 0; w < n; ++w) {
                rec.check(J(x, J(y, w)) == J(J(x, y), w), "2a", {x, y, w});
                rec.check(Mt(x, Mt(y, w)) == Mt(Mt(x, y), w), "2b", {x, y, w});
                rec.check(J(x, Mt(y, w)) == Mt(J(x, y), J(x, w)), "3a", {x, y, w});
                rec.check(Mt(x, J(y, w)) == J(Mt(x, y), Mt(x, w)), "3b", {x, y, w});
                rec.check(!(Mt(x, y) == x && Mt(y, w) == y) || Mt(x, w) == x, "order-transitivity", {x, y, w});
            }
        }
    }
    rec.check(N(z) == o, "derived-neg-zero", {z});
    rec.check(N(o) == z, "derived-neg-one", {o});

    std::stable_sort(found.begin(), found.end(), [](const AxiomViolation& a, const AxiomViolation& b) {
        auto pos = [](const std::string& s) {
            return std::find(kLawOrder.begin(), kLawOrder.end(), s) - kLawOrder.begin();
        };
        return pos(a.axiom) < pos(b.axiom);
    });
    r.violations = std::move(found);
    return r;
}

DeMorganAlgebra DeMorganAlgebra::from_tables(const AlgebraTables& t) {
    ValidationReport rep = validate(t);
    if (!rep.malformed.empty()) throw InputError("malformed algebra '" + t.name + "': " + rep.malformed.front());
    if (!rep.violations.empty()) {
        const auto& v = rep.violations.front();
        std::string w;
        for (ElemId e : v.witness) w += (w.empty() ? "" : ",") + t.elements[index(e)];
        throw InputError("algebra '" + t.name + "' violates axiom " + v.axiom + " at (" + w + ")");
    }
    DeMorganAlgebra a;
    const unsigned n = static_cast<unsigned>(t.elements.size());
    a.name_ = t.name;
    a.labels_ = t.elements;
    a.join_.resize(n * n);
    a.meet_.resize(n * n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            a.join_[i * n + j] = elem(static_cast<unsigned>(t.join[i][j]));
            a.meet_[i * n + j] = elem(static_cast<unsigned>(t.meet[i][j]));
        }
    for (unsigned i = 0; i < n; ++i) a.neg_.push_back(elem(static_cast<unsigned>(t.neg[i])));
    a.zero_ = elem(static_cast<unsigned>(t.zero));
    a.one_ = elem(static_cast<unsigned>(t.one));
    a.downsets_.assign(n, 0);
    for (unsigned p = 0; p < n; ++p)
        for (unsigned q = 0; q < n; ++q)
            if (a.leq(elem(q), elem(p))) a.downsets_[p] |= ElemMask{1} << q;
    return a;
}

namespace {

// Tables of a lattice given by a leq matrix over labels; join/meet found by scanning bounds.
AlgebraTables from_order(std::string name, std::vector<std::string> labels,
                         const std::vector<std::vector<bool>>& le, std::vector<int> neg) {
    const int n = static_cast<int>(labels.size());
    AlgebraTables t;
    t.name = std::move(name);
    t.elements = std::move(labels);
    t.neg = std::move(neg);
    t.join.assign(n, std::vector<int>(n, -1));
    t.meet.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (le[a][c] && le[b][c]) {
                    bool least = true;
                    for (int d = 0; d < n; ++d)
                        if (le[a][d] && le[b][d] && !le[c][d]) least = false;
                    if (least) t.join[a][b] = c;
                }
                if (le[c][a] && le[c][b]) {
                    bool greatest = true;
                    for (int d = 0; d < n; ++d)
                        if (le[d][a] && le[d][b] && !le[d][c]) greatest = false;
                    if (greatest) t.meet[a][b] = c;
                }
            }
    t.zero = 0;
    t.one = n - 1;
    return t;
}

std::vector<std::vector<bool>> chain(int n) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) le[a][b] = a <= b;
    return le;
}

}  // namespace

DeMorganAlgebra DeMorganAlgebra::b2() { return from_tables(from_order("B2", {"0", "1"}, chain(2), {1, 0})); }

DeMorganAlgebra DeMorganAlgebra::k3() {
    return from_tables(from_order("K3", {"0", "u", "1"}, chain(3), {2, 1, 0}));
}

DeMorganAlgebra DeMorganAlgebra::four() {
    // 0 < a, b < 1 with a, b incomparable.
    std::vector<std::vector<bool>> le = {
        {true, true, true, true}, {false, true, false, true}, {false, false, true, true}, {false, false, false, true}};
    return from_tables(from_order("FOUR", {"0", "a", "b", "1"}, le, {3, 1, 2, 0}));
}

bool DeMorganAlgebra::is_builtin(std::string_view name) { return name == "B2" || name == "K3" || name == "FOUR"; }

std::shared_ptr<const DeMorganAlgebra> DeMorganAlgebra::builtin(std::string_view name) {
    static const auto b2_ = std::make_shared<const DeMorganAlgebra>(b2());
    static const auto k3_ = std::make_shared<const DeMorganAlgebra>(k3());
    static const auto four_ = std::make_shared<const DeMorganAlgebra>(four());
    if (name == "B2") return b2_;
    if (name == "K3") return k3_;
    if (name == "FOUR") return four_;
    throw InputError("unknown built-in algebra '" + std::string(name) + "'");
}

std::vector<ElemId> DeMorganAlgebra::elements() const {
    std::vector<ElemId> out;
    for (unsigned i = 0; i < size(); ++i) out.push_back(elem(i));
    return out;
}

std::optional<ElemId> DeMorganAlgebra::find(std::string_view label) const {
    for (unsigned i = 0; i < size(); ++i)
        if (labels_[i] == label) return elem(i);
    return std::nullopt;
}

ElemId DeMorganAlgebra::at(std::string_view label) const {
    if (auto e = find(label)) return *e;
    throw InputError("unknown element '" + std::string(label) + "' in algebra " + name_);
}

ElemId DeMorganAlgebra::sup(ElemMask subset) const {
    subset &= all_mask();
    if (subset == 0) throw InputError("sup of the empty set");
    return join_all(subset);
}

ElemId DeMorganAlgebra::sup(std::span<const ElemId> subset) const {
    if (subset.empty()) throw InputError("sup of the empty set");
    ElemId acc = subset.front();
    for (ElemId e : subset.subspan(1)) acc = join(acc, e);
    return acc;
}

ElemId DeMorganAlgebra::join_all(ElemMask subset) const noexcept {
    ElemId acc = zero_;
    for (ElemMask m = subset & all_mask(); m; m &= m - 1) acc = join(acc, elem(static_cast<unsigned>(std::countr_zero(m))));
    return acc;
}

ElemId DeMorganAlgebra::meet_all(ElemMask subset) const noexcept {
    ElemId acc = one_;
    for (ElemMask m = subset & all_mask(); m; m &= m - 1) acc = meet(acc, elem(static_cast<unsigned>(std::countr_zero(m))));
    return acc;
}

bool DeMorganAlgebra::covers(ElemId q, ElemId p) const noexcept {
    if (!lt(q, p)) return false;
    for (unsigned r = 0; r < size(); ++r)
        if (lt(q, elem(r)) && lt(elem(r), p)) return false;
    return true;
}

std::vector<std::vector<ElemId>> DeMorganAlgebra::level_sets() const {
    std::vector<std::vector<ElemId>> levels{{one_}};
    // Levels are bounded by the longest chain, so this terminates after at most |M| rounds.
    while (levels.size() <= size()) {
        std::vector<ElemId> next;
        for (unsigned p = 0; p < size(); ++p)
            for (ElemId r : levels.back())
                if (covers(elem(p), r)) {
                    next.push_back(elem(p));
                    break;
                }
        if (next.empty()) break;
        levels.push_back(std::move(next));
    }
    return levels;
}

AlgebraTables DeMorganAlgebra::tables() const {
    AlgebraTables t;
    const unsigned n = size();
    t.name = name_;
    t.elements = labels_;
    t.join.assign(n, std::vector<int>(n));
    t.meet.assign(n, std::vector<int>(n));
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            t.join[i][j] = static_cast<int>(index(join(elem(i), elem(j))));
            t.meet[i][j] = static_cast<int>(index(meet(elem(i), elem(j))));
        }
        t.neg.push_back(static_cast<int>(index(neg(elem(i)))));
    }
    t.zero = static_cast<int>(index(zero_));
    t.one = static_cast<int>(index(one_));
    return t;
}

bool DeMorganAlgebra::operator==(const DeMorganAlgebra& o) const {
    return labels_ == o.labels_ && join_ == o.join_ && meet_ == o.meet_ && neg_ == o.neg_ && zero_ == o.zero_ &&
           one_ == o.one_;
}

bool same_algebra(const DeMorganAlgebra& a, const DeMorganAlgebra& b) { return &a == &b || a == b; }

}  // namespace mvl
