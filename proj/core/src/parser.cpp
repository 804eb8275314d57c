#include "mvl/parser.hpp"

#include <cctype>
#include <charconv>
#include <functional>

#include "mvl/error.hpp"

namespace mvl {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_var_name(std::string_view s) {
    if (s.size() < 2 || s[0] != 'v') return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

bool is_reserved(std::string_view s) {
    return s == "E" || s == "A" || s == "G" || s == "Q" || s == "S" || s == "g" || s == "t" || is_var_name(s);
}

class Parser {
public:
    Parser(std::string_view text, const DeMorganAlgebra& m, Signature& sig, ParseOptions opts)
        : s_(text), m_(m), sig_(sig), opts_(opts) {}

    Formula run() {
        Formula f = formula();
        ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

    void ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(std::string_view tok) {
        ws();
        if (s_.substr(pos_, tok.size()) != tok) return false;
        pos_ += tok.size();
        return true;
    }

    void expect(std::string_view tok) {
        if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
    }

    std::string ident() {
        ws();
        if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected a name");
        const std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    unsigned number() {
        ws();
        unsigned v = 0;
        auto [p, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc() || p == s_.data() + pos_) fail("expected a natural number");
        pos_ = static_cast<std::size_t>(p - s_.data());
        return v;
    }

    unsigned variable() {
        ws();
        const std::size_t start = pos_;
        const std::string name = ident();
        if (!is_var_name(name)) {
            pos_ = start;
            fail("expected a variable v<N>");
        }
        unsigned v = 0;
        auto [p, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), v);
        if (ec != std::errc()) {
            pos_ = start;
            fail("variable index out of range");
        }
        return v;
    }

    // Index inside S[...]: a bare number or a variable.
    unsigned index_arg() {
        ws();
        if (pos_ < s_.size() && s_[pos_] == 'v') return variable();
        return number();
    }

    ElemId label() {
        ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ']' && s_[pos_] != ',') ++pos_;
        std::string_view raw = s_.substr(start, pos_ - start);
        while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
        auto e = m_.find(raw);
        if (!e) {
            pos_ = start;
            fail("unknown element label '" + std::string(raw) + "' for algebra " + m_.name());
        }
        return *e;
    }

    Formula formula() {
        ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '~') {
            ++pos_;
            return fm::neg(formula());
        }
        if (c == '(') {
            ++pos_;
            Formula a = formula();
            if (eat(")")) return a;
            ws();
            const std::size_t op_pos = pos_;
            std::string op;
            for (std::string_view t : {"<=>", "->", "=>", "&", "|"})
                if (eat(t)) {
                    op = t;
                    break;
                }
            if (op.empty()) fail("expected a binary connective or ')'");
            Formula b = formula();
            expect(")");
            if (op == "&") return fm::conj(a, b);
            if (op == "|") return fm::disj(a, b);
            if (op == "->") return fm::imp(a, b);
            if (op == "=>") return fm::strong_imp(a, b, m_);
            if (op == "<=>") return fm::iff(a, b, m_);
            pos_ = op_pos;
            fail("unreachable connective");
        }
        if (!ident_start(c)) fail(std::string("unexpected character '") + c + "'");
        const std::size_t start = pos_;
        const std::string name = ident();
        if (name == "E" || name == "A") {
            const unsigned k = variable();
            expect(".");
            Formula body = formula();
            return name == "E" ? fm::exists(k, body) : fm::forall(k, body);
        }
        if (name == "G") return fm::big_gamma(formula(), m_);
        if (name == "g" || name == "t") {
            expect("[");
            const ElemId p = label();
            expect("]");
            return name == "t" ? fm::konst(p) : fm::gamma(p, formula());
        }
        if (name == "Q") {
            expect("[");
            ElemMask q = 0;
            if (!eat("]")) {
                do q |= bit(label());
                while (eat(","));
                expect("]");
            }
            return fm::q_restrict(formula(), q, m_);
        }
        if (name == "S") {
            expect("[");
            const unsigned k = index_arg();
            expect(",");
            const unsigned l = index_arg();
            expect("]");
            return fm::subst(k, l, formula());
        }
        if (is_var_name(name)) {
            pos_ = start;
            const unsigned j = variable();
            ws();
            if (s_.substr(pos_, 2) == "=>" || !eat("=")) fail("expected '=' after a variable");
            return fm::eq(j, variable());
        }
        std::vector<unsigned> vars;
        if (eat("(")) {
            if (!eat(")")) {
                do vars.push_back(variable());
                while (eat(","));
                expect(")");
            }
        }
        if (sig_.has(name)) {
            if (sig_.arity(name) != vars.size()) {
                pos_ = start;
                fail("relation '" + name + "' has arity " + std::to_string(sig_.arity(name)) + ", used with " +
                     std::to_string(vars.size()));
            }
        } else if (opts_.declare_relations) {
            sig_.declare(name, static_cast<unsigned>(vars.size()));
        } else {
            pos_ = start;
            fail("unknown relation '" + name + "'");
        }
        return fm::rel(name, std::move(vars));
    }

    std::string_view s_;
    const DeMorganAlgebra& m_;
    Signature& sig_;
    ParseOptions opts_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const DeMorganAlgebra& m, Signature& sig, ParseOptions opts) {
    return Parser(text, m, sig, opts).run();
}

Formula parse_formula(std::string_view text, const DeMorganAlgebra& m, const Signature& sig) {
    Signature copy = sig;
    return Parser(text, m, copy, ParseOptions{}).run();
}

std::string print_formula(const Formula& root, const DeMorganAlgebra& m) {
    std::string out;
    std::function<void(const Formula&)> go = [&](const Formula& f) {
        switch (f->op) {
            case Op::rel:
                if (is_reserved(f->name)) throw InputError("relation name '" + f->name + "' is reserved");
                out += f->name;
                if (!f->vars.empty()) {
                    out += '(';
                    for (std::size_t i = 0; i < f->vars.size(); ++i) {
                        if (i) out += ',';
                        out += 'v' + std::to_string(f->vars[i]);
                    }
                    out += ')';
                }
                break;
            case Op::eq: out += 'v' + std::to_string(f->vars[0]) + " = v" + std::to_string(f->vars[1]); break;
            case Op::konst: out += "t[" + m.label(f->elem) + ']'; break;
            case Op::neg:
                out += '~';
                go(f->lhs);
                break;
            case Op::conj:
            case Op::disj:
                out += '(';
                go(f->lhs);
                out += f->op == Op::conj ? " & " : " | ";
                go(f->rhs);
                out += ')';
                break;
            case Op::exists:
                out += "E v" + std::to_string(f->var()) + " . ";
                go(f->lhs);
                break;
            case Op::gamma:
                out += "g[" + m.label(f->elem) + "] ";
                go(f->lhs);
                break;
        }
    };
    go(root);
    return out;
}

}  // namespace mvl
