#pragma once

// Relative TRSs (main rules R, base rules R=) and the TPDB-style .trs reader/printer.

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "term.hpp"

namespace reladp {

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

using Signature = std::map<std::string, std::size_t>;

struct RelativeTrs {
    Signature signature;
    std::vector<std::string> variables;  // declared in (VAR ...), declaration order
    std::vector<Rule> main;
    std::vector<Rule> base;
    std::set<std::string> defined;
    std::set<std::string> constructors;

    /// Recomputes signature, defined and constructor symbols from the rules.
    void refresh() {
        signature.clear();
        auto add = [&](const Term& t, auto&& self) -> void {
            if (t.is_var()) return;
            signature.emplace(t.name(), t.arity());
            for (const auto& a : t.args()) self(a, self);
        };
        defined.clear();
        for (const auto* rules : {&main, &base}) {
            for (const auto& r : *rules) {
                add(r.lhs, add);
                add(r.rhs, add);
                defined.insert(r.lhs.name());
            }
        }
        constructors.clear();
        for (const auto& [f, n] : signature) {
            if (!defined.count(f)) constructors.insert(f);
        }
    }

    static RelativeTrs from_rules(std::vector<Rule> main, std::vector<Rule> base,
                                  std::vector<std::string> variables = {}) {
        RelativeTrs trs;
        trs.main = std::move(main);
        trs.base = std::move(base);
        if (variables.empty()) {
            std::set<std::string> seen;
            for (const auto* rules : {&trs.main, &trs.base}) {
                for (const auto& r : *rules) {
                    for (const auto& x : reladp::variables(r.lhs)) {
                        if (seen.insert(x).second) variables.push_back(x);
                    }
                }
            }
        }
        trs.variables = std::move(variables);
        trs.refresh();
        return trs;
    }
};

/// Roots of all left-hand sides of the given rules.
inline std::set<std::string> lhs_roots(const std::vector<Rule>& rules) {
    std::set<std::string> out;
    for (const auto& r : rules) out.insert(r.lhs.name());
    return out;
}

inline std::set<std::string> defined_symbols(const RelativeTrs& trs) {
    std::set<std::string> out = lhs_roots(trs.main);
    for (const auto& r : trs.base) out.insert(r.lhs.name());
    return out;
}

/// True iff no defined symbol of `main` occurs in a right-hand side of `base`.
inline bool dominates(const std::vector<Rule>& main, const std::vector<Rule>& base) {
    auto roots = lhs_roots(main);
    for (const auto& r : base) {
        if (contains_symbol(r.rhs, roots)) return false;
    }
    return true;
}

inline bool is_non_duplicating(const std::vector<Rule>& rules) {
    for (const auto& r : rules) {
        if (is_duplicating(r)) return false;
    }
    return true;
}

namespace detail {

class TrsLexer {
public:
    enum class Kind { LParen, RParen, Comma, Arrow, ArrowEq, Ident, End };
    struct Token {
        Kind kind;
        std::string text;
        std::size_t line;
        std::size_t column;
    };

    explicit TrsLexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_space();
        Token tok{Kind::End, "", line_, column_};
        if (pos_ >= text_.size()) return tok;
        char c = text_[pos_];
        if (c == '(') return single(Kind::LParen);
        if (c == ')') return single(Kind::RParen);
        if (c == ',') return single(Kind::Comma);
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            if (pos_ + 2 < text_.size() && text_[pos_ + 2] == '=') {
                advance(3);
                tok.kind = Kind::ArrowEq;
                tok.text = "->=";
            } else {
                advance(2);
                tok.kind = Kind::Arrow;
                tok.text = "->";
            }
            return tok;
        }
        if (is_ident_char(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance(1);
            tok.kind = Kind::Ident;
            tok.text = text_.substr(start, pos_ - start);
            return tok;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
    }

    Token peek() {
        auto saved = std::tuple{pos_, line_, column_};
        Token t = next();
        std::tie(pos_, line_, column_) = saved;
        return t;
    }

    /// Skips a balanced parenthesised block whose opening '(' was consumed.
    void skip_block() {
        int depth = 1;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            advance(1);
            if (c == '(') ++depth;
            if (c == ')' && --depth == 0) return;
        }
        throw ParseError("unterminated section", line_, column_);
    }

    static bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

private:
    Token single(Kind k) {
        Token t{k, std::string(1, text_[pos_]), line_, column_};
        advance(1);
        return t;
    }
    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
        }
    }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class TrsParser {
    using Kind = TrsLexer::Kind;

public:
    explicit TrsParser(const std::string& text) : lex_(text) {}

    RelativeTrs parse() {
        RelativeTrs trs;
        bool saw_rules = false;
        while (true) {
            auto tok = lex_.next();
            if (tok.kind == Kind::End) break;
            expect_kind(tok, Kind::LParen, "'('");
            auto head = lex_.next();
            expect_kind(head, Kind::Ident, "section name");
            if (head.text == "VAR") {
                while (true) {
                    auto v = lex_.next();
                    if (v.kind == Kind::RParen) break;
                    expect_kind(v, Kind::Ident, "variable name");
                    if (vars_.insert(v.text).second) trs.variables.push_back(v.text);
                }
            } else if (head.text == "RULES") {
                saw_rules = true;
                parse_rules(trs);
            } else {
                lex_.skip_block();
            }
        }
        if (!saw_rules) throw ParseError("missing (RULES ...) section", 1, 1);
        trs.refresh();
        return trs;
    }

private:
    void parse_rules(RelativeTrs& trs) {
        while (true) {
            auto tok = lex_.peek();
            if (tok.kind == Kind::RParen) {
                lex_.next();
                return;
            }
            if (tok.kind == Kind::End) throw ParseError("unterminated RULES section", tok.line, tok.column);
            Term lhs = parse_term();
            auto arrow = lex_.next();
            if (arrow.kind != Kind::Arrow && arrow.kind != Kind::ArrowEq) {
                throw ParseError("expected '->' or '->=' but found '" + arrow.text + "'", arrow.line, arrow.column);
            }
            Term rhs = parse_term();
            if (lhs.is_var()) throw ParseError("left-hand side is a variable: " + to_string(lhs), tok.line, tok.column);
            auto lv = variables(lhs);
            for (const auto& x : variables(rhs)) {
                if (!lv.count(x)) {
                    throw ParseError("variable " + x + " of the right-hand side does not occur in the left-hand side",
                                     tok.line, tok.column);
                }
            }
            (arrow.kind == Kind::Arrow ? trs.main : trs.base).push_back(Rule{lhs, rhs});
        }
    }

    Term parse_term() {
        auto id = lex_.next();
        expect_kind(id, Kind::Ident, "identifier");
        if (lex_.peek().kind != Kind::LParen) {
            if (vars_.count(id.text)) return Term::var(id.text);
            record_arity(id, 0);
            return Term::app(id.text);
        }
        if (vars_.count(id.text)) throw ParseError("variable " + id.text + " applied to arguments", id.line, id.column);
        lex_.next();
        std::vector<Term> args;
        if (lex_.peek().kind == Kind::RParen) {
            lex_.next();
        } else {
            while (true) {
                args.push_back(parse_term());
                auto sep = lex_.next();
                if (sep.kind == Kind::RParen) break;
                expect_kind(sep, Kind::Comma, "',' or ')'");
            }
        }
        record_arity(id, args.size());
        return Term::app(id.text, std::move(args));
    }

    void record_arity(const TrsLexer::Token& id, std::size_t n) {
        auto [it, inserted] = arities_.emplace(id.text, n);
        if (!inserted && it->second != n) {
            throw ParseError("symbol " + id.text + " used with arity " + std::to_string(n) + " and " +
                                 std::to_string(it->second),
                             id.line, id.column);
        }
    }

    static void expect_kind(const TrsLexer::Token& tok, Kind k, const char* what) {
        if (tok.kind != k) {
            throw ParseError(std::string("expected ") + what + " but found '" +
                                 (tok.kind == Kind::End ? std::string("end of input") : tok.text) + "'",
                             tok.line, tok.column);
        }
    }

    TrsLexer lex_;
    std::set<std::string> vars_;
    std::map<std::string, std::size_t> arities_;
};

}  // namespace detail

inline RelativeTrs parse_relative_trs(const std::string& text) { return detail::TrsParser(text).parse(); }

inline RelativeTrs load_relative_trs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_relative_trs(buf.str());
}

/// Canonical printer: one rule per line, main rules first.
inline std::string print_relative_trs(const RelativeTrs& trs) {
    std::ostringstream os;
    if (!trs.variables.empty()) {
        os << "(VAR";
        for (const auto& x : trs.variables) os << ' ' << x;
        os << ")\n";
    }
    os << "(RULES\n";
    for (const auto& r : trs.main) os << "  " << r.lhs << " -> " << r.rhs << '\n';
    for (const auto& r : trs.base) os << "  " << r.lhs << " ->= " << r.rhs << '\n';
    os << ")\n";
    return os.str();
}

/// Display names for annotated symbols: f# prints as F unless that clashes.
class SymbolDisplay {
public:
    SymbolDisplay() = default;
    explicit SymbolDisplay(const Signature& sig) {
        std::map<std::string, int> upper_count;
        for (const auto& [f, n] : sig) upper_count[upper(f)]++;
        for (const auto& [f, n] : sig) {
            auto u = upper(f);
            if (u != f && !sig.count(u) && upper_count[u] == 1) sharp_names_[f] = u;
        }
    }

    std::string sharp(const std::string& f) const {
        auto it = sharp_names_.find(f);
        return it == sharp_names_.end() ? f + "#" : it->second;
    }

    /// Name to print for a symbol that may carry a trailing '#'.
    std::string name(const std::string& sym) const {
        if (sym == "#c0") return "c0";
        if (sym == "#c2") return "c2";
        if (sym.size() > 1 && sym.back() == '#') return sharp(sym.substr(0, sym.size() - 1));
        return sym;
    }

    std::string term(const Term& t) const {
        std::ostringstream os;
        print(os, t);
        return os.str();
    }

    std::string rule(const Rule& r) const { return term(r.lhs) + " -> " + term(r.rhs); }

    void print(std::ostream& os, const Term& t) const {
        os << (t.is_var() ? t.name() : name(t.name()));
        if (t.is_app() && t.arity() > 0) {
            os << '(';
            for (std::size_t i = 0; i < t.arity(); ++i) {
                if (i) os << ',';
                print(os, t.arg(i));
            }
            os << ')';
        }
    }

private:
    static std::string upper(std::string s) {
        for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return s;
    }
    std::map<std::string, std::string> sharp_names_;
};

}  // namespace reladp
