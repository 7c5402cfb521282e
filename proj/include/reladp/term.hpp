#pragma once

// First-order terms, positions, substitutions, matching and unification.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace reladp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Path from the root to a subterm, 1-based child indices. Empty is the root.
/// The defaulted comparison is the lexicographic order with prefixes first.
struct Position {
    std::vector<std::uint32_t> path;

    Position() = default;
    Position(std::initializer_list<std::uint32_t> p) : path(p) {}
    explicit Position(std::vector<std::uint32_t> p) : path(std::move(p)) {}

    bool is_root() const { return path.empty(); }
    std::size_t depth() const { return path.size(); }

    Position child(std::uint32_t i) const {
        Position p = *this;
        p.path.push_back(i);
        return p;
    }

    Position concat(const Position& suffix) const {
        Position p = *this;
        p.path.insert(p.path.end(), suffix.path.begin(), suffix.path.end());
        return p;
    }

    bool is_prefix_of(const Position& other) const {
        return path.size() <= other.path.size() &&
               std::equal(path.begin(), path.end(), other.path.begin());
    }

    /// Remainder of `other` below this position; requires is_prefix_of(other).
    Position suffix_of(const Position& other) const {
        return Position(std::vector<std::uint32_t>(other.path.begin() + static_cast<long>(path.size()),
                                                   other.path.end()));
    }

    std::string str() const {
        if (path.empty()) return "e";
        std::string s;
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(path[i]);
        }
        return s;
    }

    auto operator<=>(const Position&) const = default;
    bool operator==(const Position&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Position& p) { return os << p.str(); }

/// Immutable term with structural equality. Copies share the node.
class Term {
public:
    Term() : Term(var("_")) {}

    static Term var(std::string name) {
        return Term(std::make_shared<const Node>(Node{true, std::move(name), {}, 1}));
    }

    static Term app(std::string symbol, std::vector<Term> args = {}) {
        std::size_t size = 1;
        for (const auto& a : args) size += a.size();
        return Term(std::make_shared<const Node>(Node{false, std::move(symbol), std::move(args), size}));
    }

    bool is_var() const { return node_->is_var; }
    bool is_app() const { return !node_->is_var; }
    /// Variable name or root symbol name.
    const std::string& name() const { return node_->name; }
    std::span<const Term> args() const { return node_->args; }
    const Term& arg(std::size_t i) const { return node_->args.at(i); }
    std::size_t arity() const { return node_->args.size(); }
    std::size_t size() const { return node_->size; }

    std::size_t depth() const {
        std::size_t d = 0;
        for (const auto& a : args()) d = std::max(d, a.depth());
        return d + 1;
    }

    bool same_node(const Term& o) const { return node_ == o.node_; }

    friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
        if (a.node_ == b.node_) return std::strong_ordering::equal;
        if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
        if (auto c = a.name() <=> b.name(); c != 0) return c;
        if (auto c = a.arity() <=> b.arity(); c != 0) return c;
        for (std::size_t i = 0; i < a.arity(); ++i) {
            if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

private:
    struct Node {
        bool is_var;
        std::string name;
        std::vector<Term> args;
        std::size_t size;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

inline void print_term(std::ostream& os, const Term& t) {
    os << t.name();
    if (t.is_app() && t.arity() > 0) {
        os << '(';
        for (std::size_t i = 0; i < t.arity(); ++i) {
            if (i) os << ',';
            print_term(os, t.arg(i));
        }
        os << ')';
    }
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) {
    print_term(os, t);
    return os;
}

inline std::string to_string(const Term& t) {
    std::ostringstream os;
    os << t;
    return os.str();
}

using Substitution = std::map<std::string, Term>;

inline std::string to_string(const Substitution& s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [x, t] : s) {
        if (!first) os << ", ";
        first = false;
        os << x << " -> " << t;
    }
    os << '}';
    return os.str();
}

/// Simultaneous application; inserted terms are not substituted again.
inline Term apply(const Term& t, const Substitution& sigma) {
    if (t.is_var()) {
        auto it = sigma.find(t.name());
        return it == sigma.end() ? t : it->second;
    }
    if (t.arity() == 0) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(reladp::apply(a, sigma));
        changed = changed || !args.back().same_node(a);
    }
    return changed ? Term::app(t.name(), std::move(args)) : t;
}

inline const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (auto i : p.path) {
        if (cur->is_var() || i == 0 || i > cur->arity()) throw Error("invalid position " + p.str() + " in " + to_string(t));
        cur = &cur->arg(i - 1);
    }
    return *cur;
}

inline bool is_position_of(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (auto i : p.path) {
        if (cur->is_var() || i == 0 || i > cur->arity()) return false;
        cur = &cur->arg(i - 1);
    }
    return true;
}

inline Term replace_at(const Term& t, const Position& p, const Term& s, std::size_t from = 0) {
    if (from == p.path.size()) return s;
    if (t.is_var()) throw Error("invalid position " + p.str());
    auto i = p.path[from];
    if (i == 0 || i > t.arity()) throw Error("invalid position " + p.str());
    std::vector<Term> args(t.args().begin(), t.args().end());
    args[i - 1] = replace_at(args[i - 1], p, s, from + 1);
    return Term::app(t.name(), std::move(args));
}

namespace detail {
inline void collect_positions(const Term& t, Position& cur, std::vector<Position>& out,
                              const std::function<bool(const Term&)>& keep) {
    if (keep(t)) out.push_back(cur);
    for (std::uint32_t i = 0; i < t.arity(); ++i) {
        cur.path.push_back(i + 1);
        collect_positions(t.arg(i), cur, out, keep);
        cur.path.pop_back();
    }
}
}  // namespace detail

/// Positions satisfying `keep`, in lexicographic order.
inline std::vector<Position> positions_where(const Term& t, const std::function<bool(const Term&)>& keep) {
    std::vector<Position> out;
    Position cur;
    detail::collect_positions(t, cur, out, keep);
    return out;
}

inline std::vector<Position> positions(const Term& t) {
    return positions_where(t, [](const Term&) { return true; });
}

inline std::vector<Position> variable_positions(const Term& t) {
    return positions_where(t, [](const Term& s) { return s.is_var(); });
}

inline std::vector<Position> symbol_positions(const Term& t, const std::set<std::string>& symbols) {
    return positions_where(t, [&](const Term& s) { return s.is_app() && symbols.count(s.name()) > 0; });
}

inline void count_variables(const Term& t, std::map<std::string, std::size_t>& counts) {
    if (t.is_var()) {
        ++counts[t.name()];
        return;
    }
    for (const auto& a : t.args()) count_variables(a, counts);
}

inline std::set<std::string> variables(const Term& t) {
    std::map<std::string, std::size_t> counts;
    count_variables(t, counts);
    std::set<std::string> out;
    for (const auto& [x, n] : counts) out.insert(x);
    return out;
}

inline void collect_symbols(const Term& t, std::set<std::string>& out) {
    if (t.is_var()) return;
    out.insert(t.name());
    for (const auto& a : t.args()) collect_symbols(a, out);
}

inline bool contains_symbol(const Term& t, const std::set<std::string>& symbols) {
    if (t.is_var()) return false;
    if (symbols.count(t.name())) return true;
    return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return contains_symbol(a, symbols); });
}

namespace detail {
inline bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
    if (pattern.is_var()) {
        auto [it, inserted] = sigma.emplace(pattern.name(), subject);
        return inserted || it->second == subject;
    }
    if (subject.is_var() || pattern.name() != subject.name() || pattern.arity() != subject.arity()) return false;
    for (std::size_t i = 0; i < pattern.arity(); ++i) {
        if (!match_into(pattern.arg(i), subject.arg(i), sigma)) return false;
    }
    return true;
}
}  // namespace detail

/// sigma with apply(pattern, sigma) == subject, if one exists.
inline std::optional<Substitution> match_term(const Term& pattern, const Term& subject) {
    Substitution sigma;
    if (!detail::match_into(pattern, subject, sigma)) return std::nullopt;
    return sigma;
}

namespace detail {
inline Term walk(const Term& t, const Substitution& s) {
    Term cur = t;
    while (cur.is_var()) {
        auto it = s.find(cur.name());
        if (it == s.end()) break;
        cur = it->second;
    }
    return cur;
}

inline bool occurs(const std::string& x, const Term& t, const Substitution& s) {
    Term w = walk(t, s);
    if (w.is_var()) return w.name() == x;
    return std::any_of(w.args().begin(), w.args().end(), [&](const Term& a) { return occurs(x, a, s); });
}

inline Term resolve(const Term& t, const Substitution& s) {
    Term w = walk(t, s);
    if (w.is_var() || w.arity() == 0) return w;
    std::vector<Term> args;
    args.reserve(w.arity());
    for (const auto& a : w.args()) args.push_back(resolve(a, s));
    return Term::app(w.name(), std::move(args));
}
}  // namespace detail

/// Idempotent most general unifier (Robinson with occurs check).
inline std::optional<Substitution> unify_terms(const Term& s, const Term& t) {
    Substitution bindings;
    std::vector<std::pair<Term, Term>> stack{{s, t}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        a = detail::walk(a, bindings);
        b = detail::walk(b, bindings);
        if (a.is_var() && b.is_var() && a.name() == b.name()) continue;
        if (a.is_var() || b.is_var()) {
            const Term& v = a.is_var() ? a : b;
            const Term& o = a.is_var() ? b : a;
            if (detail::occurs(v.name(), o, bindings)) return std::nullopt;
            bindings.emplace(v.name(), o);
            continue;
        }
        if (a.name() != b.name() || a.arity() != b.arity()) return std::nullopt;
        for (std::size_t i = 0; i < a.arity(); ++i) stack.emplace_back(a.arg(i), b.arg(i));
    }
    Substitution mgu;
    for (const auto& [x, u] : bindings) mgu.emplace(x, detail::resolve(u, bindings));
    return mgu;
}

/// Renames every variable of t by appending `suffix`.
inline Term rename_variables(const Term& t, const std::string& suffix) {
    if (t.is_var()) return Term::var(t.name() + suffix);
    if (t.arity() == 0) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(rename_variables(a, suffix));
    return Term::app(t.name(), std::move(args));
}

struct Rule {
    Term lhs;
    Term rhs;

    auto operator<=>(const Rule&) const = default;
    bool operator==(const Rule&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Rule& r) { return os << r.lhs << " -> " << r.rhs; }

inline std::string to_string(const Rule& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// True iff some variable occurs more often in the rhs than in the lhs.
inline bool is_duplicating(const Rule& rule) {
    std::map<std::string, std::size_t> l, r;
    count_variables(rule.lhs, l);
    count_variables(rule.rhs, r);
    for (const auto& [x, n] : r) {
        if (n > l[x]) return true;
    }
    return false;
}

}  // namespace reladp
