#pragma once

// Linear polynomial interpretations over the naturals.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "adp.hpp"
#include "term.hpp"

namespace reladp {

/// c + sum(a_x * x). Coefficients are signed so that differences can be represented.
struct LinearPoly {
    std::int64_t constant = 0;
    std::map<std::string, std::int64_t> coeffs;

    static LinearPoly var(const std::string& x) {
        LinearPoly p;
        p.coeffs[x] = 1;
        return p;
    }

    LinearPoly& operator+=(const LinearPoly& o) {
        constant += o.constant;
        for (const auto& [x, c] : o.coeffs) coeffs[x] += c;
        normalize();
        return *this;
    }
    LinearPoly& operator-=(const LinearPoly& o) {
        constant -= o.constant;
        for (const auto& [x, c] : o.coeffs) coeffs[x] -= c;
        normalize();
        return *this;
    }
    LinearPoly scaled(std::int64_t k) const {
        LinearPoly p;
        p.constant = constant * k;
        for (const auto& [x, c] : coeffs) p.coeffs[x] = c * k;
        p.normalize();
        return p;
    }
    std::int64_t coeff(const std::string& x) const {
        auto it = coeffs.find(x);
        return it == coeffs.end() ? 0 : it->second;
    }
    std::int64_t eval(const std::map<std::string, std::int64_t>& values) const {
        std::int64_t v = constant;
        for (const auto& [x, c] : coeffs) {
            auto it = values.find(x);
            v += c * (it == values.end() ? 0 : it->second);
        }
        return v;
    }
    void normalize() { std::erase_if(coeffs, [](const auto& kv) { return kv.second == 0; }); }

    bool operator==(const LinearPoly&) const = default;
};

inline LinearPoly operator+(LinearPoly a, const LinearPoly& b) { return a += b; }
inline LinearPoly operator-(LinearPoly a, const LinearPoly& b) { return a -= b; }

inline std::string to_string(const LinearPoly& p) {
    std::ostringstream os;
    bool first = true;
    if (p.constant != 0 || p.coeffs.empty()) {
        os << p.constant;
        first = false;
    }
    for (const auto& [x, c] : p.coeffs) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        first = false;
        auto a = c < 0 ? -c : c;
        if (a != 1) os << a << '*';
        os << x;
    }
    return os.str();
}

/// p >= q for all natural instantiations, by the coefficient-wise criterion.
inline bool weakly_geq(const LinearPoly& p, const LinearPoly& q) {
    auto d = p - q;
    if (d.constant < 0) return false;
    for (const auto& [x, c] : d.coeffs) {
        if (c < 0) return false;
    }
    return true;
}

inline bool strictly_gt(const LinearPoly& p, const LinearPoly& q) { return weakly_geq(p, q) && (p - q).constant >= 1; }

/// Interpretation of one symbol: c + a1*x1 + ... + an*xn.
struct SymbolPoly {
    std::int64_t constant = 0;
    std::vector<std::int64_t> args;

    bool operator==(const SymbolPoly&) const = default;
};

/// Symbol -> linear template. The compound symbols are fixed: c0 = 0, c2 = x1 + x2.
class PolyInterpretation {
public:
    PolyInterpretation() = default;

    void set(const std::string& f, SymbolPoly p) {
        if (f == kCompound0 || f == kCompound2) throw Error("compound symbols have a fixed interpretation");
        table_[f] = std::move(p);
    }

    const SymbolPoly& get(const std::string& f) const {
        static const SymbolPoly c0{0, {}};
        static const SymbolPoly c2{0, {1, 1}};
        if (f == kCompound0) return c0;
        if (f == kCompound2) return c2;
        auto it = table_.find(f);
        if (it == table_.end()) throw Error("no interpretation for symbol " + f);
        return it->second;
    }

    bool has(const std::string& f) const { return f == kCompound0 || f == kCompound2 || table_.count(f) > 0; }
    const std::map<std::string, SymbolPoly>& table() const { return table_; }

    bool operator==(const PolyInterpretation&) const = default;

private:
    std::map<std::string, SymbolPoly> table_;
};

inline LinearPoly interpret_term(const PolyInterpretation& pol, const Term& t) {
    if (t.is_var()) return LinearPoly::var(t.name());
    const auto& sp = pol.get(t.name());
    if (sp.args.size() != t.arity()) throw Error("arity mismatch in interpretation of " + t.name());
    LinearPoly p;
    p.constant = sp.constant;
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (sp.args[i] != 0) p += interpret_term(pol, t.arg(i)).scaled(sp.args[i]);
    }
    return p;
}

/// `Pol(f(x1,...,xn)) = c + a1*x1 + ...` with display names.
inline std::string pol_line(const std::string& f, const SymbolPoly& sp, const SymbolDisplay& display = {}) {
    std::ostringstream os;
    os << "Pol(" << display.name(f);
    if (!sp.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < sp.args.size(); ++i) os << (i ? "," : "") << 'x' << i + 1;
        os << ')';
    }
    os << ") = ";
    LinearPoly p;
    p.constant = sp.constant;
    for (std::size_t i = 0; i < sp.args.size(); ++i) p.coeffs["x" + std::to_string(i + 1)] = sp.args[i];
    p.normalize();
    os << to_string(p);
    return os.str();
}

inline std::vector<std::string> pol_lines(const PolyInterpretation& pol, const SymbolDisplay& display = {}) {
    std::vector<std::string> out;
    for (const auto& [f, sp] : pol.table()) out.push_back(pol_line(f, sp, display));
    return out;
}

}  // namespace reladp
