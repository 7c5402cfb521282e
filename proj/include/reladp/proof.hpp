#pragma once

// Proof trees and their text / JSON / DOT renderings.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "term.hpp"

namespace reladp {

enum class Verdict { SN, NotSN, Unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::SN: return "SN";
        case Verdict::NotSN: return "NOT-SN";
        case Verdict::Unknown: return "UNKNOWN";
    }
    return "?";
}

inline Verdict parse_verdict(const std::string& s) {
    if (s == "SN") return Verdict::SN;
    if (s == "NOT-SN") return Verdict::NotSN;
    if (s == "UNKNOWN") return Verdict::Unknown;
    throw Error("unknown verdict " + s);
}

struct ProofNode {
    std::string label;
    std::map<std::string, std::string> params;
    std::string problem;
    std::vector<ProofNode> children;
    Verdict verdict = Verdict::Unknown;
    std::string dot;  // dependency graph, DG nodes only

    bool operator==(const ProofNode&) const = default;

    /// SN iff there is at least one child and all children are SN, or this is an SN leaf.
    Verdict settle() {
        if (children.empty()) return verdict;
        verdict = Verdict::SN;
        for (const auto& c : children) {
            if (c.verdict != Verdict::SN) verdict = Verdict::Unknown;
        }
        return verdict;
    }

    /// Depth-first search for nodes with the given label.
    void collect(const std::string& l, std::vector<const ProofNode*>& out) const {
        if (label == l) out.push_back(this);
        for (const auto& c : children) c.collect(l, out);
    }
    std::vector<const ProofNode*> find_all(const std::string& l) const {
        std::vector<const ProofNode*> out;
        collect(l, out);
        return out;
    }
};

enum class ProofFormat { Text, Json, Dot };

namespace detail {

inline void render_text(std::ostream& os, const ProofNode& n, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    os << pad << n.label << " [" << to_string(n.verdict) << "]\n";
    if (!n.problem.empty()) os << pad << "  problem: " << n.problem << "\n";
    for (const auto& [k, v] : n.params) {
        if (v.find('\n') == std::string::npos) {
            os << pad << "  " << k << ": " << v << "\n";
            continue;
        }
        os << pad << "  " << k << ":\n";
        std::istringstream lines(v);
        for (std::string line; std::getline(lines, line);) os << pad << "    " << line << "\n";
    }
    for (const auto& c : n.children) render_text(os, c, indent + 1);
}

inline void collect_dot(std::ostream& os, const ProofNode& n) {
    if (!n.dot.empty()) os << n.dot;
    for (const auto& c : n.children) collect_dot(os, c);
}

}  // namespace detail

inline nlohmann::json to_json(const ProofNode& n) {
    nlohmann::json j;
    j["label"] = n.label;
    j["params"] = n.params;
    j["problem"] = n.problem;
    j["verdict"] = to_string(n.verdict);
    j["children"] = nlohmann::json::array();
    for (const auto& c : n.children) j["children"].push_back(to_json(c));
    if (!n.dot.empty()) j["dot"] = n.dot;
    return j;
}

inline ProofNode proof_from_json(const nlohmann::json& j) {
    ProofNode n;
    n.label = j.at("label").get<std::string>();
    n.params = j.at("params").get<std::map<std::string, std::string>>();
    n.problem = j.value("problem", "");
    n.verdict = parse_verdict(j.at("verdict").get<std::string>());
    for (const auto& c : j.at("children")) n.children.push_back(proof_from_json(c));
    n.dot = j.value("dot", "");
    return n;
}

inline ProofNode parse_proof_json(const std::string& text) { return proof_from_json(nlohmann::json::parse(text)); }

inline std::string render_proof(const ProofNode& n, ProofFormat format) {
    std::ostringstream os;
    switch (format) {
        case ProofFormat::Text: detail::render_text(os, n, 0); break;
        case ProofFormat::Json: os << to_json(n).dump(2) << "\n"; break;
        case ProofFormat::Dot: detail::collect_dot(os, n); break;
    }
    return os.str();
}

}  // namespace reladp
