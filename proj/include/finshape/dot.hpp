#pragma once

#include <string>

#include "finshape/poset.hpp"

namespace finshape {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

// Hasse diagram as DOT, drawn upward: one node per element, one edge per
// cover pair. Nodes and edges are emitted in sorted id order so equal inputs
// give byte-identical output.
inline std::string hasse_export(const FinitePoset& X) {
    std::string out = "digraph hasse {\n  rankdir=BT;\n";
    for (int i : X.indices_by_id()) out += "  " + dot_quote(X.id(i)) + ";\n";
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [a, b] : X.covers()) edges.emplace_back(X.id(a), X.id(b));
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges)
        out += "  " + dot_quote(a) + " -> " + dot_quote(b) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace finshape
