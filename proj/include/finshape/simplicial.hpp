#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "finshape/errors.hpp"
#include "finshape/poset.hpp"

namespace finshape {

// An abstract simplicial complex. Simplices are stored as sorted vertex-index
// lists, ordered by (dimension, lexicographic) so downstream bases are
// reproducible.
struct SimplicialComplex {
    std::vector<std::string> vertices;
    std::vector<std::vector<int>> simplices;

    int dimension() const {
        int d = -1;
        for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
        return d;
    }

    std::vector<std::vector<int>> simplices_of_dim(int k) const {
        std::vector<std::vector<int>> out;
        for (const auto& s : simplices)
            if (static_cast<int>(s.size()) == k + 1) out.push_back(s);
        return out;
    }
};

inline void canonicalize(SimplicialComplex& K) {
    for (auto& s : K.simplices) std::sort(s.begin(), s.end());
    std::sort(K.simplices.begin(), K.simplices.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    K.simplices.erase(std::unique(K.simplices.begin(), K.simplices.end()), K.simplices.end());
}

inline void validate_face_closed(const SimplicialComplex& K) {
    std::set<std::vector<int>> present(K.simplices.begin(), K.simplices.end());
    for (const auto& s : K.simplices) {
        if (s.empty()) throw input_error("empty simplex");
        if (s.size() == 1) continue;
        for (size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<int> face;
            for (size_t i = 0; i < s.size(); ++i)
                if (i != drop) face.push_back(s[i]);
            if (!present.count(face))
                throw input_error("complex is not face-closed: missing a face of a " +
                                  std::to_string(s.size() - 1) + "-simplex");
        }
    }
    std::set<int> used;
    for (const auto& s : K.simplices)
        if (s.size() == 1) used.insert(s[0]);
    for (int v = 0; v < static_cast<int>(K.vertices.size()); ++v)
        if (!used.count(v))
            throw input_error("vertex " + K.vertices[v] + " does not appear as a 0-simplex");
}

// The order complex K(X): simplices are the non-empty chains of X.
inline SimplicialComplex order_complex(const FinitePoset& X) {
    SimplicialComplex K;
    K.vertices = X.ids();
    // Grow chains upward from each element; each chain is produced once with
    // its top element last.
    std::vector<std::vector<int>> stack;
    for (int i = 0; i < X.size(); ++i) stack.push_back({i});
    while (!stack.empty()) {
        std::vector<int> chain = std::move(stack.back());
        stack.pop_back();
        K.simplices.push_back(chain);
        int top = chain.back();
        for (int j = 0; j < X.size(); ++j)
            if (X.lt(top, j)) {
                auto longer = chain;
                longer.push_back(j);
                stack.push_back(std::move(longer));
            }
    }
    canonicalize(K);
    return K;
}

// The face poset X(L): simplices ordered by inclusion. Element ids join the
// member vertex ids with '<'. `members[i]` lists the vertex indices of the
// simplex behind poset element i.
struct FacePosetResult {
    PosetPtr poset;
    std::vector<std::vector<int>> members;
};

inline FacePosetResult face_poset_with_members(const SimplicialComplex& L) {
    validate_face_closed(L);
    auto simplex_id = [&](const std::vector<int>& s) {
        std::vector<std::string> names;
        for (int v : s) names.push_back(L.vertices[v]);
        std::sort(names.begin(), names.end());
        std::string id;
        for (size_t i = 0; i < names.size(); ++i) {
            if (i) id += '<';
            id += names[i];
        }
        return id;
    };
    std::vector<std::string> ids;
    ids.reserve(L.simplices.size());
    for (const auto& s : L.simplices) ids.push_back(simplex_id(s));
    std::vector<std::pair<std::string, std::string>> rels;
    for (size_t a = 0; a < L.simplices.size(); ++a)
        for (size_t b = 0; b < L.simplices.size(); ++b) {
            if (a == b || L.simplices[a].size() >= L.simplices[b].size()) continue;
            if (std::includes(L.simplices[b].begin(), L.simplices[b].end(),
                              L.simplices[a].begin(), L.simplices[a].end()))
                rels.emplace_back(ids[a], ids[b]);
        }
    return FacePosetResult{make_poset(std::move(ids), rels), L.simplices};
}

inline PosetPtr face_poset(const SimplicialComplex& L) {
    return face_poset_with_members(L).poset;
}

inline PosetPtr barycentric_subdivision(const FinitePoset& X) {
    return face_poset(order_complex(X));
}

}  // namespace finshape
