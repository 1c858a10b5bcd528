#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "finshape/errors.hpp"
#include "finshape/poset.hpp"

namespace finshape {

// Enumerates every monotone map source -> target by backtracking along a
// linear extension of the source. Throws capacity_error past `cap`.
inline std::vector<std::vector<int>> enumerate_monotone_maps(const PosetPtr& source,
                                                             const PosetPtr& target,
                                                             std::size_t cap) {
    std::vector<int> order = source->linear_extension();
    int n = source->size();
    std::vector<std::vector<int>> out;
    std::vector<int> assign(n, -1);

    auto consistent = [&](int pos, int value) {
        for (int k = 0; k < pos; ++k) {
            int prev = order[k];
            if (source->le(prev, order[pos]) && !target->le(assign[prev], value)) return false;
            if (source->le(order[pos], prev) && !target->le(value, assign[prev])) return false;
        }
        return true;
    };

    // Iterative DFS over positions in the linear extension.
    std::vector<int> pos_value(n, 0);
    int pos = 0;
    if (n == 0) return {std::vector<int>{}};
    while (pos >= 0) {
        if (pos == n) {
            if (out.size() >= cap)
                throw capacity_error("monotone-map enumeration exceeds the configured bound of " +
                                     std::to_string(cap));
            out.push_back(assign);
            --pos;
            continue;
        }
        int& v = pos_value[pos];
        bool advanced = false;
        while (v < target->size()) {
            int candidate = v++;
            if (consistent(pos, candidate)) {
                assign[order[pos]] = candidate;
                ++pos;
                if (pos < n) pos_value[pos] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            assign[order[pos]] = -1;
            --pos;
        }
    }
    return out;
}

enum class HomotopyVerdict { Yes, No, Unknown };

inline const char* to_string(HomotopyVerdict v) {
    switch (v) {
        case HomotopyVerdict::Yes: return "yes";
        case HomotopyVerdict::No: return "no";
        default: return "unknown";
    }
}

struct HomotopyResult {
    HomotopyVerdict verdict = HomotopyVerdict::Unknown;
    // When yes: f = fence.front(), g = fence.back(), consecutive maps are
    // pointwise comparable. Fence length is fence.size() - 1 (0 when f == g).
    std::vector<MonotoneMap> fence;
};

enum class HomotopyMode { Exact, Witness };

struct HomotopyOptions {
    std::size_t exact_bound = 20000;
    std::vector<MonotoneMap> candidates;  // witness-mode seed intermediates
};

inline void check_same_signature(const MonotoneMap& f, const MonotoneMap& g) {
    if (!f.source->same_content(*g.source) || !f.target->same_content(*g.target))
        throw input_error("homotopic: maps do not share source and target");
}

inline bool assignments_equal(const MonotoneMap& f, const MonotoneMap& g) {
    for (int i = 0; i < f.source->size(); ++i) {
        int j = g.source.get() == f.source.get() ? i : g.source->index_of(f.source->id(i));
        if (g.target->id(g.assignment[j]) != f.target->id(f.assignment[i])) return false;
    }
    return true;
}

namespace detail {

// BFS through a comparability graph over `maps`; returns the index path.
inline std::optional<std::vector<int>> fence_path(const std::vector<MonotoneMap>& maps,
                                                  int from, int to) {
    std::vector<int> parent(maps.size(), -1);
    std::deque<int> queue{from};
    std::vector<char> seen(maps.size(), 0);
    seen[from] = 1;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        if (cur == to) {
            std::vector<int> path;
            for (int at = to; at != -1; at = parent[at]) path.push_back(at);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (int next = 0; next < static_cast<int>(maps.size()); ++next) {
            if (seen[next] || !pointwise_comparable(maps[cur], maps[next])) continue;
            seen[next] = 1;
            parent[next] = cur;
            queue.push_back(next);
        }
    }
    return std::nullopt;
}

// Pointwise least upper bound (or greatest lower bound) of f and g, when the
// bound exists at every point and the resulting map is monotone.
inline std::optional<MonotoneMap> pointwise_bound(const MonotoneMap& f, const MonotoneMap& g,
                                                  bool upper) {
    const FinitePoset& T = *f.target;
    MonotoneMap h{f.source, f.target, std::vector<int>(f.source->size())};
    for (int i = 0; i < f.source->size(); ++i) {
        int a = f.assignment[i], b = g.assignment[i];
        std::vector<int> bounds;
        for (int t = 0; t < T.size(); ++t) {
            bool ok = upper ? (T.le(a, t) && T.le(b, t)) : (T.le(t, a) && T.le(t, b));
            if (ok) bounds.push_back(t);
        }
        int best = -1;
        for (int c : bounds) {
            bool extreme = true;
            for (int d : bounds)
                if (upper ? !T.le(c, d) : !T.le(d, c)) { extreme = false; break; }
            if (extreme) { best = c; break; }
        }
        if (best < 0) return std::nullopt;
        h.assignment[i] = best;
    }
    if (!monotone_violations(h).empty()) return std::nullopt;
    return h;
}

}  // namespace detail

// Homotopy test for monotone maps via comparability fences. Exact mode
// decides by enumerating the whole Hom poset (subject to the enumeration
// bound); witness mode only searches a small neighbourhood of f and g and
// never returns an unsound yes.
inline HomotopyResult homotopic(const MonotoneMap& f, const MonotoneMap& g,
                                HomotopyMode mode, const HomotopyOptions& opts = {}) {
    check_same_signature(f, g);
    validate_monotone(f);
    validate_monotone(g);
    if (assignments_equal(f, g)) return {HomotopyVerdict::Yes, {f}};

    if (mode == HomotopyMode::Exact) {
        auto assignments = enumerate_monotone_maps(f.source, f.target, opts.exact_bound);
        std::vector<MonotoneMap> maps;
        maps.reserve(assignments.size());
        for (auto& a : assignments) maps.push_back(MonotoneMap{f.source, f.target, std::move(a)});
        auto find = [&](const MonotoneMap& m) {
            for (int i = 0; i < static_cast<int>(maps.size()); ++i)
                if (assignments_equal(maps[i], m)) return i;
            throw construction_error("map missing from Hom-poset enumeration");
        };
        auto path = detail::fence_path(maps, find(f), find(g));
        if (!path) return {HomotopyVerdict::No, {}};
        std::vector<MonotoneMap> fence;
        for (int i : *path) fence.push_back(maps[i]);
        return {HomotopyVerdict::Yes, fence};
    }

    // Witness mode.
    if (pointwise_comparable(f, g)) return {HomotopyVerdict::Yes, {f, g}};
    for (bool upper : {true, false}) {
        if (auto h = detail::pointwise_bound(f, g, upper))
            return {HomotopyVerdict::Yes, {f, *h, g}};
    }
    std::vector<MonotoneMap> pool{f, g};
    for (const auto& c : opts.candidates) {
        if (!c.source->same_content(*f.source) || !c.target->same_content(*f.target)) continue;
        if (!monotone_violations(c).empty()) continue;
        pool.push_back(c);
    }
    if (auto path = detail::fence_path(pool, 0, 1)) {
        std::vector<MonotoneMap> fence;
        for (int i : *path) fence.push_back(pool[i]);
        return {HomotopyVerdict::Yes, fence};
    }
    return {HomotopyVerdict::Unknown, {}};
}

}  // namespace finshape
