#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "finshape/errors.hpp"

namespace finshape {

// A finite T0-space presented as a poset. The cover relation (Hasse diagram)
// is the canonical storage form; arbitrary strict-order pairs are accepted on
// construction and reduced transitively.
class FinitePoset {
public:
    FinitePoset() = default;

    // `relations` are pairs (x, y) meaning x < y; they may be covers, the
    // full order, or anything in between.
    FinitePoset(std::vector<std::string> ids,
                const std::vector<std::pair<std::string, std::string>>& relations)
        : ids_(std::move(ids)) {
        for (int i = 0; i < size(); ++i) {
            if (!index_.emplace(ids_[i], i).second)
                throw input_error("duplicate element id: " + ids_[i]);
        }
        lt_.assign(size(), std::vector<uint8_t>(size(), 0));
        for (const auto& [a, b] : relations) {
            int i = index_of(a), j = index_of(b);
            if (i == j) throw input_error("reflexive relation on element: " + a);
            lt_[i][j] = 1;
        }
        close_transitively();
        for (int i = 0; i < size(); ++i)
            if (lt_[i][i]) throw input_error("order relation has a cycle through: " + ids_[i]);
        rebuild_covers();
    }

    int size() const { return static_cast<int>(ids_.size()); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(int i) const { return ids_[i]; }

    bool contains(const std::string& id) const { return index_.count(id) > 0; }

    int index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw input_error("unknown element id: " + id);
        return it->second;
    }

    bool lt(int i, int j) const { return lt_[i][j] != 0; }
    bool le(int i, int j) const { return i == j || lt_[i][j] != 0; }
    bool comparable(int i, int j) const { return le(i, j) || le(j, i); }

    // Cover pairs (i, j) with i < j and nothing between, sorted by id.
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }

    std::vector<int> down_set(int x) const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (le(i, x)) out.push_back(i);
        return out;
    }

    std::vector<int> up_set(int x) const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (le(x, i)) out.push_back(i);
        return out;
    }

    std::vector<int> lower_covers(int x) const {
        std::vector<int> out;
        for (const auto& [a, b] : covers_)
            if (b == x) out.push_back(a);
        return out;
    }

    std::vector<int> upper_covers(int x) const {
        std::vector<int> out;
        for (const auto& [a, b] : covers_)
            if (a == x) out.push_back(b);
        return out;
    }

    // Indices ordered so that smaller elements come first; ties broken by id.
    std::vector<int> linear_extension() const {
        std::vector<int> order = indices_by_id();
        std::vector<int> out;
        std::vector<uint8_t> placed(size(), 0);
        while (static_cast<int>(out.size()) < size()) {
            for (int i : order) {
                if (placed[i]) continue;
                bool ready = true;
                for (int j = 0; j < size(); ++j)
                    if (lt_[j][i] && !placed[j]) { ready = false; break; }
                if (ready) {
                    placed[i] = 1;
                    out.push_back(i);
                }
            }
        }
        return out;
    }

    // Longest chain cardinality minus one.
    int height() const {
        if (size() == 0) throw input_error("height of empty poset");
        std::vector<int> depth(size(), 0);
        for (int i : linear_extension())
            for (int j = 0; j < size(); ++j)
                if (lt_[j][i]) depth[i] = std::max(depth[i], depth[j] + 1);
        return *std::max_element(depth.begin(), depth.end());
    }

    // Induced subposet on the given element indices.
    FinitePoset induced(const std::vector<int>& selection) const {
        std::vector<std::string> sub_ids;
        sub_ids.reserve(selection.size());
        for (int i : selection) sub_ids.push_back(ids_[i]);
        std::vector<std::pair<std::string, std::string>> rels;
        for (size_t a = 0; a < selection.size(); ++a)
            for (size_t b = 0; b < selection.size(); ++b)
                if (lt(selection[a], selection[b]))
                    rels.emplace_back(sub_ids[a], sub_ids[b]);
        return FinitePoset(std::move(sub_ids), rels);
    }

    std::vector<int> indices_by_id() const {
        std::vector<int> order(size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return ids_[a] < ids_[b]; });
        return order;
    }

    bool same_content(const FinitePoset& other) const {
        if (size() != other.size()) return false;
        std::vector<std::string> a = ids_, b = other.ids_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
        auto pairs = [](const FinitePoset& p) {
            std::set<std::pair<std::string, std::string>> s;
            for (const auto& [x, y] : p.covers_) s.emplace(p.ids_[x], p.ids_[y]);
            return s;
        };
        return pairs(*this) == pairs(other);
    }

private:
    void close_transitively() {
        for (int k = 0; k < size(); ++k)
            for (int i = 0; i < size(); ++i) {
                if (!lt_[i][k]) continue;
                for (int j = 0; j < size(); ++j)
                    if (lt_[k][j]) lt_[i][j] = 1;
            }
    }

    void rebuild_covers() {
        covers_.clear();
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j) {
                if (!lt_[i][j]) continue;
                bool direct = true;
                for (int k = 0; k < size(); ++k)
                    if (lt_[i][k] && lt_[k][j]) { direct = false; break; }
                if (direct) covers_.emplace_back(i, j);
            }
        std::sort(covers_.begin(), covers_.end(), [&](const auto& a, const auto& b) {
            return std::make_pair(ids_[a.first], ids_[a.second]) <
                   std::make_pair(ids_[b.first], ids_[b.second]);
        });
    }

    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<uint8_t>> lt_;
    std::vector<std::pair<int, int>> covers_;
};

using PosetPtr = std::shared_ptr<const FinitePoset>;

inline PosetPtr make_poset(std::vector<std::string> ids,
                           const std::vector<std::pair<std::string, std::string>>& relations) {
    return std::make_shared<FinitePoset>(std::move(ids), relations);
}

inline std::vector<std::string> down_set(const FinitePoset& X, const std::string& x) {
    std::vector<std::string> out;
    for (int i : X.down_set(X.index_of(x))) out.push_back(X.id(i));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> up_set(const FinitePoset& X, const std::string& x) {
    std::vector<std::string> out;
    for (int i : X.up_set(X.index_of(x))) out.push_back(X.id(i));
    std::sort(out.begin(), out.end());
    return out;
}

// An order-preserving map between two finite posets.
struct MonotoneMap {
    PosetPtr source;
    PosetPtr target;
    std::vector<int> assignment;  // source index -> target index

    int operator()(int i) const { return assignment[i]; }

    bool same_posets(const MonotoneMap& other) const {
        return source->same_content(*other.source) && target->same_content(*other.target);
    }

    bool operator==(const MonotoneMap& other) const {
        if (!same_posets(other)) return false;
        for (int i = 0; i < source->size(); ++i)
            if (target->id(assignment[i]) != other.target->id(other.assignment[other.source->index_of(source->id(i))]))
                return false;
        return true;
    }
};

inline std::vector<std::string> monotone_violations(const MonotoneMap& f) {
    std::vector<std::string> out;
    if (static_cast<int>(f.assignment.size()) != f.source->size()) {
        out.push_back("assignment is not total on the source");
        return out;
    }
    for (int i = 0; i < f.source->size(); ++i) {
        int v = f.assignment[i];
        if (v < 0 || v >= f.target->size()) {
            out.push_back("image of " + f.source->id(i) + " is not a target element");
            return out;
        }
    }
    for (int i = 0; i < f.source->size(); ++i)
        for (int j = 0; j < f.source->size(); ++j)
            if (f.source->lt(i, j) && !f.target->le(f.assignment[i], f.assignment[j]))
                out.push_back(f.source->id(i) + " < " + f.source->id(j) + " but images " +
                              f.target->id(f.assignment[i]) + ", " + f.target->id(f.assignment[j]) +
                              " are not ordered");
    return out;
}

inline void validate_monotone(const MonotoneMap& f) {
    auto v = monotone_violations(f);
    if (!v.empty()) {
        std::string msg = "map is not order-preserving:";
        for (const auto& s : v) msg += "\n  " + s;
        throw input_error(msg);
    }
}

inline MonotoneMap identity_map(const PosetPtr& X) {
    MonotoneMap f{X, X, std::vector<int>(X->size())};
    std::iota(f.assignment.begin(), f.assignment.end(), 0);
    return f;
}

inline MonotoneMap constant_map(const PosetPtr& X, const PosetPtr& Y, const std::string& y) {
    return MonotoneMap{X, Y, std::vector<int>(X->size(), Y->index_of(y))};
}

// f after g.
inline MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
    if (!g.target->same_content(*f.source))
        throw input_error("compose: inner target does not match outer source");
    MonotoneMap out{g.source, f.target, std::vector<int>(g.source->size())};
    for (int i = 0; i < g.source->size(); ++i) {
        int mid = g.assignment[i];
        if (g.target.get() != f.source.get()) mid = f.source->index_of(g.target->id(mid));
        out.assignment[i] = f.assignment[mid];
    }
    return out;
}

inline bool pointwise_le(const MonotoneMap& f, const MonotoneMap& g) {
    for (int i = 0; i < f.source->size(); ++i)
        if (!f.target->le(f.assignment[i], g.assignment[i])) return false;
    return true;
}

inline bool pointwise_comparable(const MonotoneMap& f, const MonotoneMap& g) {
    return pointwise_le(f, g) || pointwise_le(g, f);
}

enum class BeatKind { Down, Up };

inline const char* to_string(BeatKind k) { return k == BeatKind::Down ? "down-beat" : "up-beat"; }

// x is a down beat point iff the punctured down-set has a maximum, i.e. x has
// exactly one lower cover; dually for up beat points.
inline std::vector<std::pair<std::string, BeatKind>> beat_points(const FinitePoset& X) {
    std::vector<std::pair<std::string, BeatKind>> out;
    for (int i : X.indices_by_id()) {
        if (X.lower_covers(i).size() == 1) out.emplace_back(X.id(i), BeatKind::Down);
        if (X.upper_covers(i).size() == 1) out.emplace_back(X.id(i), BeatKind::Up);
    }
    return out;
}

struct RemovalStep {
    std::string element;
    BeatKind kind;
    std::string image;  // where the one-step retraction sends `element`
};

struct CoreResult {
    PosetPtr core;
    MonotoneMap inclusion;   // core -> original
    MonotoneMap retraction;  // original -> core
    std::vector<RemovalStep> removal_log;
};

// Exhaustive beat-point removal. Scans elements in ascending id order and
// removes the first beat point found, so the log is deterministic.
inline CoreResult core(const PosetPtr& X) {
    FinitePoset current = *X;
    std::vector<RemovalStep> log;
    for (;;) {
        std::optional<RemovalStep> step;
        for (int i : current.indices_by_id()) {
            auto lower = current.lower_covers(i);
            auto upper = current.upper_covers(i);
            if (lower.size() == 1) {
                step = RemovalStep{current.id(i), BeatKind::Down, current.id(lower[0])};
                break;
            }
            if (upper.size() == 1) {
                step = RemovalStep{current.id(i), BeatKind::Up, current.id(upper[0])};
                break;
            }
        }
        if (!step) break;
        log.push_back(*step);
        std::vector<int> keep;
        for (int i = 0; i < current.size(); ++i)
            if (current.id(i) != step->element) keep.push_back(i);
        current = current.induced(keep);
    }

    auto core_ptr = std::make_shared<FinitePoset>(std::move(current));
    MonotoneMap inclusion{core_ptr, X, {}};
    inclusion.assignment.resize(core_ptr->size());
    for (int i = 0; i < core_ptr->size(); ++i)
        inclusion.assignment[i] = X->index_of(core_ptr->id(i));

    // Compose the one-step retractions along the removal order.
    MonotoneMap retraction{X, core_ptr, std::vector<int>(X->size())};
    for (int i = 0; i < X->size(); ++i) {
        std::string cur = X->id(i);
        for (const auto& s : log)
            if (cur == s.element) cur = s.image;
        retraction.assignment[i] = core_ptr->index_of(cur);
    }
    return CoreResult{core_ptr, inclusion, retraction, log};
}

// The fence id = F_0, F_1, ..., F_m = inclusion . retraction of self-maps of
// X, one step per removal-log entry. Consecutive maps differ at one element
// and are pointwise comparable, so this witnesses inclusion . retraction ~ id.
inline std::vector<MonotoneMap> core_identity_fence(const PosetPtr& X, const CoreResult& cr) {
    std::vector<MonotoneMap> fence;
    fence.push_back(identity_map(X));
    std::vector<std::string> where(X->size());
    for (int i = 0; i < X->size(); ++i) where[i] = X->id(i);
    for (const auto& s : cr.removal_log) {
        for (auto& w : where)
            if (w == s.element) w = s.image;
        MonotoneMap f{X, X, std::vector<int>(X->size())};
        for (int i = 0; i < X->size(); ++i) f.assignment[i] = X->index_of(where[i]);
        fence.push_back(f);
    }
    return fence;
}

}  // namespace finshape
