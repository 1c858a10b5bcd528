#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "finshape/errors.hpp"
#include "finshape/metric.hpp"
#include "finshape/poset.hpp"
#include "finshape/scalar.hpp"

namespace finshape {

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

struct BuildOptions {
    std::size_t max_elements = 200000;
    double eta = 1e-12;
};

inline std::string subset_id(const std::vector<int>& subset) {
    std::string id;
    for (size_t i = 0; i < subset.size(); ++i) {
        if (i) id += ',';
        id += std::to_string(subset[i]);
    }
    return id;
}

// The poset U_t(A) of subsets of A with diameter strictly below t, ordered by
// inclusion. Elements are canonical sorted lists of global point indices.
struct DiameterPoset {
    SpacePtr space;
    std::vector<int> sample;  // global point indices, ascending
    Sq threshold_sq;
    PosetPtr poset;
    std::vector<std::vector<int>> elements;  // per poset element, ascending indices
    std::map<std::vector<int>, int> element_index;
    int tie_warnings = 0;

    int find(const std::vector<int>& subset) const {
        auto it = element_index.find(subset);
        return it == element_index.end() ? -1 : it->second;
    }
};

// A subset has diameter < t iff all its pairs do, so the elements are exactly
// the cliques of the strict-threshold graph on the sample.
inline DiameterPoset build_diameter_poset(SpacePtr space, std::vector<int> sample,
                                          const Sq& threshold_sq,
                                          const BuildOptions& opts = {}) {
    if (sample.empty()) throw input_error("diameter poset over an empty sample");
    if (!(threshold_sq.value > 0)) throw input_error("threshold must be positive");
    std::sort(sample.begin(), sample.end());

    DiameterPoset P;
    P.space = space;
    P.sample = sample;
    P.threshold_sq = threshold_sq;

    int n = static_cast<int>(sample.size());
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            Sq d = space->dist_sq(sample[a], sample[b]);
            int c = cmp_sq(d, threshold_sq, opts.eta);
            if (c == 0 && !(d.exact && threshold_sq.exact)) ++P.tie_warnings;
            if (c < 0) adj[a][b] = adj[b][a] = 1;
        }

    // Ordered depth-first clique extension; cliques come out sorted by their
    // local index lists.
    std::vector<std::vector<int>> cliques;
    std::vector<int> current;
    auto extend = [&](auto&& self, int from) -> void {
        for (int v = from; v < n; ++v) {
            bool ok = true;
            for (int u : current)
                if (!adj[u][v]) { ok = false; break; }
            if (!ok) continue;
            current.push_back(v);
            if (cliques.size() >= opts.max_elements)
                throw capacity_error("diameter poset exceeds the element cap of " +
                                     std::to_string(opts.max_elements) +
                                     " while extending a clique of size " +
                                     std::to_string(current.size()));
            cliques.push_back(current);
            self(self, v + 1);
            current.pop_back();
        }
    };
    extend(extend, 0);

    for (auto& c : cliques)
        for (int& v : c) v = sample[v];
    std::sort(cliques.begin(), cliques.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    std::vector<std::string> ids;
    ids.reserve(cliques.size());
    for (size_t i = 0; i < cliques.size(); ++i) {
        ids.push_back(subset_id(cliques[i]));
        P.element_index.emplace(cliques[i], static_cast<int>(i));
    }
    std::vector<std::pair<std::string, std::string>> rels;
    for (const auto& c : cliques) {
        if (c.size() == 1) continue;
        for (size_t drop = 0; drop < c.size(); ++drop) {
            std::vector<int> face;
            for (size_t i = 0; i < c.size(); ++i)
                if (i != drop) face.push_back(c[i]);
            rels.emplace_back(subset_id(face), subset_id(c));
        }
    }
    P.elements = std::move(cliques);
    P.poset = make_poset(std::move(ids), rels);
    return P;
}

namespace detail {

inline Sq image_diam_checked(const DiameterPoset& dst, const std::vector<int>& image,
                             const std::string& what, const std::string& src_id,
                             double eta) {
    Sq d = dst.space->diam_sq(image, eta);
    if (cmp_sq(d, dst.threshold_sq, eta) >= 0)
        throw welldef_error(what + ": image of " + src_id +
                            " has diameter at or above the target threshold");
    return d;
}

}  // namespace detail

// q(C) = union over c in C of the eps_n-ball around c intersected with the
// coarser sample.
inline MonotoneMap bonding_q(const DiameterPoset& src, const DiameterPoset& dst,
                             const Sq& eps_sq, double eta = 1e-12) {
    MonotoneMap f{src.poset, dst.poset, std::vector<int>(src.poset->size())};
    for (int e = 0; e < src.poset->size(); ++e) {
        std::vector<int> image;
        for (int a : dst.sample) {
            bool hit = false;
            for (int c : src.elements[e])
                if (cmp_sq(dst.space->dist_sq(a, c), eps_sq, eta) < 0) { hit = true; break; }
            if (hit) image.push_back(a);
        }
        if (image.empty())
            throw construction_error("bonding_q: empty image for element " +
                                     src.poset->id(e) +
                                     " (coarser sample is not an epsilon-approximation of it)");
        detail::image_diam_checked(dst, image, "bonding_q", src.poset->id(e), eta);
        int idx = dst.find(image);
        if (idx < 0)
            throw welldef_error("bonding_q: image of " + src.poset->id(e) +
                                " is not an element of the target poset");
        f.assignment[e] = idx;
    }
    validate_monotone(f);
    return f;
}

// Nearest points of `sample` to global point x, ties kept. Exact coordinates
// decide ties exactly; otherwise ties within eta are all retained.
inline std::vector<int> nearest_set(const FiniteMetricSpace& M, int x,
                                    const std::vector<int>& sample, double eta = 1e-12) {
    Sq best = M.dist_sq(x, sample[0]);
    for (int a : sample) {
        Sq d = M.dist_sq(x, a);
        if (cmp_sq(d, best, eta) < 0) best = d;
    }
    std::vector<int> out;
    for (int a : sample)
        if (cmp_sq(M.dist_sq(x, a), best, eta) <= 0) out.push_back(a);
    return out;
}

// p(C) = union over x in C of the nearest points of the coarser sample to x.
inline MonotoneMap bonding_p(const DiameterPoset& src, const DiameterPoset& dst,
                             double eta = 1e-12) {
    std::map<int, std::vector<int>> nearest;
    for (int x : src.sample) nearest[x] = nearest_set(*src.space, x, dst.sample, eta);
    MonotoneMap f{src.poset, dst.poset, std::vector<int>(src.poset->size())};
    for (int e = 0; e < src.poset->size(); ++e) {
        std::vector<int> image;
        for (int x : src.elements[e])
            for (int a : nearest[x]) image.push_back(a);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        detail::image_diam_checked(dst, image, "bonding_p", src.poset->id(e), eta);
        int idx = dst.find(image);
        if (idx < 0)
            throw welldef_error("bonding_p: image of " + src.poset->id(e) +
                                " is not an element of the target poset");
        f.assignment[e] = idx;
    }
    validate_monotone(f);
    return f;
}

// The element of P given by the nearest sample points to x.
inline int point_map(const FiniteMetricSpace& M, int x, const DiameterPoset& P,
                     double eta = 1e-12) {
    std::vector<int> image = nearest_set(M, x, P.sample, eta);
    detail::image_diam_checked(P, image, "point_map", M.point_repr(x), eta);
    int idx = P.find(image);
    if (idx < 0)
        throw welldef_error("point_map: nearest set of " + M.point_repr(x) +
                            " is not an element of the poset");
    return idx;
}

// (f u g)(x) = f(x) u g(x) into a common diameter poset; well-defined only
// when every union stays below the threshold.
inline MonotoneMap union_map(const MonotoneMap& f, const MonotoneMap& g,
                             const DiameterPoset& P, double eta = 1e-12) {
    if (!f.source->same_content(*g.source))
        throw input_error("union_map: maps do not share a source");
    if (!f.target->same_content(*P.poset) || !g.target->same_content(*P.poset))
        throw input_error("union_map: maps do not land in the given diameter poset");
    MonotoneMap h{f.source, P.poset, std::vector<int>(f.source->size())};
    for (int i = 0; i < f.source->size(); ++i) {
        int gi = g.source.get() == f.source.get() ? i : g.source->index_of(f.source->id(i));
        std::vector<int> image = P.elements[f.assignment[i]];
        for (int v : P.elements[g.assignment[gi]]) image.push_back(v);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        Sq d = P.space->diam_sq(image, eta);
        if (cmp_sq(d, P.threshold_sq, eta) >= 0)
            throw welldef_error("union_map: union at " + f.source->id(i) +
                                " has diameter at or above the threshold");
        int idx = P.find(image);
        if (idx < 0)
            throw welldef_error("union_map: union at " + f.source->id(i) +
                                " is not an element of the poset");
        h.assignment[i] = idx;
    }
    validate_monotone(h);
    return h;
}

enum class BondVariant { Q, P };

// Strictly decreasing epsilon values (stored squared) with the halving
// constraint eps_{n+1} < eps_n / 2.
struct EpsilonSchedule {
    std::vector<Sq> eps_sq;
    BondVariant variant = BondVariant::Q;

    void validate() const {
        if (eps_sq.empty()) throw input_error("empty epsilon schedule");
        for (const auto& e : eps_sq)
            if (!(e.value > 0)) throw input_error("epsilon values must be positive");
        for (size_t n = 0; n + 1 < eps_sq.size(); ++n)
            if (cmp_sq(eps_sq[n + 1], eps_sq[n].scaled(Rat(1, 4)), 0.0) >= 0)
                throw input_error("schedule violates eps_{n+1} < eps_n / 2 at stage " +
                                  std::to_string(n + 2));
    }

    // 4 eps for the q variant, 2 eps for the p variant (squared: 16x / 4x).
    Sq threshold_sq(size_t n) const {
        return eps_sq[n].scaled(variant == BondVariant::Q ? Rat(16) : Rat(4));
    }
};

struct FiniteApproximation {
    SpacePtr space;
    EpsilonSchedule schedule;
    std::vector<std::vector<int>> samples;
    std::vector<DiameterPoset> stages;
    std::vector<MonotoneMap> bonds;  // bonds[n]: stage n+1 poset -> stage n poset
};

inline FiniteApproximation build_finite_approximation(
    SpacePtr space, const EpsilonSchedule& schedule, int n_stages,
    SamplingMethod method = SamplingMethod::Greedy,
    const std::vector<std::vector<int>>& given_samples = {}, const BuildOptions& opts = {}) {
    schedule.validate();
    if (n_stages < 1 || n_stages > static_cast<int>(schedule.eps_sq.size()))
        throw input_error("stage count does not match the schedule");

    FiniteApproximation fa;
    fa.space = space;
    fa.schedule = schedule;
    auto at_stage = [](int n, auto&& fn) {
        try {
            fn();
        } catch (const capacity_error& e) {
            throw capacity_error("stage " + std::to_string(n + 1) + ": " + e.what());
        } catch (const welldef_error& e) {
            throw welldef_error("stage " + std::to_string(n + 1) + ": " + e.what());
        } catch (const construction_error& e) {
            throw construction_error("stage " + std::to_string(n + 1) + ": " + e.what());
        }
    };
    for (int n = 0; n < n_stages; ++n) {
        at_stage(n, [&] {
            std::vector<int> given = method == SamplingMethod::Given && n < static_cast<int>(given_samples.size())
                                         ? given_samples[n]
                                         : std::vector<int>{};
            auto sample = epsilon_approximation(*space, schedule.eps_sq[n], method, given, opts.eta);
            fa.samples.push_back(sample);
            fa.stages.push_back(
                build_diameter_poset(space, sample, schedule.threshold_sq(n), opts));
        });
    }
    for (int n = 0; n + 1 < n_stages; ++n) {
        at_stage(n + 1, [&] {
            fa.bonds.push_back(schedule.variant == BondVariant::Q
                                   ? bonding_q(fa.stages[n + 1], fa.stages[n],
                                               schedule.eps_sq[n], opts.eta)
                                   : bonding_p(fa.stages[n + 1], fa.stages[n], opts.eta));
        });
    }
    return fa;
}

}  // namespace finshape
