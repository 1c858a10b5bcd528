#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// runner. Every suite is deterministic for a fixed seed and throws
// std::runtime_error with a description on the first violated property.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "finshape/diameter.hpp"
#include "finshape/homology.hpp"
#include "finshape/homotopy.hpp"
#include "finshape/metric.hpp"
#include "finshape/poset.hpp"
#include "finshape/sequence.hpp"
#include "finshape/simplicial.hpp"

namespace testutil {

using namespace finshape;

inline void expect(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error("property violated: " + what);
}

// Random poset on up to max_size elements: a random DAG on index order.
inline PosetPtr random_poset(std::mt19937& rng, int max_size, double edge_prob = 0.3) {
    std::uniform_int_distribution<int> size_dist(1, max_size);
    int n = size_dist(rng);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i)
        ids.push_back("x" + std::string(i < 10 ? "0" : "") + std::to_string(i));
    std::bernoulli_distribution edge(edge_prob);
    std::vector<std::pair<std::string, std::string>> rels;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng)) rels.emplace_back(ids[i], ids[j]);
    return make_poset(std::move(ids), rels);
}

// Random monotone map built along a linear extension; falls back to a
// constant map if the random walk dead-ends repeatedly.
inline MonotoneMap random_monotone(std::mt19937& rng, const PosetPtr& S, const PosetPtr& T,
                                   int tries = 20) {
    std::vector<int> order = S->linear_extension();
    for (int attempt = 0; attempt < tries; ++attempt) {
        std::vector<int> assign(S->size(), -1);
        bool ok = true;
        for (int pos = 0; pos < S->size() && ok; ++pos) {
            int i = order[pos];
            std::vector<int> candidates;
            for (int t = 0; t < T->size(); ++t) {
                bool fits = true;
                for (int k = 0; k < pos; ++k) {
                    int j = order[k];
                    if (S->le(j, i) && !T->le(assign[j], t)) { fits = false; break; }
                }
                if (fits) candidates.push_back(t);
            }
            if (candidates.empty()) { ok = false; break; }
            std::uniform_int_distribution<int> pick(0, static_cast<int>(candidates.size()) - 1);
            assign[i] = candidates[pick(rng)];
        }
        if (!ok) continue;
        MonotoneMap f{S, T, std::move(assign)};
        if (monotone_violations(f).empty()) return f;
    }
    // Constant to a maximal element: always monotone.
    for (int t = 0; t < T->size(); ++t)
        if (T->upper_covers(t).empty()) return constant_map(S, T, T->id(t));
    throw std::runtime_error("random_monotone: no maximal element");
}

// Suite 1: poset of all subsets with diameter < t matches brute force for
// samples of up to 12 points.
inline void suite_diameter_brute_force(unsigned seed, int cases = 40) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> n_dist(1, 12);
    std::uniform_real_distribution<double> coord(0.0, 4.0);
    std::uniform_real_distribution<double> thresh(0.5, 4.0);
    for (int cse = 0; cse < cases; ++cse) {
        int n = n_dist(rng);
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
        auto space = std::make_shared<FiniteMetricSpace>(
            FiniteMetricSpace::from_points(std::move(pts)));
        double t = thresh(rng);
        Sq t_sq = Sq::from_double(t * t);
        std::vector<int> sample(n);
        std::iota(sample.begin(), sample.end(), 0);
        DiameterPoset P = build_diameter_poset(space, sample, t_sq);

        std::set<std::vector<int>> expected;
        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<int> sub;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) sub.push_back(i);
            if (cmp_sq(space->diam_sq(sub, 1e-12), t_sq, 1e-12) < 0) expected.insert(sub);
        }
        std::set<std::vector<int>> got(P.elements.begin(), P.elements.end());
        expect(got == expected, "diameter poset elements differ from brute force");
        for (const auto& a : P.elements)
            for (const auto& b : P.elements) {
                bool subset = std::includes(b.begin(), b.end(), a.begin(), a.end()) && a != b;
                bool lt = P.poset->lt(P.find(a), P.find(b));
                expect(subset == lt, "diameter poset order differs from strict inclusion");
            }
    }
}

// Suite 2: the core has the same Betti numbers as the original poset.
inline void suite_core_homology_invariance(unsigned seed, int cases = 200) {
    std::mt19937 rng(seed);
    for (int cse = 0; cse < cases; ++cse) {
        PosetPtr X = random_poset(rng, 12);
        CoreResult cr = core(X);
        std::vector<int> a = poset_betti(*X, 2), b = poset_betti(*cr.core, 2);
        a.resize(std::max(a.size(), b.size()), 0);
        b.resize(a.size(), 0);
        expect(a == b, "beat-point removal changed Betti numbers");
        expect(assignments_equal(compose(cr.retraction, cr.inclusion), identity_map(cr.core)),
               "retraction after inclusion is not the identity on the core");
    }
}

// Suite 3: exact homotopy verdicts match a brute-force oracle that filters
// all |T|^|S| functions and walks comparability components.
inline void suite_homotopic_oracle(unsigned seed, int cases = 100) {
    std::mt19937 rng(seed);
    for (int cse = 0; cse < cases; ++cse) {
        PosetPtr S = random_poset(rng, 4, 0.4);
        PosetPtr T = random_poset(rng, 4, 0.4);
        // Brute force: all functions, keep the monotone ones.
        std::vector<std::vector<int>> all;
        std::vector<int> f(S->size(), 0);
        for (;;) {
            MonotoneMap m{S, T, f};
            if (monotone_violations(m).empty()) all.push_back(f);
            int pos = 0;
            while (pos < S->size() && ++f[pos] == T->size()) f[pos++] = 0;
            if (pos == S->size()) break;
        }
        expect(!all.empty(), "no monotone maps at all");
        // Component labels via repeated BFS.
        std::vector<int> comp(all.size(), -1);
        int n_comp = 0;
        auto comparable = [&](const std::vector<int>& a, const std::vector<int>& b) {
            bool le = true, ge = true;
            for (int i = 0; i < S->size(); ++i) {
                if (!T->le(a[i], b[i])) le = false;
                if (!T->le(b[i], a[i])) ge = false;
            }
            return le || ge;
        };
        for (size_t s = 0; s < all.size(); ++s) {
            if (comp[s] >= 0) continue;
            std::vector<size_t> queue{s};
            comp[s] = n_comp;
            while (!queue.empty()) {
                size_t cur = queue.back();
                queue.pop_back();
                for (size_t nxt = 0; nxt < all.size(); ++nxt)
                    if (comp[nxt] < 0 && comparable(all[cur], all[nxt])) {
                        comp[nxt] = n_comp;
                        queue.push_back(nxt);
                    }
            }
            ++n_comp;
        }
        std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
        size_t a = pick(rng), b = pick(rng);
        MonotoneMap fa{S, T, all[a]}, fb{S, T, all[b]};
        HomotopyResult r = homotopic(fa, fb, HomotopyMode::Exact);
        bool oracle = comp[a] == comp[b];
        expect(r.verdict == (oracle ? HomotopyVerdict::Yes : HomotopyVerdict::No),
               "exact homotopy verdict disagrees with the brute-force oracle");
        if (r.verdict == HomotopyVerdict::Yes) {
            expect(assignments_equal(r.fence.front(), fa) && assignments_equal(r.fence.back(), fb),
                   "fence endpoints are not the tested maps");
            for (size_t i = 0; i + 1 < r.fence.size(); ++i)
                expect(pointwise_comparable(r.fence[i], r.fence[i + 1]),
                       "fence has a non-comparable step");
        }
    }
}

// Suite 4: induced homology maps are functorial and homotopy-invariant.
inline void suite_induced_map_properties(unsigned seed, int cases = 100) {
    std::mt19937 rng(seed);
    for (int cse = 0; cse < cases; ++cse) {
        PosetPtr X = random_poset(rng, 6);
        PosetPtr Y = random_poset(rng, 6);
        PosetPtr Z = random_poset(rng, 6);
        MonotoneMap f = random_monotone(rng, X, Y);
        MonotoneMap g = random_monotone(rng, Y, Z);
        int max_l = std::max(X->height(), std::max(Y->height(), Z->height()));
        for (int l = 0; l <= max_l; ++l) {
            GFMatrix lhs = induced_homology_map(compose(g, f), l, 2);
            GFMatrix rhs = gf::multiply(induced_homology_map(g, l, 2),
                                        induced_homology_map(f, l, 2));
            expect(lhs.a == rhs.a, "induced maps are not functorial");
        }
        GFMatrix id_mat = induced_homology_map(identity_map(X), 1, 2);
        expect(id_mat.a == GFMatrix::identity(2, id_mat.rows).a,
               "identity does not induce the identity");

        // Perturb f at one point to a pointwise-comparable neighbour.
        MonotoneMap h = f;
        std::uniform_int_distribution<int> pick(0, X->size() - 1);
        for (int attempt = 0; attempt < 10 && assignments_equal(f, h); ++attempt) {
            int i = pick(rng);
            for (int t = 0; t < Y->size(); ++t) {
                if (t == f.assignment[i] || !Y->comparable(t, f.assignment[i])) continue;
                MonotoneMap trial = f;
                trial.assignment[i] = t;
                if (monotone_violations(trial).empty()) { h = trial; break; }
            }
        }
        expect(pointwise_comparable(f, h) || assignments_equal(f, h),
               "perturbation lost comparability");
        for (int l = 0; l <= X->height() || l <= Y->height(); ++l) {
            GFMatrix a = induced_homology_map(f, l, 2);
            GFMatrix b = induced_homology_map(h, l, 2);
            expect(a.a == b.a, "homotopic maps induce different homology maps");
        }
    }
}

// Suite 5: chain complexes of random order complexes build cleanly (the
// boundary-of-boundary check is enforced during construction) and the order
// complex dimension equals the poset height.
inline void suite_complex_dimension(unsigned seed, int cases = 200) {
    std::mt19937 rng(seed);
    for (int cse = 0; cse < cases; ++cse) {
        PosetPtr X = random_poset(rng, 9);
        SimplicialComplex K = order_complex(*X);
        chain_complex(K, 2);   // throws if dd != 0
        chain_complex(K, 3);
        expect(K.dimension() == X->height(), "order complex dimension differs from height");
    }
}

struct VerifyTally {
    int sequences = 0;
    int equality_passes = 0;
    int homotopy_checks = 0;
    int homotopy_passes = 0;
    int failures = 0;
    int inconclusive_sequences = 0;
};

// Criterion support: random inverse sequences, core them, verify the ladder.
inline VerifyTally suite_verify_random_sequences(unsigned seed, int cases = 50) {
    std::mt19937 rng(seed);
    VerifyTally tally;
    std::uniform_int_distribution<int> stage_count(2, 4);
    for (int cse = 0; cse < cases; ++cse) {
        InverseSequence S;
        int stages = stage_count(rng);
        for (int n = 0; n < stages; ++n) S.stages.push_back(random_poset(rng, 15));
        for (int n = 0; n + 1 < stages; ++n)
            S.bonds.push_back(random_monotone(rng, S.stages[n + 1], S.stages[n]));
        SequenceCoreResult R = sequence_core(S);
        VerificationReport rep = verify_core_equivalence(S, R);
        ++tally.sequences;
        bool any_inconclusive = false;
        for (const auto& c : rep.checks) {
            if (c.diagram == "triangle-equality") {
                if (c.verdict == CheckVerdict::Pass) ++tally.equality_passes;
                else ++tally.failures;
            } else {
                ++tally.homotopy_checks;
                if (c.verdict == CheckVerdict::Pass) ++tally.homotopy_passes;
                else if (c.verdict == CheckVerdict::Fail) ++tally.failures;
                else any_inconclusive = true;
            }
        }
        if (any_inconclusive) ++tally.inconclusive_sequences;
    }
    return tally;
}

}  // namespace testutil
