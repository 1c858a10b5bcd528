#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "finshape/errors.hpp"
#include "finshape/homotopy.hpp"
#include "finshape/poset.hpp"
#include "finshape/simplicial.hpp"

namespace finshape {

// A finite prefix of an inverse sequence X_1 <- X_2 <- ... with monotone
// bonds t_{n,n+1}: X_{n+1} -> X_n.
struct InverseSequence {
    std::vector<PosetPtr> stages;
    std::vector<MonotoneMap> bonds;  // bonds[n]: stages[n+1] -> stages[n]

    void validate() const {
        if (stages.empty()) throw input_error("inverse sequence with no stages");
        if (bonds.size() + 1 != stages.size())
            throw input_error("inverse sequence needs one bond per consecutive stage pair");
        for (size_t n = 0; n < bonds.size(); ++n) {
            if (!bonds[n].source->same_content(*stages[n + 1]) ||
                !bonds[n].target->same_content(*stages[n]))
                throw input_error("bond " + std::to_string(n + 1) +
                                  " does not connect stage " + std::to_string(n + 2) +
                                  " to stage " + std::to_string(n + 1));
            validate_monotone(bonds[n]);
        }
    }
};

struct SequenceCoreResult {
    InverseSequence core_sequence;  // stages C_n, bonds h_{n,n+1} = r_n t i_{n+1}
    std::vector<CoreResult> witnesses;
    std::vector<MonotoneMap> comparison_maps;  // g_n = r_n t_{n,n+1}: X_{n+1} -> C_n
};

inline SequenceCoreResult sequence_core(const InverseSequence& S) {
    S.validate();
    SequenceCoreResult R;
    for (const auto& X : S.stages) R.witnesses.push_back(core(X));
    for (const auto& w : R.witnesses) R.core_sequence.stages.push_back(w.core);
    for (size_t n = 0; n < S.bonds.size(); ++n) {
        MonotoneMap g = compose(R.witnesses[n].retraction, S.bonds[n]);
        R.comparison_maps.push_back(g);
        R.core_sequence.bonds.push_back(compose(g, R.witnesses[n + 1].inclusion));
    }
    R.core_sequence.validate();
    return R;
}

enum class CheckVerdict { Pass, Fail, Inconclusive };

inline const char* to_string(CheckVerdict v) {
    switch (v) {
        case CheckVerdict::Pass: return "pass";
        case CheckVerdict::Fail: return "fail";
        default: return "inconclusive";
    }
}

struct DiagramCheck {
    int stage = 0;           // n, for the ladder between stages n and n+1
    std::string diagram;     // square-inclusion | triangle-equality | triangle-retraction
    CheckVerdict verdict = CheckVerdict::Inconclusive;
    int fence_length = -1;   // -1 when no fence applies
};

struct VerificationReport {
    std::vector<DiagramCheck> checks;

    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const DiagramCheck& c) { return c.verdict == CheckVerdict::Pass; });
    }
    bool any_failed() const {
        return std::any_of(checks.begin(), checks.end(),
                           [](const DiagramCheck& c) { return c.verdict == CheckVerdict::Fail; });
    }
};

namespace detail {

// Validates that `fence` really connects `from` to `to` by pointwise
// comparable monotone steps; returns its length, or -1 if broken.
inline int checked_fence(const std::vector<MonotoneMap>& fence, const MonotoneMap& from,
                         const MonotoneMap& to) {
    if (fence.empty()) return -1;
    if (!assignments_equal(fence.front(), from) || !assignments_equal(fence.back(), to))
        return -1;
    for (const auto& step : fence)
        if (!monotone_violations(step).empty()) return -1;
    for (size_t i = 0; i + 1 < fence.size(); ++i)
        if (!pointwise_comparable(fence[i], fence[i + 1])) return -1;
    return static_cast<int>(fence.size()) - 1;
}

}  // namespace detail

// Constructive check of the ladder diagrams comparing a sequence with its
// core: per n, (a) i_n h_{n,n+1} is homotopic to t_{n,n+1} i_{n+1}, (b)
// g_n i_{n+1} = h_{n,n+1} strictly, (c) i_n g_n is homotopic to t_{n,n+1}.
// (a) and (c) are witnessed by the removal-log fence for i_n r_n ~ id,
// composed with the fixed right leg; if that fence breaks we fall back to a
// homotopy search in the given mode.
inline VerificationReport verify_core_equivalence(const InverseSequence& S,
                                                  const SequenceCoreResult& R,
                                                  HomotopyMode mode = HomotopyMode::Witness,
                                                  const HomotopyOptions& opts = {}) {
    S.validate();
    VerificationReport report;
    for (size_t n = 0; n < S.bonds.size(); ++n) {
        const auto& w = R.witnesses[n];
        const auto& h = R.core_sequence.bonds[n];
        const auto& g = R.comparison_maps[n];
        const auto& t = S.bonds[n];
        const auto& inc_next = R.witnesses[n + 1].inclusion;

        auto fence_against = [&](const MonotoneMap& right_leg, const MonotoneMap& lhs,
                                 const std::string& name) {
            std::vector<MonotoneMap> fence;
            for (const auto& step : core_identity_fence(S.stages[n], w))
                fence.push_back(compose(step, right_leg));
            DiagramCheck check{static_cast<int>(n) + 1, name, CheckVerdict::Inconclusive, -1};
            int len = detail::checked_fence(fence, right_leg, lhs);
            if (len >= 0) {
                check.verdict = CheckVerdict::Pass;
                check.fence_length = len;
            } else {
                auto hres = homotopic(lhs, right_leg, mode, opts);
                if (hres.verdict == HomotopyVerdict::Yes) {
                    check.verdict = CheckVerdict::Pass;
                    check.fence_length = static_cast<int>(hres.fence.size()) - 1;
                } else if (hres.verdict == HomotopyVerdict::No) {
                    check.verdict = CheckVerdict::Fail;
                }
            }
            return check;
        };

        // (a) square: i_n h_{n,n+1} ~ t_{n,n+1} i_{n+1}.
        report.checks.push_back(
            fence_against(compose(t, inc_next), compose(w.inclusion, h), "square-inclusion"));

        // (b) triangle: g_n i_{n+1} = h_{n,n+1}, strict.
        DiagramCheck eq{static_cast<int>(n) + 1, "triangle-equality", CheckVerdict::Fail, -1};
        if (assignments_equal(compose(g, inc_next), h)) eq.verdict = CheckVerdict::Pass;
        report.checks.push_back(eq);

        // (c) triangle: i_n g_n ~ t_{n,n+1}.
        report.checks.push_back(fence_against(t, compose(w.inclusion, g), "triangle-retraction"));
    }
    return report;
}

// Restriction of a sequence to per-stage lower sets that the bonds respect.
inline InverseSequence restrict_sequence(const InverseSequence& S,
                                         const std::vector<std::vector<std::string>>& selections) {
    S.validate();
    if (selections.size() != S.stages.size())
        throw input_error("restrict_sequence: one selection per stage required");

    InverseSequence out;
    std::vector<std::vector<int>> picked;
    for (size_t n = 0; n < S.stages.size(); ++n) {
        const auto& X = *S.stages[n];
        std::set<int> chosen;
        for (const auto& id : selections[n]) chosen.insert(X.index_of(id));
        for (int i : chosen)
            for (int j = 0; j < X.size(); ++j)
                if (X.lt(j, i) && !chosen.count(j))
                    throw input_error("restrict_sequence: selection at stage " +
                                      std::to_string(n + 1) + " is not a lower set (misses " +
                                      X.id(j) + " below " + X.id(i) + ")");
        picked.emplace_back(chosen.begin(), chosen.end());
        out.stages.push_back(std::make_shared<FinitePoset>(X.induced(picked.back())));
    }
    for (size_t n = 0; n < S.bonds.size(); ++n) {
        const auto& t = S.bonds[n];
        MonotoneMap r{out.stages[n + 1], out.stages[n],
                      std::vector<int>(out.stages[n + 1]->size())};
        for (int i = 0; i < out.stages[n + 1]->size(); ++i) {
            int big = S.stages[n + 1]->index_of(out.stages[n + 1]->id(i));
            const std::string& image = S.stages[n]->id(t.assignment[big]);
            if (!out.stages[n]->contains(image))
                throw construction_error("restrict_sequence: bond image of " +
                                         out.stages[n + 1]->id(i) +
                                         " escapes the stage-" + std::to_string(n + 1) +
                                         " selection");
            r.assignment[i] = out.stages[n]->index_of(image);
        }
        out.bonds.push_back(r);
    }
    out.validate();
    return out;
}

// The tower X, sd(X), sd(sd(X)), ... with bonds sending a chain to its
// maximum element.
inline InverseSequence barycentric_tower(const PosetPtr& X, int depth,
                                         std::size_t stage_cap = 200000) {
    if (depth < 1) throw input_error("barycentric_tower: depth must be at least 1");
    InverseSequence S;
    S.stages.push_back(X);
    for (int n = 1; n < depth; ++n) {
        auto fp = face_poset_with_members(order_complex(*S.stages.back()));
        if (static_cast<std::size_t>(fp.poset->size()) > stage_cap)
            throw capacity_error("barycentric_tower: stage " + std::to_string(n + 1) +
                                 " exceeds the cap of " + std::to_string(stage_cap));
        const FinitePoset& prev = *S.stages.back();
        MonotoneMap h{fp.poset, S.stages.back(), std::vector<int>(fp.poset->size())};
        for (int i = 0; i < fp.poset->size(); ++i) {
            const auto& chain = fp.members[i];
            int top = chain[0];
            for (int v : chain)
                if (prev.le(top, v)) top = v;
            h.assignment[i] = top;
        }
        validate_monotone(h);
        S.stages.push_back(fp.poset);
        S.bonds.push_back(h);
    }
    S.validate();
    return S;
}

struct SequenceHeight {
    int max_height = 0;
    std::vector<int> per_stage;
};

inline SequenceHeight sequence_height(const InverseSequence& S) {
    S.validate();
    SequenceHeight out;
    for (const auto& X : S.stages) out.per_stage.push_back(X->height());
    out.max_height = *std::max_element(out.per_stage.begin(), out.per_stage.end());
    return out;
}

}  // namespace finshape
