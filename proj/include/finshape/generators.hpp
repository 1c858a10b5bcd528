#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "finshape/diameter.hpp"
#include "finshape/errors.hpp"
#include "finshape/metric.hpp"
#include "finshape/scalar.hpp"

namespace finshape {

using RatPoint = std::pair<Rat, Rat>;

namespace sine_detail {

inline bool is_pow2_reciprocal(const Rat& x) {
    if (x.numerator() != 1) return x == Rat(1);
    long long d = x.denominator();
    return (d & (d - 1)) == 0;
}

// Membership in the comb model: the limit segment at x = 0, the vertical
// teeth at x = 1/2^k, and the alternating top/bottom joins.
inline bool on_curve(const Rat& x, const Rat& y) {
    const Rat half(1, 2);
    if (x < Rat(0) || x > Rat(1) || y < Rat(0) || y > half) return false;
    if (x == Rat(0)) return true;                   // a_infinity
    if (is_pow2_reciprocal(x)) return true;         // some a_k
    if (y == half) {                                // top joins b-bar_k
        for (Rat hi(1); hi >= x; hi /= 4)
            if (x >= hi / 2 && x <= hi) return true;
        return false;
    }
    if (y == Rat(0)) {                              // bottom joins b-underline_k
        for (Rat hi(1, 2); hi >= x; hi /= 4)
            if (x >= hi / 2 && x <= hi) return true;
        return false;
    }
    return false;
}

}  // namespace sine_detail

struct SineStage {
    int stage = 1;
    std::vector<RatPoint> points;  // sorted by (x, y)
    Rat eps_sq;                    // epsilon_n squared
};

// Stage samples of the computational topologist's sine curve: the grid
// G_n = (l/2^{3n-4}, k/2^{3n-4}) intersected with the curve, patched with the
// odd midpoints on the limit segment. Stage 1 is the designated single point
// (0, 1/4) with epsilon_1 = sqrt(5).
inline SineStage generate_sine_curve(int stage, bool allow_large = false) {
    if (stage < 1 || stage > 4 || (stage == 4 && !allow_large))
        throw input_error("sine-curve stage must be 1, 2 or 3 (4 behind the capacity flag)");
    SineStage out;
    out.stage = stage;
    if (stage == 1) {
        out.points.push_back({Rat(0), Rat(1, 4)});
        out.eps_sq = Rat(5);
        return out;
    }
    long long grid_den = 1LL << (3 * stage - 4);  // grid spacing 1/2^{3n-4}
    std::set<RatPoint> pts;
    for (long long i = 0; i <= grid_den; ++i)
        for (long long j = 0; j <= grid_den / 2; ++j) {
            Rat x(i, grid_den), y(j, grid_den);
            if (sine_detail::on_curve(x, y)) pts.insert({x, y});
        }
    long long mid_den = 2 * grid_den;  // 2^{3n-3}
    for (long long k = 0; k < grid_den / 2; ++k)
        pts.insert({Rat(0), Rat(2 * k + 1, mid_den)});
    out.points.assign(pts.begin(), pts.end());
    out.eps_sq = Rat(2) / Rat(mid_den * mid_den);  // (sqrt(2)/2^{3n-3})^2
    return out;
}

struct SinePipelineInput {
    SpacePtr space;                        // union of all stage samples
    std::vector<std::vector<int>> samples; // per-stage indices into the union
    EpsilonSchedule schedule;              // variant p, thresholds 2 eps_n
};

// Assembles the desk-scale metric space for the sine-curve pipeline: the
// union of the stage samples with each A_n designated as a given sample.
inline SinePipelineInput sine_pipeline_input(int stages, bool allow_large = false) {
    std::vector<SineStage> stage_data;
    for (int n = 1; n <= stages; ++n) stage_data.push_back(generate_sine_curve(n, allow_large));

    std::set<RatPoint> all;
    for (const auto& s : stage_data) all.insert(s.points.begin(), s.points.end());
    std::vector<RatPoint> ordered(all.begin(), all.end());
    std::map<RatPoint, int> where;
    std::vector<std::vector<Rat>> coords;
    for (size_t i = 0; i < ordered.size(); ++i) {
        where[ordered[i]] = static_cast<int>(i);
        coords.push_back({ordered[i].first, ordered[i].second});
    }

    SinePipelineInput out;
    out.space = std::make_shared<FiniteMetricSpace>(
        FiniteMetricSpace::from_exact_points(std::move(coords)));
    for (const auto& s : stage_data) {
        std::vector<int> sample;
        for (const auto& p : s.points) sample.push_back(where.at(p));
        std::sort(sample.begin(), sample.end());
        out.samples.push_back(std::move(sample));
        out.schedule.eps_sq.push_back(Sq::from_exact(s.eps_sq));
    }
    out.schedule.variant = BondVariant::P;
    return out;
}

// n equally spaced points on the unit circle.
inline FiniteMetricSpace generate_circle(int n) {
    if (n < 3) throw input_error("circle generator needs at least 3 points");
    std::vector<std::vector<double>> coords;
    const double tau = 2.0 * std::acos(-1.0);
    for (int k = 0; k < n; ++k)
        coords.push_back({std::cos(tau * k / n), std::sin(tau * k / n)});
    return FiniteMetricSpace::from_points(std::move(coords));
}

// n uniform points on [0, 1], as a 1-d point cloud.
inline FiniteMetricSpace generate_interval(int n) {
    if (n < 2) throw input_error("interval generator needs at least 2 points");
    std::vector<std::vector<double>> coords;
    for (int k = 0; k < n; ++k)
        coords.push_back({static_cast<double>(k) / (n - 1)});
    return FiniteMetricSpace::from_points(std::move(coords));
}

}  // namespace finshape
