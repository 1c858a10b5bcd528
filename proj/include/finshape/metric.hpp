#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finshape/errors.hpp"
#include "finshape/scalar.hpp"

namespace finshape {

// A finite metric space: either points in R^d (floating or exact rational
// coordinates) or an explicit symmetric distance matrix. Stands in for a
// compact metric space at desk scale.
class FiniteMetricSpace {
public:
    static FiniteMetricSpace from_points(std::vector<std::vector<double>> coords) {
        FiniteMetricSpace m;
        m.coords_ = std::move(coords);
        m.check_dims();
        return m;
    }

    static FiniteMetricSpace from_exact_points(std::vector<std::vector<Rat>> coords) {
        FiniteMetricSpace m;
        m.exact_ = std::move(coords);
        m.coords_.reserve(m.exact_->size());
        for (const auto& p : *m.exact_) {
            std::vector<double> q;
            for (const auto& c : p) q.push_back(to_double(c));
            m.coords_.push_back(std::move(q));
        }
        m.check_dims();
        return m;
    }

    static FiniteMetricSpace from_matrix(std::vector<std::vector<double>> d) {
        FiniteMetricSpace m;
        m.matrix_ = std::move(d);
        const auto& mat = *m.matrix_;
        for (size_t i = 0; i < mat.size(); ++i) {
            if (mat[i].size() != mat.size()) throw input_error("distance matrix is not square");
            if (mat[i][i] != 0.0) throw input_error("distance matrix has a non-zero diagonal");
            for (size_t j = 0; j < mat.size(); ++j) {
                if (mat[i][j] < 0.0) throw input_error("negative distance in matrix");
                if (mat[i][j] != mat[j][i]) throw input_error("distance matrix is not symmetric");
                if (i != j && mat[i][j] == 0.0)
                    throw input_error("zero distance off the diagonal");
            }
        }
        return m;
    }

    int size() const {
        return matrix_ ? static_cast<int>(matrix_->size()) : static_cast<int>(coords_.size());
    }

    int dim() const { return coords_.empty() ? 0 : static_cast<int>(coords_[0].size()); }

    bool has_exact() const { return exact_.has_value(); }

    const std::vector<std::vector<double>>& coords() const { return coords_; }
    const std::vector<std::vector<Rat>>& exact_coords() const { return *exact_; }

    Sq dist_sq(int i, int j) const {
        if (matrix_) {
            double d = (*matrix_)[i][j];
            return Sq::from_double(d * d);
        }
        if (exact_) {
            Rat acc(0);
            for (size_t k = 0; k < (*exact_)[i].size(); ++k) {
                Rat d = (*exact_)[i][k] - (*exact_)[j][k];
                acc += d * d;
            }
            return Sq::from_exact(acc);
        }
        double acc = 0;
        for (size_t k = 0; k < coords_[i].size(); ++k) {
            double d = coords_[i][k] - coords_[j][k];
            acc += d * d;
        }
        return Sq::from_double(acc);
    }

    Sq diam_sq(const std::vector<int>& subset, double eta) const {
        Sq best = Sq::from_exact(Rat(0));
        for (size_t a = 0; a < subset.size(); ++a)
            for (size_t b = a + 1; b < subset.size(); ++b) {
                Sq d = dist_sq(subset[a], subset[b]);
                if (cmp_sq(best, d, eta) < 0) best = d;
            }
        return best;
    }

    std::string point_repr(int i) const {
        if (matrix_) return "#" + std::to_string(i);
        std::string out = "(";
        for (size_t k = 0; k < coords_[i].size(); ++k) {
            if (k) out += ",";
            out += exact_ ? to_string((*exact_)[i][k]) : std::to_string(coords_[i][k]);
        }
        return out + ")";
    }

    // Audits d(i,k) <= d(i,j) + d(j,k) up to eta; only meaningful for matrix
    // input (coordinate metrics satisfy it by construction).
    void audit_triangle_inequality(double eta) const {
        if (!matrix_) return;
        const auto& m = *matrix_;
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < m.size(); ++j)
                for (size_t k = 0; k < m.size(); ++k)
                    if (m[i][k] > m[i][j] + m[j][k] + eta)
                        throw input_error("triangle inequality fails at points " +
                                          std::to_string(i) + "," + std::to_string(j) + "," +
                                          std::to_string(k));
    }

private:
    void check_dims() const {
        for (const auto& p : coords_)
            if (p.size() != coords_[0].size())
                throw input_error("points have inconsistent dimensions");
    }

    std::vector<std::vector<double>> coords_;
    std::optional<std::vector<std::vector<Rat>>> exact_;
    std::optional<std::vector<std::vector<double>>> matrix_;
};

struct CoverageReport {
    bool covered = false;
    std::vector<int> uncovered;
};

// A is an eps-approximation iff every point is strictly within eps of A.
// eps is passed squared. Inexact comparisons that land within eta of the
// threshold count as tie warnings and are treated as not covered.
inline CoverageReport is_epsilon_approximation(const FiniteMetricSpace& M,
                                               const std::vector<int>& A, const Sq& eps_sq,
                                               double eta = 1e-12, int* tie_warnings = nullptr) {
    CoverageReport rep;
    for (int x = 0; x < M.size(); ++x) {
        bool covered = false;
        for (int a : A) {
            Sq d = M.dist_sq(x, a);
            int c = cmp_sq(d, eps_sq, eta);
            if (c == 0 && !(d.exact && eps_sq.exact) && tie_warnings) ++*tie_warnings;
            if (c < 0) { covered = true; break; }
        }
        if (!covered) rep.uncovered.push_back(x);
    }
    rep.covered = rep.uncovered.empty();
    return rep;
}

enum class SamplingMethod { Greedy, Grid, Given };

// Builds an eps-approximation. Greedy is farthest-point insertion from the
// lowest index until strict coverage holds; grid snaps to an axis-aligned
// lattice of spacing eps/sqrt(dim) and patches greedily; given validates a
// caller-supplied sample.
inline std::vector<int> epsilon_approximation(const FiniteMetricSpace& M, const Sq& eps_sq,
                                              SamplingMethod method,
                                              const std::vector<int>& given = {},
                                              double eta = 1e-12) {
    if (M.size() == 0) throw input_error("empty metric space");
    if (!(eps_sq.value > 0)) throw input_error("epsilon must be positive");

    if (method == SamplingMethod::Given) {
        auto rep = is_epsilon_approximation(M, given, eps_sq, eta);
        if (!rep.covered) {
            std::string msg = "sample fails coverage; uncovered points:";
            for (int x : rep.uncovered) msg += " " + M.point_repr(x);
            throw input_error(msg);
        }
        return given;
    }

    std::vector<int> sample;
    if (method == SamplingMethod::Grid) {
        if (M.coords().empty()) throw input_error("grid sampling requires coordinate input");
        double spacing = std::sqrt(eps_sq.value) / std::sqrt(static_cast<double>(M.dim()));
        std::map<std::vector<long long>, int> cells;
        for (int i = 0; i < M.size(); ++i) {
            std::vector<long long> cell;
            for (double c : M.coords()[i])
                cell.push_back(static_cast<long long>(std::floor(c / spacing)));
            auto [it, inserted] = cells.emplace(std::move(cell), i);
            (void)it;
            (void)inserted;
        }
        for (const auto& [cell, i] : cells) sample.push_back(i);
        std::sort(sample.begin(), sample.end());
    } else {
        sample.push_back(0);
    }

    // Patch by farthest-point insertion until covered.
    for (;;) {
        int farthest = -1;
        Sq far_d = Sq::from_exact(Rat(0));
        for (int x = 0; x < M.size(); ++x) {
            bool covered = false;
            Sq nearest = M.dist_sq(x, sample[0]);
            for (int a : sample) {
                Sq d = M.dist_sq(x, a);
                if (cmp_sq(d, nearest, eta) < 0) nearest = d;
                if (cmp_sq(d, eps_sq, eta) < 0) { covered = true; break; }
            }
            if (!covered && (farthest < 0 || cmp_sq(nearest, far_d, eta) > 0)) {
                farthest = x;
                far_d = nearest;
            }
        }
        if (farthest < 0) break;
        sample.push_back(farthest);
    }
    std::sort(sample.begin(), sample.end());
    return sample;
}

}  // namespace finshape
