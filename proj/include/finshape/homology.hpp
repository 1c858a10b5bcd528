#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "finshape/errors.hpp"
#include "finshape/poset.hpp"
#include "finshape/sequence.hpp"
#include "finshape/simplicial.hpp"

namespace finshape {

// Dense matrix over Z/p. Sizes here stay in the low thousands, so plain
// Gaussian elimination is enough.
struct GFMatrix {
    int p = 2;
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<int>> a;

    static GFMatrix zero(int p, int rows, int cols) {
        GFMatrix m{p, rows, cols, {}};
        m.a.assign(rows, std::vector<int>(cols, 0));
        return m;
    }

    static GFMatrix identity(int p, int n) {
        GFMatrix m = zero(p, n, n);
        for (int i = 0; i < n; ++i) m.a[i][i] = 1;
        return m;
    }

    int& at(int r, int c) { return a[r][c]; }
    int at(int r, int c) const { return a[r][c]; }
};

namespace gf {

inline int normalize(long long v, int p) {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

inline int inverse(int v, int p) {
    // p is prime and small; Fermat by repeated multiplication.
    int acc = 1;
    for (int e = 0; e < p - 2; ++e) acc = static_cast<int>((1LL * acc * v) % p);
    return acc;
}

inline GFMatrix multiply(const GFMatrix& A, const GFMatrix& B) {
    if (A.cols != B.rows) throw construction_error("matrix dimension mismatch in product");
    GFMatrix C = GFMatrix::zero(A.p, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (A.a[i][k] == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.a[i][j] = normalize(C.a[i][j] + 1LL * A.a[i][k] * B.a[k][j], A.p);
        }
    return C;
}

inline int rank(GFMatrix m) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pivot = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.a[i][c] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(m.a[r], m.a[pivot]);
        int inv = inverse(m.a[r][c], m.p);
        for (int j = c; j < m.cols; ++j) m.a[r][j] = normalize(1LL * m.a[r][j] * inv, m.p);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.a[i][c] == 0) continue;
            int f = m.a[i][c];
            for (int j = c; j < m.cols; ++j)
                m.a[i][j] = normalize(m.a[i][j] - 1LL * f * m.a[r][j], m.p);
        }
        ++r;
    }
    return r;
}

// Kernel basis as column vectors.
inline std::vector<std::vector<int>> kernel_basis(GFMatrix m) {
    int p = m.p;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pivot = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.a[i][c] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(m.a[r], m.a[pivot]);
        int inv = inverse(m.a[r][c], p);
        for (int j = c; j < m.cols; ++j) m.a[r][j] = normalize(1LL * m.a[r][j] * inv, p);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.a[i][c] == 0) continue;
            int f = m.a[i][c];
            for (int j = c; j < m.cols; ++j)
                m.a[i][j] = normalize(m.a[i][j] - 1LL * f * m.a[r][j], p);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<char> is_pivot(m.cols, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    std::vector<std::vector<int>> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<int> v(m.cols, 0);
        v[c] = 1;
        for (size_t k = 0; k < pivot_col.size(); ++k)
            v[pivot_col[k]] = normalize(-m.a[k][c], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Incremental row-reduction used to pick independent vectors in a fixed,
// reproducible order.
class Eliminator {
public:
    explicit Eliminator(int p, int dim) : p_(p), dim_(dim) {}

    // Returns true (and absorbs v) iff v is independent of what was added.
    bool add(std::vector<int> v) {
        reduce(v);
        for (int c = 0; c < dim_; ++c) {
            if (v[c] == 0) continue;
            int inv = inverse(v[c], p_);
            for (auto& x : v) x = normalize(1LL * x * inv, p_);
            rows_.emplace_back(c, std::move(v));
            return true;
        }
        return false;
    }

    // Reduces v against the stored rows and reports the coefficients used.
    std::vector<int> reduce_with_coeffs(std::vector<int>& v) const {
        std::vector<int> coeffs(rows_.size(), 0);
        for (size_t k = 0; k < rows_.size(); ++k) {
            int c = rows_[k].first;
            if (v[c] == 0) continue;
            int f = v[c];
            coeffs[k] = f;
            for (int j = 0; j < dim_; ++j)
                v[j] = normalize(v[j] - 1LL * f * rows_[k].second[j], p_);
        }
        return coeffs;
    }

    void reduce(std::vector<int>& v) const { reduce_with_coeffs(v); }

    std::size_t size() const { return rows_.size(); }

private:
    int p_;
    int dim_;
    std::vector<std::pair<int, std::vector<int>>> rows_;
};

}  // namespace gf

// Chain complex over Z/p of a simplicial complex, with the canonical
// (dimension, lexicographic) simplex ordering as basis.
struct ChainComplex {
    int p = 2;
    std::vector<std::vector<std::vector<int>>> bases;  // per degree, simplices
    std::vector<GFMatrix> boundaries;                  // boundaries[k]: C_k -> C_{k-1}
    std::vector<std::map<std::vector<int>, int>> index;

    int dim() const { return static_cast<int>(bases.size()) - 1; }
    int n_simplices(int k) const {
        return k >= 0 && k <= dim() ? static_cast<int>(bases[k].size()) : 0;
    }
};

inline ChainComplex chain_complex(const SimplicialComplex& K, int p) {
    if (p < 2) throw input_error("field characteristic must be a prime >= 2");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw input_error("field characteristic must be prime");
    validate_face_closed(K);

    ChainComplex C;
    C.p = p;
    int dim = K.dimension();
    C.bases.resize(dim + 1);
    C.index.resize(dim + 1);
    for (const auto& s : K.simplices) {
        int k = static_cast<int>(s.size()) - 1;
        C.index[k].emplace(s, static_cast<int>(C.bases[k].size()));
        C.bases[k].push_back(s);
    }
    C.boundaries.resize(dim + 1);
    C.boundaries[0] = GFMatrix::zero(p, 0, C.n_simplices(0));
    for (int k = 1; k <= dim; ++k) {
        GFMatrix b = GFMatrix::zero(p, C.n_simplices(k - 1), C.n_simplices(k));
        for (int j = 0; j < C.n_simplices(k); ++j) {
            const auto& s = C.bases[k][j];
            int sign = 1;
            for (size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<int> face;
                for (size_t i = 0; i < s.size(); ++i)
                    if (i != drop) face.push_back(s[i]);
                b.a[C.index[k - 1].at(face)][j] = gf::normalize(sign, p);
                sign = -sign;
            }
        }
        C.boundaries[k] = std::move(b);
    }
    // dd = 0, asserted during construction.
    for (int k = 2; k <= dim; ++k) {
        GFMatrix dd = gf::multiply(C.boundaries[k - 1], C.boundaries[k]);
        for (const auto& row : dd.a)
            for (int v : row)
                if (v != 0) throw construction_error("boundary of boundary is non-zero");
    }
    return C;
}

inline std::vector<int> betti(const SimplicialComplex& K, int p) {
    ChainComplex C = chain_complex(K, p);
    std::vector<int> out;
    for (int k = 0; k <= C.dim(); ++k) {
        int rk = gf::rank(C.boundaries[k]);
        int rk1 = k + 1 <= C.dim() ? gf::rank(C.boundaries[k + 1]) : 0;
        out.push_back(C.n_simplices(k) - rk - rk1);
    }
    return out;
}

inline std::vector<int> poset_betti(const FinitePoset& X, int p) {
    return betti(order_complex(X), p);
}

inline int betti_at(const std::vector<int>& b, int l) {
    return l >= 0 && l < static_cast<int>(b.size()) ? b[l] : 0;
}

// Homology basis in degree l: representative cycles, plus the machinery to
// express an arbitrary cycle in that basis. Deterministic given the canonical
// simplex ordering.
struct HomologyBasis {
    int p = 2;
    int degree = 0;
    int chain_dim = 0;
    std::vector<std::vector<int>> boundary_basis;   // spanning im d_{l+1}
    std::vector<std::vector<int>> homology_cycles;  // representatives
};

inline HomologyBasis homology_basis(const ChainComplex& C, int l) {
    HomologyBasis H;
    H.p = C.p;
    H.degree = l;
    H.chain_dim = C.n_simplices(l);
    if (l < 0 || l > C.dim()) return H;

    gf::Eliminator elim(C.p, H.chain_dim);
    if (l + 1 <= C.dim()) {
        const GFMatrix& d = C.boundaries[l + 1];
        for (int j = 0; j < d.cols; ++j) {
            std::vector<int> col(d.rows);
            for (int i = 0; i < d.rows; ++i) col[i] = d.a[i][j];
            if (elim.add(col)) H.boundary_basis.push_back(std::move(col));
        }
    }
    for (auto& z : gf::kernel_basis(C.boundaries[l]))
        if (elim.add(z)) H.homology_cycles.push_back(std::move(z));
    return H;
}

// Coordinates of the cycle v in the homology basis: solve
// [boundary_basis | homology_cycles] x = v and keep the homology block of x.
inline std::vector<int> homology_coords(const HomologyBasis& H, const std::vector<int>& v) {
    int n_b = static_cast<int>(H.boundary_basis.size());
    int n_h = static_cast<int>(H.homology_cycles.size());
    int cols = n_b + n_h;
    GFMatrix aug = GFMatrix::zero(H.p, H.chain_dim, cols + 1);
    for (int j = 0; j < n_b; ++j)
        for (int i = 0; i < H.chain_dim; ++i) aug.a[i][j] = H.boundary_basis[j][i];
    for (int j = 0; j < n_h; ++j)
        for (int i = 0; i < H.chain_dim; ++i) aug.a[i][n_b + j] = H.homology_cycles[j][i];
    for (int i = 0; i < H.chain_dim; ++i) aug.a[i][cols] = v[i];

    // Row-reduce the coefficient block; back-substitute for a solution.
    std::vector<int> pivot_of_col(cols, -1);
    int r = 0;
    for (int c = 0; c < cols && r < aug.rows; ++c) {
        int pivot = -1;
        for (int i = r; i < aug.rows; ++i)
            if (aug.a[i][c] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(aug.a[r], aug.a[pivot]);
        int inv = gf::inverse(aug.a[r][c], H.p);
        for (int j = c; j <= cols; ++j) aug.a[r][j] = gf::normalize(1LL * aug.a[r][j] * inv, H.p);
        for (int i = 0; i < aug.rows; ++i) {
            if (i == r || aug.a[i][c] == 0) continue;
            int f = aug.a[i][c];
            for (int j = c; j <= cols; ++j)
                aug.a[i][j] = gf::normalize(aug.a[i][j] - 1LL * f * aug.a[r][j], H.p);
        }
        pivot_of_col[c] = r;
        ++r;
    }
    for (int i = r; i < aug.rows; ++i)
        if (aug.a[i][cols] != 0)
            throw construction_error("vector is not a cycle modulo the stored basis");
    std::vector<int> x(cols, 0);
    for (int c = 0; c < cols; ++c)
        if (pivot_of_col[c] >= 0) x[c] = aug.a[pivot_of_col[c]][cols];
    return std::vector<int>(x.begin() + n_b, x.end());
}

namespace detail {

// Chain map in degree l of the simplicial map K(f): order-complex simplices
// map vertexwise; simplices whose image degenerates collapse to zero. The
// sign is the parity of sorting the image vertices.
inline GFMatrix order_chain_map(const MonotoneMap& f, const ChainComplex& src,
                                const ChainComplex& tgt, int l) {
    GFMatrix F = GFMatrix::zero(src.p, tgt.n_simplices(l), src.n_simplices(l));
    if (l < 0 || l > src.dim()) return F;
    for (int j = 0; j < src.n_simplices(l); ++j) {
        std::vector<int> image;
        for (int v : src.bases[l][j]) image.push_back(f.assignment[v]);
        int sign = 1;
        bool degenerate = false;
        // Bubble sort to count inversions; duplicates mean a collapse.
        for (size_t a = 0; a < image.size() && !degenerate; ++a)
            for (size_t b = a + 1; b < image.size(); ++b) {
                if (image[a] == image[b]) { degenerate = true; break; }
                if (image[a] > image[b]) {
                    std::swap(image[a], image[b]);
                    sign = -sign;
                }
            }
        if (degenerate) continue;
        auto it = tgt.index[l].find(image);
        if (it == tgt.index[l].end())
            throw construction_error("image simplex missing from the target complex");
        F.a[it->second][j] = gf::normalize(sign, src.p);
    }
    return F;
}

}  // namespace detail

// Matrix of H_l(K(f)) in the deterministic homology bases of source and
// target order complexes. The identity map yields the identity matrix.
inline GFMatrix induced_homology_map(const MonotoneMap& f, int l, int p) {
    validate_monotone(f);
    ChainComplex src = chain_complex(order_complex(*f.source), p);
    ChainComplex tgt = chain_complex(order_complex(*f.target), p);
    HomologyBasis hs = homology_basis(src, l);
    HomologyBasis ht = homology_basis(tgt, l);
    GFMatrix F = detail::order_chain_map(f, src, tgt, l);
    GFMatrix out = GFMatrix::zero(p, static_cast<int>(ht.homology_cycles.size()),
                                  static_cast<int>(hs.homology_cycles.size()));
    for (size_t j = 0; j < hs.homology_cycles.size(); ++j) {
        std::vector<int> image(tgt.n_simplices(l), 0);
        for (int c = 0; c < F.cols; ++c) {
            int v = hs.homology_cycles[j][c];
            if (v == 0) continue;
            for (int r = 0; r < F.rows; ++r)
                image[r] = gf::normalize(image[r] + 1LL * F.a[r][c] * v, p);
        }
        std::vector<int> coords = homology_coords(ht, image);
        for (size_t i = 0; i < coords.size(); ++i) out.a[i][j] = coords[i];
    }
    return out;
}

enum class CechVerdict { Stabilized, Growing, Inconclusive };

inline const char* to_string(CechVerdict v) {
    switch (v) {
        case CechVerdict::Stabilized: return "stabilized";
        case CechVerdict::Growing: return "growing";
        default: return "inconclusive";
    }
}

// Per-degree report over a finite prefix: stage Betti numbers, induced
// matrices of the bonds, stable-image dimensions, and a window verdict. The
// verdict is finite-prefix evidence, never a theorem about the true limit.
struct HomologySequenceReport {
    int degree = 0;
    int p = 2;
    std::vector<int> betti;        // per stage
    std::vector<GFMatrix> maps;    // maps[n]: H_l(stage n+2) -> H_l(stage n+1)
    // stable_dims[n][k] = rank of maps[n] ... maps[n+k-1]; entry k = 0 is the
    // stage Betti number itself.
    std::vector<std::vector<int>> stable_dims;
    CechVerdict verdict = CechVerdict::Inconclusive;
    int stabilized_at = -1;
    int window = 2;
};

// Stable-image dimensions: s(n, k) = rank(M_n M_{n+1} ... M_{n+k-1}).
//
// Verdict policy for a finite prefix of length N with window width w:
// T(n) = s(n, N-n) (so T(N) is the stage Betti number). "Stabilized at d"
// when T(n) = d across the last w start stages, skipping stages whose own
// homology vanishes in degree l > 0 (a zero early group constrains nothing:
// the limit agrees with the limit of any tail). "Growing" when T strictly
// increases across the window extended to stage N.
inline HomologySequenceReport homology_sequence(const InverseSequence& S, int l, int p,
                                                int window = 2) {
    S.validate();
    if (l < 0) throw input_error("negative homology degree");
    HomologySequenceReport rep;
    rep.degree = l;
    rep.p = p;
    rep.window = window;
    int N = static_cast<int>(S.stages.size());

    for (const auto& X : S.stages) rep.betti.push_back(betti_at(poset_betti(*X, p), l));
    for (const auto& bond : S.bonds) rep.maps.push_back(induced_homology_map(bond, l, p));

    for (int n = 0; n < N; ++n) {
        std::vector<int> dims{rep.betti[n]};
        if (n < N - 1) {
            GFMatrix comp = rep.maps[n];
            dims.push_back(gf::rank(comp));
            for (int m = n + 1; m < N - 1; ++m) {
                comp = gf::multiply(comp, rep.maps[m]);
                dims.push_back(gf::rank(comp));
            }
        }
        rep.stable_dims.push_back(std::move(dims));
    }

    if (N < 2) return rep;  // no bond evidence
    auto T = [&](int n) { return rep.stable_dims[n - 1].back(); };  // n is 1-based

    int lo = std::max(1, N - window);
    std::vector<int> evidence;
    for (int n = lo; n <= N - 1; ++n) {
        if (l > 0 && rep.betti[n - 1] == 0) continue;  // vacuous stage, skip
        evidence.push_back(T(n));
    }
    if (evidence.empty())
        for (int n = lo; n <= N - 1; ++n) evidence.push_back(T(n));

    bool constant = std::all_of(evidence.begin(), evidence.end(),
                                [&](int v) { return v == evidence.front(); });
    if (constant) {
        rep.verdict = CechVerdict::Stabilized;
        rep.stabilized_at = evidence.front();
        return rep;
    }
    bool growing = true;
    for (int n = lo; n < N; ++n)
        if (T(n) >= T(n + 1)) { growing = false; break; }
    if (growing) rep.verdict = CechVerdict::Growing;
    return rep;
}

}  // namespace finshape
