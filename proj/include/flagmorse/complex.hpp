// The flag complex of F_q^n: vertices are proper nonzero subspaces, a
// (k-1)-simplex is a strictly nested chain of k of them. Stores skeleta up
// to a requested truncation level.

#ifndef FLAGMORSE_COMPLEX_HPP
#define FLAGMORSE_COMPLEX_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagmorse/matrix.hpp"

namespace flagmorse {

/// A proper nonzero subspace of F_q^n in canonical basis form; the complex
/// vertex with deterministic global index `id`.
struct Subspace {
    int id;
    int dim;
    Mat basis;
};

/// A flag as the list of its vertex ids, ordered by strictly increasing
/// subspace dimension (global ids are dimension-major, so the ids ascend).
using Flag = std::vector<int>;

/// All d-dimensional subspaces of F_q^n, each exactly once, as canonical
/// bases sorted by their serialization. Enumerates pivot-row subsets and
/// fills the free entries; the count is the Gaussian binomial [n choose d]_q.
inline std::vector<Mat> enumerate_subspaces(int n, const FieldSpec& spec, int d) {
    if (d < 1 || d > n - 1)
        throw std::invalid_argument("subspace dimension out of range: need 1 <= d <= n-1");
    const std::uint32_t q = spec.order();
    std::vector<Mat> out;

    std::vector<int> rows(static_cast<std::size_t>(d));
    std::iota(rows.begin(), rows.end(), 0);
    while (true) {
        // free cells of this pivot pattern: in column j, rows above the
        // pivot that are not pivot rows of earlier columns
        std::vector<std::pair<int, int>> free_cells;  // (row, col)
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < rows[static_cast<std::size_t>(j)]; ++i)
                if (std::find(rows.begin(), rows.begin() + j, i) == rows.begin() + j)
                    free_cells.emplace_back(i, j);

        std::vector<std::uint32_t> vals(free_cells.size(), 0);
        while (true) {
            Mat m(n, d, spec);
            for (int j = 0; j < d; ++j) m.set(rows[static_cast<std::size_t>(j)], j, 1);
            for (std::size_t t = 0; t < free_cells.size(); ++t)
                m.set(free_cells[t].first, free_cells[t].second, vals[t]);
            out.push_back(std::move(m));
            // odometer over the free entries
            std::size_t pos = 0;
            while (pos < vals.size() && ++vals[pos] == q) vals[pos++] = 0;
            if (pos == vals.size()) break;
        }

        // next pivot-row subset in lexicographic order
        int j = d - 1;
        while (j >= 0 && rows[static_cast<std::size_t>(j)] == n - d + j) --j;
        if (j < 0) break;
        ++rows[static_cast<std::size_t>(j)];
        for (int t = j + 1; t < d; ++t)
            rows[static_cast<std::size_t>(t)] = rows[static_cast<std::size_t>(t - 1)] + 1;
    }

    std::sort(out.begin(), out.end(),
              [](const Mat& a, const Mat& b) { return a.data() < b.data(); });
    return out;
}

/// All nonempty proper subchains of a flag, in deterministic order.
inline std::vector<Flag> faces_of(const Flag& flag) {
    const std::size_t k = flag.size();
    std::vector<Flag> faces;
    if (k < 2) return faces;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << k); ++mask) {
        Flag face;
        for (std::size_t t = 0; t < k; ++t)
            if (mask & (std::uint64_t(1) << t)) face.push_back(flag[t]);
        faces.push_back(std::move(face));
    }
    std::sort(faces.begin(), faces.end());
    return faces;
}

class ComplexStore {
public:
    int n() const { return n_; }
    std::uint32_t q() const { return spec_.order(); }
    const FieldSpec& field() const { return spec_; }

    /// Highest stored simplex dimension (n-2 for the full complex).
    int top_dim() const { return top_; }
    bool truncated() const { return top_ < n_ - 2; }

    const std::vector<Subspace>& vertices() const { return vertices_; }
    const Subspace& vertex(int id) const { return vertices_[static_cast<std::size_t>(id)]; }

    const std::vector<Flag>& simplices(int dim) const {
        return simplices_[static_cast<std::size_t>(check_dim(dim))];
    }
    std::size_t simplex_count(int dim) const { return simplices(dim).size(); }

    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> f;
        for (int d = 0; d <= top_; ++d) f.push_back(simplices_[static_cast<std::size_t>(d)].size());
        return f;
    }

    std::size_t total_simplices() const { return offsets_.back(); }

    /// Index of a flag within its dimension's sorted list, or -1.
    int find(int dim, const Flag& verts) const {
        const auto& list = simplices(dim);
        auto it = std::lower_bound(list.begin(), list.end(), verts);
        if (it == list.end() || *it != verts) return -1;
        return static_cast<int>(it - list.begin());
    }

    int global_id(int dim, int index) const {
        return static_cast<int>(offsets_[static_cast<std::size_t>(check_dim(dim))]) + index;
    }

    std::pair<int, int> locate(int gid) const {
        if (gid >= 0 && static_cast<std::size_t>(gid) < total_simplices())
            for (int d = top_; d >= 0; --d)
                if (static_cast<std::size_t>(gid) >= offsets_[static_cast<std::size_t>(d)])
                    return {d, gid - static_cast<int>(offsets_[static_cast<std::size_t>(d)])};
        throw std::invalid_argument("bad simplex id");
    }

    const Flag& simplex(int gid) const {
        auto [d, idx] = locate(gid);
        return simplices_[static_cast<std::size_t>(d)][static_cast<std::size_t>(idx)];
    }

    /// Strict inclusion between vertices (requires dim(sub) < dim(super)).
    bool includes(int sub, int super) const {
        return incl_[static_cast<std::size_t>(sub) * vertices_.size() +
                     static_cast<std::size_t>(super)] != 0;
    }

    /// Vertex id of a canonical basis, or -1.
    int find_vertex(const Mat& canonical) const {
        int d = canonical.cols();
        auto lo = dim_first_[static_cast<std::size_t>(d)];
        auto hi = dim_first_[static_cast<std::size_t>(d) + 1];
        auto it = std::lower_bound(vertices_.begin() + lo, vertices_.begin() + hi, canonical,
                                   [](const Subspace& s, const Mat& m) { return s.basis.data() < m.data(); });
        if (it == vertices_.begin() + hi || !(it->basis == canonical)) return -1;
        return it->id;
    }

    std::vector<Mat> chain_bases(const Flag& verts) const {
        std::vector<Mat> chain;
        chain.reserve(verts.size());
        for (int id : verts) chain.push_back(vertex(id).basis);
        return chain;
    }

    /// All maximal chains (dims 1..n-1), enumerated at the vertex level so
    /// they are available even on truncated stores.
    std::vector<Flag> maximal_chains() const {
        std::vector<Flag> out;
        Flag chain;
        auto dfs = [&](auto&& self, int last) -> void {
            int d = vertex(last).dim;
            if (d == n_ - 1) {
                out.push_back(chain);
                return;
            }
            auto lo = dim_first_[static_cast<std::size_t>(d) + 1];
            auto hi = dim_first_[static_cast<std::size_t>(d) + 2];
            for (auto v = lo; v < hi; ++v)
                if (includes(last, static_cast<int>(v))) {
                    chain.push_back(static_cast<int>(v));
                    self(self, static_cast<int>(v));
                    chain.pop_back();
                }
        };
        for (auto v = dim_first_[1]; v < dim_first_[2]; ++v) {
            chain.assign(1, static_cast<int>(v));
            dfs(dfs, static_cast<int>(v));
        }
        return out;
    }

    static ComplexStore from_parts(int n, std::uint32_t q, int skeleton,
                                   std::vector<Mat> vertex_bases,
                                   std::vector<std::vector<Flag>> simplices_by_dim);

    friend ComplexStore build_complex(int n, std::uint32_t q, std::optional<int> skeleton_k);

private:
    ComplexStore(int n, FieldSpec spec) : n_(n), spec_(spec) {}

    int check_dim(int dim) const {
        if (dim < 0 || dim > top_)
            throw std::invalid_argument("simplex dimension " + std::to_string(dim) +
                                        " outside stored range [0, " + std::to_string(top_) + "]");
        return dim;
    }

    void index_vertices() {
        dim_first_.assign(static_cast<std::size_t>(n_) + 1, 0);
        for (const auto& v : vertices_) ++dim_first_[static_cast<std::size_t>(v.dim)];
        std::size_t acc = 0;
        for (auto& c : dim_first_) {
            std::size_t cnt = c;
            c = acc;
            acc += cnt;
        }
        incl_.assign(vertices_.size() * vertices_.size(), 0);
        for (const auto& u : vertices_)
            for (const auto& w : vertices_) {
                if (u.dim >= w.dim) continue;
                bool inside = true;
                for (int j = 0; j < u.basis.cols() && inside; ++j)
                    inside = span_contains(w.basis, u.basis.col(j));
                if (inside)
                    incl_[static_cast<std::size_t>(u.id) * vertices_.size() +
                          static_cast<std::size_t>(w.id)] = 1;
            }
    }

    void index_simplices() {
        offsets_.assign(static_cast<std::size_t>(top_) + 2, 0);
        for (int d = 0; d <= top_; ++d)
            offsets_[static_cast<std::size_t>(d) + 1] =
                offsets_[static_cast<std::size_t>(d)] + simplices_[static_cast<std::size_t>(d)].size();
    }

    int n_;
    FieldSpec spec_;
    int top_ = 0;
    std::vector<Subspace> vertices_;              // dimension-major, lexicographic within a dim
    std::vector<std::size_t> dim_first_;          // first vertex index per dimension
    std::vector<std::vector<Flag>> simplices_;    // per dimension, sorted
    std::vector<std::size_t> offsets_;            // global id offsets per dimension
    std::vector<char> incl_;                      // strict inclusion, vertex id x vertex id
};

/// Build F(F_q^n) up to the requested skeleton (default: the full complex).
inline ComplexStore build_complex(int n, std::uint32_t q,
                                  std::optional<int> skeleton_k = std::nullopt) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    FieldSpec spec(q);
    if (skeleton_k && *skeleton_k < 0) throw std::invalid_argument("skeleton level must be >= 0");

    ComplexStore store(n, spec);
    store.top_ = skeleton_k ? std::min(*skeleton_k, n - 2) : n - 2;

    for (int d = 1; d <= n - 1; ++d)
        for (Mat& basis : enumerate_subspaces(n, spec, d)) {
            int id = static_cast<int>(store.vertices_.size());
            store.vertices_.push_back(Subspace{id, d, std::move(basis)});
        }
    store.index_vertices();

    store.simplices_.assign(static_cast<std::size_t>(store.top_) + 1, {});
    const int max_len = store.top_ + 1;
    Flag chain;
    auto dfs = [&](auto&& self, int last) -> void {
        store.simplices_[chain.size() - 1].push_back(chain);
        if (static_cast<int>(chain.size()) == max_len) return;
        int d = store.vertex(last).dim;
        for (std::size_t v = store.dim_first_[static_cast<std::size_t>(d) + 1];
             v < store.vertices_.size(); ++v)
            if (store.includes(last, static_cast<int>(v))) {
                chain.push_back(static_cast<int>(v));
                self(self, static_cast<int>(v));
                chain.pop_back();
            }
    };
    for (const auto& v : store.vertices_) {
        chain.assign(1, v.id);
        dfs(dfs, v.id);
    }
    for (auto& list : store.simplices_) std::sort(list.begin(), list.end());
    store.index_simplices();
    return store;
}

inline ComplexStore ComplexStore::from_parts(int n, std::uint32_t q, int skeleton,
                                             std::vector<Mat> vertex_bases,
                                             std::vector<std::vector<Flag>> simplices_by_dim) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    FieldSpec spec(q);
    if (skeleton < 0 || skeleton > n - 2)
        throw std::invalid_argument("skeleton level outside [0, n-2]");

    ComplexStore store(n, spec);
    store.top_ = skeleton;

    int prev_dim = 0;
    std::vector<std::uint32_t> prev_key;
    for (std::size_t i = 0; i < vertex_bases.size(); ++i) {
        Mat& b = vertex_bases[i];
        if (b.rows() != n || b.cols() < 1 || b.cols() > n - 1)
            throw std::invalid_argument("vertex basis shape invalid");
        if (!(canonical_subspace(b) == b))
            throw std::invalid_argument("vertex basis is not canonical");
        if (b.cols() < prev_dim || (b.cols() == prev_dim && !(prev_key < b.data())))
            throw std::invalid_argument("vertices are not in the deterministic order");
        prev_dim = b.cols();
        prev_key = b.data();
        store.vertices_.push_back(Subspace{static_cast<int>(i), b.cols(), std::move(b)});
    }
    store.index_vertices();

    if (static_cast<int>(simplices_by_dim.size()) != skeleton + 1)
        throw std::invalid_argument("simplex lists do not match the skeleton level");
    store.simplices_ = std::move(simplices_by_dim);

    // dimension 0 must list every vertex once, in order
    const auto& verts0 = store.simplices_[0];
    if (verts0.size() != store.vertices_.size())
        throw std::invalid_argument("dimension-0 simplices must be exactly the vertices");
    for (std::size_t i = 0; i < verts0.size(); ++i)
        if (verts0[i].size() != 1 || verts0[i][0] != static_cast<int>(i))
            throw std::invalid_argument("dimension-0 simplices must be exactly the vertices");

    for (int d = 1; d <= skeleton; ++d) {
        const auto& list = store.simplices_[static_cast<std::size_t>(d)];
        if (!std::is_sorted(list.begin(), list.end()))
            throw std::invalid_argument("simplex list for dimension " + std::to_string(d) +
                                        " is not sorted");
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw std::invalid_argument("duplicate simplex in dimension " + std::to_string(d));
        for (const Flag& f : list) {
            if (static_cast<int>(f.size()) != d + 1)
                throw std::invalid_argument("flag length does not match its dimension");
            for (std::size_t t = 0; t + 1 < f.size(); ++t) {
                if (f[t] < 0 || f[t + 1] >= static_cast<int>(store.vertices_.size()) ||
                    store.vertex(f[t]).dim >= store.vertex(f[t + 1]).dim ||
                    !store.includes(f[t], f[t + 1]))
                    throw std::invalid_argument("flag is not a strictly nested chain");
            }
            // faces must be present (closure under subchains)
            for (const Flag& face : faces_of(f))
                if (store.find(static_cast<int>(face.size()) - 1, face) < 0)
                    throw std::invalid_argument("complex is not closed under faces");
        }
    }
    store.index_simplices();
    return store;
}

}  // namespace flagmorse

#endif
