// Column-operation machinery over F_q: minimal matrix representations of
// flags, canonical subspace bases, and pivot labels.
//
// Pivot convention: the pivot of a column is its bottom-most nonzero entry
// (largest row index), normalized to 1. A matrix is pivot-normalized when
// every entry to the right of a pivot, in the pivot's row, is zero.

#ifndef FLAGMORSE_MATRIX_HPP
#define FLAGMORSE_MATRIX_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagmorse/field.hpp"

namespace flagmorse {

/// A permutation of {1..n} spelled as the word of its values.
class Permutation {
public:
    explicit Permutation(std::vector<int> word) : word_(std::move(word)) {
        const int n = static_cast<int>(word_.size());
        if (n == 0) throw std::invalid_argument("empty permutation word");
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        for (int v : word_) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("word is not a permutation of {1..n}");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> w(static_cast<std::size_t>(n));
        std::iota(w.begin(), w.end(), 1);
        return Permutation(std::move(w));
    }

    /// The maximal word n (n-1) ... 1.
    static Permutation reversal(int n) {
        std::vector<int> w(static_cast<std::size_t>(n));
        std::iota(w.rbegin(), w.rend(), 1);
        return Permutation(std::move(w));
    }

    int size() const { return static_cast<int>(word_.size()); }
    int value_at(int pos) const { return word_[static_cast<std::size_t>(pos)]; }  // 0-based position
    const std::vector<int>& word() const { return word_; }

    bool is_minimal() const { return std::is_sorted(word_.begin(), word_.end()); }
    bool is_maximal() const { return std::is_sorted(word_.rbegin(), word_.rend()); }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < word_.size(); ++i) {
            if (word_.size() > 9 && i > 0) s += '.';
            s += std::to_string(word_[i]);
        }
        return s;
    }

    auto operator<=>(const Permutation&) const = default;  // lexicographic on the word

private:
    std::vector<int> word_;
};

/// Dense matrix over F_q with column-major semantics: column j is the
/// vector w_j. All entries share the one FieldSpec held by the matrix.
class Mat {
public:
    Mat(int rows, int cols, FieldSpec spec)
        : rows_(rows), cols_(cols), spec_(spec),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
        if (rows < 1 || cols < 0) throw std::invalid_argument("bad matrix shape");
    }

    static Mat identity(int n, FieldSpec spec) {
        Mat m(n, n, spec);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& field() const { return spec_; }

    std::uint32_t operator()(int i, int j) const { return a_[idx(i, j)]; }
    void set(int i, int j, std::uint64_t v) { a_[idx(i, j)] = spec_.reduce(v); }
    FieldElem at(int i, int j) const { return FieldElem{a_[idx(i, j)], spec_.order()}; }

    std::span<const std::uint32_t> col(int j) const {
        return {a_.data() + idx(0, j), static_cast<std::size_t>(rows_)};
    }

    void set_col(int j, std::span<const std::uint32_t> v) {
        if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("column length mismatch");
        std::copy(v.begin(), v.end(), a_.begin() + static_cast<std::ptrdiff_t>(idx(0, j)));
    }

    /// col_j *= c, c nonzero (keeps spans).
    void scale_col(int j, std::uint32_t c) {
        if (c == 0) throw std::logic_error("scaling a column by zero destroys the span");
        for (int i = 0; i < rows_; ++i) a_[idx(i, j)] = spec_.mul(a_[idx(i, j)], c);
    }

    /// col_dst += c * col_src.
    void add_col_multiple(int src, int dst, std::uint32_t c) {
        if (src == dst) throw std::logic_error("column operation with src == dst");
        for (int i = 0; i < rows_; ++i)
            a_[idx(i, dst)] = spec_.add(a_[idx(i, dst)], spec_.mul(c, a_[idx(i, src)]));
    }

    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows_; ++i) std::swap(a_[idx(i, a)], a_[idx(i, b)]);
    }

    Mat first_cols(int m) const {
        if (m < 0 || m > cols_) throw std::invalid_argument("prefix width out of range");
        Mat out(rows_, m, spec_);
        std::copy(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(idx(0, m)), out.a_.begin());
        return out;
    }

    /// Column-major flattening; doubles as the deterministic sort key.
    const std::vector<std::uint32_t>& data() const { return a_; }

    bool operator==(const Mat&) const = default;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(rows_) +
               static_cast<std::size_t>(i);
    }

    int rows_, cols_;
    FieldSpec spec_;
    std::vector<std::uint32_t> a_;
};

/// Row index of the pivot of column j (largest row with a nonzero entry),
/// or -1 for a zero column.
inline int bottom_nonzero_row(const Mat& m, int j) {
    for (int i = m.rows() - 1; i >= 0; --i)
        if (m(i, j) != 0) return i;
    return -1;
}

namespace detail {

/// Incremental linear-independence tracker: absorbs vectors one at a time,
/// keeping a pivot-normalized reducer per occupied pivot row.
class SpanTracker {
public:
    SpanTracker(FieldSpec spec, int n)
        : spec_(spec), reducers_(static_cast<std::size_t>(n)) {}

    /// True (and absorbed) iff v is independent of everything inserted so far.
    bool try_insert(std::span<const std::uint32_t> v) {
        std::vector<std::uint32_t> w(v.begin(), v.end());
        for (int r = static_cast<int>(w.size()) - 1; r >= 0; --r) {
            if (w[static_cast<std::size_t>(r)] == 0) continue;
            auto& red = reducers_[static_cast<std::size_t>(r)];
            if (!red) {
                std::uint32_t inv = spec_.inv(w[static_cast<std::size_t>(r)]);
                for (auto& x : w) x = spec_.mul(x, inv);
                red = std::move(w);
                ++count_;
                return true;
            }
            std::uint32_t c = w[static_cast<std::size_t>(r)];
            for (std::size_t i = 0; i <= static_cast<std::size_t>(r); ++i)
                w[i] = spec_.sub(w[i], spec_.mul(c, (*red)[i]));
        }
        return false;
    }

    int size() const { return count_; }

private:
    FieldSpec spec_;
    std::vector<std::optional<std::vector<std::uint32_t>>> reducers_;
    int count_ = 0;
};

/// Exactly uniform draw from [0, m) via rejection.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t m) {
    std::uint64_t threshold = (0 - m) % m;  // 2^64 mod m
    std::uint64_t x;
    do {
        x = rng();
    } while (x < threshold);
    return x % m;
}

}  // namespace detail

inline int mat_rank(const Mat& m) {
    detail::SpanTracker tracker(m.field(), m.rows());
    for (int j = 0; j < m.cols(); ++j) tracker.try_insert(m.col(j));
    return tracker.size();
}

/// True iff the column spans of a and b coincide.
inline bool spans_equal(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || !(a.field() == b.field())) return false;
    detail::SpanTracker ta(a.field(), a.rows());
    for (int j = 0; j < a.cols(); ++j) ta.try_insert(a.col(j));
    int ra = ta.size();
    for (int j = 0; j < b.cols(); ++j)
        if (ta.try_insert(b.col(j))) return false;  // b adds something new
    detail::SpanTracker tb(b.field(), b.rows());
    for (int j = 0; j < b.cols(); ++j) tb.try_insert(b.col(j));
    return tb.size() == ra;
}

/// Membership test against a canonical basis (distinct, cleaned pivot rows):
/// the coefficient of column j is read off directly at its pivot row.
inline bool span_contains(const Mat& canonical, std::span<const std::uint32_t> v) {
    const FieldSpec& F = canonical.field();
    std::vector<std::uint32_t> w(v.begin(), v.end());
    for (int j = 0; j < canonical.cols(); ++j) {
        int p = bottom_nonzero_row(canonical, j);
        std::uint32_t c = w[static_cast<std::size_t>(p)];
        if (c != 0)
            for (int i = 0; i < canonical.rows(); ++i)
                w[static_cast<std::size_t>(i)] =
                    F.sub(w[static_cast<std::size_t>(i)], F.mul(c, canonical(i, j)));
    }
    return std::all_of(w.begin(), w.end(), [](std::uint32_t x) { return x == 0; });
}

/// The unique basis of span's column space with: pivot (bottom-most nonzero)
/// of each column equal to 1, pivot rows distinct and cleared in every other
/// column, and columns sorted by increasing pivot row. Two spans are equal
/// iff their canonical forms are equal.
inline Mat canonical_subspace(const Mat& span) {
    Mat m = span;
    const FieldSpec& F = m.field();
    const int d = m.cols();
    std::vector<int> pivot(static_cast<std::size_t>(d), -1);
    for (int j = 0; j < d; ++j) {
        for (int c = 0; c < j; ++c) {
            std::uint32_t a = m(pivot[static_cast<std::size_t>(c)], j);
            if (a != 0) m.add_col_multiple(c, j, F.neg(a));
        }
        int r = bottom_nonzero_row(m, j);
        if (r < 0)
            throw std::invalid_argument("rank-deficient span: column " + std::to_string(j + 1) +
                                        " is dependent on earlier columns");
        m.scale_col(j, F.inv(m(r, j)));
        pivot[static_cast<std::size_t>(j)] = r;
    }
    // clear pivot rows to the left as well (the first loop handled the right)
    for (int j = 0; j < d; ++j)
        for (int c = 0; c < j; ++c) {
            std::uint32_t a = m(pivot[static_cast<std::size_t>(j)], c);
            if (a != 0) m.add_col_multiple(j, c, F.neg(a));
        }
    // sort columns by pivot row
    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return pivot[static_cast<std::size_t>(x)] < pivot[static_cast<std::size_t>(y)];
    });
    Mat out(m.rows(), d, F);
    for (int j = 0; j < d; ++j) out.set_col(j, m.col(order[static_cast<std::size_t>(j)]));
    return out;
}

/// Pivot-normalized n x n matrix of a maximal flag, plus the label read off
/// the pivot row indices (1-based) column by column.
struct MinimalMatrix {
    Mat mat;
    std::vector<int> pivot_rows;
    Permutation label;

    bool operator==(const MinimalMatrix&) const = default;
};

/// Reduce an invertible basis to the unique matrix with the same column
/// prefix spans whose pivots are normalized and cleared to the right. Only
/// two kinds of elementary column operations are used: scaling a column,
/// and adding a multiple of column i to column j with i < j, so every
/// prefix span is preserved.
inline MinimalMatrix echelon_maximal(const Mat& basis) {
    if (basis.rows() != basis.cols())
        throw std::invalid_argument("echelon_maximal requires a square basis matrix");
    Mat m = basis;
    const FieldSpec& F = m.field();
    const int n = m.rows();
    std::vector<int> pivot(static_cast<std::size_t>(n), -1);
    for (int j = 0; j < n; ++j) {
        for (int c = 0; c < j; ++c) {
            if (!(c < j)) throw std::logic_error("column operation would break prefix spans");
            std::uint32_t a = m(pivot[static_cast<std::size_t>(c)], j);
            if (a != 0) m.add_col_multiple(c, j, F.neg(a));
        }
        int r = bottom_nonzero_row(m, j);
        if (r < 0)
            throw std::invalid_argument("rank-deficient basis: column " + std::to_string(j + 1) +
                                        " lies in the span of earlier columns");
        m.scale_col(j, F.inv(m(r, j)));
        pivot[static_cast<std::size_t>(j)] = r;
    }
    std::vector<int> pivot_rows(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        pivot_rows[static_cast<std::size_t>(j)] = pivot[static_cast<std::size_t>(j)] + 1;
    Permutation label(pivot_rows);
    return MinimalMatrix{std::move(m), std::move(pivot_rows), std::move(label)};
}

/// Minimal matrix representation of a general flag, given as the chain of
/// canonical bases of its subspaces (dims strictly increasing, all < n) and
/// a chosen full basis whose column prefixes span the chain. The chosen
/// basis is first reduced as a maximal flag, then blocks delimited by the
/// chain dimensions are cleaned to the left of each pivot and reordered so
/// pivot rows increase inside every block. The result does not depend on
/// the chosen basis.
inline MinimalMatrix minimal_matrix_of_flag(std::span<const Mat> chain, const Mat& chosen) {
    if (chain.empty()) throw std::invalid_argument("empty flag");
    const int n = chosen.rows();
    if (chosen.cols() != n) throw std::invalid_argument("chosen basis must be n x n");
    int prev = 0;
    for (const Mat& sub : chain) {
        if (sub.rows() != n || !(sub.field() == chosen.field()))
            throw std::invalid_argument("chain and chosen basis shapes disagree");
        if (sub.cols() <= prev || sub.cols() >= n)
            throw std::invalid_argument("chain dimensions must be strictly increasing and proper");
        prev = sub.cols();
        if (!spans_equal(chosen.first_cols(sub.cols()), sub))
            throw std::invalid_argument("chosen basis violates step (a): the first " +
                                        std::to_string(sub.cols()) +
                                        " columns do not span the flag's subspace");
    }

    MinimalMatrix em = echelon_maximal(chosen);
    Mat& m = em.mat;
    const FieldSpec& F = m.field();
    std::vector<int> piv(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        piv[static_cast<std::size_t>(j)] = em.pivot_rows[static_cast<std::size_t>(j)] - 1;

    std::vector<int> cuts{0};
    for (const Mat& sub : chain) cuts.push_back(sub.cols());
    cuts.push_back(n);

    for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
        const int lo = cuts[b], hi = cuts[b + 1];
        // zeros to the left of each pivot, within the block only
        for (int j = lo; j < hi; ++j)
            for (int c = lo; c < j; ++c) {
                std::uint32_t a = m(piv[static_cast<std::size_t>(j)], c);
                if (a != 0) m.add_col_multiple(j, c, F.neg(a));
            }
        // reorder columns within the block so pivot rows increase
        std::vector<int> order(static_cast<std::size_t>(hi - lo));
        std::iota(order.begin(), order.end(), lo);
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            return piv[static_cast<std::size_t>(x)] < piv[static_cast<std::size_t>(y)];
        });
        std::vector<std::vector<std::uint32_t>> block;
        block.reserve(order.size());
        for (int src : order) {
            auto c = m.col(src);
            block.emplace_back(c.begin(), c.end());
        }
        std::vector<int> newpiv(order.size());
        for (std::size_t t = 0; t < order.size(); ++t)
            newpiv[t] = piv[static_cast<std::size_t>(order[t])];
        for (std::size_t t = 0; t < order.size(); ++t) {
            m.set_col(lo + static_cast<int>(t), block[t]);
            piv[static_cast<std::size_t>(lo) + t] = newpiv[t];
        }
    }

    for (int j = 0; j < n; ++j)
        em.pivot_rows[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j)] + 1;
    em.label = Permutation(em.pivot_rows);
    return em;
}

/// Deterministic step-(a) basis for a flag: greedily extend through the
/// chain's canonical bases, then through the standard basis.
inline Mat step_a_basis(std::span<const Mat> chain) {
    if (chain.empty()) throw std::invalid_argument("empty flag");
    const int n = chain.front().rows();
    const FieldSpec F = chain.front().field();
    Mat out(n, n, F);
    detail::SpanTracker tracker(F, n);
    int filled = 0;
    auto feed = [&](const Mat& basis, int target) {
        for (int j = 0; j < basis.cols() && filled < target; ++j)
            if (tracker.try_insert(basis.col(j))) {
                out.set_col(filled, basis.col(j));
                ++filled;
            }
        if (filled != target)
            throw std::invalid_argument("chain is not strictly nested");
    };
    for (const Mat& sub : chain) feed(sub, sub.cols());
    feed(Mat::identity(n, F), n);
    return out;
}

/// Uniformly sampled step-(a) basis: each block draws uniform vectors from
/// its subspace and rejects dependent ones. Deterministic for a fixed seed.
inline Mat random_step_a_basis(std::span<const Mat> chain, std::uint64_t seed) {
    if (chain.empty()) throw std::invalid_argument("empty flag");
    const int n = chain.front().rows();
    const FieldSpec F = chain.front().field();
    const std::uint64_t q = F.order();
    std::mt19937_64 rng(seed);
    Mat out(n, n, F);
    detail::SpanTracker tracker(F, n);
    int filled = 0;
    auto fill_from = [&](const Mat& basis, int target) {
        std::vector<std::uint32_t> v(static_cast<std::size_t>(n));
        while (filled < target) {
            std::fill(v.begin(), v.end(), 0);
            for (int j = 0; j < basis.cols(); ++j) {
                std::uint32_t c = static_cast<std::uint32_t>(detail::bounded(rng, q));
                if (c != 0)
                    for (int i = 0; i < n; ++i)
                        v[static_cast<std::size_t>(i)] =
                            F.add(v[static_cast<std::size_t>(i)], F.mul(c, basis(i, j)));
            }
            if (tracker.try_insert(v)) {
                out.set_col(filled, v);
                ++filled;
            }
        }
    };
    for (const Mat& sub : chain) fill_from(sub, sub.cols());
    fill_from(Mat::identity(n, F), n);
    return out;
}

}  // namespace flagmorse

#endif
