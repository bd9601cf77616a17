// Independent homology oracle: simplicial Betti numbers over F_p via sparse
// boundary-matrix reduction, plus Euler characteristics. The coefficient
// prime is chosen independently of the field the complex was built over;
// agreement across several primes certifies torsion-freeness at this scale.

#ifndef FLAGMORSE_HOMOLOGY_HPP
#define FLAGMORSE_HOMOLOGY_HPP

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "flagmorse/complex.hpp"

namespace flagmorse {

/// One boundary column: (row, coefficient) entries with rows ascending and
/// coefficients in [1, p).
using SparseCol = std::vector<std::pair<int, std::int64_t>>;

namespace detail {

inline void validate_coeff_prime(std::int64_t p) {
    if (p < 2 || p > 0x7fffffff) throw std::invalid_argument("coefficient prime out of range");
    FieldSpec check(static_cast<std::uint32_t>(p));
}

inline std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
    std::int64_t result = 1, base = a % p, e = p - 2;
    for (; e > 0; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return result;
}

/// dst -= c * src over F_p, both sorted by row.
inline SparseCol axpy_neg(const SparseCol& dst, const SparseCol& src, std::int64_t c,
                          std::int64_t p) {
    SparseCol out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            std::int64_t v = (p - c * src[j].second % p) % p;
            if (v != 0) out.emplace_back(src[j].first, v);
            ++j;
        } else {
            std::int64_t v = ((dst[i].second - c * src[j].second) % p + p) % p;
            if (v != 0) out.emplace_back(dst[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace detail

/// Signed boundary of the d-simplices over F_p: the column of a flag is
/// sum_j (-1)^(j-1) * (flag with its j-th vertex removed), j counted from 1
/// along the dimension-ordered chain.
inline std::vector<SparseCol> boundary_matrix(const ComplexStore& store, int d, std::int64_t p) {
    if (d < 1 || d > store.top_dim())
        throw std::invalid_argument("boundary dimension out of range: need 1 <= d <= " +
                                    std::to_string(store.top_dim()));
    detail::validate_coeff_prime(p);
    std::vector<SparseCol> cols;
    cols.reserve(store.simplex_count(d));
    Flag face;
    for (const Flag& verts : store.simplices(d)) {
        SparseCol col;
        for (std::size_t drop = 0; drop < verts.size(); ++drop) {
            face.clear();
            for (std::size_t t = 0; t < verts.size(); ++t)
                if (t != drop) face.push_back(verts[t]);
            int row = store.find(d - 1, face);
            if (row < 0) throw std::logic_error("store is not closed under facets");
            std::int64_t coeff = (drop % 2 == 0) ? 1 : p - 1;
            col.emplace_back(row, coeff);
        }
        std::sort(col.begin(), col.end());
        cols.push_back(std::move(col));
    }
    return cols;
}

/// Per-dimension simplex counts and boundary matrices; the chain-complex
/// identity boundary-of-boundary = 0 is checked on construction.
struct ChainData {
    std::int64_t p;
    std::vector<std::size_t> counts;
    std::vector<std::vector<SparseCol>> boundaries;  // boundaries[d-1] = del_d
};

inline ChainData build_chain_data(const ComplexStore& store, std::int64_t p) {
    detail::validate_coeff_prime(p);
    ChainData data;
    data.p = p;
    data.counts = store.f_vector();
    for (int d = 1; d <= store.top_dim(); ++d)
        data.boundaries.push_back(boundary_matrix(store, d, p));
    for (int d = 2; d <= store.top_dim(); ++d) {
        const auto& upper = data.boundaries[static_cast<std::size_t>(d) - 1];
        const auto& lower = data.boundaries[static_cast<std::size_t>(d) - 2];
        std::map<int, std::int64_t> acc;
        for (const SparseCol& col : upper) {
            acc.clear();
            for (auto [row, coeff] : col)
                for (auto [r2, c2] : lower[static_cast<std::size_t>(row)])
                    acc[r2] = (acc[r2] + coeff * c2) % p;
            for (auto [r2, v] : acc)
                if (v % p != 0) throw std::logic_error("boundary of boundary is nonzero");
        }
    }
    return data;
}

/// Rank over F_p by column reduction with bottom-row pivots.
inline std::size_t sparse_rank(std::vector<SparseCol> cols, std::int64_t p) {
    std::unordered_map<int, SparseCol> by_low;
    std::size_t rank = 0;
    for (SparseCol& col : cols) {
        while (!col.empty()) {
            int low = col.back().first;
            auto it = by_low.find(low);
            if (it == by_low.end()) break;
            std::int64_t c =
                col.back().second * detail::mod_inv(it->second.back().second, p) % p;
            col = detail::axpy_neg(col, it->second, c, p);
        }
        if (!col.empty()) {
            ++rank;
            by_low.emplace(col.back().first, std::move(col));
        }
    }
    return rank;
}

/// Betti numbers b_0, ..., b_top over F_p.
inline std::vector<std::size_t> betti(const ComplexStore& store, std::int64_t p) {
    ChainData data = build_chain_data(store, p);
    const int top = store.top_dim();
    std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
    for (int d = 1; d <= top; ++d)
        ranks[static_cast<std::size_t>(d)] =
            sparse_rank(data.boundaries[static_cast<std::size_t>(d) - 1], p);
    std::vector<std::size_t> b(static_cast<std::size_t>(top) + 1, 0);
    for (int d = 0; d <= top; ++d) {
        std::size_t kernel = data.counts[static_cast<std::size_t>(d)] -
                             ranks[static_cast<std::size_t>(d)];
        if (kernel < ranks[static_cast<std::size_t>(d) + 1])
            throw std::logic_error("boundary image exceeds the kernel");
        b[static_cast<std::size_t>(d)] = kernel - ranks[static_cast<std::size_t>(d) + 1];
    }
    return b;
}

/// Betti numbers computed over every listed prime, required to agree.
inline std::vector<std::size_t> betti_checked(const ComplexStore& store,
                                              std::span<const std::int64_t> primes) {
    if (primes.empty()) throw std::invalid_argument("need at least one coefficient prime");
    std::vector<std::size_t> reference = betti(store, primes[0]);
    for (std::size_t i = 1; i < primes.size(); ++i) {
        std::vector<std::size_t> other = betti(store, primes[i]);
        if (other != reference)
            throw std::runtime_error("Betti numbers differ between coefficient primes " +
                                     std::to_string(primes[0]) + " and " +
                                     std::to_string(primes[i]) +
                                     " (torsion would contradict a wedge of spheres)");
    }
    return reference;
}

inline long long euler_of_f_vector(std::span<const std::size_t> counts) {
    long long chi = 0;
    for (std::size_t d = 0; d < counts.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(counts[d]);
    return chi;
}

inline long long euler_characteristic(const ComplexStore& store) {
    auto f = store.f_vector();
    return euler_of_f_vector(f);
}

}  // namespace flagmorse

#endif
