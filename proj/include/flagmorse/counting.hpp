// Closed-form counts: maximal flags per label, sphere counts for the full
// complex and its skeleta, and permutation statistics.

#ifndef FLAGMORSE_COUNTING_HPP
#define FLAGMORSE_COUNTING_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flagmorse/bignat.hpp"
#include "flagmorse/complex.hpp"
#include "flagmorse/matrix.hpp"

namespace flagmorse {

/// Statistics of a label word i_1 i_2 ... i_n: inversion count, number of
/// ascending pairs (consecutive positions with i_t < i_{t+1}), and the
/// 1-based position of the first ascending pair (absent iff the label is
/// the maximal word).
struct LabelStats {
    Permutation label;
    int inversions;
    int ascending_pairs;
    std::optional<int> first_ascent;
};

inline LabelStats label_stats(const Permutation& label) {
    const auto& w = label.word();
    const int n = label.size();
    int inv = 0;
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t)
            if (w[static_cast<std::size_t>(s)] > w[static_cast<std::size_t>(t)]) ++inv;
    int asc = 0;
    std::optional<int> first;
    for (int t = 0; t + 1 < n; ++t)
        if (w[static_cast<std::size_t>(t)] < w[static_cast<std::size_t>(t + 1)]) {
            ++asc;
            if (!first) first = t + 1;
        }
    // m_j = i_j - 1 - #{k < j : i_k < i_j} must sum to the inversion count
    int msum = 0;
    for (int j = 0; j < n; ++j) {
        int smaller_before = 0;
        for (int k = 0; k < j; ++k)
            if (w[static_cast<std::size_t>(k)] < w[static_cast<std::size_t>(j)]) ++smaller_before;
        msum += w[static_cast<std::size_t>(j)] - 1 - smaller_before;
    }
    if (msum != inv) throw std::logic_error("inversion bookkeeping mismatch");
    return LabelStats{label, inv, asc, first};
}

/// Number of maximal flags of F(F_q^n) carrying the given label:
/// q^(sum of m_j) with m_j = i_j - 1 - #{i_k | i_k < i_j and k < j}.
inline BigNat f_label(const Permutation& label, std::uint32_t q) {
    FieldSpec check(q);  // q must be prime
    const auto& w = label.word();
    std::uint64_t msum = 0;
    for (int j = 0; j < label.size(); ++j) {
        int smaller_before = 0;
        for (int k = 0; k < j; ++k)
            if (w[static_cast<std::size_t>(k)] < w[static_cast<std::size_t>(j)]) ++smaller_before;
        msum += static_cast<std::uint64_t>(w[static_cast<std::size_t>(j)] - 1 - smaller_before);
    }
    return BigNat::pow(q, msum);
}

/// All of Sigma_n in lexicographic order.
inline std::vector<Permutation> all_permutations(int n) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(w));
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

/// C(a, b) with the convention 0 outside 0 <= b <= a.
inline std::uint64_t binomial_or_zero(int a, int b) {
    if (b < 0 || b > a) return 0;
    std::uint64_t r = 1;
    for (int t = 1; t <= b; ++t)
        r = r * static_cast<std::uint64_t>(a - b + t) / static_cast<std::uint64_t>(t);
    return r;
}

/// Gaussian binomial [n choose d]_q: the number of d-dimensional subspaces
/// of F_q^n. Recurrence [n d] = [n-1 d-1] + q^d [n-1 d].
inline BigNat gaussian_binomial(int n, int d, std::uint32_t q) {
    if (d < 0 || d > n) return BigNat(0);
    std::vector<BigNat> row(static_cast<std::size_t>(d) + 1, BigNat(0));
    row[0] = BigNat(1);
    for (int m = 1; m <= n; ++m)
        for (int j = std::min(d, m); j >= 1; --j) {
            BigNat next = row[static_cast<std::size_t>(j)];
            for (int t = 0; t < j; ++t) next *= q;
            next += row[static_cast<std::size_t>(j) - 1];
            row[static_cast<std::size_t>(j)] = std::move(next);
        }
    return row[static_cast<std::size_t>(d)];
}

struct SphereCount {
    int wedge_dim;
    BigNat count;

    bool operator==(const SphereCount&) const = default;
};

/// The full complex is a wedge of q^(n choose 2) spheres of dimension n-2.
inline SphereCount sphere_count_full(int n, std::uint32_t q) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    FieldSpec check(q);
    std::uint64_t e = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    return SphereCount{n - 2, BigNat::pow(q, e)};
}

/// Sphere count of the k-skeleton. For k >= n-2 the skeleton is the whole
/// complex. Below that, sum C(p_i - 1, n-k-3) * f^i over the non-maximal
/// labels i; the maximal label is excluded because its class consists of
/// (n-2)-dimensional simplices only and survives no proper skeleton.
inline SphereCount sphere_count_skeleton(int n, std::uint32_t q, int k) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (k < 0) throw std::invalid_argument("skeleton level must be >= 0");
    if (k >= n - 2) return sphere_count_full(n, q);
    BigNat total(0);
    for (const Permutation& label : all_permutations(n)) {
        if (label.is_maximal()) continue;
        LabelStats st = label_stats(label);
        std::uint64_t coeff = binomial_or_zero(st.ascending_pairs - 1, n - k - 3);
        if (coeff != 0) total += f_label(label, q) * coeff;
    }
    return SphereCount{k, std::move(total)};
}

/// Consistency identity: the closed-form sum of f^i over all labels against
/// the directly enumerated number of maximal flags.
inline std::pair<BigNat, BigNat> total_flag_identity(int n, std::uint32_t q) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    BigNat closed(0);
    for (const Permutation& label : all_permutations(n)) closed += f_label(label, q);
    ComplexStore store = build_complex(n, q, 0);  // vertices suffice for chain enumeration
    BigNat enumerated(store.maximal_chains().size());
    return {std::move(closed), std::move(enumerated)};
}

}  // namespace flagmorse

#endif
