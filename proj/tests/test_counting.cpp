#include "doctest.h"

#include <cstdint>
#include <map>
#include <vector>

#include "flagmorse/counting.hpp"
#include "flagmorse/morse.hpp"

using namespace flagmorse;

TEST_SUITE_BEGIN("counting");

TEST_CASE("big naturals") {
    CHECK(BigNat(0).str() == "0");
    CHECK(BigNat(1234567890123456789ull).str() == "1234567890123456789");
    CHECK((BigNat(0xffffffffu) + BigNat(1)).str() == "4294967296");
    CHECK(BigNat::pow(2, 40).str() == "1099511627776");
    CHECK(BigNat::pow(3, 28).str() == "22876792454961");
    CHECK(BigNat::pow(7, 0) == BigNat(1));
    CHECK(BigNat(5) < BigNat(7));
    CHECK(BigNat::pow(2, 64) > BigNat(0xffffffffffffffffull));
    CHECK(BigNat(123).fits_u64());
    CHECK(BigNat(123).as_u64() == 123);
    BigNat x(10);
    x *= 0x100000000ull;  // multiplier with a high limb
    CHECK(x.str() == "42949672960");
}

TEST_CASE("label statistics") {
    LabelStats s321 = label_stats(Permutation({3, 2, 1}));
    CHECK(s321.inversions == 3);
    CHECK(s321.ascending_pairs == 0);
    CHECK_FALSE(s321.first_ascent.has_value());

    LabelStats s123 = label_stats(Permutation({1, 2, 3}));
    CHECK(s123.inversions == 0);
    CHECK(s123.ascending_pairs == 2);
    CHECK(s123.first_ascent == 1);

    LabelStats s312 = label_stats(Permutation({3, 1, 2}));
    CHECK(s312.inversions == 2);  // (3,1), (3,2)
    CHECK(s312.ascending_pairs == 1);
    CHECK(s312.first_ascent == 2);
}

TEST_CASE("the m_j sum counts inversions, exhaustively through n = 7") {
    for (int n = 1; n <= 7; ++n) {
        for (const Permutation& label : all_permutations(n)) {
            const auto& w = label.word();
            int msum = 0;
            for (int j = 0; j < n; ++j) {
                int smaller_before = 0;
                for (int k = 0; k < j; ++k)
                    if (w[static_cast<std::size_t>(k)] < w[static_cast<std::size_t>(j)])
                        ++smaller_before;
                msum += w[static_cast<std::size_t>(j)] - 1 - smaller_before;
            }
            CHECK(msum == label_stats(label).inversions);
        }
    }
}

TEST_CASE("ascent distribution matches the Eulerian triangle through n = 7") {
    // oracle recurrence: A(n, k) = (k+1) A(n-1, k) + (n-k) A(n-1, k-1)
    std::vector<std::vector<std::uint64_t>> eulerian{{}, {1}};
    for (int n = 2; n <= 7; ++n) {
        std::vector<std::uint64_t> row(static_cast<std::size_t>(n), 0);
        const auto& prev = eulerian.back();
        for (int k = 0; k < n; ++k) {
            std::uint64_t a = k < n - 1 ? prev[static_cast<std::size_t>(k)] : 0;
            std::uint64_t b = k > 0 ? prev[static_cast<std::size_t>(k) - 1] : 0;
            row[static_cast<std::size_t>(k)] =
                static_cast<std::uint64_t>(k + 1) * a + static_cast<std::uint64_t>(n - k) * b;
        }
        eulerian.push_back(std::move(row));
    }
    for (int n = 1; n <= 7; ++n) {
        std::map<int, std::uint64_t> histogram;
        for (const Permutation& label : all_permutations(n))
            ++histogram[label_stats(label).ascending_pairs];
        for (int k = 0; k < n; ++k) {
            std::uint64_t expected = eulerian[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
            std::uint64_t got = histogram.count(k) ? histogram[k] : 0;
            CHECK(got == expected);
        }
    }
}

TEST_CASE("f^i at the extreme labels") {
    for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{3, 2}, {3, 3}, {4, 2}, {2, 7}}) {
        std::uint64_t binom = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        CHECK(f_label(Permutation::reversal(n), q) == BigNat::pow(q, binom));
        CHECK(f_label(Permutation::identity(n), q) == BigNat(1));
    }
    CHECK_THROWS_AS(f_label(Permutation::identity(3), 4), std::invalid_argument);
}

TEST_CASE("f^i equals the brute-force label census") {
    for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{3, 2}, {3, 3}, {4, 2}}) {
        ComplexStore store = build_complex(n, q, 0);
        std::map<Permutation, std::uint64_t> census;
        for (const Flag& chain : store.maximal_chains())
            ++census[label_of_flag(store, chain).label];
        for (const Permutation& label : all_permutations(n)) {
            std::uint64_t observed = census.count(label) ? census[label] : 0;
            CHECK(f_label(label, q) == BigNat(observed));
        }
    }
    // the frozen spot value: four maximal flags of F(F_2^3) carry label 231
    CHECK(f_label(Permutation({2, 3, 1}), 2) == BigNat(4));
}

TEST_CASE("full-complex sphere counts") {
    CHECK(sphere_count_full(3, 2) == SphereCount{1, BigNat(8)});
    CHECK(sphere_count_full(2, 2) == SphereCount{0, BigNat(2)});
    CHECK(sphere_count_full(2, 5) == SphereCount{0, BigNat(5)});
    CHECK(sphere_count_full(4, 2) == SphereCount{2, BigNat(64)});
    CHECK(sphere_count_full(8, 3) == SphereCount{6, BigNat::pow(3, 28)});
}

TEST_CASE("skeleton sphere counts") {
    CHECK(sphere_count_skeleton(3, 2, 0) == SphereCount{0, BigNat(13)});
    CHECK(sphere_count_skeleton(4, 2, 1) == SphereCount{1, BigNat(251)});
    CHECK(sphere_count_skeleton(4, 2, 0) == SphereCount{0, BigNat(64)});
    CHECK(sphere_count_skeleton(3, 2, 1) == SphereCount{1, BigNat(8)});
    CHECK(sphere_count_skeleton(3, 2, 7) == SphereCount{1, BigNat(8)});  // k beyond n-2
    CHECK(sphere_count_skeleton(3, 3, 1) == SphereCount{1, BigNat(27)});
    CHECK_THROWS_AS(sphere_count_skeleton(3, 2, -1), std::invalid_argument);
}

TEST_CASE("binomial conventions") {
    CHECK(binomial_or_zero(0, 0) == 1);
    CHECK(binomial_or_zero(3, 2) == 3);
    CHECK(binomial_or_zero(2, 3) == 0);
    CHECK(binomial_or_zero(-1, 0) == 0);
    CHECK(binomial_or_zero(5, -1) == 0);
}

TEST_CASE("gaussian binomials") {
    CHECK(gaussian_binomial(3, 1, 2) == BigNat(7));
    CHECK(gaussian_binomial(4, 2, 2) == BigNat(35));
    CHECK(gaussian_binomial(5, 2, 2) == BigNat(155));
    CHECK(gaussian_binomial(3, 1, 3) == BigNat(13));
    CHECK(gaussian_binomial(3, 3, 2) == BigNat(1));
    CHECK(gaussian_binomial(3, 4, 2) == BigNat(0));
}

TEST_CASE("total flag identity") {
    auto [closed32, enum32] = total_flag_identity(3, 2);
    CHECK(closed32 == BigNat(21));
    CHECK(enum32 == BigNat(21));

    auto [closed42, enum42] = total_flag_identity(4, 2);
    CHECK(closed42 == BigNat(315));
    CHECK(enum42 == BigNat(315));

    auto [closed25, enum25] = total_flag_identity(2, 5);
    CHECK(closed25 == BigNat(6));
    CHECK(enum25 == BigNat(6));

    auto [closed33, enum33] = total_flag_identity(3, 3);
    CHECK(closed33 == enum33);
    CHECK(closed33 == BigNat(52));  // [3]_3! = 1 * 4 * 13
}

TEST_SUITE_END();
