#include "doctest.h"

#include <cstdint>
#include <vector>

#include "flagmorse/counting.hpp"
#include "flagmorse/homology.hpp"
#include "flagmorse/morse.hpp"

using namespace flagmorse;

TEST_SUITE_BEGIN("homology");

static const std::vector<std::int64_t> kPrimes{2, 3, 1000003};

TEST_CASE("edge boundary columns carry +1 and -1") {
    ComplexStore store = build_complex(3, 2);
    auto cols = boundary_matrix(store, 1, 5);
    CHECK(cols.size() == 21);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        const Flag& e = store.simplices(1)[i];
        REQUIRE(cols[i].size() == 2);
        // removing the first vertex leaves the second with sign +1
        int row_second = store.find(0, {e[1]});
        int row_first = store.find(0, {e[0]});
        for (auto [row, coeff] : cols[i]) {
            if (row == row_second) CHECK(coeff == 1);
            if (row == row_first) CHECK(coeff == 4);  // -1 mod 5
        }
    }
    CHECK_THROWS_AS(boundary_matrix(store, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(boundary_matrix(store, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(boundary_matrix(store, 1, 6), std::invalid_argument);
}

TEST_CASE("boundary of boundary vanishes") {
    for (std::int64_t p : kPrimes) CHECK_NOTHROW(build_chain_data(build_complex(4, 2), p));
    CHECK_NOTHROW(build_chain_data(build_complex(3, 3), 7));
}

TEST_CASE("rank of the F_2^3 vertex-edge boundary") {
    ComplexStore store = build_complex(3, 2);
    // one connected component: rank = 14 - 1
    CHECK(sparse_rank(boundary_matrix(store, 1, 3), 3) == 13);
    CHECK(sparse_rank(boundary_matrix(store, 1, 2), 2) == 13);
}

TEST_CASE("sparse rank on a handmade matrix") {
    // columns over F_3: (1,2,0), (2,1,0), (0,0,0) -> dependent pair plus zero
    std::vector<SparseCol> cols{{{0, 1}, {1, 2}}, {{0, 2}, {1, 1}}, {}};
    CHECK(sparse_rank(cols, 3) == 1);
    std::vector<SparseCol> full{{{0, 1}, {1, 2}}, {{1, 1}}};
    CHECK(sparse_rank(full, 3) == 2);
}

TEST_CASE("betti numbers of the worked complexes") {
    CHECK(betti_checked(build_complex(3, 2), kPrimes) == std::vector<std::size_t>{1, 8});
    CHECK(betti_checked(build_complex(4, 2), kPrimes) == std::vector<std::size_t>{1, 0, 64});
    CHECK(betti_checked(build_complex(4, 2, 1), kPrimes) == std::vector<std::size_t>{1, 251});
    CHECK(betti_checked(build_complex(2, 5), kPrimes) == std::vector<std::size_t>{6});
}

TEST_CASE("euler characteristics") {
    CHECK(euler_characteristic(build_complex(3, 2)) == -7);
    CHECK(euler_characteristic(build_complex(4, 2)) == 65);
    std::vector<std::size_t> point{1};
    CHECK(euler_of_f_vector(point) == 1);
}

TEST_CASE("alternating betti sum equals the euler characteristic") {
    for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{2, 2}, {3, 2}, {3, 3}, {4, 2}}) {
        ComplexStore store = build_complex(n, q);
        auto b = betti_checked(store, kPrimes);
        long long alternating = 0;
        for (std::size_t d = 0; d < b.size(); ++d)
            alternating += (d % 2 ? -1 : 1) * static_cast<long long>(b[d]);
        CHECK(alternating == euler_characteristic(store));
    }
}

TEST_CASE("skeleton betti numbers match the closed form and the census") {
    for (int n : {2, 3, 4})
        for (std::uint32_t q : {2u, 3u})
            for (int k = 0; k <= n - 2; ++k) {
                ComplexStore store = build_complex(n, q, k);
                auto b = betti_checked(store, kPrimes);
                SphereCount sc = sphere_count_skeleton(n, q, k);
                REQUIRE(sc.count.fits_u64());
                std::uint64_t spheres = sc.count.as_u64();
                // a wedge of m k-spheres: b_0 = 1 (or m+1 when k = 0), b_k = m
                if (sc.wedge_dim == 0) {
                    CHECK(b[0] == spheres + 1);
                } else {
                    CHECK(b[0] == 1);
                    CHECK(b[static_cast<std::size_t>(sc.wedge_dim)] == spheres);
                }
                for (int d = 1; d < sc.wedge_dim; ++d)
                    CHECK(b[static_cast<std::size_t>(d)] == 0);

                Matching m = build_matching(store);
                std::uint64_t critical_top =
                    m.critical_census[static_cast<std::size_t>(sc.wedge_dim)];
                CHECK(critical_top == spheres + (sc.wedge_dim == 0 ? 1 : 0));
            }
}

TEST_CASE("multi-prime disagreement would be reported") {
    CHECK_THROWS_AS(betti_checked(build_complex(3, 2), std::vector<std::int64_t>{}),
                    std::invalid_argument);
}

TEST_SUITE_END();
