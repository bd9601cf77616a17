#include "doctest.h"

#include <string>
#include <vector>

#include "flagmorse/io.hpp"
#include "test_util.hpp"

using namespace flagmorse;
using testutil::mat_from_cols;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("subspace names use generator notation") {
    FieldSpec f2(2), f3(3);
    CHECK(subspace_name(mat_from_cols(f2, {{1, 0, 1}})) == "⟨e1+e3⟩");
    CHECK(subspace_name(mat_from_cols(f2, {{1, 0, 0}, {0, 0, 1}})) == "⟨e1, e3⟩");
    CHECK(subspace_name(mat_from_cols(f3, {{2, 1, 0}})) == "⟨2e1+e2⟩");
}

TEST_CASE("complex JSON carries the schema and the worked counts") {
    ComplexStore store = build_complex(3, 2);
    nlohmann::ordered_json j = complex_to_json(store);
    CHECK(j["n"] == 3);
    CHECK(j["q"] == 2);
    CHECK(j["skeleton"] == 1);
    CHECK(j["vertices"].size() == 14);
    CHECK(j["vertices"][0].contains("id"));
    CHECK(j["vertices"][0].contains("dim"));
    CHECK(j["vertices"][0].contains("basis"));
    CHECK(j["simplices"]["1"].size() == 21);
}

TEST_CASE("JSON of skeleta and edgeless complexes") {
    nlohmann::ordered_json j42 = complex_to_json(build_complex(4, 2, 1));
    CHECK(j42["vertices"].size() == 65);
    CHECK(j42["simplices"]["1"].size() == 315);
    CHECK_FALSE(j42["simplices"].contains("2"));

    nlohmann::ordered_json j25 = complex_to_json(build_complex(2, 5));
    CHECK(j25["vertices"].size() == 6);
    CHECK(j25["simplices"].empty());
}

TEST_CASE("JSON output is deterministic and round-trips") {
    for (auto cfg : std::vector<std::pair<int, int>>{{3, -1}, {4, 1}}) {
        auto [n, k] = cfg;
        std::optional<int> skeleton = k >= 0 ? std::optional<int>(k) : std::nullopt;
        ComplexStore store = build_complex(n, 2, skeleton);
        std::string text1 = complex_to_json_text(store);
        std::string text2 = complex_to_json_text(build_complex(n, 2, skeleton));
        CHECK(text1 == text2);

        ComplexStore parsed = complex_from_json(nlohmann::ordered_json::parse(text1));
        CHECK(complex_to_json_text(parsed) == text1);
    }
}

TEST_CASE("corrupted JSON is rejected") {
    ComplexStore store = build_complex(3, 2);
    nlohmann::ordered_json good = complex_to_json(store);

    nlohmann::ordered_json unreduced = good;
    unreduced["vertices"][0]["basis"][0][0] = 7;  // entry not in [0, q)
    CHECK_THROWS_AS(complex_from_json(unreduced), std::invalid_argument);

    nlohmann::ordered_json non_canonical = good;
    non_canonical["vertices"][1]["basis"] = non_canonical["vertices"][0]["basis"];
    CHECK_THROWS_AS(complex_from_json(non_canonical), std::invalid_argument);

    nlohmann::ordered_json bad_chain = good;
    bad_chain["simplices"]["1"][0] = {0, 1};  // two lines do not nest
    CHECK_THROWS_AS(complex_from_json(bad_chain), std::invalid_argument);
}

TEST_CASE("the DOT export of F(F_2^3) matches the labeled Heawood picture") {
    ComplexStore store = build_complex(3, 2);
    Matching m = build_matching(store);
    std::string dot = matching_to_dot(store, m);

    CHECK(count_occurrences(dot, "[label=\"⟨") == 14);      // nodes
    CHECK(count_occurrences(dot, "// class ") == 6);             // color classes
    CHECK(count_occurrences(dot, "fillcolor=black") == 1);       // the critical vertex
    CHECK(count_occurrences(dot, "penwidth=2.4") == 8);          // critical edges
    // arrows: edges matched with a vertex = 21 total - 8 critical
    std::size_t edge_lines = count_occurrences(dot, " -> ");
    std::size_t undirected = count_occurrences(dot, "dir=none");
    CHECK(edge_lines == 21);
    CHECK(edge_lines - undirected == 13);

    CHECK(dot == matching_to_dot(store, m));  // deterministic
}

TEST_CASE("the DOT export of F(F_2^2) is three isolated nodes") {
    ComplexStore store = build_complex(2, 2);
    Matching m = build_matching(store);
    std::string dot = matching_to_dot(store, m);
    CHECK(count_occurrences(dot, "[label=\"⟨") == 3);
    CHECK(count_occurrences(dot, " -> ") == 0);
}

TEST_SUITE_END();
