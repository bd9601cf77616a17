// flagmorse: build flag complexes over F_q, construct and verify their
// discrete Morse matchings, evaluate the closed-form sphere counts, and
// export the labeled 1-skeleton.
//
// Exit codes: 0 all checks pass, 1 usage or I/O error, 2 matching legality
// or partition failure, 3 acyclicity failure, 4 critical-cell census
// mismatch, 5 homology mismatch.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flagmorse/complex.hpp"
#include "flagmorse/counting.hpp"
#include "flagmorse/homology.hpp"
#include "flagmorse/io.hpp"
#include "flagmorse/matrix.hpp"
#include "flagmorse/morse.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitLegality = 2;
constexpr int kExitAcyclicity = 3;
constexpr int kExitCensus = 4;
constexpr int kExitHomology = 5;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

/// Expected critical-cell counts per dimension for the stored skeleton:
/// one 0-cell plus the closed-form sphere count in the wedge dimension
/// (both land in dimension 0 when the wedge dimension is 0).
std::vector<flagmorse::BigNat> expected_census(int n, std::uint32_t q, int top) {
    using flagmorse::BigNat;
    flagmorse::SphereCount sc = flagmorse::sphere_count_skeleton(n, q, top);
    std::vector<BigNat> expected(static_cast<std::size_t>(top) + 1, BigNat(0));
    expected[0] = BigNat(1);
    expected[static_cast<std::size_t>(sc.wedge_dim)] += sc.count;
    return expected;
}

int verify_instance(int n, std::uint32_t q, std::optional<int> skeleton,
                    const std::vector<std::int64_t>& primes, std::uint64_t seed) {
    using namespace flagmorse;
    ComplexStore store = build_complex(n, q, skeleton);
    const int top = store.top_dim();

    std::cout << "F(F_" << q << "^" << n << ")";
    if (store.truncated()) std::cout << " " << top << "-skeleton";
    std::cout << "\n  f-vector:";
    for (std::size_t c : store.f_vector()) std::cout << " " << c;
    std::cout << "\n";

    Matching matching = build_matching(store);
    VerifyReport report = verify_matching(store, matching);
    std::cout << "  legality:   " << (report.legality_ok ? "OK" : "FAIL") << "\n";
    std::cout << "  acyclicity: " << (report.acyclicity_ok ? "OK" : "FAIL") << "\n";
    std::cout << "  filtration: " << (report.closure_ok ? "OK" : "FAIL") << "\n";
    std::cout << "  partition:  " << (report.partition_ok ? "OK" : "FAIL") << "\n";
    for (const std::string& v : report.violations) std::cout << "    ! " << v << "\n";

    int rc = 0;
    if (!report.legality_ok || !report.closure_ok || !report.partition_ok)
        rc = kExitLegality;
    else if (!report.acyclicity_ok)
        rc = kExitAcyclicity;

    std::vector<BigNat> expected = expected_census(n, q, top);
    bool census_ok = true;
    std::cout << "  critical cells (dim: observed / expected):";
    for (int d = 0; d <= top; ++d) {
        BigNat observed(matching.critical_census[static_cast<std::size_t>(d)]);
        std::cout << "  " << d << ": " << observed.str() << " / "
                  << expected[static_cast<std::size_t>(d)].str();
        if (!(observed == expected[static_cast<std::size_t>(d)])) census_ok = false;
    }
    std::cout << (census_ok ? "  OK" : "  MISMATCH") << "\n";
    if (!census_ok && rc == 0) rc = kExitCensus;

    bool homology_ok = true;
    try {
        std::vector<std::size_t> b = betti_checked(store, primes);
        std::cout << "  betti (primes";
        for (auto p : primes) std::cout << " " << p;
        std::cout << "): (";
        for (std::size_t d = 0; d < b.size(); ++d) std::cout << (d ? ", " : "") << b[d];
        std::cout << ")";
        // a wedge of m k-spheres has b_k = m (plus the basepoint when k = 0)
        SphereCount sc = sphere_count_skeleton(n, q, top);
        for (int d = 0; d <= top; ++d) {
            BigNat expected_b =
                (d == sc.wedge_dim) ? sc.count + BigNat(d == 0 ? 1 : 0)
                                    : BigNat(d == 0 ? 1 : 0);
            if (!(BigNat(b[static_cast<std::size_t>(d)]) == expected_b)) homology_ok = false;
        }
        std::cout << (homology_ok ? "  OK" : "  MISMATCH") << "\n";
    } catch (const std::exception& e) {
        homology_ok = false;
        std::cout << "  betti: FAIL (" << e.what() << ")\n";
    }
    if (!homology_ok && rc == 0) rc = kExitHomology;

    // label well-definedness spot check: one resampled step-(a) basis per simplex
    bool resample_ok = true;
    for (std::size_t gid = 0; gid < store.total_simplices(); ++gid) {
        const Flag& verts = store.simplex(static_cast<int>(gid));
        std::vector<Mat> chain = store.chain_bases(verts);
        MinimalMatrix a = minimal_matrix_of_flag(chain, step_a_basis(chain));
        MinimalMatrix b = minimal_matrix_of_flag(chain, random_step_a_basis(chain, seed + gid));
        if (!(a == b)) resample_ok = false;
    }
    std::cout << "  label resampling (seed " << seed << "): " << (resample_ok ? "OK" : "FAIL")
              << "\n";
    if (!resample_ok && rc == 0) rc = kExitLegality;

    std::cout << "  result: " << (rc == 0 ? "PASS" : "FAIL") << "\n";
    return rc;
}

int run_count(int n, std::uint32_t q, std::optional<int> k_opt, bool check,
              const std::string& format, const std::string& out_path) {
    using namespace flagmorse;
    std::ostringstream out;
    std::vector<Permutation> labels = all_permutations(n);

    nlohmann::ordered_json jlabels = nlohmann::ordered_json::array();
    if (format == "text") {
        out << "label  inv  p  j  f^i\n";
    }
    BigNat total(0);
    for (const Permutation& label : labels) {
        LabelStats st = label_stats(label);
        BigNat f = f_label(label, q);
        total += f;
        if (format == "text") {
            out << label.str() << "  " << st.inversions << "  " << st.ascending_pairs << "  "
                << (st.first_ascent ? std::to_string(*st.first_ascent) : "-") << "  " << f.str()
                << "\n";
        } else {
            jlabels.push_back({{"label", label.str()},
                               {"inv", st.inversions},
                               {"p", st.ascending_pairs},
                               {"j", st.first_ascent ? nlohmann::ordered_json(*st.first_ascent)
                                                     : nlohmann::ordered_json(nullptr)},
                               {"f", f.str()}});
        }
    }

    std::vector<int> ks;
    if (k_opt)
        ks.push_back(std::min(*k_opt, n - 2));
    else
        for (int k = 0; k <= n - 2; ++k) ks.push_back(k);

    nlohmann::ordered_json jspheres = nlohmann::ordered_json::array();
    if (format == "text") {
        out << "sum f^i = " << total.str() << "\n";
        out << "spheres:\n";
    }
    int rc = 0;
    for (int k : ks) {
        SphereCount sc = sphere_count_skeleton(n, q, k);
        std::string census_note;
        if (check) {
            ComplexStore store = build_complex(n, q, k);
            Matching matching = build_matching(store);
            // the basepoint is not a sphere: subtract the critical 0-cell
            BigNat observed(matching.critical_census[static_cast<std::size_t>(sc.wedge_dim)]);
            BigNat expected = sc.count + BigNat(sc.wedge_dim == 0 ? 1 : 0);
            if (observed == expected) {
                census_note = "  census OK";
            } else {
                census_note = "  census MISMATCH (observed " + observed.str() + ")";
                rc = kExitCensus;
            }
        }
        if (format == "text") {
            out << "  k=" << k << (k == n - 2 ? " (full)" : "") << ": " << sc.count.str()
                << " spheres of dimension " << sc.wedge_dim << census_note << "\n";
        } else {
            jspheres.push_back(
                {{"k", k}, {"dim", sc.wedge_dim}, {"count", sc.count.str()}});
        }
    }

    if (format == "text") {
        write_output(out.str(), out_path);
    } else {
        nlohmann::ordered_json j{{"n", n}, {"q", q}, {"labels", std::move(jlabels)},
                                 {"spheres", std::move(jspheres)}};
        write_output(j.dump(2) + "\n", out_path);
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flag complexes over F_q and their discrete Morse matchings"};
    app.require_subcommand(1);
    app.set_config("--config");

    int n = 0;
    std::uint32_t q = 2;
    int skeleton = -1;  // -1 = full complex
    std::string out_path;
    std::string format = "text";
    std::vector<std::int64_t> primes{2, 3, 1000003};
    std::uint64_t seed = 1;
    bool check = false;
    bool large = false;

    auto* build = app.add_subcommand("build", "enumerate the complex and write it as JSON");
    build->add_option("--n", n, "ambient dimension")->required();
    build->add_option("--q", q, "field order (prime)")->required();
    build->add_option("--skeleton,-k", skeleton, "truncate to the k-skeleton");
    build->add_option("--out", out_path, "output file (default: stdout)");

    auto* verify = app.add_subcommand(
        "verify", "build, match, and verify (no --n: run the default battery)");
    verify->add_option("--n", n, "ambient dimension");
    verify->add_option("--q", q, "field order (prime)");
    verify->add_option("--skeleton,-k", skeleton, "truncate to the k-skeleton");
    verify->add_option("--primes", primes, "homology coefficient primes")->delimiter(',');
    verify->add_option("--seed", seed, "seed for the label resampling check");
    verify->add_flag("--large", large, "include F(F_2^5) in the battery (slow)");

    auto* count = app.add_subcommand("count", "closed-form label and sphere counts");
    count->add_option("--n", n, "ambient dimension")->required();
    count->add_option("--q", q, "field order (prime)")->required();
    int k_arg = -1;
    count->add_option("--k", k_arg, "skeleton level (default: all)");
    count->add_flag("--check", check, "compare against the matching census");
    count->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    count->add_option("--out", out_path, "output file (default: stdout)");

    auto* exportdot =
        app.add_subcommand("export-dot", "write the labeled 1-skeleton as Graphviz DOT");
    exportdot->add_option("--n", n, "ambient dimension")->required();
    exportdot->add_option("--q", q, "field order (prime)")->required();
    exportdot->add_option("--out", out_path, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            std::optional<int> k = skeleton >= 0 ? std::optional<int>(skeleton) : std::nullopt;
            flagmorse::ComplexStore store = flagmorse::build_complex(n, q, k);
            write_output(flagmorse::complex_to_json_text(store), out_path);
            return 0;
        }
        if (verify->parsed()) {
            std::optional<int> k = skeleton >= 0 ? std::optional<int>(skeleton) : std::nullopt;
            int rc = 0;
            if (n != 0) {
                rc = verify_instance(n, q, k, primes, seed);
            } else {
                std::vector<std::pair<int, std::uint32_t>> grid{
                    {2, 2}, {2, 5}, {3, 2}, {3, 3}, {4, 2}};
                if (large) grid.emplace_back(5, 2);
                for (auto [gn, gq] : grid)
                    for (int gk = 0; gk <= gn - 2; ++gk) {
                        int one = verify_instance(gn, gq, gk, primes, seed);
                        if (rc == 0) rc = one;
                    }
            }
            return rc;
        }
        if (count->parsed()) {
            std::optional<int> k = k_arg >= 0 ? std::optional<int>(k_arg) : std::nullopt;
            return run_count(n, q, k, check, format, out_path);
        }
        if (exportdot->parsed()) {
            int top = std::min(1, n - 2);
            flagmorse::ComplexStore store = flagmorse::build_complex(n, q, top);
            flagmorse::Matching matching = flagmorse::build_matching(store);
            write_output(flagmorse::matching_to_dot(store, matching), out_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
