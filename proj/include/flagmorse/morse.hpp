// The acyclic matching on F(F_q^n): label each flag through its minimal
// matrix representation, partition simplices by label, pair each class's
// simplices against the pivot vertex of their host maximal flag, and verify
// the result (legality, acyclicity, subcomplex filtration, host partition).

#ifndef FLAGMORSE_MORSE_HPP
#define FLAGMORSE_MORSE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flagmorse/complex.hpp"
#include "flagmorse/counting.hpp"
#include "flagmorse/matrix.hpp"

namespace flagmorse {

/// Label data of a flag: the label permutation, the minimal matrix it was
/// read from, and the host maximal flag determined by that matrix's column
/// prefix spans (the first maximal flag, in label order, containing the flag).
struct FlagLabel {
    Permutation label;
    MinimalMatrix rep;
    Flag host;
};

inline FlagLabel label_of_flag(const ComplexStore& store, const Flag& verts) {
    if (verts.empty()) throw std::invalid_argument("empty flag");
    std::vector<Mat> chain = store.chain_bases(verts);
    MinimalMatrix rep = minimal_matrix_of_flag(chain, step_a_basis(chain));
    Flag host;
    host.reserve(static_cast<std::size_t>(store.n()) - 1);
    for (int d = 1; d <= store.n() - 1; ++d) {
        int id = store.find_vertex(canonical_subspace(rep.mat.first_cols(d)));
        if (id < 0) throw std::logic_error("host subspace missing from the vertex set");
        host.push_back(id);
    }
    return FlagLabel{rep.label, std::move(rep), std::move(host)};
}

/// The pivot vertex V_f of a maximal flag: its j_i-th vertex, where j_i is
/// the first ascending pair position of the label. Undefined for the
/// maximal label (which has no ascent).
inline int pairing_vertex(const ComplexStore& store, const Flag& maximal_verts) {
    if (static_cast<int>(maximal_verts.size()) != store.n() - 1)
        throw std::invalid_argument("pairing vertex is defined for maximal flags only");
    FlagLabel fl = label_of_flag(store, maximal_verts);
    LabelStats st = label_stats(fl.label);
    if (!st.first_ascent)
        throw std::invalid_argument("pairing vertex undefined: label " + fl.label.str() +
                                    " is maximal");
    return maximal_verts[static_cast<std::size_t>(*st.first_ascent) - 1];
}

/// The matching P = union of P_{i,f} over labels i and host flags f, plus
/// everything needed to audit it. Indexed by global simplex id.
struct Matching {
    std::vector<std::pair<int, int>> pairs;  // (face gid, coface gid)
    std::vector<int> critical;               // unpaired gids, ascending

    std::vector<Permutation> labels;         // per simplex
    std::vector<Flag> hosts;                 // per simplex: host maximal flag
    std::vector<int> match_vertex;           // per simplex: V_host id, -1 when label is maximal
    std::vector<int> partner;                // per simplex: paired gid or -1

    std::map<Permutation, std::vector<int>> by_label;  // the partition {X_i}
    std::vector<std::size_t> critical_census;          // critical count per dimension
};

/// Partition of the stored simplices by label.
inline std::map<Permutation, std::vector<int>> partition_by_label(const ComplexStore& store) {
    std::map<Permutation, std::vector<int>> by_label;
    for (int d = 0; d <= store.top_dim(); ++d)
        for (std::size_t i = 0; i < store.simplex_count(d); ++i) {
            int gid = store.global_id(d, static_cast<int>(i));
            by_label[label_of_flag(store, store.simplex(gid)).label].push_back(gid);
        }
    return by_label;
}

/// Build the matching. Every simplex is labeled through its minimal matrix;
/// a simplex with non-maximal label pairs across its host's pivot vertex
/// V, downward when V is a member (except for the bare 1-flag {V}, which
/// stays critical) and upward otherwise. On a truncated store an upward
/// partner above the stored dimension does not exist, so the simplex is
/// left critical; this is exactly the full matching filtered to the
/// skeleton.
inline Matching build_matching(const ComplexStore& store) {
    const std::size_t total = store.total_simplices();
    Matching m;
    m.labels.reserve(total);
    m.hosts.reserve(total);
    m.match_vertex.assign(total, -1);
    m.partner.assign(total, -1);

    for (int d = 0; d <= store.top_dim(); ++d)
        for (std::size_t i = 0; i < store.simplex_count(d); ++i) {
            int gid = store.global_id(d, static_cast<int>(i));
            FlagLabel fl = label_of_flag(store, store.simplex(gid));
            m.by_label[fl.label].push_back(gid);
            if (!fl.label.is_maximal()) {
                LabelStats st = label_stats(fl.label);
                m.match_vertex[static_cast<std::size_t>(gid)] =
                    fl.host[static_cast<std::size_t>(*st.first_ascent) - 1];
            }
            m.labels.push_back(std::move(fl.label));
            m.hosts.push_back(std::move(fl.host));
        }

    for (std::size_t gid = 0; gid < total; ++gid) {
        int v = m.match_vertex[gid];
        if (v < 0) continue;  // maximal label: critical
        const Flag& verts = store.simplex(static_cast<int>(gid));
        auto it = std::lower_bound(verts.begin(), verts.end(), v);
        if (it != verts.end() && *it == v) {
            if (verts.size() == 1) continue;  // the single critical 0-simplex
            Flag face(verts);
            face.erase(face.begin() + (it - verts.begin()));
            int fidx = store.find(static_cast<int>(verts.size()) - 2, face);
            if (fidx < 0) throw std::logic_error("face of a stored simplex is missing");
            int fgid = store.global_id(static_cast<int>(verts.size()) - 2, fidx);
            m.pairs.emplace_back(fgid, static_cast<int>(gid));
            m.partner[static_cast<std::size_t>(fgid)] = static_cast<int>(gid);
            m.partner[gid] = fgid;
        }
        // else: the upward partner is recorded when the coface is visited;
        // if the coface lies above the stored skeleton this simplex stays
        // critical.
    }

    for (std::size_t gid = 0; gid < total; ++gid)
        if (m.partner[gid] < 0) m.critical.push_back(static_cast<int>(gid));

    m.critical_census.assign(static_cast<std::size_t>(store.top_dim()) + 1, 0);
    for (int gid : m.critical)
        ++m.critical_census[static_cast<std::size_t>(store.locate(gid).first)];
    return m;
}

struct VerifyReport {
    bool legality_ok = true;
    bool acyclicity_ok = true;
    bool closure_ok = true;
    bool partition_ok = true;
    std::vector<std::string> violations;

    bool ok() const { return legality_ok && acyclicity_ok && closure_ok && partition_ok; }
};

namespace detail {

inline std::string flag_str(const Flag& f) {
    std::string s = "[";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(f[i]);
    }
    return s + "]";
}

/// Facets (codimension-1 faces) of a flag, with their global ids.
inline std::vector<int> facet_gids(const ComplexStore& store, const Flag& verts) {
    std::vector<int> out;
    if (verts.size() < 2) return out;
    Flag face;
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
        face.clear();
        for (std::size_t t = 0; t < verts.size(); ++t)
            if (t != drop) face.push_back(verts[t]);
        int idx = store.find(static_cast<int>(face.size()) - 1, face);
        if (idx < 0) throw std::logic_error("store is not closed under facets");
        out.push_back(store.global_id(static_cast<int>(face.size()) - 1, idx));
    }
    return out;
}

/// Arrows of the modified Hasse digraph: coface -> facet, reversed to
/// face -> coface for matched pairs.
inline std::vector<std::vector<int>> modified_hasse(const ComplexStore& store,
                                                    const Matching& m) {
    const std::size_t total = store.total_simplices();
    std::vector<std::vector<int>> adj(total);
    std::vector<std::vector<int>> matched(total);  // per face: matched cofaces
    for (auto [face, coface] : m.pairs) {
        if (face < 0 || coface < 0 || face >= static_cast<int>(total) ||
            coface >= static_cast<int>(total))
            continue;  // already reported by the legality check
        matched[static_cast<std::size_t>(face)].push_back(coface);
    }
    for (int d = 1; d <= store.top_dim(); ++d)
        for (std::size_t i = 0; i < store.simplex_count(d); ++i) {
            int t = store.global_id(d, static_cast<int>(i));
            for (int s : facet_gids(store, store.simplex(t))) {
                const auto& up = matched[static_cast<std::size_t>(s)];
                if (std::find(up.begin(), up.end(), t) != up.end())
                    adj[static_cast<std::size_t>(s)].push_back(t);
                else
                    adj[static_cast<std::size_t>(t)].push_back(s);
            }
        }
    return adj;
}

/// Kahn's algorithm over the given node set.
inline bool is_acyclic(const std::vector<std::vector<int>>& adj, const std::vector<int>& nodes) {
    std::vector<int> indeg(adj.size(), -1);
    for (int v : nodes) indeg[static_cast<std::size_t>(v)] = 0;
    for (int v : nodes)
        for (int w : adj[static_cast<std::size_t>(v)])
            if (indeg[static_cast<std::size_t>(w)] >= 0) ++indeg[static_cast<std::size_t>(w)];
    std::vector<int> stack;
    for (int v : nodes)
        if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
    std::size_t seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : adj[static_cast<std::size_t>(v)])
            if (indeg[static_cast<std::size_t>(w)] > 0 && --indeg[static_cast<std::size_t>(w)] == 0)
                stack.push_back(w);
    }
    return seen == nodes.size();
}

/// Iterative depth-first cycle detection restricted to a node set.
inline bool layer_acyclic(const std::vector<std::vector<int>>& adj, const std::vector<int>& nodes) {
    enum : char { WHITE, GRAY, BLACK };
    std::vector<char> color(adj.size(), BLACK);  // nodes outside the layer are ignored
    for (int v : nodes) color[static_cast<std::size_t>(v)] = WHITE;
    std::vector<std::pair<int, std::size_t>> stack;
    for (int root : nodes) {
        if (color[static_cast<std::size_t>(root)] != WHITE) continue;
        color[static_cast<std::size_t>(root)] = GRAY;
        stack.assign(1, {root, 0});
        while (!stack.empty()) {
            int v = stack.back().first;
            std::size_t next = stack.back().second;
            const auto& out = adj[static_cast<std::size_t>(v)];
            if (next == out.size()) {
                color[static_cast<std::size_t>(v)] = BLACK;
                stack.pop_back();
                continue;
            }
            stack.back().second = next + 1;
            int w = out[next];
            if (color[static_cast<std::size_t>(w)] == GRAY) return false;
            if (color[static_cast<std::size_t>(w)] == WHITE) {
                color[static_cast<std::size_t>(w)] = GRAY;
                stack.emplace_back(w, 0);
            }
        }
    }
    return true;
}

}  // namespace detail

/// Audit a matching against the store. Four independent checks:
///   1. legality: each simplex in at most one pair, every pair a facet
///      relation, pairs and critical cells covering everything exactly once;
///   2. acyclicity of the modified Hasse digraph (whole graph, plus each
///      consecutive-dimension layer);
///   3. filtration: the union of X_j over j <= i is a subcomplex for every
///      i, i.e. labels never increase when passing to a facet;
///   4. partition: enumerating every maximal flag f and the faces selected
///      by the ascending positions of its label covers each stored simplex
///      exactly once, with matching label and host, and pairs join a face
///      to its host's pivot-vertex extension.
inline VerifyReport verify_matching(const ComplexStore& store, const Matching& m) {
    VerifyReport report;
    const std::size_t total = store.total_simplices();
    auto complain = [&](bool& flag, std::string msg) {
        flag = false;
        if (report.violations.size() < 50) report.violations.push_back(std::move(msg));
    };
    if (m.labels.size() != total || m.hosts.size() != total || m.match_vertex.size() != total) {
        complain(report.legality_ok, "matching bookkeeping does not cover the store");
        return report;
    }

    // --- legality ---
    std::vector<int> uses(total, 0);
    for (auto [face, coface] : m.pairs) {
        if (face < 0 || coface < 0 || face >= static_cast<int>(total) ||
            coface >= static_cast<int>(total)) {
            complain(report.legality_ok, "pair references an unknown simplex");
            continue;
        }
        ++uses[static_cast<std::size_t>(face)];
        ++uses[static_cast<std::size_t>(coface)];
        const Flag& fs = store.simplex(face);
        const Flag& cs = store.simplex(coface);
        if (fs.size() + 1 != cs.size() ||
            !std::includes(cs.begin(), cs.end(), fs.begin(), fs.end()))
            complain(report.legality_ok, "pair " + detail::flag_str(fs) + " -> " +
                                             detail::flag_str(cs) + " is not a facet relation");
    }
    for (std::size_t gid = 0; gid < total; ++gid)
        if (uses[gid] > 1)
            complain(report.legality_ok, "simplex " + detail::flag_str(store.simplex(static_cast<int>(gid))) +
                                             " appears in more than one pair");
    std::vector<char> covered(total, 0);
    for (auto [face, coface] : m.pairs) {
        if (face >= 0 && face < static_cast<int>(total)) covered[static_cast<std::size_t>(face)] = 1;
        if (coface >= 0 && coface < static_cast<int>(total))
            covered[static_cast<std::size_t>(coface)] = 1;
    }
    for (int gid : m.critical) {
        if (gid < 0 || gid >= static_cast<int>(total)) {
            complain(report.legality_ok, "critical list references an unknown simplex");
            continue;
        }
        if (covered[static_cast<std::size_t>(gid)])
            complain(report.legality_ok, "simplex " + detail::flag_str(store.simplex(gid)) +
                                             " is both paired and critical");
        covered[static_cast<std::size_t>(gid)] = 1;
    }
    for (std::size_t gid = 0; gid < total; ++gid)
        if (!covered[gid])
            complain(report.legality_ok, "simplex " + detail::flag_str(store.simplex(static_cast<int>(gid))) +
                                             " is neither paired nor critical");

    // --- acyclicity ---
    auto adj = detail::modified_hasse(store, m);
    std::vector<int> all_nodes(total);
    std::iota(all_nodes.begin(), all_nodes.end(), 0);
    for (int d = 0; d < store.top_dim(); ++d) {
        std::vector<int> layer;
        for (std::size_t i = 0; i < store.simplex_count(d); ++i)
            layer.push_back(store.global_id(d, static_cast<int>(i)));
        for (std::size_t i = 0; i < store.simplex_count(d + 1); ++i)
            layer.push_back(store.global_id(d + 1, static_cast<int>(i)));
        if (!detail::layer_acyclic(adj, layer))
            complain(report.acyclicity_ok, "directed cycle between dimensions " + std::to_string(d) +
                                               " and " + std::to_string(d + 1));
    }
    if (!detail::is_acyclic(adj, all_nodes))
        complain(report.acyclicity_ok, "directed cycle in the modified Hasse digraph");

    // --- filtration: labels never increase under facets ---
    for (int d = 1; d <= store.top_dim(); ++d)
        for (std::size_t i = 0; i < store.simplex_count(d); ++i) {
            int t = store.global_id(d, static_cast<int>(i));
            for (int s : detail::facet_gids(store, store.simplex(t)))
                if (m.labels[static_cast<std::size_t>(t)] < m.labels[static_cast<std::size_t>(s)])
                    complain(report.closure_ok,
                             "facet " + detail::flag_str(store.simplex(s)) + " has label " +
                                 m.labels[static_cast<std::size_t>(s)].str() + " > " +
                                 m.labels[static_cast<std::size_t>(t)].str() + " of " +
                                 detail::flag_str(store.simplex(t)));
        }

    // --- partition over hosts ---
    std::vector<int> coverage(total, 0);
    for (const Flag& host : store.maximal_chains()) {
        FlagLabel fl = label_of_flag(store, host);
        if (fl.host != host) {
            complain(report.partition_ok, "maximal flag " + detail::flag_str(host) +
                                              " is not its own host");
            continue;
        }
        std::vector<int> ascents;  // 0-based positions t with i_t < i_{t+1}
        for (int t = 0; t + 1 < fl.label.size(); ++t)
            if (fl.label.value_at(t) < fl.label.value_at(t + 1)) ascents.push_back(t);
        const std::size_t len = host.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << ascents.size()); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) == len) continue;  // empty face
            Flag face;
            std::uint64_t drop = 0;
            for (std::size_t t = 0; t < ascents.size(); ++t)
                if (mask & (std::uint64_t(1) << t))
                    drop |= std::uint64_t(1) << ascents[t];
            for (std::size_t t = 0; t < len; ++t)
                if (!(drop & (std::uint64_t(1) << t))) face.push_back(host[t]);
            int dim = static_cast<int>(face.size()) - 1;
            if (dim > store.top_dim()) continue;
            int idx = store.find(dim, face);
            if (idx < 0) {
                complain(report.partition_ok,
                         "face " + detail::flag_str(face) + " of " + detail::flag_str(host) +
                             " is missing from the store");
                continue;
            }
            int gid = store.global_id(dim, idx);
            ++coverage[static_cast<std::size_t>(gid)];
            if (!(m.labels[static_cast<std::size_t>(gid)] == fl.label))
                complain(report.partition_ok,
                         "simplex " + detail::flag_str(face) + " claims label " +
                             m.labels[static_cast<std::size_t>(gid)].str() + " but is selected by " +
                             fl.label.str());
            if (m.hosts[static_cast<std::size_t>(gid)] != host)
                complain(report.partition_ok, "simplex " + detail::flag_str(face) +
                                                  " claims a different host than " +
                                                  detail::flag_str(host));
        }
    }
    for (std::size_t gid = 0; gid < total; ++gid)
        if (coverage[gid] != 1)
            complain(report.partition_ok,
                     "simplex " + detail::flag_str(store.simplex(static_cast<int>(gid))) +
                         " is selected by " + std::to_string(coverage[gid]) +
                         " label classes instead of 1");

    // pairs must join a simplex to its host's pivot-vertex extension
    for (auto [face, coface] : m.pairs) {
        if (face < 0 || coface < 0 || face >= static_cast<int>(total) ||
            coface >= static_cast<int>(total))
            continue;
        std::size_t f = static_cast<std::size_t>(face), c = static_cast<std::size_t>(coface);
        if (!(m.labels[f] == m.labels[c]) || m.hosts[f] != m.hosts[c])
            complain(report.partition_ok, "pair joins different label classes or hosts");
        int v = m.match_vertex[c];
        Flag expected(store.simplex(face));
        expected.insert(std::lower_bound(expected.begin(), expected.end(), v), v);
        if (v < 0 || expected != store.simplex(coface))
            complain(report.partition_ok, "pair coface is not face + pivot vertex");
    }

    return report;
}

}  // namespace flagmorse

#endif
