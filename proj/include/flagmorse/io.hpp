// Serialization: the complex as JSON, the labeled 1-skeleton with its
// pairing arrows as Graphviz DOT, and subspace pretty-printing. All output
// is deterministic for a fixed input.

#ifndef FLAGMORSE_IO_HPP
#define FLAGMORSE_IO_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "flagmorse/complex.hpp"
#include "flagmorse/morse.hpp"

namespace flagmorse {

/// Generator notation for a canonical basis, e.g. "⟨e1+e3, e2⟩".
inline std::string subspace_name(const Mat& basis) {
    std::string s = "⟨";
    for (int j = 0; j < basis.cols(); ++j) {
        if (j) s += ", ";
        bool first = true;
        for (int i = 0; i < basis.rows(); ++i) {
            std::uint32_t c = basis(i, j);
            if (c == 0) continue;
            if (!first) s += "+";
            if (c != 1) s += std::to_string(c);
            s += "e" + std::to_string(i + 1);
            first = false;
        }
    }
    return s + "⟩";
}

inline nlohmann::ordered_json complex_to_json(const ComplexStore& store) {
    nlohmann::ordered_json j;
    j["n"] = store.n();
    j["q"] = store.q();
    j["skeleton"] = store.top_dim();
    j["vertices"] = nlohmann::ordered_json::array();
    for (const Subspace& v : store.vertices()) {
        nlohmann::ordered_json basis = nlohmann::ordered_json::array();
        for (int c = 0; c < v.basis.cols(); ++c) {
            nlohmann::ordered_json col = nlohmann::ordered_json::array();
            for (int r = 0; r < v.basis.rows(); ++r) col.push_back(v.basis(r, c));
            basis.push_back(std::move(col));
        }
        j["vertices"].push_back({{"id", v.id}, {"dim", v.dim}, {"basis", std::move(basis)}});
    }
    j["simplices"] = nlohmann::ordered_json::object();
    for (int d = 1; d <= store.top_dim(); ++d) {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const Flag& f : store.simplices(d)) list.push_back(f);
        j["simplices"][std::to_string(d)] = std::move(list);
    }
    return j;
}

inline std::string complex_to_json_text(const ComplexStore& store) {
    return complex_to_json(store).dump(2) + "\n";
}

inline ComplexStore complex_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const std::uint32_t q = j.at("q").get<std::uint32_t>();
    const int skeleton = j.at("skeleton").get<int>();
    FieldSpec spec(q);

    std::vector<Mat> bases;
    for (const auto& v : j.at("vertices")) {
        const auto& cols = v.at("basis");
        Mat m(n, static_cast<int>(cols.size()), spec);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (static_cast<int>(cols[c].size()) != n)
                throw std::invalid_argument("basis column has wrong length");
            for (int r = 0; r < n; ++r) {
                std::uint32_t entry = cols[c][static_cast<std::size_t>(r)].get<std::uint32_t>();
                if (entry >= q) throw std::invalid_argument("basis entry not reduced mod q");
                m.set(r, static_cast<int>(c), entry);
            }
        }
        if (v.at("dim").get<int>() != m.cols())
            throw std::invalid_argument("vertex dim disagrees with its basis");
        if (v.at("id").get<int>() != static_cast<int>(bases.size()))
            throw std::invalid_argument("vertex ids must be consecutive from 0");
        bases.push_back(std::move(m));
    }

    std::vector<std::vector<Flag>> simplices(static_cast<std::size_t>(skeleton) + 1);
    for (std::size_t i = 0; i < bases.size(); ++i) simplices[0].push_back({static_cast<int>(i)});
    for (const auto& [key, list] : j.at("simplices").items()) {
        int d = std::stoi(key);
        if (d < 1 || d > skeleton) throw std::invalid_argument("simplex dimension out of range");
        for (const auto& f : list)
            simplices[static_cast<std::size_t>(d)].push_back(f.get<Flag>());
    }
    return ComplexStore::from_parts(n, q, skeleton, std::move(bases), std::move(simplices));
}

namespace detail {

/// Evenly spread HSV colors, one per label class, in class order.
inline std::string class_color(std::size_t index, std::size_t count) {
    double hue = count == 0 ? 0.0 : static_cast<double>(index) / static_cast<double>(count);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f 0.650 0.800", hue);
    return buf;
}

}  // namespace detail

/// The 1-skeleton as a DOT digraph: vertices named by their generators and
/// filled with their label class color, matched (vertex, edge) pairs drawn
/// as arrows from the vertex into the edge, critical cells flagged (black
/// vertex fill, bold edges). Edges paired upward with a 2-simplex, which a
/// graph drawing cannot show, are dashed.
inline std::string matching_to_dot(const ComplexStore& store, const Matching& m) {
    std::ostringstream out;
    out << "digraph flag_complex {\n";
    out << "  // F(F_" << store.q() << "^" << store.n() << "), 1-skeleton, "
        << store.vertices().size() << " vertices\n";
    out << "  graph [outputorder=edgesfirst];\n";
    out << "  node [shape=ellipse, style=filled, fontsize=11];\n";

    std::vector<Permutation> classes;
    for (const auto& [label, members] : m.by_label) classes.push_back(label);
    auto color_of = [&](const Permutation& label) {
        std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(classes.begin(), classes.end(), label) - classes.begin());
        return detail::class_color(idx, classes.size());
    };
    for (std::size_t i = 0; i < classes.size(); ++i)
        out << "  // class " << classes[i].str() << " = " << detail::class_color(i, classes.size())
            << "\n";

    std::vector<char> is_critical(store.total_simplices(), 0);
    for (int gid : m.critical) is_critical[static_cast<std::size_t>(gid)] = 1;

    for (const Subspace& v : store.vertices()) {
        int gid = store.global_id(0, v.id);
        out << "  v" << v.id << " [label=\"" << subspace_name(v.basis) << "\"";
        if (is_critical[static_cast<std::size_t>(gid)])
            out << ", fillcolor=black, fontcolor=white, tooltip=\"critical\"";
        else
            out << ", fillcolor=\"" << color_of(m.labels[static_cast<std::size_t>(gid)]) << "\"";
        out << "];\n";
    }

    if (store.top_dim() >= 1) {
        for (std::size_t i = 0; i < store.simplex_count(1); ++i) {
            int gid = store.global_id(1, static_cast<int>(i));
            const Flag& e = store.simplex(gid);
            const std::string color = color_of(m.labels[static_cast<std::size_t>(gid)]);
            int p = m.partner[static_cast<std::size_t>(gid)];
            if (p >= 0 && store.locate(p).first == 0) {
                // matched with a vertex: arrow from the vertex into the edge
                int tail = store.simplex(p)[0];
                int head = (e[0] == tail) ? e[1] : e[0];
                out << "  v" << tail << " -> v" << head << " [color=\"" << color << "\"];\n";
            } else if (is_critical[static_cast<std::size_t>(gid)]) {
                out << "  v" << e[0] << " -> v" << e[1] << " [dir=none, penwidth=2.4, color=\""
                    << color << "\", tooltip=\"critical\"];\n";
            } else {
                // paired upward with a 2-simplex
                out << "  v" << e[0] << " -> v" << e[1] << " [dir=none, style=dashed, color=\""
                    << color << "\"];\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace flagmorse

#endif
