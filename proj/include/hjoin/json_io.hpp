#pragma once

// JSON renderings of the library types and parsing of the input documents
// (join specs, graphs, generator strings, the inline join grammar).
// Arbitrary-precision integers always serialize as decimal strings.

#include <hjoin/error.hpp>
#include <hjoin/exact.hpp>
#include <hjoin/graph.hpp>
#include <hjoin/hjoin.hpp>
#include <hjoin/lexpow.hpp>
#include <hjoin/spectral.hpp>
#include <hjoin/walk.hpp>

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace hjoin {

using json = nlohmann::json;

inline json poly_to_json(const IntPoly& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(c.get_str());
    return json{{"coeffs", coeffs}};
}

inline IntPoly poly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw parse_error("polynomial JSON: expected {\"coeffs\": [...]}");
    std::vector<BigInt> coeffs;
    for (const auto& c : j["coeffs"]) {
        if (!c.is_string()) throw parse_error("polynomial JSON: coefficients must be strings");
        coeffs.emplace_back(c.get<std::string>());
    }
    return IntPoly(std::move(coeffs));
}

inline json intmatrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline std::string join_origins(const std::vector<std::string>& origins) {
    std::string out;
    for (const auto& tag : origins) {
        if (!out.empty()) out += "+";
        out += tag;
    }
    return out;
}

inline json spectrum_to_json(const Spectrum& sp) {
    json arr = json::array();
    for (const auto& e : sp.entries) {
        json entry{{"value", e.value}, {"multiplicity", e.multiplicity.get_str()}};
        entry["origin"] = join_origins(e.origins);
        arr.push_back(std::move(entry));
    }
    return arr;
}

inline Spectrum spectrum_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("spectrum JSON: expected an array");
    Spectrum sp;
    for (const auto& entry : j) {
        SpectrumEntry e;
        e.value = entry.at("value").get<double>();
        e.multiplicity = BigInt(entry.at("multiplicity").get<std::string>());
        if (entry.contains("origin")) {
            std::string tags = entry["origin"].get<std::string>();
            std::size_t start = 0;
            while (start <= tags.size() && !tags.empty()) {
                const auto plus = tags.find('+', start);
                e.origins.push_back(tags.substr(start, plus - start));
                if (plus == std::string::npos) break;
                start = plus + 1;
            }
        }
        sp.ambient_order += e.multiplicity;
        sp.entries.push_back(std::move(e));
    }
    return sp;
}

inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back(json::array({u, v}));
    return json{{"n", g.order()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
    if (j.is_string()) return generator(j.get<std::string>());
    if (!j.is_object() || !j.contains("n"))
        throw parse_error("graph JSON: expected {\"n\": ..., \"edges\": [[u,v],...]}");
    const long long n = j["n"].get<long long>();
    if (n < 0) throw parse_error("graph JSON: negative order");
    Graph g(static_cast<std::size_t>(n));
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw parse_error("graph JSON: malformed edge");
            const long long u = e[0].get<long long>(), v = e[1].get<long long>();
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw parse_error("graph JSON: vertex index out of range");
            if (u == v) throw parse_error("graph JSON: loop edge");
            g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        }
    }
    return g;
}

inline json joinspec_to_json(const JoinSpec& spec) {
    json comps = json::array();
    for (const auto& g : spec.components) comps.push_back(graph_to_json(g));
    return json{{"h", graph_to_json(spec.h)}, {"components", comps}};
}

inline JoinSpec joinspec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("h") || !j.contains("components"))
        throw parse_error("join spec JSON: expected {\"h\": ..., \"components\": [...]}");
    JoinSpec spec;
    spec.h = graph_from_json(j["h"]);
    for (const auto& c : j["components"]) spec.components.push_back(graph_from_json(c));
    try {
        spec.validate();
    } catch (const error& e) {
        throw parse_error(e.what());
    }
    return spec;
}

inline json walkdata_to_json(const WalkData& wd) {
    json counts = json::array(), coeffs = json::array();
    for (const auto& c : wd.walk_counts) counts.push_back(c.get_str());
    for (const auto& c : wd.main_coeffs) coeffs.push_back(c.get_str());
    return json{{"s", wd.s},
                {"walk_matrix", intmatrix_to_json(wd.W)},
                {"walk_counts", counts},
                {"main_coeffs", coeffs},
                {"main_poly", poly_to_json(main_poly(wd))}};
}

inline json assoc_to_json(const AssocMatrix& assoc) {
    json blocks = json::array();
    const std::size_t p = assoc.block_sizes.size();
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const BlockKind kind = assoc.kind(i, j);
            if (kind == BlockKind::zero) continue;
            blocks.push_back(json{{"row", i},
                                  {"col", j},
                                  {"kind", kind == BlockKind::companion ? "companion" : "walk"}});
        }
    return json{{"size", assoc.size()},
                {"offsets", assoc.offsets},
                {"block_sizes", assoc.block_sizes},
                {"matrix", intmatrix_to_json(assoc.m)},
                {"blocks", blocks}};
}

inline json eigvecs_to_json(const EigvecBundle& bundle) {
    json embedded = json::array();
    for (std::size_t i = 0; i < bundle.embedded.size(); ++i) {
        const auto& e = bundle.embedded[i];
        json vec = json::array();
        const Eigen::VectorXd full = bundle.embedded_full(i);
        for (Eigen::Index k = 0; k < full.size(); ++k) vec.push_back(full(k));
        embedded.push_back(json{{"component", e.component},
                                {"eigenvalue", e.eigenvalue},
                                {"vector", std::move(vec)}});
    }
    json reconstructed = json::array();
    for (const auto& r : bundle.reconstructed) {
        json alpha = json::array(), vec = json::array();
        for (Eigen::Index k = 0; k < r.alpha.size(); ++k) alpha.push_back(r.alpha(k));
        for (Eigen::Index k = 0; k < r.vec.size(); ++k) vec.push_back(r.vec(k));
        reconstructed.push_back(
            json{{"rho", r.rho}, {"alpha", std::move(alpha)}, {"vector", std::move(vec)}});
    }
    return json{{"embedded", std::move(embedded)},
                {"reconstructed", std::move(reconstructed)},
                {"max_residual", bundle.max_residual},
                {"max_cross_dot", bundle.max_cross_dot}};
}

inline json power_to_json(const PowerSpectrum& ps) {
    json entries = json::array();
    for (const auto& e : ps.entries) {
        json entry{{"value", e.value},
                   {"multiplicity", e.multiplicity.get_str()},
                   {"origin", "power-level " + std::to_string(e.introduced_level)}};
        if (e.value_exact) entry["value_exact"] = e.value_exact->get_str();
        entries.push_back(std::move(entry));
    }
    return json{{"base_order", ps.base.order()},
                {"k", ps.k},
                {"order", ps.total_multiplicity().get_str()},
                {"entries", std::move(entries)}};
}

inline json report_to_json(const VerifyReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return json{{"pass", rep.pass()},
                {"checks", std::move(checks)},
                {"spectral_distance", rep.spectral_distance},
                {"max_residual", rep.max_residual}};
}

// Inline mini-grammar: a generator string alone is a graph; "H[c1;c2;...]"
// is the H-join of generator-named components, e.g. "P3[K1,3;K2;P3]".
using ParsedInput = std::variant<Graph, JoinSpec>;

inline ParsedInput parse_inline(const std::string& text) {
    const auto open = text.find('[');
    if (open == std::string::npos) return generator(text);
    if (text.empty() || text.back() != ']')
        throw parse_error("inline spec: expected H[c1;c2;...], got \"" + text + "\"");
    JoinSpec spec;
    spec.h = generator(text.substr(0, open));
    const std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::size_t start = 0;
    while (start < inner.size()) {
        auto semi = inner.find(';', start);
        if (semi == std::string::npos) semi = inner.size();
        spec.components.push_back(generator(inner.substr(start, semi - start)));
        start = semi + 1;
    }
    try {
        spec.validate();
    } catch (const error& e) {
        throw parse_error(e.what());
    }
    return spec;
}

// Input documents: JSON join spec, JSON graph object, generator string, or
// edge-list text. JSON is recognized by a leading '{'.
inline ParsedInput parse_input_document(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw parse_error(std::string("input JSON: ") + e.what());
        }
        if (j.contains("h")) return joinspec_from_json(j);
        return graph_from_json(j);
    }
    return graph_from_edge_list(text);
}

} // namespace hjoin
