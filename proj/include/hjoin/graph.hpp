#pragma once

// Simple undirected graphs: representation, edge-list parsing, and the
// standard generators. Vertices are 0-indexed everywhere (files, APIs,
// generated orderings); sources that count from 1 must convert up front.

#include <hjoin/error.hpp>
#include <hjoin/exact.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hjoin {

class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), degree_(n, 0) {}

    std::size_t order() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::set<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    // Loops are rejected, duplicates collapse silently (set semantics).
    void add_edge(std::size_t u, std::size_t v) {
        if (u == v) throw error("add_edge: loop at vertex " + std::to_string(u));
        if (u >= n_ || v >= n_)
            throw error("add_edge: vertex index out of range (order " + std::to_string(n_) + ")");
        if (u > v) std::swap(u, v);
        if (edges_.insert({u, v}).second) {
            ++degree_[u];
            ++degree_[v];
        }
    }

    bool adjacent(std::size_t u, std::size_t v) const {
        if (u > v) std::swap(u, v);
        return edges_.count({u, v}) > 0;
    }

    std::size_t degree(std::size_t v) const { return degree_[v]; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::set<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::size_t> degree_;
};

inline IntMatrix adjacency(const Graph& g) {
    IntMatrix a(g.order(), g.order());
    for (const auto& [u, v] : g.edges()) {
        a(u, v) = 1;
        a(v, u) = 1;
    }
    return a;
}

inline Graph complement(const Graph& g) {
    Graph c(g.order());
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = u + 1; v < g.order(); ++v)
            if (!g.adjacent(u, v)) c.add_edge(u, v);
    return c;
}

// Common degree if the graph is regular, absent otherwise (and for n = 0).
inline std::optional<std::size_t> regular_degree(const Graph& g) {
    if (g.order() == 0) return std::nullopt;
    const std::size_t d = g.degree(0);
    for (std::size_t v = 1; v < g.order(); ++v)
        if (g.degree(v) != d) return std::nullopt;
    return d;
}

inline bool is_connected(const Graph& g) {
    if (g.order() == 0) return true;
    std::vector<char> seen(g.order(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < g.order(); ++v)
            if (!seen[v] && g.adjacent(u, v)) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == g.order();
}

// Edge-list document: first significant line is the order n, every further
// line is "u v". Lines starting with '#' and blank lines are ignored,
// '\r\n' endings are accepted. Errors carry the 1-based line number.
inline Graph graph_from_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_order = false;
    Graph g;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        const std::string where = " at line " + std::to_string(lineno);
        if (!have_order) {
            long long n = -1;
            std::string extra;
            if (!(ls >> n) || n < 0 || (ls >> extra))
                throw parse_error("edge list: malformed order line" + where);
            g = Graph(static_cast<std::size_t>(n));
            have_order = true;
            continue;
        }
        long long u = 0, v = 0;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra))
            throw parse_error("edge list: malformed edge line" + where);
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= g.order() ||
            static_cast<std::size_t>(v) >= g.order())
            throw parse_error("edge list: vertex index out of range" + where);
        if (u == v) throw parse_error("edge list: loop edge" + where);
        g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    }
    if (!have_order) throw parse_error("edge list: missing order line");
    return g;
}

namespace detail {

inline Graph petersen() {
    // Kneser graph K(5,2): vertices are the 2-subsets of {0..4} in
    // lexicographic order, adjacent iff disjoint.
    std::vector<std::pair<int, int>> subsets;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) subsets.push_back({a, b});
    Graph g(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j) {
            const auto [a, b] = subsets[i];
            const auto [c, d] = subsets[j];
            if (a != c && a != d && b != c && b != d) g.add_edge(i, j);
        }
    return g;
}

inline std::size_t parse_count(const std::string& text, const std::string& spec) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error("generator: malformed size in \"" + spec + "\"");
    return static_cast<std::size_t>(std::stoull(text));
}

} // namespace detail

// Named graphs: K<n>, K<a>,<b>, P<n>, C<n>, E<n>, petersen.
// Canonical orderings: K_n all pairs; P_n path 0-1-...-(n-1); C_n that path
// closed up; K_{a,b} parts {0..a-1} and {a..a+b-1}; petersen as above.
inline Graph generator(const std::string& spec) {
    std::string s = spec;
    s.erase(0, s.find_first_not_of(" \t"));
    const auto last = s.find_last_not_of(" \t");
    s.erase(last == std::string::npos ? 0 : last + 1);
    if (s == "petersen") return detail::petersen();
    if (s.size() < 2) throw parse_error("generator: unknown graph \"" + spec + "\"");
    const char kind = s[0];
    const std::string rest = s.substr(1);
    switch (kind) {
        case 'K': {
            const auto comma = rest.find(',');
            if (comma != std::string::npos) {
                const std::size_t a = detail::parse_count(rest.substr(0, comma), spec);
                const std::size_t b = detail::parse_count(rest.substr(comma + 1), spec);
                Graph g(a + b);
                for (std::size_t u = 0; u < a; ++u)
                    for (std::size_t v = a; v < a + b; ++v) g.add_edge(u, v);
                return g;
            }
            const std::size_t n = detail::parse_count(rest, spec);
            Graph g(n);
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
            return g;
        }
        case 'P': {
            const std::size_t n = detail::parse_count(rest, spec);
            Graph g(n);
            for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
            return g;
        }
        case 'C': {
            const std::size_t n = detail::parse_count(rest, spec);
            if (n < 3) throw parse_error("generator: C<n> requires n >= 3");
            Graph g(n);
            for (std::size_t v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
            return g;
        }
        case 'E': {
            return Graph(detail::parse_count(rest, spec));
        }
        default:
            throw parse_error("generator: unknown graph \"" + spec + "\"");
    }
}

} // namespace hjoin
