#include "isc/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace isc {

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

std::uint64_t Graph::neighbor_mask(int v) const {
    if (n > 64) throw CapacityError("neighbor_mask requires n <= 64");
    std::uint64_t m = 0;
    for (int w : adjacency.at(v)) m |= (std::uint64_t{1} << w);
    return m;
}

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g;
    g.n = n;
    g.adjacency.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u > v) std::swap(u, v);
        if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
        if (u < 0 || v >= n) throw std::invalid_argument("vertex label out of range");
        if (!seen.insert({u, v}).second)
            throw std::invalid_argument("duplicate edge");
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
    }
    g.edges.assign(seen.begin(), seen.end());
    for (auto& a : g.adjacency) std::sort(a.begin(), a.end());
    return g;
}

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char ch : line) {
        if (ch == ' ' || ch == '\t') continue;
        return ch == '#';
    }
    return true;
}

bool parse_two_ints(const std::string& line, long long& a, long long& b) {
    std::istringstream is(line);
    std::string rest;
    if (!(is >> a >> b)) return false;
    if (is >> rest) return false;
    return true;
}

} // namespace

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_comment_or_blank(line)) continue;

        long long a, b;
        if (!parse_two_ints(line, a, b))
            throw ParseError("MalformedLine", lineno, "expected two integers");

        if (n < 0) {
            if (a < 0 || b < 0)
                throw ParseError("MalformedLine", lineno, "negative header field");
            n = a;
            m = b;
            continue;
        }
        if (static_cast<long long>(edges.size()) == m)
            throw ParseError("MalformedLine", lineno, "more edges than declared");
        if (a == b)
            throw ParseError("SelfLoop", lineno, "self-loop on vertex " + std::to_string(a));
        if (a > b)
            throw ParseError("MalformedLine", lineno, "endpoints out of order (need u < v)");
        if (a < 0 || b >= n)
            throw ParseError("VertexOutOfRange", lineno,
                             "vertex " + std::to_string(b >= n ? b : a) + " not in [0, " +
                                 std::to_string(n) + ")");
        auto e = std::make_pair(static_cast<int>(a), static_cast<int>(b));
        if (!seen.insert(e).second)
            throw ParseError("DuplicateEdge", lineno, "duplicate edge");
        edges.push_back(e);
    }
    if (n < 0) throw ParseError("MalformedLine", lineno, "missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError("MalformedLine", lineno,
                         "declared " + std::to_string(m) + " edges, found " +
                             std::to_string(edges.size()));
    return make_graph(static_cast<int>(n), edges);
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.n << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

ValidationReport validate_cubic_planar(const Graph& g) {
    ValidationReport r;
    r.is_cubic = true;
    for (int v = 0; v < g.n; ++v) {
        if (g.degree(v) != 3) {
            r.is_cubic = false;
            r.violations.emplace_back("NotCubic", "vertex " + std::to_string(v) +
                                                      " has degree " +
                                                      std::to_string(g.degree(v)));
        }
    }
    // Necessary condition only; the embedder decides planarity for real.
    r.is_planar_candidate = g.n < 3 || g.m() <= 3 * g.n - 6;
    if (!r.is_planar_candidate)
        r.violations.emplace_back("EdgeCountExceedsPlanarBound",
                                  "|E| > 3n-6 rules out planarity");
    return r;
}

bool is_independent(const Graph& g, std::uint64_t mask) {
    for (auto [u, v] : g.edges)
        if ((mask >> u & 1) && (mask >> v & 1)) return false;
    return true;
}

namespace {

struct OracleState {
    int n;
    const std::vector<std::uint64_t>* adj;
    int best = -1;
    std::uint64_t best_mask = 0;

    // Include-first DFS in vertex order visits independent sets in
    // lexicographic order of their sorted member lists, so the first set
    // attaining each new cardinality record is the lex-min one.
    void go(int v, std::uint64_t chosen, std::uint64_t blocked, int count) {
        if (count + (n - v) <= best) return;
        if (v == n) {
            if (count > best) {
                best = count;
                best_mask = chosen;
            }
            return;
        }
        if (!(blocked >> v & 1))
            go(v + 1, chosen | (std::uint64_t{1} << v), blocked | (*adj)[v], count + 1);
        go(v + 1, chosen, blocked, count);
    }
};

} // namespace

IndependentSetWitness mis_oracle(const Graph& g, int limit) {
    if (g.n > limit)
        throw CapacityError("mis_oracle: instance has " + std::to_string(g.n) +
                            " vertices, limit is " + std::to_string(limit));
    std::vector<std::uint64_t> adj(g.n);
    for (int v = 0; v < g.n; ++v) adj[v] = g.neighbor_mask(v);
    OracleState st{g.n, &adj};
    st.go(0, 0, 0, 0);
    IndependentSetWitness w;
    for (int v = 0; v < g.n; ++v)
        if (st.best_mask >> v & 1) w.members.push_back(v);
    w.cardinality = std::max(st.best, 0);
    return w;
}

} // namespace isc
