#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace isc {

/// Simple undirected graph with 0-indexed contiguous vertex labels.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // canonical: u < v, sorted ascending
    std::vector<std::vector<int>> adjacency; // sorted neighbor lists

    int m() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adjacency.at(v).size()); }
    bool has_edge(int u, int v) const;

    /// Neighbor bitmask of vertex v. Requires n <= 64.
    std::uint64_t neighbor_mask(int v) const;
};

/// Builds a Graph from an edge list, enforcing the Graph invariants.
Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges);

struct ValidationReport {
    bool is_cubic = false;
    bool is_planar_candidate = false;
    std::vector<std::pair<std::string, std::string>> violations; // (code, message)
    bool ok() const { return is_cubic && is_planar_candidate; }
};

struct IndependentSetWitness {
    std::vector<int> members; // ascending
    int cardinality = 0;
};

/// Raised on malformed edge-list input; carries the 1-based line number.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string code, int line, const std::string& message)
        : std::runtime_error(message + " at line " + std::to_string(line)),
          code_(std::move(code)), line_(line) {}
    const std::string& code() const { return code_; }
    int line() const { return line_; }

  private:
    std::string code_;
    int line_;
};

/// Raised when an instance exceeds a configured exhaustive-search limit.
class CapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parses the edge-list format: header "n m", then m lines "u v" with
/// 0 <= u < v < n. Lines whose first non-blank character is '#' are
/// comments. LF and CRLF both accepted.
Graph parse_graph(const std::string& text);

/// Canonical edge-list serialization; parse(serialize(parse(t))) == parse(t).
std::string serialize_graph(const Graph& g);

/// Degree check plus the |E| <= 3n-6 necessary condition. The orthogonal
/// embedder is the authoritative planarity arbiter; is_planar_candidate
/// only screens out graphs that violate the edge-count bound.
ValidationReport validate_cubic_planar(const Graph& g);

/// True iff no two selected vertices (bits of `mask`) are adjacent.
bool is_independent(const Graph& g, std::uint64_t mask);

/// Exhaustive maximum-independent-set search. Deterministic: returns the
/// lexicographically smallest witness among the optima. Throws
/// CapacityError when g.n exceeds `limit`.
IndependentSetWitness mis_oracle(const Graph& g, int limit = 24);

} // namespace isc
