#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isc/graph.hpp"

namespace isc {

/// Lattice coordinate; origin top-left, rows increase downward.
struct GridPoint {
    int row = 0;
    int col = 0;
    auto operator<=>(const GridPoint&) const = default; // row-major order
};

/// The ferromagnetic chain of one embedded edge: its dummies in order,
/// starting from the Gamma(k) side (k < l).
struct Wire {
    int k = 0;
    int l = 0;
    std::vector<GridPoint> dummies;
    int m() const { return static_cast<int>(dummies.size()); }
};

struct OrthogonalEmbedding {
    int n = 0;
    int grid_rows = 0;
    int grid_cols = 0;
    std::vector<GridPoint> vertex_at;                              // Gamma(k)
    std::map<std::pair<int, int>, std::vector<GridPoint>> edge_paths; // k<l, Gamma(k)..Gamma(l)
    std::string strategy;

    std::vector<GridPoint> dummy_points() const;
    std::vector<Wire> wires() const;
    /// All occupied grid points, row-major.
    std::vector<GridPoint> used_points() const;
};

enum class EmbedStatus { Ok, NonPlanar, BudgetExceeded };

struct EmbedResult {
    EmbedStatus status = EmbedStatus::BudgetExceeded;
    std::optional<OrthogonalEmbedding> embedding;
    std::uint64_t nodes_explored = 0;
};

struct GridBudget {
    int rows = 0;
    int cols = 0;
};

/// Deterministic placement-and-routing search for a planar orthogonal
/// embedding within the budget (default n x n). Non-planar inputs are
/// rejected up front; a planar instance the search cannot fit reports
/// BudgetExceeded. Requires maximum degree <= 3.
EmbedResult embed(const Graph& g, std::optional<GridBudget> budget = std::nullopt);

struct EmbeddingViolation {
    std::string code;
    std::string message;
    GridPoint at;
};

struct EmbeddingReport {
    std::vector<EmbeddingViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every OrthogonalEmbedding invariant against g.
EmbeddingReport validate_embedding(const Graph& g, const OrthogonalEmbedding& emb);

std::string embedding_to_json(const OrthogonalEmbedding& emb);
OrthogonalEmbedding embedding_from_json(const std::string& text);

} // namespace isc
