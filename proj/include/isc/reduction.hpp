#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "isc/graph.hpp"

namespace isc {

/// 0/1 selection variables, one per vertex, packed as a bitmask.
struct BitAssignment {
    int n = 0;
    std::uint64_t bits = 0;
    bool get(int v) const { return bits >> v & 1; }
};

/// +-1 spin variables, one per vertex; bit set means spin +1.
struct SpinAssignment {
    int n = 0;
    std::uint64_t up = 0;
    int spin(int v) const { return (up >> v & 1) ? +1 : -1; }
};

/// One unit-weight ZZ term per edge, one unit-weight Z term per vertex.
struct ProblemHamiltonian {
    int n = 0;
    std::vector<std::pair<int, int>> zz_terms; // weight +1 each
    std::vector<int> z_terms;                  // weight +1 each
};

/// L = sum_k X_k - sum_{(k,l) in E} X_k X_l.
long long objective_L(const Graph& g, const BitAssignment& x);

/// p = sum_{(k,l) in E} X_k X_l; zero iff the selected set is independent.
long long penalty(const Graph& g, const BitAssignment& x);

/// Repeatedly unselects one endpoint of a violated edge until the selected
/// set is independent. Deterministic: the lowest violated edge is processed
/// first, dropping the endpoint with the larger selected-neighbor count
/// (ties to the smaller index). The result has cardinality >= objective_L.
BitAssignment repair_to_independent(const Graph& g, const BitAssignment& x);

/// S_k = 2 X_k - 1.
SpinAssignment spins_from_bits(const BitAssignment& x);

/// Inverse transform, X_k = (S_k + 1) / 2.
BitAssignment bits_from_spins(const SpinAssignment& s);

/// E = sum_k S_k + sum_{(k,l) in E} S_k S_l.
long long energy_E(const Graph& g, const SpinAssignment& s);

/// Builds the problem Hamiltonian for a cubic graph. Rejects non-cubic
/// input: the |V|/2 - 4v correspondence relies on |E| = 3|V|/2.
ProblemHamiltonian build_HP(const Graph& g);

/// Diagonal eigenvalue of the problem Hamiltonian on a spin configuration.
long long hp_energy(const ProblemHamiltonian& hp, const SpinAssignment& s);

/// Recovers the MIS cardinality from the exact ground energy:
/// v = (n/2 - e_min) / 4. Throws if the result is not integral.
long long mis_from_ground_energy(const Graph& g, long long e_min);

/// Exact minimum of energy_E over all 2^n spin assignments.
long long min_energy_exhaustive(const Graph& g, int limit = 24);

} // namespace isc
