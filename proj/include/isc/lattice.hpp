#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "isc/embedding.hpp"
#include "isc/graph.hpp"
#include "isc/reduction.hpp"

namespace isc {

struct LatticeSite {
    GridPoint at;
    int vertex = -1; // graph vertex id, -1 for a dummy
    long long z_field = 0;
    bool is_dummy() const { return vertex < 0; }
};

/// Nearest-neighbor realization of the problem Hamiltonian on the grid.
/// Couplings are +1 (antiferromagnetic) or -c (ferromagnetic wire bonds).
struct LatticeHamiltonian {
    int grid_rows = 0;
    int grid_cols = 0;
    long long c = 0;
    std::vector<LatticeSite> sites;                     // row-major
    std::map<std::pair<int, int>, long long> couplings; // site-index pairs, i < j
    std::vector<Wire> wires;

    int site_count() const { return static_cast<int>(sites.size()); }
    int site_index(GridPoint p) const; // -1 if p is not a used site
    long long ferro_bond_count() const;
    /// Coupling weight between two grid points, 0 if absent.
    long long coupling_at(GridPoint a, GridPoint b) const;
    /// Site indices of the real vertices, by graph vertex id.
    std::vector<int> vertex_sites() const;
};

/// Spins over the used sites; bit i set means site i has spin +1.
struct SpinConfiguration {
    int n_sites = 0;
    std::uint32_t up = 0;
    int spin(int site) const { return (up >> site & 1) ? +1 : -1; }
};

struct SpectrumLevel {
    long long energy = 0;
    std::uint64_t degeneracy = 0;
    std::vector<std::uint32_t> witnesses; // capped, ascending
};

struct Spectrum {
    std::vector<SpectrumLevel> levels; // ascending energies
    int n_sites = 0;
    long long ground_energy() const { return levels.at(0).energy; }
    /// E1 - E0 as eigenvalues with multiplicity: 0 if the ground level is
    /// degenerate, otherwise the distance to the next level.
    long long eigen_gap() const;
};

/// Builds the wire-gadget Hamiltonian from a valid embedding: weight +1
/// between adjacent real images; along each wire, weight -c on the chain
/// from Gamma(k) (k < l) and +1 on the terminal bond; z-field +1 on real
/// sites, 0 on dummies.
LatticeHamiltonian build_lattice_hamiltonian(const OrthogonalEmbedding& emb, long long c);

/// Assembles a LatticeHamiltonian from explicit parts, checking invariants.
LatticeHamiltonian lattice_from_parts(int grid_rows, int grid_cols, long long c,
                                      std::vector<LatticeSite> sites,
                                      std::map<std::pair<int, int>, long long> couplings,
                                      std::vector<Wire> wires);

long long energy_of(const LatticeHamiltonian& h, const SpinConfiguration& s);

/// Exact lowest k_levels by full enumeration (Gray-code sweep).
Spectrum exhaustive_spectrum(const LatticeHamiltonian& h, int k_levels,
                             int site_limit = 26, int witness_cap = 64);

/// Mismatch count along a wire's ferromagnetic chain: occurrences of
/// S_Gamma(k) != S_1 and S_i != S_{i+1}. The terminal bond is not counted.
int wire_mismatch_count(const LatticeHamiltonian& h, const SpinConfiguration& s,
                        const Wire& wire);

struct CorrespondenceReport {
    long long hp_ground_energy = 0;
    long long lattice_ground_energy = 0;
    std::uint64_t hp_ground_count = 0;
    std::uint64_t lattice_ground_count = 0;
    bool restriction_maps_to_ground = false; // (a)
    bool ground_bijection = false;           // (b)
    bool ground_wires_aligned = false;       // (c)
    bool energy_offset_exact = false;        // (d): E^_min = E_min - c*F
    bool first_excited_checked = false;      // (e), only meaningful when c = 9
    bool first_excited_ok = false;
    std::vector<std::string> notes;
    bool ok() const {
        bool base = restriction_maps_to_ground && ground_bijection &&
                    ground_wires_aligned && energy_offset_exact;
        return first_excited_checked ? base && first_excited_ok : base;
    }
};

/// Verifies the ground-state (and, for c = 9, first-excited) correspondence
/// between the problem Hamiltonian and its lattice realization by full
/// enumeration of both spectra.
CorrespondenceReport check_correspondence(const Graph& g, const ProblemHamiltonian& hp,
                                          const LatticeHamiltonian& h,
                                          int site_limit = 26);

struct GapReport {
    long long e0 = 0;
    long long e1 = 0;
    bool has_excited = false;
    long long gap = 0; // e1 - e0 over distinct levels; 0 if single level
    bool gap_le_8 = false;
    long long max_flip_delta = 0; // max |dE| over ground states x single flips
    bool flip_bound_ok = false;   // every flip changes energy by at most 8
};

/// Enumerates the problem-Hamiltonian spectrum and verifies the gap <= 8
/// bound plus the single-flip argument behind it.
GapReport gap_upper_bound_check(const Graph& g, const ProblemHamiltonian& hp,
                                int limit = 24);

std::string lattice_to_json(const LatticeHamiltonian& h);
LatticeHamiltonian lattice_from_json(const std::string& text);

/// Problem-Hamiltonian serialization in the same coupling-list shape, with
/// graph vertices as sites.
std::string problem_hamiltonian_to_json(const ProblemHamiltonian& hp);

} // namespace isc
