#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "isc/embedding.hpp"
#include "isc/graph.hpp"
#include "isc/lattice.hpp"
#include "isc/pulse.hpp"

namespace isc {

/// One unit-weight X term per used site.
struct TransverseFieldHamiltonian {
    std::vector<GridPoint> sites; // ascending row-major
    int site_count() const { return static_cast<int>(sites.size()); }
};

TransverseFieldHamiltonian build_transverse_field(const LatticeHamiltonian& h);

/// Amplitudes over the computational basis of the used sites; bit i of a
/// basis index refers to site i (row-major order), set bit means spin +1.
struct StateVector {
    int n_sites = 0;
    std::vector<std::complex<double>> amp;
    double norm2() const;
};

struct AdiabaticRunConfig {
    double T = 100.0;
    double dt = 0.1;
    std::uint64_t seed = 1;
};

/// Ground state of sum_k sigma_x (eigenvalue -n): the all-|-> product,
/// amplitude (-1)^popcount(x) * 2^(-n/2).
StateVector initial_ground_state(int sites);

/// Integrates H(t) = (1 - t/T) H_B + (t/T) H_P from t=0 to T by symmetric
/// splitting with the interpolation coefficient at each segment midpoint.
/// Both split factors are applied exactly; the global error is O(dt^2).
StateVector evolve_adiabatic(const TransverseFieldHamiltonian& hB,
                             const LatticeHamiltonian& hP, const AdiabaticRunConfig& cfg,
                             int site_limit = 14);

struct SuccessBreakdown {
    double mis_probability = 0.0;         // restriction encodes a maximum independent set
    double mis_aligned_probability = 0.0; // additionally all wires aligned
};

/// Probability that a measurement's real-vertex restriction encodes a
/// maximum independent set (oracle-checked). Wire alignment is not required
/// for success; the aligned fraction is reported separately.
SuccessBreakdown success_probability(const StateVector& state, const Graph& g,
                                     const OrthogonalEmbedding& emb);

/// Samples one basis state from |amplitude|^2. Deterministic given the
/// generator state (uses an explicit 53-bit uniform draw).
std::uint32_t sample_measurement(const StateVector& state, std::mt19937_64& rng);
std::uint32_t sample_measurement(const StateVector& state, std::uint64_t seed);

struct GapPoint {
    double s = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double gap = 0.0; // 0 when degenerate within 1e-9
};

/// Dense Hermitian eigensolve of (1-s) H_B + s H_P at each grid point.
std::vector<GapPoint> gap_scan(const TransverseFieldHamiltonian& hB,
                               const LatticeHamiltonian& hP,
                               const std::vector<double>& s_grid, int site_limit = 12);

/// Alternating short transverse-field segments with compiled-schedule
/// segments (the schedule scaled to the segment's H_P phase). Converges to
/// evolve_adiabatic as the segment length shrinks.
StateVector trotterized_pulse_run(const PulseSchedule& schedule,
                                  const TransverseFieldHamiltonian& hB,
                                  const AdiabaticRunConfig& cfg, int site_limit = 10);

/// |<a|b>| with both states normalized; 1 means equal up to global phase.
double state_fidelity(const StateVector& a, const StateVector& b);

} // namespace isc
