#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "isc/lattice.hpp"

namespace isc {

using Rat = boost::rational<long long>;

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

/// Column of the order-4 Hadamard matrix, labeled by (a, b).
struct HadamardColumn {
    std::array<int, 4> entries{};
    int a = 0;
    int b = 0;
};

/// W(0,0)=(1,1,1,1), W(0,1)=(1,-1,1,-1), W(1,0)=(1,1,-1,-1), W(1,1)=(1,-1,-1,1).
HadamardColumn hadamard_column(int a, int b);

int inner_product(const HadamardColumn& u, const HadamardColumn& v);

/// Per-site pulse pattern within one subroutine: a Hadamard column plus an
/// optional global negation (the alternating sign used for ferromagnetic
/// subroutines).
struct SiteColumn {
    int a = 0;
    int b = 0;
    bool negate = false;
    int sign(int step) const {
        int v = hadamard_column(a, b).entries[step];
        return negate ? -v : v;
    }
};

/// Column assignment over the full rectangular grid (used and unused sites).
struct ColumnAssignment {
    int grid_rows = 0;
    int grid_cols = 0;
    std::vector<SiteColumn> cols; // row-major over the full grid
    const SiteColumn& at(GridPoint p) const { return cols.at(p.row * grid_cols + p.col); }
};

/// Computes the column assignment for one subroutine (1..4):
///   1: horizontal +1 bonds, row parity fixes a, b propagates left-to-right;
///   2: vertical +1 bonds, rows and columns exchanged;
///   3: horizontal -c bonds, as 1 with the extra per-column negation;
///   4: vertical -c bonds, as 3 transposed.
ColumnAssignment assign_columns(const LatticeHamiltonian& h, int subroutine_index);

struct PulseStep {
    std::vector<GridPoint> flips; // sites pulsed at the step's start and end
};

struct PulseSubroutine {
    int index = 0;         // 1..4
    std::string target;    // which bonds this subroutine keeps
    Rat step_duration;     // 1/4 or c/4, nominal units
    std::array<PulseStep, 4> steps;
    ColumnAssignment columns; // metadata
};

struct LocalFieldEpoch {
    Rat duration;
    std::vector<std::pair<GridPoint, long long>> fields; // row-major
};

/// The 16-step selective-decoupling schedule plus the declared local-field
/// epoch (the z-fields cannot be generated from the field-free coupling
/// resource by bit flips; they require native single-site control).
struct PulseSchedule {
    int grid_rows = 0;
    int grid_cols = 0;
    long long c = 1;
    std::array<PulseSubroutine, 4> subroutines;
    LocalFieldEpoch epoch;

    int step_count() const { return 16; }
    Rat coupling_duration() const;
    /// Flattened (duration, flip mask) list over the 16 coupling steps.
    std::vector<std::pair<Rat, std::vector<GridPoint>>> flattened_steps() const;
};

/// Compiles the lattice Hamiltonian into the four-subroutine schedule.
PulseSchedule compile_schedule(const LatticeHamiltonian& h);

/// Exact average Hamiltonian of a schedule over the full grid, computed
/// symbolically from the flip masks alone: a bond's coefficient is
/// sum over steps of duration * sign(k) * sign(l), durations in nominal
/// units (a kept bond in subroutine 1 comes out exactly +1).
struct EffectiveCoupling {
    int grid_rows = 0;
    int grid_cols = 0;
    std::map<std::pair<GridPoint, GridPoint>, Rat> bonds; // every lattice bond
    std::map<GridPoint, Rat> locals;                      // from the epoch
};

EffectiveCoupling average_hamiltonian(const PulseSchedule& s, int grid_rows, int grid_cols);

struct BondMismatch {
    GridPoint a, b;
    Rat expected;
    Rat actual;
};

struct ScheduleReport {
    bool bonds_match = false;
    bool fields_match = false;
    bool durations_ok = false;
    int step_count = 0;
    Rat coupling_duration;       // measured overhead, nominal units
    long long claimed_overhead = 0; // 2c+1
    bool overhead_discrepancy = false;
    Rat epoch_duration;
    std::vector<BondMismatch> mismatches;
    std::string row_set_note;
    bool ok() const { return bonds_match && fields_match && durations_ok && step_count == 16; }
};

/// Asserts exact rational equality between the schedule's average
/// Hamiltonian and the target couplings (zero on every other lattice bond),
/// and reports the measured time overhead against the claimed 2c+1.
ScheduleReport verify_schedule(const PulseSchedule& s, const LatticeHamiltonian& h);

/// Exact pulse-level propagator of the 16 coupling steps over a site subset:
/// the alternating product of bit flips and Ising evolutions. Everything is
/// diagonal after conjugation, so the unitary is returned as its diagonal.
/// Bit i of a basis index refers to sites[i] (ascending row-major); set bit
/// means spin +1. Each step may be subdivided into `substeps` equal slices.
std::vector<std::complex<double>> pulse_level_evolve(const PulseSchedule& s, int substeps,
                                                     const std::vector<GridPoint>& sites);

std::string schedule_to_json(const PulseSchedule& s);
PulseSchedule schedule_from_json(const std::string& text);

} // namespace isc
