#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace isc {

// exit-code contract shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitEmbedding = 3;
inline constexpr int kExitCapacity = 4;

struct PipelineConfig {
    std::string input;
    long long c = 9;
    int budget_rows = -1; // -1: default n x n
    int budget_cols = -1;
    int oracle_limit = 24;
    int spectrum_limit = 26;
    int sim_limit = 14;
    int scan_limit = 12;
    double T = 100.0;
    double dt = -1.0; // -1: default T/1000
    std::uint64_t seed = 1;
    int shots = 200;
    std::string out_dir = "out";
    bool dump_amplitudes = false;
    int verbosity = 1;
};

struct CommandOutcome {
    int exit_code = kExitOk;
    std::string message;
};

CommandOutcome run_validate(const PipelineConfig& cfg, std::ostream& out);
CommandOutcome run_oracle(const PipelineConfig& cfg, std::ostream& out);

/// Embeds, builds the lattice Hamiltonian, compiles and verifies the pulse
/// schedule, and runs the correspondence and gap checks where instance size
/// permits. Writes all artifacts plus a manifest under cfg.out_dir.
CommandOutcome run_compile(const PipelineConfig& cfg, std::ostream& out);

/// Runs the adiabatic simulation, samples seeded measurements, and compares
/// the recovered independent-set size against the oracle.
CommandOutcome run_solve(const PipelineConfig& cfg, std::ostream& out);

CommandOutcome run_verify_schedule(const std::string& hamiltonian_path,
                                   const std::string& schedule_path, std::ostream& out);

std::string read_text_file(const std::string& path); // throws on I/O failure
void write_text_file(const std::string& path, const std::string& content);
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace isc
