#include "isc/pipeline.hpp"

#include <bit>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "isc/dynamics.hpp"
#include "isc/embedding.hpp"
#include "isc/graph.hpp"
#include "isc/lattice.hpp"
#include "isc/pulse.hpp"
#include "isc/reduction.hpp"

namespace isc {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    out << content;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 15];
    return s;
}

Graph load_graph(const PipelineConfig& cfg) { return parse_graph(read_text_file(cfg.input)); }

ordered_json validation_json(const ValidationReport& r) {
    ordered_json j;
    j["is_cubic"] = r.is_cubic;
    j["is_planar_candidate"] = r.is_planar_candidate;
    auto v = ordered_json::array();
    for (const auto& [code, msg] : r.violations)
        v.push_back(ordered_json{{"code", code}, {"message", msg}});
    j["violations"] = std::move(v);
    return j;
}

struct ArtifactWriter {
    fs::path dir;
    ordered_json manifest_entries = ordered_json::array();

    explicit ArtifactWriter(const std::string& out_dir) : dir(out_dir) {
        fs::create_directories(dir);
    }
    void put(const std::string& name, const std::string& content) {
        write_text_file((dir / name).string(), content);
        manifest_entries.push_back(
            ordered_json{{"file", name}, {"fnv1a64", hex64(fnv1a64(content))}});
    }
    void finish(const std::string& command, const ordered_json& config_echo) {
        ordered_json m;
        m["format"] = "isc-manifest/1";
        m["command"] = command;
        m["config"] = config_echo;
        m["artifacts"] = manifest_entries;
        write_text_file((dir / "manifest.json").string(), m.dump(2) + "\n");
    }
};

std::string bits_string(std::uint32_t mask, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if (mask >> i & 1) s[i] = '1';
    return s;
}

} // namespace

CommandOutcome run_validate(const PipelineConfig& cfg, std::ostream& out) {
    try {
        Graph g = load_graph(cfg);
        auto rep = validate_cubic_planar(g);
        ordered_json j = validation_json(rep);
        j["n"] = g.n;
        j["m"] = g.m();
        out << j.dump(2) << "\n";
        return {rep.ok() ? kExitOk : kExitValidation, rep.ok() ? "ok" : "validation failed"};
    } catch (const ParseError& e) {
        return {kExitIo, e.what()};
    } catch (const std::ios_base::failure& e) {
        return {kExitIo, e.what()};
    }
}

CommandOutcome run_oracle(const PipelineConfig& cfg, std::ostream& out) {
    try {
        Graph g = load_graph(cfg);
        auto w = mis_oracle(g, cfg.oracle_limit);
        out << w.cardinality << ": {";
        for (std::size_t i = 0; i < w.members.size(); ++i)
            out << (i ? ", " : "") << w.members[i];
        out << "}\n";
        return {kExitOk, "ok"};
    } catch (const CapacityError& e) {
        return {kExitCapacity, e.what()};
    } catch (const ParseError& e) {
        return {kExitIo, e.what()};
    } catch (const std::ios_base::failure& e) {
        return {kExitIo, e.what()};
    }
}

CommandOutcome run_compile(const PipelineConfig& cfg, std::ostream& out) {
    Graph g;
    try {
        g = load_graph(cfg);
    } catch (const ParseError& e) {
        return {kExitIo, e.what()};
    } catch (const std::ios_base::failure& e) {
        return {kExitIo, e.what()};
    }

    auto validation = validate_cubic_planar(g);
    if (!validation.is_cubic)
        return {kExitValidation, "instance is not cubic; cannot build the problem Hamiltonian"};

    GridBudget budget{cfg.budget_rows > 0 ? cfg.budget_rows : g.n,
                      cfg.budget_cols > 0 ? cfg.budget_cols : g.n};
    auto result = embed(g, budget);
    if (result.status == EmbedStatus::NonPlanar)
        return {kExitEmbedding, "NonPlanar: no planar orthogonal embedding exists"};
    if (result.status == EmbedStatus::BudgetExceeded)
        return {kExitEmbedding, "BudgetExceeded: no embedding found within " +
                                    std::to_string(budget.rows) + "x" +
                                    std::to_string(budget.cols)};

    const auto& emb = *result.embedding;
    auto emb_report = validate_embedding(g, emb);
    auto h = build_lattice_hamiltonian(emb, cfg.c);
    auto hp = build_HP(g);
    auto schedule = compile_schedule(h);
    auto sched_report = verify_schedule(schedule, h);

    ordered_json report;
    report["format"] = "isc-verification-report/1";
    report["config"] = ordered_json{{"input", fs::path(cfg.input).filename().string()},
                                    {"c", cfg.c},
                                    {"budget_rows", budget.rows},
                                    {"budget_cols", budget.cols}};
    report["validation"] = validation_json(validation);
    report["embedding"] =
        ordered_json{{"grid_rows", emb.grid_rows},
                     {"grid_cols", emb.grid_cols},
                     {"used_sites", static_cast<int>(emb.used_points().size())},
                     {"strategy", emb.strategy},
                     {"violations", static_cast<int>(emb_report.violations.size())}};
    report["lattice"] = ordered_json{{"sites", h.site_count()},
                                     {"couplings", static_cast<int>(h.couplings.size())},
                                     {"ferromagnetic_bonds", h.ferro_bond_count()},
                                     {"c", h.c}};
    {
        auto mm = ordered_json::array();
        for (const auto& m : sched_report.mismatches)
            mm.push_back(ordered_json{
                {"bond", {{m.a.row, m.a.col}, {m.b.row, m.b.col}}},
                {"expected", rat_to_string(m.expected)},
                {"actual", rat_to_string(m.actual)}});
        report["schedule"] =
            ordered_json{{"step_count", sched_report.step_count},
                         {"coupling_duration", rat_to_string(sched_report.coupling_duration)},
                         {"claimed_overhead", sched_report.claimed_overhead},
                         {"overhead_discrepancy", sched_report.overhead_discrepancy},
                         {"epoch_duration", rat_to_string(sched_report.epoch_duration)},
                         {"bonds_match", sched_report.bonds_match},
                         {"fields_match", sched_report.fields_match},
                         {"durations_ok", sched_report.durations_ok},
                         {"row_set_note", sched_report.row_set_note},
                         {"mismatches", mm}};
    }

    bool all_ok = validation.ok() && emb_report.ok() && sched_report.ok();

    if (h.site_count() <= cfg.spectrum_limit && g.n <= cfg.oracle_limit) {
        auto corr = check_correspondence(g, hp, h, cfg.spectrum_limit);
        report["correspondence"] =
            ordered_json{{"checked", true},
                         {"hp_ground_energy", corr.hp_ground_energy},
                         {"lattice_ground_energy", corr.lattice_ground_energy},
                         {"hp_ground_count", corr.hp_ground_count},
                         {"lattice_ground_count", corr.lattice_ground_count},
                         {"restriction_maps_to_ground", corr.restriction_maps_to_ground},
                         {"ground_bijection", corr.ground_bijection},
                         {"ground_wires_aligned", corr.ground_wires_aligned},
                         {"energy_offset_exact", corr.energy_offset_exact},
                         {"first_excited_checked", corr.first_excited_checked},
                         {"first_excited_ok", corr.first_excited_ok},
                         {"ok", corr.ok()}};
        all_ok = all_ok && corr.ok();
    } else {
        report["correspondence"] = ordered_json{{"checked", false},
                                                {"reason", "instance exceeds enumeration limits"}};
    }

    if (g.n <= cfg.oracle_limit) {
        auto gap = gap_upper_bound_check(g, hp, cfg.oracle_limit);
        report["gap_check"] = ordered_json{{"checked", true},
                                           {"e0", gap.e0},
                                           {"e1", gap.e1},
                                           {"gap", gap.gap},
                                           {"gap_le_8", gap.gap_le_8},
                                           {"max_flip_delta", gap.max_flip_delta},
                                           {"flip_bound_ok", gap.flip_bound_ok}};
        all_ok = all_ok && gap.gap_le_8 && gap.flip_bound_ok;
    } else {
        report["gap_check"] = ordered_json{{"checked", false},
                                           {"reason", "instance exceeds enumeration limits"}};
    }
    report["all_checks_passed"] = all_ok;

    try {
        ArtifactWriter writer(cfg.out_dir);
        writer.put("embedding.json", embedding_to_json(emb));
        writer.put("lattice_hamiltonian.json", lattice_to_json(h));
        writer.put("problem_hamiltonian.json", problem_hamiltonian_to_json(hp));
        writer.put("pulse_schedule.json", schedule_to_json(schedule));
        writer.put("verification_report.json", report.dump(2) + "\n");
        writer.finish("compile", report["config"]);
    } catch (const std::ios_base::failure& e) {
        return {kExitIo, e.what()};
    }

    out << report.dump(2) << "\n";
    return {all_ok ? kExitOk : kExitValidation,
            all_ok ? "ok" : "one or more verification checks failed"};
}

CommandOutcome run_solve(const PipelineConfig& cfg, std::ostream& out) {
    Graph g;
    try {
        g = load_graph(cfg);
    } catch (const ParseError& e) {
        return {kExitIo, e.what()};
    } catch (const std::ios_base::failure& e) {
        return {kExitIo, e.what()};
    }

    auto validation = validate_cubic_planar(g);
    if (!validation.is_cubic) return {kExitValidation, "instance is not cubic"};

    GridBudget budget{cfg.budget_rows > 0 ? cfg.budget_rows : g.n,
                      cfg.budget_cols > 0 ? cfg.budget_cols : g.n};
    auto result = embed(g, budget);
    if (result.status != EmbedStatus::Ok)
        return {kExitEmbedding, result.status == EmbedStatus::NonPlanar
                                    ? "NonPlanar: no planar orthogonal embedding exists"
                                    : "BudgetExceeded"};
    const auto& emb = *result.embedding;
    auto h = build_lattice_hamiltonian(emb, cfg.c);

    if (h.site_count() > cfg.sim_limit)
        return {kExitCapacity, "instance uses " + std::to_string(h.site_count()) +
                                   " lattice sites; simulator limit is " +
                                   std::to_string(cfg.sim_limit)};

    IndependentSetWitness oracle;
    try {
        oracle = mis_oracle(g, cfg.oracle_limit);
    } catch (const CapacityError& e) {
        return {kExitCapacity, e.what()};
    }

    const double dt = cfg.dt > 0 ? cfg.dt : cfg.T / 1000.0;
    auto hB = build_transverse_field(h);
    auto psi = evolve_adiabatic(hB, h, AdiabaticRunConfig{cfg.T, dt, cfg.seed}, cfg.sim_limit);
    auto success = success_probability(psi, g, emb);

    auto vsites = h.vertex_sites();
    auto restrict_bits = [&](std::uint32_t x) {
        std::uint64_t r = 0;
        for (int v = 0; v < g.n; ++v)
            if (x >> vsites[v] & 1) r |= std::uint64_t{1} << v;
        return r;
    };

    std::mt19937_64 rng(cfg.seed);
    int raw_hits = 0, repaired_hits = 0;
    auto samples = ordered_json::array();
    for (int shot = 0; shot < cfg.shots; ++shot) {
        std::uint32_t x = sample_measurement(psi, rng);
        std::uint64_t r = restrict_bits(x);
        bool raw_mis = static_cast<int>(std::popcount(r)) == oracle.cardinality &&
                       is_independent(g, r);
        auto repaired = repair_to_independent(g, BitAssignment{g.n, r});
        int rep_card = std::popcount(repaired.bits);
        raw_hits += raw_mis;
        repaired_hits += rep_card == oracle.cardinality;
        samples.push_back(ordered_json{{"bits", bits_string(x, h.site_count())},
                                       {"selected", bits_string(static_cast<std::uint32_t>(r), g.n)},
                                       {"raw_mis", raw_mis},
                                       {"repaired_cardinality", rep_card}});
    }

    ordered_json report;
    report["format"] = "isc-run-report/1";
    report["config"] = ordered_json{{"input", fs::path(cfg.input).filename().string()},
                                    {"c", cfg.c},
                                    {"T", cfg.T},
                                    {"dt", dt},
                                    {"seed", cfg.seed},
                                    {"shots", cfg.shots}};
    report["instance"] = ordered_json{{"n", g.n},
                                      {"m", g.m()},
                                      {"oracle_cardinality", oracle.cardinality},
                                      {"oracle_witness", oracle.members}};
    report["embedding"] = ordered_json{{"grid_rows", emb.grid_rows},
                                       {"grid_cols", emb.grid_cols},
                                       {"used_sites", h.site_count()}};
    report["success"] = ordered_json{{"mis_probability", success.mis_probability},
                                     {"mis_aligned_probability", success.mis_aligned_probability}};
    report["shots"] = ordered_json{{"count", cfg.shots},
                                   {"raw_mis_hits", raw_hits},
                                   {"repaired_recoveries", repaired_hits},
                                   {"samples", samples}};

    if (h.site_count() <= cfg.scan_limit) {
        std::vector<double> grid;
        for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
        auto scan = gap_scan(hB, h, grid, cfg.scan_limit);
        auto rows = ordered_json::array();
        for (const auto& gp : scan)
            rows.push_back(ordered_json{{"s", gp.s}, {"e0", gp.e0}, {"e1", gp.e1}, {"gap", gp.gap}});
        report["gap_scan"] = rows;
    } else {
        report["gap_scan"] = ordered_json{{"skipped", "site count above dense-solve limit"}};
    }

    try {
        ArtifactWriter writer(cfg.out_dir);
        writer.put("run_report.json", report.dump(2) + "\n");
        if (cfg.dump_amplitudes) {
            std::string blob;
            blob.reserve(psi.amp.size() * 16);
            for (const auto& a : psi.amp) {
                double re = a.real(), im = a.imag();
                blob.append(reinterpret_cast<const char*>(&re), 8);
                blob.append(reinterpret_cast<const char*>(&im), 8);
            }
            writer.put("amplitudes.bin", blob);
        }
        writer.finish("solve", report["config"]);
    } catch (const std::ios_base::failure& e) {
        return {kExitIo, e.what()};
    }

    out << report.dump(2) << "\n";
    return {kExitOk, "ok"};
}

CommandOutcome run_verify_schedule(const std::string& hamiltonian_path,
                                   const std::string& schedule_path, std::ostream& out) {
    LatticeHamiltonian h;
    PulseSchedule s;
    try {
        h = lattice_from_json(read_text_file(hamiltonian_path));
        s = schedule_from_json(read_text_file(schedule_path));
    } catch (const std::ios_base::failure& e) {
        return {kExitIo, e.what()};
    } catch (const nlohmann::json::exception& e) {
        return {kExitIo, e.what()};
    }
    auto rep = verify_schedule(s, h);
    ordered_json j;
    j["step_count"] = rep.step_count;
    j["bonds_match"] = rep.bonds_match;
    j["fields_match"] = rep.fields_match;
    j["durations_ok"] = rep.durations_ok;
    j["coupling_duration"] = rat_to_string(rep.coupling_duration);
    j["claimed_overhead"] = rep.claimed_overhead;
    j["overhead_discrepancy"] = rep.overhead_discrepancy;
    j["mismatch_count"] = static_cast<int>(rep.mismatches.size());
    j["ok"] = rep.ok();
    out << j.dump(2) << "\n";
    return {rep.ok() ? kExitOk : kExitValidation, rep.ok() ? "ok" : "schedule mismatch"};
}

} // namespace isc
