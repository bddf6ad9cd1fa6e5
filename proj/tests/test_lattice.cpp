#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <limits>

#include "fixtures.hpp"
#include "isc/lattice.hpp"

using namespace isc;

namespace {

LatticeHamiltonian embedded_k4(long long c) {
    auto res = embed(fixtures::k4());
    REQUIRE(res.status == EmbedStatus::Ok);
    return build_lattice_hamiltonian(*res.embedding, c);
}

// bare ferromagnetic chain with m interior dummies, coupling-only energies
long long chain_energy(int m, long long c, std::uint32_t spins) {
    auto s = [&](int i) { return (spins >> i & 1) ? 1 : -1; };
    long long e = 0;
    for (int i = 0; i < m; ++i) e += -c * s(i) * s(i + 1);
    e += s(m) * s(m + 1);
    return e;
}

int chain_mismatches(int m, std::uint32_t spins) {
    auto s = [&](int i) { return (spins >> i & 1) ? 1 : -1; };
    int d = 0;
    for (int i = 0; i < m; ++i) d += s(i) != s(i + 1);
    return d;
}

} // namespace

TEST_CASE("lattice construction from the embedded K4") {
    auto h = embedded_k4(9);
    CHECK(h.c == 9);
    long long wire_dummies = 0;
    for (const auto& w : h.wires) wire_dummies += w.m();
    CHECK(h.site_count() == 4 + wire_dummies);
    CHECK(h.ferro_bond_count() == wire_dummies); // one -c bond per dummy

    for (const auto& s : h.sites)
        CHECK(s.z_field == (s.is_dummy() ? 0 : 1));

    // wire pattern: m bonds of -c then a +1 terminal
    auto vsites = h.vertex_sites();
    for (const auto& w : h.wires) {
        GridPoint prev = h.sites[vsites[w.k]].at;
        for (auto d : w.dummies) {
            CHECK(h.coupling_at(prev, d) == -9);
            prev = d;
        }
        CHECK(h.coupling_at(prev, h.sites[vsites[w.l]].at) == 1);
    }
    // every coupling weight is +1 or -c
    for (const auto& [e, wgt] : h.couplings) CHECK((wgt == 1 || wgt == -9));
}

TEST_CASE("energy_of hand case: coupling +1, fields (+1, 0), S = (-1, +1)") {
    LatticeHamiltonian h;
    h.grid_rows = 1;
    h.grid_cols = 2;
    h.c = 1;
    h.sites = {{{0, 0}, 0, 1}, {{0, 1}, -1, 0}};
    h.couplings[{0, 1}] = 1;
    SpinConfiguration s{2, 0b10}; // site0 -1, site1 +1
    CHECK(energy_of(h, s) == -2); // ZZ = -1, field = -1
    CHECK_THROWS_AS(energy_of(h, SpinConfiguration{3, 0}), std::invalid_argument);
}

TEST_CASE("aligned wire energies and single-dummy flips") {
    // 4-site chain: real - d1 - d2 - real, c = 3
    std::vector<LatticeSite> sites{
        {{0, 0}, 0, 1}, {{0, 1}, -1, 0}, {{0, 2}, -1, 0}, {{0, 3}, 1, 1}};
    std::map<std::pair<int, int>, long long> coup{
        {{0, 1}, -3}, {{1, 2}, -3}, {{2, 3}, 1}};
    std::vector<Wire> wires{{0, 1, {{0, 1}, {0, 2}}}};
    auto h = lattice_from_parts(1, 4, 3, sites, coup, wires);

    // all aligned up, terminal antiparallel preferred: S = (+,+,+,-)
    SpinConfiguration s{4, 0b0111};
    CHECK(energy_of(h, s) == -3 - 3 - 1 + (1 - 1)); // couplings -7, fields cancel

    // flipping an interior dummy breaks two -c bonds: +4c
    SpinConfiguration flipped{4, 0b0101};
    CHECK(energy_of(h, flipped) - energy_of(h, s) == 12);

    // flipping the chain-head-adjacent dummy of an aligned-up wire costs 2c +- 2
    SpinConfiguration flip_last{4, 0b0011};
    long long delta = energy_of(h, flip_last) - energy_of(h, s);
    CHECK((delta == 2 * 3 + 2 || delta == 2 * 3 - 2));

    CHECK(wire_mismatch_count(h, s, wires[0]) == 0);
    CHECK(wire_mismatch_count(h, flipped, wires[0]) == 2);
}

TEST_CASE("wire mismatch count on an m=3 alternating chain") {
    std::vector<LatticeSite> sites{{{0, 0}, 0, 1}, {{0, 1}, -1, 0}, {{0, 2}, -1, 0},
                                   {{0, 3}, -1, 0}, {{0, 4}, 1, 1}};
    std::map<std::pair<int, int>, long long> coup{
        {{0, 1}, -9}, {{1, 2}, -9}, {{2, 3}, -9}, {{3, 4}, 1}};
    std::vector<Wire> wires{{0, 1, {{0, 1}, {0, 2}, {0, 3}}}};
    auto h = lattice_from_parts(1, 5, 9, sites, coup, wires);
    SpinConfiguration alternating{5, 0b01010};
    CHECK(wire_mismatch_count(h, alternating, wires[0]) == 3);

    Wire unknown{0, 1, {{0, 1}}};
    CHECK_THROWS_AS(wire_mismatch_count(h, alternating, unknown), std::invalid_argument);
}

TEST_CASE("exhaustive spectrum of the 2-site hand case") {
    // H = sigma_z sigma_z + sigma_z on site 0: energies {-2, 0, 0, 2}
    LatticeHamiltonian h;
    h.grid_rows = 1;
    h.grid_cols = 2;
    h.c = 1;
    h.sites = {{{0, 0}, 0, 1}, {{0, 1}, -1, 0}};
    h.couplings[{0, 1}] = 1;
    auto spec = exhaustive_spectrum(h, 10);
    REQUIRE(spec.levels.size() == 3);
    CHECK(spec.levels[0].energy == -2);
    CHECK(spec.levels[0].degeneracy == 1);
    CHECK(spec.levels[1].energy == 0);
    CHECK(spec.levels[1].degeneracy == 2);
    CHECK(spec.levels[2].energy == 2);
    CHECK(spec.eigen_gap() == 2);
}

TEST_CASE("empty Hamiltonian spectrum is one fully degenerate level") {
    LatticeHamiltonian h;
    h.grid_rows = h.grid_cols = 2;
    h.c = 1;
    h.sites = {{{0, 0}, -1, 0}, {{0, 1}, -1, 0}, {{1, 0}, -1, 0}};
    auto spec = exhaustive_spectrum(h, 5);
    REQUIRE(spec.levels.size() == 1);
    CHECK(spec.levels[0].energy == 0);
    CHECK(spec.levels[0].degeneracy == 8);
}

TEST_CASE("spectrum degeneracies sum to 2^sites") {
    auto h = embedded_k4(9);
    auto spec = exhaustive_spectrum(h, 1 << 20);
    std::uint64_t total = 0;
    for (const auto& l : spec.levels) total += l.degeneracy;
    CHECK(total == (std::uint64_t{1} << h.site_count()));
    for (std::size_t i = 1; i < spec.levels.size(); ++i)
        CHECK(spec.levels[i].energy > spec.levels[i - 1].energy);
}

TEST_CASE("spectrum agrees with direct evaluation on witnesses") {
    auto h = embedded_k4(3);
    auto spec = exhaustive_spectrum(h, 4);
    for (const auto& lvl : spec.levels)
        for (auto w : lvl.witnesses)
            CHECK(energy_of(h, {h.site_count(), w}) == lvl.energy);
}

TEST_CASE("site limit enforced") {
    LatticeHamiltonian h;
    h.grid_rows = 6;
    h.grid_cols = 6;
    h.c = 1;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) h.sites.push_back({{r, c}, -1, 0});
    CHECK_THROWS_AS(exhaustive_spectrum(h, 2, 26), CapacityError);
}

TEST_CASE("ground-state correspondence for the embedded K4") {
    auto g = fixtures::k4();
    auto hp = build_HP(g);

    SUBCASE("c = 3: ground checks pass") {
        auto h = embedded_k4(3);
        auto rep = check_correspondence(g, hp, h);
        CHECK(rep.restriction_maps_to_ground);
        CHECK(rep.ground_bijection);
        CHECK(rep.ground_wires_aligned);
        CHECK(rep.energy_offset_exact);
        CHECK(!rep.first_excited_checked);
        CHECK(rep.ok());
        CHECK(rep.hp_ground_energy == -2);
        CHECK(rep.hp_ground_count == 10);
        CHECK(rep.lattice_ground_energy == -2 - 3 * h.ferro_bond_count());
    }
    SUBCASE("c = 9: first-excited checks included") {
        auto h = embedded_k4(9);
        auto rep = check_correspondence(g, hp, h);
        CHECK(rep.ok());
        CHECK(rep.first_excited_checked);
        CHECK(rep.first_excited_ok);
        CHECK(rep.lattice_ground_energy == -2 - 9 * h.ferro_bond_count());
        CHECK(rep.lattice_ground_count == 10);
    }
    SUBCASE("c = 1: alignment breaks, and the report says so") {
        auto h = embedded_k4(1);
        auto rep = check_correspondence(g, hp, h);
        CHECK(!rep.ground_wires_aligned);
        CHECK(!rep.ok());
        // the energy offset still cannot beat the aligned bound here
        CHECK(rep.lattice_ground_energy <= -2 - 1 * h.ferro_bond_count());
    }
}

TEST_CASE("correspondence also holds for the embedded Q3 at c = 9") {
    auto g = fixtures::q3();
    auto res = embed(g);
    REQUIRE(res.status == EmbedStatus::Ok);
    auto h = build_lattice_hamiltonian(*res.embedding, 9);
    REQUIRE(h.site_count() <= 26);
    auto rep = check_correspondence(g, build_HP(g), h);
    CHECK(rep.ok());
}

TEST_CASE("gap bound check") {
    auto g = fixtures::k4();
    auto rep = gap_upper_bound_check(g, build_HP(g));
    CHECK(rep.e0 == -2);
    CHECK(rep.gap == 4);
    CHECK(rep.gap_le_8);
    CHECK(rep.flip_bound_ok);
    CHECK(rep.max_flip_delta <= 8);

    auto q3 = fixtures::q3();
    auto rep3 = gap_upper_bound_check(q3, build_HP(q3));
    CHECK(rep3.gap_le_8);
    CHECK(rep3.flip_bound_ok);
}

TEST_CASE("isolated wire separation: misaligned beats aligned only below c=2") {
    for (long long c : {1LL, 2LL, 3LL, 9LL}) {
        bool separated = true;
        for (int m = 1; m <= 6; ++m) {
            long long worst_aligned = std::numeric_limits<long long>::min();
            long long best_mis = std::numeric_limits<long long>::max();
            for (std::uint32_t s = 0; s < (1u << (m + 2)); ++s) {
                long long e = chain_energy(m, c, s);
                if (chain_mismatches(m, s) == 0)
                    worst_aligned = std::max(worst_aligned, e);
                else
                    best_mis = std::min(best_mis, e);
            }
            separated = separated && best_mis > worst_aligned;
        }
        if (c >= 2) CHECK(separated);
        else CHECK(!separated);
    }
}

TEST_CASE("lattice invariant checker rejects malformed input") {
    std::vector<LatticeSite> sites{{{0, 0}, 0, 1}, {{0, 1}, -1, 1}};
    std::map<std::pair<int, int>, long long> coup{{{0, 1}, -3}};
    CHECK_THROWS_AS(lattice_from_parts(1, 2, 3, sites, coup, {}),
                    std::invalid_argument); // dummy with field
    sites[1].z_field = 0;
    CHECK_THROWS_AS(lattice_from_parts(1, 2, 3, sites, coup, {}),
                    std::invalid_argument); // -c bond outside a wire
    coup[{0, 1}] = 2;
    CHECK_THROWS_AS(lattice_from_parts(1, 2, 3, sites, coup, {}),
                    std::invalid_argument); // weight neither +1 nor -c
}
