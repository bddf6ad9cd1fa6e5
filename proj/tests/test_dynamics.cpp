#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "isc/dynamics.hpp"

using namespace isc;

namespace {

struct K4Instance {
    Graph g;
    OrthogonalEmbedding emb;
    LatticeHamiltonian h;
    TransverseFieldHamiltonian hB;
};

K4Instance k4_instance(long long c) {
    K4Instance inst;
    inst.g = fixtures::k4();
    auto res = embed(inst.g);
    REQUIRE(res.status == EmbedStatus::Ok);
    inst.emb = *res.embedding;
    inst.h = build_lattice_hamiltonian(inst.emb, c);
    inst.hB = build_transverse_field(inst.h);
    return inst;
}

LatticeHamiltonian single_site() {
    LatticeHamiltonian h;
    h.grid_rows = h.grid_cols = 1;
    h.c = 1;
    h.sites = {{{0, 0}, 0, 1}};
    return h;
}

} // namespace

TEST_CASE("initial ground state of sum sigma_x") {
    auto psi = initial_ground_state(1);
    CHECK(psi.amp[0].real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(psi.amp[1].real() == doctest::Approx(-1 / std::sqrt(2.0)));

    psi = initial_ground_state(5);
    CHECK(psi.norm2() == doctest::Approx(1.0));
    for (const auto& a : psi.amp)
        CHECK(std::abs(a) == doctest::Approx(std::pow(2.0, -2.5)));

    // <psi| sum sigma_x |psi> = -n: sigma_x flips one bit
    double exp_x = 0;
    for (std::size_t x = 0; x < psi.amp.size(); ++x)
        for (int k = 0; k < 5; ++k)
            exp_x += (std::conj(psi.amp[x]) * psi.amp[x ^ (1u << k)]).real();
    CHECK(exp_x == doctest::Approx(-5.0));
}

TEST_CASE("zero problem Hamiltonian leaves the initial state stationary") {
    LatticeHamiltonian h;
    h.grid_rows = 1;
    h.grid_cols = 3;
    h.c = 1;
    h.sites = {{{0, 0}, -1, 0}, {{0, 1}, -1, 0}, {{0, 2}, -1, 0}};
    auto hB = build_transverse_field(h);
    auto psi = evolve_adiabatic(hB, h, {7.0, 0.01, 1});
    auto ref = initial_ground_state(3);
    CHECK(state_fidelity(psi, ref) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("single-site interpolation: analytic gap sqrt(2) at s = 1/2") {
    auto h = single_site();
    auto hB = build_transverse_field(h);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    auto scan = gap_scan(hB, h, grid);
    double min_gap = 1e9, argmin = -1;
    for (const auto& gp : scan)
        if (gp.gap < min_gap) {
            min_gap = gp.gap;
            argmin = gp.s;
        }
    CHECK(argmin == doctest::Approx(0.5));
    CHECK(std::abs(min_gap - std::sqrt(2.0)) < 1e-9);
    // endpoints: gap 2 at both ends (sigma_x spectrum and sigma_z spectrum)
    CHECK(scan.front().gap == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(scan.back().gap == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gap_scan at s = 1 matches the exhaustive spectrum") {
    auto inst = k4_instance(9);
    REQUIRE(inst.h.site_count() <= 12);
    auto scan = gap_scan(inst.hB, inst.h, {1.0});
    auto spec = exhaustive_spectrum(inst.h, 3);
    CHECK(std::abs(scan[0].e0 - static_cast<double>(spec.ground_energy())) < 1e-9);
    CHECK(std::abs(scan[0].gap - static_cast<double>(spec.eigen_gap())) < 1e-9);
    // ground level is 10-fold degenerate, so the eigenvalue gap is zero
    CHECK(spec.levels[0].degeneracy == 10);
    CHECK(scan[0].gap == 0.0);

    // non-degenerate case: the 2-site hand Hamiltonian
    LatticeHamiltonian h2;
    h2.grid_rows = 1;
    h2.grid_cols = 2;
    h2.c = 1;
    h2.sites = {{{0, 0}, 0, 1}, {{0, 1}, -1, 0}};
    h2.couplings[{0, 1}] = 1;
    auto hB2 = build_transverse_field(h2);
    auto scan2 = gap_scan(hB2, h2, {1.0});
    auto spec2 = exhaustive_spectrum(h2, 3);
    CHECK(std::abs(scan2[0].gap - static_cast<double>(spec2.eigen_gap())) < 1e-9);
    CHECK(spec2.eigen_gap() == 2);
}

TEST_CASE("norm is preserved and amplitudes stay finite") {
    auto inst = k4_instance(9);
    auto psi = evolve_adiabatic(inst.hB, inst.h, {5.0, 0.01, 1});
    CHECK(std::abs(psi.norm2() - 1.0) < 1e-9);
}

TEST_CASE("integrator is second order") {
    auto inst = k4_instance(3);
    auto ref = evolve_adiabatic(inst.hB, inst.h, {4.0, 4.0 / 4096.0, 1});
    std::vector<double> errs;
    for (double dt : {4.0 / 32.0, 4.0 / 64.0, 4.0 / 128.0}) {
        auto psi = evolve_adiabatic(inst.hB, inst.h, {4.0, dt, 1});
        double err = 0;
        for (std::size_t x = 0; x < psi.amp.size(); ++x)
            err += std::norm(psi.amp[x] - ref.amp[x]);
        errs.push_back(std::sqrt(err));
    }
    double slope1 = std::log2(errs[0] / errs[1]);
    double slope2 = std::log2(errs[1] / errs[2]);
    CHECK(slope1 == doctest::Approx(2.0).epsilon(0.15));
    CHECK(slope2 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("success probability on hand-prepared states") {
    auto inst = k4_instance(9);
    const int n = inst.h.site_count();

    SUBCASE("exact ground witness has success 1 and aligned 1") {
        auto spec = exhaustive_spectrum(inst.h, 1);
        // pick a witness that encodes a singleton (all ground witnesses with
        // an MIS restriction work; scan for one)
        auto vsites = inst.h.vertex_sites();
        for (auto w : spec.levels[0].witnesses) {
            int selected = 0;
            for (int v = 0; v < 4; ++v) selected += (w >> vsites[v]) & 1;
            if (selected != 1) continue;
            StateVector psi;
            psi.n_sites = n;
            psi.amp.assign(std::size_t{1} << n, 0.0);
            psi.amp[w] = 1.0;
            auto s = success_probability(psi, inst.g, inst.emb);
            CHECK(s.mis_probability == doctest::Approx(1.0));
            CHECK(s.mis_aligned_probability == doctest::Approx(1.0));
            return;
        }
        FAIL("no singleton ground witness found");
    }
    SUBCASE("uniform superposition counts MIS-encoding basis states") {
        StateVector psi;
        psi.n_sites = n;
        const std::size_t dim = std::size_t{1} << n;
        psi.amp.assign(dim, std::complex<double>(1.0 / std::sqrt(double(dim)), 0.0));
        auto s = success_probability(psi, inst.g, inst.emb);
        // 4 singleton restrictions out of 16 vertex patterns, dummies free
        CHECK(s.mis_probability == doctest::Approx(4.0 / 16.0));
    }
    SUBCASE("state orthogonal to every witness has success 0") {
        StateVector psi;
        psi.n_sites = n;
        psi.amp.assign(std::size_t{1} << n, 0.0);
        // all-spins-up has all four vertices selected: not independent
        psi.amp[(std::size_t{1} << n) - 1] = 1.0;
        auto s = success_probability(psi, inst.g, inst.emb);
        CHECK(s.mis_probability == 0.0);
    }
}

TEST_CASE("sampling is deterministic and matches |amplitude|^2") {
    StateVector psi;
    psi.n_sites = 2;
    psi.amp = {std::complex<double>(std::sqrt(0.1), 0), std::complex<double>(std::sqrt(0.2), 0),
               std::complex<double>(0, std::sqrt(0.3)), std::complex<double>(std::sqrt(0.4), 0)};

    SUBCASE("basis state is certain") {
        StateVector basis;
        basis.n_sites = 2;
        basis.amp = {0, 0, std::complex<double>(0, 1), 0};
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            CHECK(sample_measurement(basis, seed) == 2);
    }
    SUBCASE("fixed seed, fixed outcome") {
        CHECK(sample_measurement(psi, 42) == sample_measurement(psi, 42));
    }
    SUBCASE("frequencies within 3 sigma over 1e5 samples") {
        std::mt19937_64 rng(7);
        const int N = 100000;
        std::map<std::uint32_t, int> hist;
        for (int i = 0; i < N; ++i) ++hist[sample_measurement(psi, rng)];
        const double probs[4] = {0.1, 0.2, 0.3, 0.4};
        for (int x = 0; x < 4; ++x) {
            double mean = N * probs[x];
            double sigma = std::sqrt(N * probs[x] * (1 - probs[x]));
            CHECK(std::abs(hist[x] - mean) <= 3 * sigma);
        }
    }
}

TEST_CASE("trotterized pulse run converges to the splitting integrator") {
    auto inst = k4_instance(9);
    auto schedule = compile_schedule(inst.h);
    REQUIRE(inst.h.site_count() <= 10);

    auto ref = evolve_adiabatic(inst.hB, inst.h, {3.0, 3.0 / 2048.0, 1});
    double prev_infid = 1.0;
    for (int segments : {8, 16, 32, 64}) {
        auto psi = trotterized_pulse_run(schedule, inst.hB,
                                         {3.0, 3.0 / segments, 1});
        double infid = 1.0 - state_fidelity(psi, ref);
        CHECK(infid < prev_infid + 1e-12);
        prev_infid = infid;
    }
    CHECK(prev_infid < 1e-3);
}

TEST_CASE("replacing the schedule with exact phases changes nothing") {
    // the compiled schedule implements the couplings exactly, so a run that
    // uses exact H_P phases for the s-weighted segment must agree closely;
    // emulate exact phases by an evolve_adiabatic with the same first-order
    // splitting structure via very fine trotterization of the same grid
    auto inst = k4_instance(3);
    auto schedule = compile_schedule(inst.h);
    auto a = trotterized_pulse_run(schedule, inst.hB, {2.0, 0.125, 1});

    // manual first-order reference with exact diagonal phases
    const int n = inst.h.site_count();
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> eP(dim);
    for (std::size_t x = 0; x < dim; ++x)
        eP[x] = static_cast<double>(energy_of(inst.h, {n, static_cast<std::uint32_t>(x)}));
    auto psi = initial_ground_state(n);
    const int segments = 16;
    const double dt = 2.0 / segments;
    for (int i = 0; i < segments; ++i) {
        double s = (i + 0.5) * dt / 2.0;
        // transverse part, exact per-site rotations
        StateVector tmp = psi;
        // reuse the library integrator for one B-only segment: emulate by a
        // zero-coupling Hamiltonian evolve of duration dt with s=0 weight
        // (simpler: direct rotation)
        const double theta = (1.0 - s) * dt;
        const double cth = std::cos(theta);
        const std::complex<double> ms(0.0, -std::sin(theta));
        for (int k = 0; k < n; ++k) {
            const std::size_t bit = std::size_t{1} << k;
            for (std::size_t x = 0; x < dim; ++x) {
                if (x & bit) continue;
                auto a0 = tmp.amp[x], a1 = tmp.amp[x | bit];
                tmp.amp[x] = cth * a0 + ms * a1;
                tmp.amp[x | bit] = ms * a0 + cth * a1;
            }
        }
        for (std::size_t x = 0; x < dim; ++x)
            tmp.amp[x] *= std::exp(std::complex<double>(0, -s * dt * eP[x]));
        psi = tmp;
    }
    CHECK(state_fidelity(a, psi) > 1.0 - 1e-9);
}

TEST_CASE("site limits are enforced") {
    auto inst = k4_instance(9);
    CHECK_THROWS_AS(evolve_adiabatic(inst.hB, inst.h, {1.0, 0.1, 1}, 4), CapacityError);
    CHECK_THROWS_AS(gap_scan(inst.hB, inst.h, {0.5}, 4), CapacityError);
    CHECK_THROWS_AS(initial_ground_state(20), CapacityError);
    CHECK_THROWS_AS(evolve_adiabatic(inst.hB, inst.h, {1.0, -0.1, 1}),
                    std::invalid_argument);
}
