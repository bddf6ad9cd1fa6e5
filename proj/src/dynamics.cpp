#include "isc/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace isc {

TransverseFieldHamiltonian build_transverse_field(const LatticeHamiltonian& h) {
    TransverseFieldHamiltonian hb;
    hb.sites.reserve(h.sites.size());
    for (const auto& s : h.sites) hb.sites.push_back(s.at);
    return hb;
}

double StateVector::norm2() const {
    double n = 0.0;
    for (const auto& a : amp) n += std::norm(a);
    return n;
}

StateVector initial_ground_state(int sites) {
    if (sites > 14) throw CapacityError("initial_ground_state: more than 14 sites");
    StateVector psi;
    psi.n_sites = sites;
    const std::size_t dim = std::size_t{1} << sites;
    psi.amp.resize(dim);
    const double a = std::pow(2.0, -sites / 2.0);
    for (std::size_t x = 0; x < dim; ++x)
        psi.amp[x] = (std::popcount(x) & 1) ? -a : a;
    return psi;
}

namespace {

// exp(-i theta sum_k sigma_x), applied as exact single-site rotations
void apply_transverse(StateVector& psi, double theta) {
    const double c = std::cos(theta);
    const std::complex<double> ms(0.0, -std::sin(theta));
    const std::size_t dim = psi.amp.size();
    for (int k = 0; k < psi.n_sites; ++k) {
        const std::size_t bit = std::size_t{1} << k;
        for (std::size_t x = 0; x < dim; ++x) {
            if (x & bit) continue;
            auto a0 = psi.amp[x];
            auto a1 = psi.amp[x | bit];
            psi.amp[x] = c * a0 + ms * a1;
            psi.amp[x | bit] = ms * a0 + c * a1;
        }
    }
}

std::vector<long long> diagonal_energies(const LatticeHamiltonian& h) {
    const int n = h.site_count();
    const std::size_t dim = std::size_t{1} << n;
    std::vector<long long> e(dim, 0);
    for (std::size_t x = 0; x < dim; ++x) {
        long long acc = 0;
        for (int i = 0; i < n; ++i)
            acc += h.sites[i].z_field * ((x >> i & 1) ? 1 : -1);
        for (const auto& [b, w] : h.couplings) {
            int si = (x >> b.first & 1) ? 1 : -1;
            int sj = (x >> b.second & 1) ? 1 : -1;
            acc += w * si * sj;
        }
        e[x] = acc;
    }
    return e;
}

void check_finite_norm(const StateVector& psi) {
    double n = psi.norm2();
    if (!std::isfinite(n)) throw std::runtime_error("non-finite amplitudes");
    if (std::abs(n - 1.0) > 1e-9) throw std::runtime_error("norm drift exceeds 1e-9");
}

} // namespace

StateVector evolve_adiabatic(const TransverseFieldHamiltonian& hB,
                             const LatticeHamiltonian& hP, const AdiabaticRunConfig& cfg,
                             int site_limit) {
    const int n = hP.site_count();
    if (n != hB.site_count())
        throw std::invalid_argument("evolve_adiabatic: site sets disagree");
    if (n > site_limit) throw CapacityError("evolve_adiabatic: too many sites");
    if (!(cfg.dt > 0.0) || cfg.dt > cfg.T)
        throw std::invalid_argument("evolve_adiabatic: need 0 < dt <= T");

    auto eP = diagonal_energies(hP);
    StateVector psi = initial_ground_state(n);
    const long long steps = std::llround(cfg.T / cfg.dt);
    const double dt = cfg.T / static_cast<double>(steps);
    for (long long i = 0; i < steps; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * dt / cfg.T;
        apply_transverse(psi, (1.0 - s) * dt / 2.0);
        for (std::size_t x = 0; x < psi.amp.size(); ++x)
            psi.amp[x] *= std::exp(std::complex<double>(0.0, -s * dt * eP[x]));
        apply_transverse(psi, (1.0 - s) * dt / 2.0);
        check_finite_norm(psi);
    }
    return psi;
}

SuccessBreakdown success_probability(const StateVector& state, const Graph& g,
                                     const OrthogonalEmbedding& emb) {
    auto used = emb.used_points();
    if (static_cast<std::size_t>(state.n_sites) != used.size())
        throw std::invalid_argument("success_probability: dimension mismatch");

    std::vector<int> vsite(g.n, -1);
    for (int v = 0; v < g.n; ++v) {
        auto it = std::lower_bound(used.begin(), used.end(), emb.vertex_at[v]);
        vsite[v] = static_cast<int>(it - used.begin());
    }
    auto wires = emb.wires();
    std::vector<std::vector<int>> chains; // site indices Gamma(k), dummies...
    for (const auto& w : wires) {
        std::vector<int> ch;
        ch.push_back(vsite[w.k]);
        for (auto d : w.dummies) {
            auto it = std::lower_bound(used.begin(), used.end(), d);
            ch.push_back(static_cast<int>(it - used.begin()));
        }
        chains.push_back(std::move(ch));
    }

    const int target = mis_oracle(g).cardinality;
    std::vector<bool> is_mis(std::size_t{1} << g.n, false);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m)
        is_mis[m] = std::popcount(m) == target && is_independent(g, m);

    SuccessBreakdown out;
    for (std::size_t x = 0; x < state.amp.size(); ++x) {
        std::uint64_t r = 0;
        for (int v = 0; v < g.n; ++v)
            if (x >> vsite[v] & 1) r |= std::uint64_t{1} << v;
        if (!is_mis[r]) continue;
        double p = std::norm(state.amp[x]);
        out.mis_probability += p;
        bool aligned = true;
        for (const auto& ch : chains)
            for (std::size_t i = 0; i + 1 < ch.size(); ++i)
                if (((x >> ch[i]) & 1) != ((x >> ch[i + 1]) & 1)) aligned = false;
        if (aligned) out.mis_aligned_probability += p;
    }
    return out;
}

std::uint32_t sample_measurement(const StateVector& state, std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double acc = 0.0;
    for (std::size_t x = 0; x < state.amp.size(); ++x) {
        acc += std::norm(state.amp[x]);
        if (u < acc) return static_cast<std::uint32_t>(x);
    }
    return static_cast<std::uint32_t>(state.amp.size() - 1);
}

std::uint32_t sample_measurement(const StateVector& state, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_measurement(state, rng);
}

std::vector<GapPoint> gap_scan(const TransverseFieldHamiltonian& hB,
                               const LatticeHamiltonian& hP,
                               const std::vector<double>& s_grid, int site_limit) {
    const int n = hP.site_count();
    if (n != hB.site_count()) throw std::invalid_argument("gap_scan: site sets disagree");
    if (n > site_limit) throw CapacityError("gap_scan: too many sites for dense solve");

    const std::size_t dim = std::size_t{1} << n;
    auto eP = diagonal_energies(hP);

    std::vector<GapPoint> out;
    for (double s : s_grid) {
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
        for (std::size_t x = 0; x < dim; ++x) {
            H(x, x) = s * static_cast<double>(eP[x]);
            for (int k = 0; k < n; ++k) {
                std::size_t y = x ^ (std::size_t{1} << k);
                if (y > x) H(x, y) = H(y, x) = (1.0 - s);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H,
                                                              Eigen::EigenvaluesOnly);
        GapPoint gp;
        gp.s = s;
        gp.e0 = solver.eigenvalues()(0);
        gp.e1 = solver.eigenvalues()(1);
        double d = gp.e1 - gp.e0;
        gp.gap = (d < 1e-9) ? 0.0 : d;
        out.push_back(gp);
    }
    return out;
}

StateVector trotterized_pulse_run(const PulseSchedule& schedule,
                                  const TransverseFieldHamiltonian& hB,
                                  const AdiabaticRunConfig& cfg, int site_limit) {
    const int n = hB.site_count();
    if (n > site_limit) throw CapacityError("trotterized_pulse_run: too many sites");
    if (!(cfg.dt > 0.0) || cfg.dt > cfg.T)
        throw std::invalid_argument("trotterized_pulse_run: need 0 < dt <= T");

    const std::size_t dim = std::size_t{1} << n;

    // resource energies restricted to the used sites (unit bonds between any
    // grid-adjacent pair; the schedule decouples the rest of the lattice)
    std::vector<std::pair<int, int>> bonds;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int dr = std::abs(hB.sites[i].row - hB.sites[j].row);
            int dc = std::abs(hB.sites[i].col - hB.sites[j].col);
            if (dr + dc == 1) bonds.push_back({i, j});
        }
    std::vector<long long> e_res(dim, 0);
    for (std::size_t x = 0; x < dim; ++x) {
        long long acc = 0;
        for (auto [i, j] : bonds) {
            int si = (x >> i & 1) ? 1 : -1;
            int sj = (x >> j & 1) ? 1 : -1;
            acc += si * sj;
        }
        e_res[x] = acc;
    }
    std::vector<long long> e_fields(dim, 0);
    {
        std::vector<std::pair<int, long long>> fs;
        for (const auto& [p, w] : schedule.epoch.fields) {
            auto it = std::lower_bound(hB.sites.begin(), hB.sites.end(), p);
            if (it != hB.sites.end() && *it == p)
                fs.emplace_back(static_cast<int>(it - hB.sites.begin()), w);
        }
        for (std::size_t x = 0; x < dim; ++x) {
            long long acc = 0;
            for (auto [i, w] : fs) acc += w * ((x >> i & 1) ? 1 : -1);
            e_fields[x] = acc;
        }
    }

    auto steps_flat = schedule.flattened_steps();
    std::vector<std::pair<double, std::uint32_t>> masked_steps;
    for (const auto& [dur, flips] : steps_flat) {
        std::uint32_t mask = 0;
        for (auto p : flips) {
            auto it = std::lower_bound(hB.sites.begin(), hB.sites.end(), p);
            if (it != hB.sites.end() && *it == p)
                mask |= std::uint32_t{1} << (it - hB.sites.begin());
        }
        masked_steps.emplace_back(boost::rational_cast<double>(dur), mask);
    }
    const double epoch_dur = boost::rational_cast<double>(schedule.epoch.duration);

    // plain first-order alternation: a transverse segment, then the compiled
    // schedule scaled so its average-Hamiltonian phase is s*dt
    StateVector psi = initial_ground_state(n);
    const long long segments = std::llround(cfg.T / cfg.dt);
    const double dt = cfg.T / static_cast<double>(segments);
    for (long long i = 0; i < segments; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * dt / cfg.T;
        apply_transverse(psi, (1.0 - s) * dt);
        for (const auto& [dur, mask] : masked_steps) {
            const double tau = dur * s * dt;
            for (std::size_t x = 0; x < dim; ++x)
                psi.amp[x] *=
                    std::exp(std::complex<double>(0.0, -tau * e_res[x ^ mask]));
        }
        for (std::size_t x = 0; x < dim; ++x)
            psi.amp[x] *= std::exp(
                std::complex<double>(0.0, -epoch_dur * s * dt * e_fields[x]));
        check_finite_norm(psi);
    }
    return psi;
}

double state_fidelity(const StateVector& a, const StateVector& b) {
    if (a.amp.size() != b.amp.size())
        throw std::invalid_argument("state_fidelity: dimension mismatch");
    std::complex<double> acc = 0.0;
    for (std::size_t x = 0; x < a.amp.size(); ++x)
        acc += std::conj(a.amp[x]) * b.amp[x];
    return std::abs(acc);
}

} // namespace isc
