#include "isc/reduction.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace isc {

namespace {

void check_coverage(const Graph& g, int n, const char* what) {
    if (n != g.n)
        throw std::invalid_argument(std::string(what) + ": assignment covers " +
                                    std::to_string(n) + " vertices, graph has " +
                                    std::to_string(g.n));
}

} // namespace

long long objective_L(const Graph& g, const BitAssignment& x) {
    check_coverage(g, x.n, "objective_L");
    return static_cast<long long>(std::popcount(x.bits)) - penalty(g, x);
}

long long penalty(const Graph& g, const BitAssignment& x) {
    check_coverage(g, x.n, "penalty");
    long long p = 0;
    for (auto [u, v] : g.edges)
        if (x.get(u) && x.get(v)) ++p;
    return p;
}

BitAssignment repair_to_independent(const Graph& g, const BitAssignment& x) {
    check_coverage(g, x.n, "repair_to_independent");
    BitAssignment cur = x;
    for (;;) {
        const std::pair<int, int>* violated = nullptr;
        for (const auto& e : g.edges) {
            if (cur.get(e.first) && cur.get(e.second)) {
                violated = &e;
                break;
            }
        }
        if (!violated) return cur;
        auto selected_degree = [&](int v) {
            int d = 0;
            for (int w : g.adjacency[v])
                if (cur.get(w)) ++d;
            return d;
        };
        int a = violated->first, b = violated->second;
        int da = selected_degree(a), db = selected_degree(b);
        int drop = (db > da) ? b : a; // tie goes to the smaller index
        cur.bits &= ~(std::uint64_t{1} << drop);
    }
}

SpinAssignment spins_from_bits(const BitAssignment& x) {
    return SpinAssignment{x.n, x.bits};
}

BitAssignment bits_from_spins(const SpinAssignment& s) {
    return BitAssignment{s.n, s.up};
}

long long energy_E(const Graph& g, const SpinAssignment& s) {
    check_coverage(g, s.n, "energy_E");
    long long e = 0;
    for (int v = 0; v < g.n; ++v) e += s.spin(v);
    for (auto [u, v] : g.edges) e += s.spin(u) * s.spin(v);
    return e;
}

ProblemHamiltonian build_HP(const Graph& g) {
    auto report = validate_cubic_planar(g);
    if (!report.is_cubic)
        throw std::invalid_argument("build_HP requires a cubic graph");
    ProblemHamiltonian hp;
    hp.n = g.n;
    hp.zz_terms = g.edges;
    hp.z_terms.resize(g.n);
    for (int v = 0; v < g.n; ++v) hp.z_terms[v] = v;
    return hp;
}

long long hp_energy(const ProblemHamiltonian& hp, const SpinAssignment& s) {
    if (s.n != hp.n) throw std::invalid_argument("hp_energy: coverage mismatch");
    long long e = 0;
    for (int v : hp.z_terms) e += s.spin(v);
    for (auto [u, v] : hp.zz_terms) e += s.spin(u) * s.spin(v);
    return e;
}

long long mis_from_ground_energy(const Graph& g, long long e_min) {
    if (g.n % 2 != 0)
        throw std::invalid_argument("mis_from_ground_energy: odd vertex count");
    long long num = g.n / 2 - e_min;
    if (num % 4 != 0)
        throw std::invalid_argument(
            "mis_from_ground_energy: (n/2 - e_min) not divisible by 4; "
            "inconsistent inputs");
    return num / 4;
}

long long min_energy_exhaustive(const Graph& g, int limit) {
    if (g.n > limit) throw CapacityError("min_energy_exhaustive: too many vertices");
    long long best = 0;
    bool first = true;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m) {
        long long e = energy_E(g, SpinAssignment{g.n, m});
        if (first || e < best) {
            best = e;
            first = false;
        }
    }
    return best;
}

} // namespace isc
