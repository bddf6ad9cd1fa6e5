#include "isc/lattice.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace isc {

int LatticeHamiltonian::site_index(GridPoint p) const {
    auto it = std::lower_bound(sites.begin(), sites.end(), p,
                               [](const LatticeSite& s, GridPoint q) { return s.at < q; });
    if (it == sites.end() || !(it->at == p)) return -1;
    return static_cast<int>(it - sites.begin());
}

long long LatticeHamiltonian::ferro_bond_count() const {
    long long f = 0;
    for (const auto& [e, w] : couplings)
        if (w < 0) ++f;
    return f;
}

long long LatticeHamiltonian::coupling_at(GridPoint a, GridPoint b) const {
    int i = site_index(a), j = site_index(b);
    if (i < 0 || j < 0) return 0;
    if (i > j) std::swap(i, j);
    auto it = couplings.find({i, j});
    return it == couplings.end() ? 0 : it->second;
}

std::vector<int> LatticeHamiltonian::vertex_sites() const {
    int n = 0;
    for (const auto& s : sites) n = std::max(n, s.vertex + 1);
    std::vector<int> vs(n, -1);
    for (int i = 0; i < site_count(); ++i)
        if (!sites[i].is_dummy()) vs[sites[i].vertex] = i;
    return vs;
}

long long Spectrum::eigen_gap() const {
    if (levels.empty()) return 0;
    if (levels[0].degeneracy > 1) return 0;
    if (levels.size() < 2) return 0;
    return levels[1].energy - levels[0].energy;
}

namespace {

bool grid_adjacent(GridPoint a, GridPoint b) {
    return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1;
}

} // namespace

LatticeHamiltonian lattice_from_parts(int grid_rows, int grid_cols, long long c,
                                      std::vector<LatticeSite> sites,
                                      std::map<std::pair<int, int>, long long> couplings,
                                      std::vector<Wire> wires) {
    if (c < 1) throw std::invalid_argument("coupling strength c must be >= 1");
    LatticeHamiltonian h;
    h.grid_rows = grid_rows;
    h.grid_cols = grid_cols;
    h.c = c;
    std::sort(sites.begin(), sites.end(),
              [](const LatticeSite& a, const LatticeSite& b) { return a.at < b.at; });
    for (std::size_t i = 0; i + 1 < sites.size(); ++i)
        if (sites[i].at == sites[i + 1].at)
            throw std::invalid_argument("duplicate lattice site");
    h.sites = std::move(sites);
    h.couplings = std::move(couplings);
    h.wires = std::move(wires);

    for (const auto& s : h.sites) {
        if (s.at.row < 0 || s.at.row >= grid_rows || s.at.col < 0 || s.at.col >= grid_cols)
            throw std::invalid_argument("site outside grid");
        if (s.is_dummy() && s.z_field != 0)
            throw std::invalid_argument("dummy site with nonzero z-field");
        if (!s.is_dummy() && s.z_field != 1)
            throw std::invalid_argument("real-vertex site must have z-field +1");
    }
    std::set<std::pair<int, int>> wire_ferro, wire_terminal;
    auto vsites = h.vertex_sites();
    for (const auto& w : h.wires) {
        std::vector<int> chain;
        chain.push_back(vsites.at(w.k));
        for (auto d : w.dummies) {
            int i = h.site_index(d);
            if (i < 0 || !h.sites[i].is_dummy())
                throw std::invalid_argument("wire dummy is not a dummy site");
            chain.push_back(i);
        }
        chain.push_back(vsites.at(w.l));
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            if (!grid_adjacent(h.sites[chain[i]].at, h.sites[chain[i + 1]].at))
                throw std::invalid_argument("wire chain not grid-contiguous");
            auto key = std::minmax(chain[i], chain[i + 1]);
            if (i + 2 < chain.size())
                wire_ferro.insert({key.first, key.second});
            else
                wire_terminal.insert({key.first, key.second});
        }
    }
    for (const auto& [e, w] : h.couplings) {
        const auto& a = h.sites.at(e.first);
        const auto& b = h.sites.at(e.second);
        if (!grid_adjacent(a.at, b.at))
            throw std::invalid_argument("coupling joins non-adjacent sites");
        if (w == -c) {
            if (!wire_ferro.count(e))
                throw std::invalid_argument("ferromagnetic bond outside any wire chain");
        } else if (w == 1) {
            bool terminal = wire_terminal.count(e) != 0;
            bool real_pair = !a.is_dummy() && !b.is_dummy();
            if (!terminal && !real_pair)
                throw std::invalid_argument("antiferromagnetic bond neither terminal nor real-real");
        } else {
            throw std::invalid_argument("coupling weight must be +1 or -c");
        }
    }
    for (auto e : wire_ferro)
        if (!h.couplings.count(e) || h.couplings.at(e) != -c)
            throw std::invalid_argument("wire chain bond missing or wrong weight");
    for (auto e : wire_terminal)
        if (!h.couplings.count(e) || h.couplings.at(e) != 1)
            throw std::invalid_argument("wire terminal bond missing or wrong weight");
    return h;
}

LatticeHamiltonian build_lattice_hamiltonian(const OrthogonalEmbedding& emb, long long c) {
    if (c < 1) throw std::invalid_argument("coupling strength c must be >= 1");
    {
        // structural self-check against the graph implied by the path keys
        std::vector<std::pair<int, int>> edges;
        for (const auto& [e, p] : emb.edge_paths) edges.push_back(e);
        Graph implied = make_graph(emb.n, edges);
        auto rep = validate_embedding(implied, emb);
        if (!rep.ok())
            throw std::invalid_argument("invalid embedding: " + rep.violations.front().code);
    }

    std::map<GridPoint, LatticeSite> site_map;
    for (int v = 0; v < emb.n; ++v)
        site_map[emb.vertex_at[v]] = LatticeSite{emb.vertex_at[v], v, 1};
    for (const auto& [e, path] : emb.edge_paths)
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
            site_map.emplace(path[i], LatticeSite{path[i], -1, 0});

    std::vector<LatticeSite> sites;
    sites.reserve(site_map.size());
    for (auto& [p, s] : site_map) sites.push_back(s);

    LatticeHamiltonian h;
    h.grid_rows = emb.grid_rows;
    h.grid_cols = emb.grid_cols;
    h.c = c;
    h.sites = std::move(sites);

    auto index_of = [&](GridPoint p) {
        int i = h.site_index(p);
        if (i < 0) throw std::logic_error("path point missing from site set");
        return i;
    };
    auto add_coupling = [&](GridPoint a, GridPoint b, long long w) {
        int ia = index_of(a), ib = index_of(b);
        if (ia > ib) std::swap(ia, ib);
        auto [it, fresh] = h.couplings.emplace(std::pair<int, int>(ia, ib), w);
        if (!fresh) throw std::logic_error("duplicate lattice coupling");
    };

    for (const auto& [e, path] : emb.edge_paths) {
        if (path.size() == 2) {
            add_coupling(path[0], path[1], +1);
            continue;
        }
        for (std::size_t i = 0; i + 2 < path.size(); ++i)
            add_coupling(path[i], path[i + 1], -c);
        add_coupling(path[path.size() - 2], path.back(), +1);
    }
    h.wires = emb.wires();
    return h;
}

long long energy_of(const LatticeHamiltonian& h, const SpinConfiguration& s) {
    if (s.n_sites != h.site_count())
        throw std::invalid_argument("energy_of: configuration covers wrong site count");
    long long e = 0;
    for (int i = 0; i < h.site_count(); ++i) e += h.sites[i].z_field * s.spin(i);
    for (const auto& [b, w] : h.couplings) e += w * s.spin(b.first) * s.spin(b.second);
    return e;
}

namespace {

// streaming tracker for the two lowest distinct values
struct TwoLowest {
    long long e0 = 0, e1 = 0;
    bool has0 = false, has1 = false;
    void feed(long long e) {
        if (!has0) {
            e0 = e;
            has0 = true;
            return;
        }
        if (e == e0) return;
        if (e < e0) {
            e1 = e0;
            has1 = true;
            e0 = e;
            return;
        }
        if (!has1 || e < e1) {
            e1 = e;
            has1 = true;
        }
    }
};

struct GraySweep {
    // per-site neighbor lists and fields for O(deg) energy updates
    int n;
    std::vector<std::vector<std::pair<int, long long>>> nbrs;
    std::vector<long long> field;
    long long e_all_down = 0;

    explicit GraySweep(const LatticeHamiltonian& h) : n(h.site_count()), nbrs(n), field(n) {
        for (int i = 0; i < n; ++i) field[i] = h.sites[i].z_field;
        for (const auto& [b, w] : h.couplings) {
            nbrs[b.first].emplace_back(b.second, w);
            nbrs[b.second].emplace_back(b.first, w);
            e_all_down += w; // (-1)*(-1) = +1
        }
        for (int i = 0; i < n; ++i) e_all_down -= field[i];
    }

    // Visits all 2^n configurations in Gray-code order.
    template <typename Fn> void sweep(Fn visit) const {
        std::vector<int> spin(n, -1);
        long long e = e_all_down;
        std::uint32_t mask = 0;
        visit(mask, e);
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t i = 1; i < total; ++i) {
            int k = std::countr_zero(i);
            long long local = field[k];
            for (auto [j, w] : nbrs[k]) local += w * spin[j];
            e += -2 * spin[k] * local;
            spin[k] = -spin[k];
            mask ^= (std::uint32_t{1} << k);
            visit(mask, e);
        }
    }
};

} // namespace

Spectrum exhaustive_spectrum(const LatticeHamiltonian& h, int k_levels, int site_limit,
                             int witness_cap) {
    int n = h.site_count();
    if (n > site_limit)
        throw CapacityError("exhaustive_spectrum: " + std::to_string(n) +
                            " sites exceed limit " + std::to_string(site_limit));
    long long bound = 0;
    for (const auto& [b, w] : h.couplings) bound += std::abs(w);
    for (const auto& s : h.sites) bound += std::abs(s.z_field);

    std::vector<std::uint64_t> count(2 * bound + 1, 0);
    std::vector<std::vector<std::uint32_t>> wit(2 * bound + 1);

    GraySweep sweep(h);
    sweep.sweep([&](std::uint32_t mask, long long e) {
        std::size_t off = static_cast<std::size_t>(e + bound);
        ++count[off];
        if (static_cast<int>(wit[off].size()) < witness_cap) wit[off].push_back(mask);
    });

    Spectrum spec;
    spec.n_sites = n;
    for (long long e = -bound; e <= bound && static_cast<int>(spec.levels.size()) < k_levels;
         ++e) {
        std::size_t off = static_cast<std::size_t>(e + bound);
        if (count[off] == 0) continue;
        SpectrumLevel lvl;
        lvl.energy = e;
        lvl.degeneracy = count[off];
        lvl.witnesses = wit[off];
        std::sort(lvl.witnesses.begin(), lvl.witnesses.end());
        spec.levels.push_back(std::move(lvl));
    }
    return spec;
}

int wire_mismatch_count(const LatticeHamiltonian& h, const SpinConfiguration& s,
                        const Wire& wire) {
    const Wire* found = nullptr;
    for (const auto& w : h.wires)
        if (w.k == wire.k && w.l == wire.l && w.dummies == wire.dummies) found = &w;
    if (!found) throw std::invalid_argument("wire_mismatch_count: unknown wire");
    if (s.n_sites != h.site_count())
        throw std::invalid_argument("wire_mismatch_count: coverage mismatch");

    auto vsites = h.vertex_sites();
    int prev = vsites.at(found->k);
    int mismatches = 0;
    for (auto d : found->dummies) {
        int i = h.site_index(d);
        if (s.spin(prev) != s.spin(i)) ++mismatches;
        prev = i;
    }
    return mismatches;
}

CorrespondenceReport check_correspondence(const Graph& g, const ProblemHamiltonian& hp,
                                          const LatticeHamiltonian& h, int site_limit) {
    if (h.site_count() > site_limit)
        throw CapacityError("check_correspondence: lattice too large to enumerate");
    if (g.n > 24) throw CapacityError("check_correspondence: graph too large to enumerate");

    CorrespondenceReport rep;

    // problem-Hamiltonian spectrum over all graph spin assignments
    TwoLowest gl;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m)
        gl.feed(hp_energy(hp, SpinAssignment{g.n, m}));
    std::set<std::uint64_t> hp_ground, hp_first;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m) {
        long long e = hp_energy(hp, SpinAssignment{g.n, m});
        if (e == gl.e0) hp_ground.insert(m);
        else if (gl.has1 && e == gl.e1) hp_first.insert(m);
    }
    long long e0g = gl.e0, e1g = gl.e1;
    bool have1 = gl.has1;

    // lattice spectrum: two lowest levels with all witnesses
    GraySweep sweep(h);
    TwoLowest ll;
    sweep.sweep([&](std::uint32_t, long long e) { ll.feed(e); });
    long long e0 = ll.e0, e1 = ll.e1;
    bool l1 = ll.has1;
    std::vector<std::uint32_t> ground, first;
    sweep.sweep([&](std::uint32_t mask, long long e) {
        if (e == e0) ground.push_back(mask);
        else if (l1 && e == e1) first.push_back(mask);
    });

    rep.hp_ground_energy = e0g;
    rep.lattice_ground_energy = e0;
    rep.hp_ground_count = hp_ground.size();
    rep.lattice_ground_count = ground.size();

    auto vsites = h.vertex_sites();
    auto restrict_mask = [&](std::uint32_t cfg) {
        std::uint64_t r = 0;
        for (int v = 0; v < g.n; ++v)
            if (cfg >> vsites[v] & 1) r |= std::uint64_t{1} << v;
        return r;
    };
    auto all_aligned = [&](std::uint32_t cfg) {
        SpinConfiguration s{h.site_count(), cfg};
        for (const auto& w : h.wires)
            if (wire_mismatch_count(h, s, w) != 0) return false;
        return true;
    };
    auto level_checks = [&](const std::vector<std::uint32_t>& configs,
                            const std::set<std::uint64_t>& hp_level, bool& maps, bool& bij,
                            bool& aligned) {
        maps = true;
        aligned = true;
        std::set<std::uint64_t> images;
        for (auto cfg : configs) {
            std::uint64_t r = restrict_mask(cfg);
            if (!hp_level.count(r)) maps = false;
            if (!all_aligned(cfg)) aligned = false;
            images.insert(r);
        }
        bij = images.size() == configs.size() && images == hp_level;
    };

    level_checks(ground, hp_ground, rep.restriction_maps_to_ground, rep.ground_bijection,
                 rep.ground_wires_aligned);

    long long F = h.ferro_bond_count();
    rep.energy_offset_exact = (e0 == e0g - h.c * F);

    if (h.c == 9) {
        rep.first_excited_checked = true;
        bool maps = false, bij = false, aligned = false;
        if (l1 && have1) {
            level_checks(first, hp_first, maps, bij, aligned);
            rep.first_excited_ok = maps && bij && aligned && (e1 == e1g - h.c * F);
        }
        if (!rep.first_excited_ok)
            rep.notes.push_back("first-excited correspondence failed");
    }

    if (!rep.ground_wires_aligned)
        rep.notes.push_back("some lattice ground state has a wire mismatch");
    if (!rep.energy_offset_exact)
        rep.notes.push_back("lattice ground energy != E_min - c*F");
    return rep;
}

GapReport gap_upper_bound_check(const Graph& g, const ProblemHamiltonian& hp, int limit) {
    if (g.n > limit) throw CapacityError("gap_upper_bound_check: graph too large");
    GapReport rep;
    TwoLowest tl;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m)
        tl.feed(hp_energy(hp, SpinAssignment{g.n, m}));
    rep.e0 = tl.e0;
    rep.e1 = tl.e1;
    rep.has_excited = tl.has1;
    rep.gap = tl.has1 ? rep.e1 - rep.e0 : 0;
    rep.gap_le_8 = rep.gap <= 8;

    rep.flip_bound_ok = true;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m) {
        if (hp_energy(hp, SpinAssignment{g.n, m}) != rep.e0) continue;
        for (int v = 0; v < g.n; ++v) {
            long long e2 = hp_energy(hp, SpinAssignment{g.n, m ^ (std::uint64_t{1} << v)});
            long long d = std::abs(e2 - rep.e0);
            rep.max_flip_delta = std::max(rep.max_flip_delta, d);
            if (d > 8) rep.flip_bound_ok = false;
        }
    }
    return rep;
}

namespace {

nlohmann::ordered_json pt(GridPoint p) { return nlohmann::ordered_json::array({p.row, p.col}); }
GridPoint unpt(const nlohmann::json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

} // namespace

std::string lattice_to_json(const LatticeHamiltonian& h) {
    nlohmann::ordered_json j;
    j["format"] = "isc-lattice-hamiltonian/1";
    j["grid_rows"] = h.grid_rows;
    j["grid_cols"] = h.grid_cols;
    j["c"] = h.c;
    auto sites = nlohmann::ordered_json::array();
    for (const auto& s : h.sites) {
        nlohmann::ordered_json js;
        js["at"] = pt(s.at);
        js["role"] = s.is_dummy() ? "dummy" : "vertex";
        if (!s.is_dummy()) js["vertex"] = s.vertex;
        js["z_field"] = s.z_field;
        sites.push_back(std::move(js));
    }
    j["sites"] = std::move(sites);
    auto coup = nlohmann::ordered_json::array();
    for (const auto& [e, w] : h.couplings) {
        nlohmann::ordered_json jc;
        jc["sites"] = nlohmann::ordered_json::array(
            {pt(h.sites[e.first].at), pt(h.sites[e.second].at)});
        jc["weight"] = w;
        coup.push_back(std::move(jc));
    }
    j["couplings"] = std::move(coup);
    auto wires = nlohmann::ordered_json::array();
    for (const auto& w : h.wires) {
        nlohmann::ordered_json jw;
        jw["edge"] = nlohmann::ordered_json::array({w.k, w.l});
        auto ds = nlohmann::ordered_json::array();
        for (auto d : w.dummies) ds.push_back(pt(d));
        jw["dummies"] = std::move(ds);
        wires.push_back(std::move(jw));
    }
    j["wires"] = std::move(wires);
    return j.dump(2) + "\n";
}

LatticeHamiltonian lattice_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<LatticeSite> sites;
    for (const auto& js : j.at("sites")) {
        LatticeSite s;
        s.at = unpt(js.at("at"));
        s.vertex = js.at("role") == "vertex" ? js.at("vertex").get<int>() : -1;
        s.z_field = js.at("z_field").get<long long>();
        sites.push_back(s);
    }
    LatticeHamiltonian tmp;
    tmp.sites = sites;
    std::sort(tmp.sites.begin(), tmp.sites.end(),
              [](const LatticeSite& a, const LatticeSite& b) { return a.at < b.at; });
    std::map<std::pair<int, int>, long long> couplings;
    for (const auto& jc : j.at("couplings")) {
        int a = tmp.site_index(unpt(jc.at("sites").at(0)));
        int b = tmp.site_index(unpt(jc.at("sites").at(1)));
        if (a < 0 || b < 0) throw std::invalid_argument("coupling references unknown site");
        auto key = std::minmax(a, b);
        couplings[{key.first, key.second}] = jc.at("weight").get<long long>();
    }
    std::vector<Wire> wires;
    for (const auto& jw : j.at("wires")) {
        Wire w;
        w.k = jw.at("edge").at(0).get<int>();
        w.l = jw.at("edge").at(1).get<int>();
        for (const auto& d : jw.at("dummies")) w.dummies.push_back(unpt(d));
        wires.push_back(std::move(w));
    }
    return lattice_from_parts(j.at("grid_rows").get<int>(), j.at("grid_cols").get<int>(),
                              j.at("c").get<long long>(), std::move(sites),
                              std::move(couplings), std::move(wires));
}

std::string problem_hamiltonian_to_json(const ProblemHamiltonian& hp) {
    nlohmann::ordered_json j;
    j["format"] = "isc-problem-hamiltonian/1";
    j["n"] = hp.n;
    auto sites = nlohmann::ordered_json::array();
    for (int v : hp.z_terms) {
        nlohmann::ordered_json js;
        js["vertex"] = v;
        js["z_field"] = 1;
        sites.push_back(std::move(js));
    }
    j["sites"] = std::move(sites);
    auto coup = nlohmann::ordered_json::array();
    for (auto [u, v] : hp.zz_terms) {
        nlohmann::ordered_json jc;
        jc["sites"] = nlohmann::ordered_json::array({u, v});
        jc["weight"] = 1;
        coup.push_back(std::move(jc));
    }
    j["couplings"] = std::move(coup);
    return j.dump(2) + "\n";
}

} // namespace isc
