#include "isc/embedding.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <nlohmann/json.hpp>

namespace isc {

std::vector<GridPoint> OrthogonalEmbedding::dummy_points() const {
    std::set<GridPoint> pts;
    for (const auto& [e, path] : edge_paths)
        for (std::size_t i = 1; i + 1 < path.size(); ++i) pts.insert(path[i]);
    return {pts.begin(), pts.end()};
}

std::vector<Wire> OrthogonalEmbedding::wires() const {
    std::vector<Wire> ws;
    for (const auto& [e, path] : edge_paths) {
        if (path.size() <= 2) continue;
        Wire w;
        w.k = e.first;
        w.l = e.second;
        w.dummies.assign(path.begin() + 1, path.end() - 1);
        ws.push_back(std::move(w));
    }
    return ws;
}

std::vector<GridPoint> OrthogonalEmbedding::used_points() const {
    std::set<GridPoint> pts(vertex_at.begin(), vertex_at.end());
    for (const auto& [e, path] : edge_paths) pts.insert(path.begin(), path.end());
    return {pts.begin(), pts.end()};
}

namespace {

bool boyer_myrvold_planar(const Graph& g) {
    using BoostGraph =
        boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BoostGraph bg(g.n);
    for (auto [u, v] : g.edges) boost::add_edge(u, v, bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

std::vector<int> bfs_order(const Graph& g) {
    std::vector<int> order;
    std::vector<bool> seen(g.n, false);
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::deque<int> q{s};
        seen[s] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            order.push_back(v);
            for (int w : g.adjacency[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    return order;
}

// Backtracking placement with greedy shortest-path routing, all orderings
// deterministic. The node budget bounds each grid size's search.
class GridSearch {
  public:
    GridSearch(const Graph& g, int rows, int cols, std::uint64_t node_budget)
        : g_(g), rows_(rows), cols_(cols), budget_(node_budget),
          order_(bfs_order(g)), cell_(rows * cols, kFree), pos_(g.n, -1) {}

    bool run() { return place(0); }
    std::uint64_t nodes() const { return nodes_; }

    OrthogonalEmbedding result() const {
        OrthogonalEmbedding emb;
        emb.n = g_.n;
        emb.grid_rows = rows_;
        emb.grid_cols = cols_;
        emb.strategy = "grid-backtracking/1";
        emb.vertex_at.resize(g_.n);
        for (int v = 0; v < g_.n; ++v) emb.vertex_at[v] = point(pos_[v]);
        for (const auto& [e, path] : paths_) {
            std::vector<GridPoint> pts;
            pts.reserve(path.size());
            for (int idx : path) pts.push_back(point(idx));
            if (pts.front() != emb.vertex_at[e.first]) std::reverse(pts.begin(), pts.end());
            emb.edge_paths[e] = std::move(pts);
        }
        return emb;
    }

  private:
    static constexpr int kFree = -1;
    static constexpr int kPath = -2;

    const Graph& g_;
    int rows_, cols_;
    std::uint64_t budget_;
    std::vector<int> order_;
    std::vector<int> cell_; // kFree, kPath, or vertex id
    std::vector<int> pos_;  // vertex -> cell index, -1 if unplaced
    std::map<std::pair<int, int>, std::vector<int>> paths_;
    std::uint64_t nodes_ = 0;

    int idx(int r, int c) const { return r * cols_ + c; }
    GridPoint point(int i) const { return {i / cols_, i % cols_}; }

    template <typename Fn> void for_neighbors(int i, Fn fn) const {
        int r = i / cols_, c = i % cols_;
        if (r > 0) fn(i - cols_);
        if (c > 0) fn(i - 1);
        if (c + 1 < cols_) fn(i + 1);
        if (r + 1 < rows_) fn(i + cols_);
    }

    int free_neighbors(int i) const {
        int k = 0;
        for_neighbors(i, [&](int nb) { k += cell_[nb] == kFree; });
        return k;
    }

    int ports_needed(int v) const {
        int k = 0;
        for (int w : g_.adjacency[v]) {
            auto e = std::minmax(v, w);
            if (!paths_.count({e.first, e.second})) ++k;
        }
        return k;
    }

    bool feasible() const {
        for (int v = 0; v < g_.n; ++v)
            if (pos_[v] >= 0 && free_neighbors(pos_[v]) < ports_needed(v)) return false;
        return true;
    }

    // BFS shortest orthogonal path through free cells; neighbor order
    // (up, left, right, down) fixes the tie-break.
    bool route(int src, int dst, std::vector<int>& path) const {
        std::vector<int> prev(rows_ * cols_, -3);
        prev[src] = -1;
        std::deque<int> q{src};
        while (!q.empty()) {
            int p = q.front();
            q.pop_front();
            if (p == dst) {
                path.clear();
                for (int at = dst; at != -1; at = prev[at]) path.push_back(at);
                std::reverse(path.begin(), path.end());
                return true;
            }
            for_neighbors(p, [&](int nb) {
                if (prev[nb] != -3) return;
                if (nb != dst && cell_[nb] != kFree) return;
                prev[nb] = p;
                q.push_back(nb);
            });
        }
        return false;
    }

    bool route_new_edges(int v, std::vector<std::pair<int, int>>& routed) {
        std::vector<std::pair<int, int>> todo;
        for (int w : g_.adjacency[v])
            if (pos_[w] >= 0) todo.push_back(std::minmax(v, w));
        std::sort(todo.begin(), todo.end());
        for (auto e : todo) {
            int other = (e.first == v) ? e.second : e.first;
            std::vector<int> path;
            if (!route(pos_[v], pos_[other], path)) {
                for (auto r : routed) unroute(r);
                routed.clear();
                return false;
            }
            for (std::size_t i = 1; i + 1 < path.size(); ++i) cell_[path[i]] = kPath;
            paths_[e] = std::move(path);
            routed.push_back(e);
        }
        return true;
    }

    void unroute(std::pair<int, int> e) {
        auto it = paths_.find(e);
        for (std::size_t i = 1; i + 1 < it->second.size(); ++i) cell_[it->second[i]] = kFree;
        paths_.erase(it);
    }

    std::vector<int> candidates(int v, int depth) const {
        std::vector<int> placed_nbrs;
        for (int w : g_.adjacency[v])
            if (pos_[w] >= 0) placed_nbrs.push_back(pos_[w]);
        // sort key: distance to placed neighbors (grid center for the first
        // vertex), then row-major position
        std::vector<std::pair<long long, int>> cand;
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c) {
                int i = idx(r, c);
                if (cell_[i] != kFree) continue;
                long long key;
                if (depth == 0) {
                    if (r > (rows_ - 1) / 2 || c > (cols_ - 1) / 2) continue; // symmetry cut
                    key = std::abs(2 * r - (rows_ - 1)) + std::abs(2 * c - (cols_ - 1));
                } else {
                    key = 0;
                    for (int p : placed_nbrs)
                        key += std::abs(p / cols_ - r) + std::abs(p % cols_ - c);
                }
                cand.emplace_back(key * 10000 + i, i);
            }
        }
        std::sort(cand.begin(), cand.end());
        std::vector<int> out;
        out.reserve(cand.size());
        for (auto& [k, i] : cand) out.push_back(i);
        return out;
    }

    bool place(int depth) {
        if (nodes_ > budget_) return false;
        if (depth == g_.n) return true;
        int v = order_[depth];
        for (int cell : candidates(v, depth)) {
            if (++nodes_ > budget_) return false;
            pos_[v] = cell;
            cell_[cell] = v;
            std::vector<std::pair<int, int>> routed;
            if (route_new_edges(v, routed)) {
                if (feasible() && place(depth + 1)) return true;
                for (auto e : routed) unroute(e);
            }
            cell_[cell] = kFree;
            pos_[v] = -1;
        }
        return false;
    }
};

} // namespace

EmbedResult embed(const Graph& g, std::optional<GridBudget> budget) {
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) > 3)
            throw std::invalid_argument("embed requires maximum degree <= 3");

    GridBudget b = budget.value_or(GridBudget{g.n, g.n});
    EmbedResult res;

    if (!boyer_myrvold_planar(g)) {
        res.status = EmbedStatus::NonPlanar;
        return res;
    }

    bool needs_interior = false; // degree-3 vertices cannot sit on a 1-wide grid
    for (int v = 0; v < g.n; ++v) needs_interior |= g.degree(v) >= 3;

    // grid sizes in increasing area, squarest first
    std::vector<std::tuple<int, int, int, int>> sizes;
    for (int r = 1; r <= b.rows; ++r)
        for (int c = 1; c <= b.cols; ++c) {
            if (r * c < g.n) continue;
            if (needs_interior && std::min(r, c) < 2) continue;
            sizes.emplace_back(r * c, std::abs(r - c), r, c);
        }
    std::sort(sizes.begin(), sizes.end());

    constexpr std::uint64_t kNodeBudgetPerSize = 300000;
    for (auto [area, skew, r, c] : sizes) {
        GridSearch search(g, r, c, kNodeBudgetPerSize);
        bool ok = search.run();
        res.nodes_explored += search.nodes();
        if (ok) {
            res.status = EmbedStatus::Ok;
            res.embedding = search.result();
            return res;
        }
    }
    res.status = EmbedStatus::BudgetExceeded;
    return res;
}

EmbeddingReport validate_embedding(const Graph& g, const OrthogonalEmbedding& emb) {
    EmbeddingReport rep;
    auto violate = [&](std::string code, std::string msg, GridPoint at) {
        rep.violations.push_back({std::move(code), std::move(msg), at});
    };
    auto in_bounds = [&](GridPoint p) {
        return p.row >= 0 && p.row < emb.grid_rows && p.col >= 0 && p.col < emb.grid_cols;
    };

    if (static_cast<int>(emb.vertex_at.size()) != g.n) {
        violate("VertexCountMismatch", "embedding covers wrong vertex count", {0, 0});
        return rep;
    }

    std::map<GridPoint, std::string> owner;
    for (int v = 0; v < g.n; ++v) {
        GridPoint p = emb.vertex_at[v];
        if (!in_bounds(p)) violate("OutOfBounds", "vertex " + std::to_string(v), p);
        auto [it, fresh] = owner.emplace(p, "vertex " + std::to_string(v));
        if (!fresh)
            violate("VertexCollision",
                    "vertex " + std::to_string(v) + " collides with " + it->second, p);
    }

    std::set<std::pair<int, int>> edge_set(g.edges.begin(), g.edges.end());
    for (const auto& [e, path] : emb.edge_paths) {
        std::string ename = std::to_string(e.first) + "-" + std::to_string(e.second);
        if (!edge_set.count(e)) {
            violate("UnknownEdge", "path for non-edge " + ename, path.empty() ? GridPoint{0, 0} : path.front());
            continue;
        }
        if (path.size() < 2) {
            violate("PathTooShort", "edge " + ename, path.empty() ? GridPoint{0, 0} : path.front());
            continue;
        }
        if (path.front() != emb.vertex_at[e.first] || path.back() != emb.vertex_at[e.second])
            violate("PathEndpointMismatch", "edge " + ename, path.front());
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            int dr = std::abs(path[i + 1].row - path[i].row);
            int dc = std::abs(path[i + 1].col - path[i].col);
            if (dr + dc != 1)
                violate("NonOrthogonalStep", "edge " + ename, path[i + 1]);
        }
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            GridPoint p = path[i];
            if (!in_bounds(p)) violate("OutOfBounds", "edge " + ename, p);
            auto [it, fresh] = owner.emplace(p, "path " + ename);
            if (!fresh)
                violate("PathOverlap", "edge " + ename + " shares point with " + it->second, p);
        }
    }
    for (auto e : g.edges)
        if (!emb.edge_paths.count(e))
            violate("MissingEdgePath",
                    "edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                        " has no path",
                    {0, 0});
    return rep;
}

namespace {

nlohmann::ordered_json point_json(GridPoint p) {
    return nlohmann::ordered_json::array({p.row, p.col});
}

GridPoint point_from(const nlohmann::json& j) {
    return GridPoint{j.at(0).get<int>(), j.at(1).get<int>()};
}

} // namespace

std::string embedding_to_json(const OrthogonalEmbedding& emb) {
    nlohmann::ordered_json j;
    j["format"] = "isc-embedding/1";
    j["n"] = emb.n;
    j["grid_rows"] = emb.grid_rows;
    j["grid_cols"] = emb.grid_cols;
    j["strategy"] = emb.strategy;
    auto verts = nlohmann::ordered_json::object();
    for (int v = 0; v < emb.n; ++v) verts[std::to_string(v)] = point_json(emb.vertex_at[v]);
    j["vertices"] = std::move(verts);
    auto paths = nlohmann::ordered_json::object();
    for (const auto& [e, path] : emb.edge_paths) {
        auto arr = nlohmann::ordered_json::array();
        for (auto p : path) arr.push_back(point_json(p));
        paths[std::to_string(e.first) + "-" + std::to_string(e.second)] = std::move(arr);
    }
    j["paths"] = std::move(paths);
    return j.dump(2) + "\n";
}

OrthogonalEmbedding embedding_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    OrthogonalEmbedding emb;
    emb.n = j.at("n").get<int>();
    emb.grid_rows = j.at("grid_rows").get<int>();
    emb.grid_cols = j.at("grid_cols").get<int>();
    emb.strategy = j.at("strategy").get<std::string>();
    emb.vertex_at.resize(emb.n);
    for (auto& [key, val] : j.at("vertices").items())
        emb.vertex_at.at(std::stoi(key)) = point_from(val);
    for (auto& [key, val] : j.at("paths").items()) {
        auto dash = key.find('-');
        int k = std::stoi(key.substr(0, dash));
        int l = std::stoi(key.substr(dash + 1));
        std::vector<GridPoint> path;
        for (auto& p : val) path.push_back(point_from(p));
        emb.edge_paths[{k, l}] = std::move(path);
    }
    return emb;
}

} // namespace isc
