#include "geocert/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace geocert {

namespace {

struct CellKey {
    long long c[4];
    bool operator==(const CellKey& o) const {
        return c[0] == o.c[0] && c[1] == o.c[1] && c[2] == o.c[2] && c[3] == o.c[3];
    }
};

struct CellKeyHash {
    size_t operator()(const CellKey& k) const {
        uint64_t h = 0x9e3779b97f4a7c15ull;
        for (int d = 0; d < 4; ++d) {
            uint64_t z = static_cast<uint64_t>(k.c[d]) + 0x9e3779b97f4a7c15ull;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            h ^= (z ^ (z >> 31)) + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }
};

void check_distinct(const mat_t& points) {
    const int n = static_cast<int>(points.rows());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        for (int d = 0; d < points.cols(); ++d) {
            if (points(a, d) != points(b, d)) return points(a, d) < points(b, d);
        }
        return false;
    });
    for (int i = 0; i + 1 < n; ++i) {
        if ((points.row(order[i]) - points.row(order[i + 1])).norm() == 0.0)
            throw std::invalid_argument("duplicate points are not allowed");
    }
}

EpsilonGraph finalize(const mat_t& points, double epsilon,
                      std::vector<std::vector<index_t>>&& adj) {
    EpsilonGraph g;
    g.points = points;
    g.epsilon = epsilon;
    g.n = static_cast<int>(points.rows());
    g.adj = std::move(adj);
    g.degrees.resize(g.n);
    g.volume = 0;
    for (int i = 0; i < g.n; ++i) {
        std::sort(g.adj[i].begin(), g.adj[i].end());
        g.degrees[i] = static_cast<int>(g.adj[i].size());
        g.volume += g.degrees[i];
    }
    return g;
}

}  // namespace

bool EpsilonGraph::has_edge(index_t i, index_t j) const {
    const auto& a = adj[i];
    return std::binary_search(a.begin(), a.end(), j);
}

EpsilonGraph build_epsilon_graph_brute(const mat_t& points, double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    check_distinct(points);
    const int n = static_cast<int>(points.rows());
    std::vector<std::vector<index_t>> adj(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if ((points.row(i) - points.row(j)).norm() <= epsilon) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }
    return finalize(points, epsilon, std::move(adj));
}

EpsilonGraph build_epsilon_graph(const mat_t& points, double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    check_distinct(points);
    const int n = static_cast<int>(points.rows());
    const int dim = static_cast<int>(points.cols());
    if (dim > 4) throw std::invalid_argument("ambient dimension above 4 unsupported");

    std::unordered_map<CellKey, std::vector<index_t>, CellKeyHash> cells;
    cells.reserve(static_cast<size_t>(n) * 2);
    auto cell_of = [&](int i) {
        CellKey k{{0, 0, 0, 0}};
        for (int d = 0; d < dim; ++d)
            k.c[d] = static_cast<long long>(std::floor(points(i, d) / epsilon));
        return k;
    };
    for (int i = 0; i < n; ++i) cells[cell_of(i)].push_back(i);

    std::vector<std::vector<index_t>> adj(n);
    const double eps2 = epsilon * epsilon;
    std::vector<long long> off(dim, -1);
    for (int i = 0; i < n; ++i) {
        const CellKey base = cell_of(i);
        std::fill(off.begin(), off.end(), -1);
        while (true) {
            CellKey k = base;
            for (int d = 0; d < dim; ++d) k.c[d] += off[d];
            auto it = cells.find(k);
            if (it != cells.end()) {
                for (index_t j : it->second) {
                    if (j <= i) continue;
                    if ((points.row(i) - points.row(j)).squaredNorm() <= eps2) {
                        adj[i].push_back(j);
                        adj[j].push_back(i);
                    }
                }
            }
            int d = 0;
            for (; d < dim; ++d) {
                if (off[d] < 1) {
                    ++off[d];
                    break;
                }
                off[d] = -1;
            }
            if (d == dim) break;
        }
    }
    return finalize(points, epsilon, std::move(adj));
}

std::vector<int> sp_distances_from(const EpsilonGraph& g, index_t source) {
    if (source < 0 || source >= g.n) throw std::invalid_argument("invalid vertex id");
    std::vector<int> dist(g.n, -1);
    std::queue<index_t> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        const index_t u = q.front();
        q.pop();
        for (index_t v : g.adj[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

std::vector<double> ge_distances_from(const EpsilonGraph& g, index_t source) {
    if (source < 0 || source >= g.n) throw std::invalid_argument("invalid vertex id");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.n, inf);
    using Item = std::pair<double, index_t>;  // tie break by vertex index
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (index_t v : g.adj[u]) {
            const double w = (g.points.row(u) - g.points.row(v)).norm();
            if (dist[u] + w < dist[v]) {
                dist[v] = dist[u] + w;
                heap.push({dist[v], v});
            }
        }
    }
    return dist;
}

double euclidean_graph_distance(const EpsilonGraph& g, index_t x, index_t y) {
    const auto dist = ge_distances_from(g, x);
    if (y < 0 || y >= g.n) throw std::invalid_argument("invalid vertex id");
    if (std::isinf(dist[y])) throw std::runtime_error("vertices are not connected");
    return dist[y];
}

std::vector<index_t> ball_sp(const EpsilonGraph& g, index_t center, double r, Openness openness) {
    if (r < 0.0) throw std::invalid_argument("ball radius must be nonnegative");
    const auto dist = sp_distances_from(g, center);
    std::vector<index_t> out;
    for (int v = 0; v < g.n; ++v) {
        if (dist[v] < 0) continue;
        const bool in = (openness == Openness::open) ? (dist[v] < r) : (dist[v] <= r);
        if (in) out.push_back(v);
    }
    return out;
}

double measure_of(const EpsilonGraph& g, MeasureKind kind, const std::vector<index_t>& vertices) {
    if (kind == MeasureKind::empirical)
        return static_cast<double>(vertices.size()) / static_cast<double>(g.n);
    long long s = 0;
    for (index_t v : vertices) s += g.degrees[v];
    if (g.volume == 0) throw std::runtime_error("degree volume measure undefined on edgeless graph");
    return static_cast<double>(s) / static_cast<double>(g.volume);
}

std::vector<int> connected_components(const EpsilonGraph& g) {
    std::vector<int> label(g.n, -1);
    int next = 0;
    for (int s = 0; s < g.n; ++s) {
        if (label[s] >= 0) continue;
        std::queue<index_t> q;
        label[s] = next;
        q.push(s);
        while (!q.empty()) {
            const index_t u = q.front();
            q.pop();
            for (index_t v : g.adj[u]) {
                if (label[v] < 0) {
                    label[v] = next;
                    q.push(v);
                }
            }
        }
        ++next;
    }
    return label;
}

bool is_connected(const EpsilonGraph& g) {
    if (g.n == 0) return true;
    const auto d = sp_distances_from(g, 0);
    return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

void write_edge_list(const EpsilonGraph& g, std::ostream& out) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%d %.17g\n", g.n, g.epsilon);
    out << buf;
    for (int i = 0; i < g.n; ++i) {
        for (index_t j : g.adj[i]) {
            if (j > i) out << i << ' ' << j << '\n';
        }
    }
}

void write_measure_csv(const EpsilonGraph& g, MeasureKind kind, std::ostream& out) {
    out << "vertex,weight\n";
    char buf[64];
    for (int i = 0; i < g.n; ++i) {
        const double w = (kind == MeasureKind::empirical)
                             ? 1.0 / static_cast<double>(g.n)
                             : static_cast<double>(g.degrees[i]) / static_cast<double>(g.volume);
        std::snprintf(buf, sizeof(buf), "%d,%.17g\n", i, w);
        out << buf;
    }
}

void write_points_csv(const mat_t& points, std::ostream& out) {
    char buf[64];
    for (int i = 0; i < points.rows(); ++i) {
        for (int d = 0; d < points.cols(); ++d) {
            std::snprintf(buf, sizeof(buf), "%.17g", points(i, d));
            out << buf << (d + 1 < points.cols() ? ',' : '\n');
        }
    }
}

}  // namespace geocert
