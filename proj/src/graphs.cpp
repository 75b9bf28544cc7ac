#include "bslab/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bslab/io.hpp"

namespace bslab {

void RootedGraph::validate() const {
    if (vertex_count <= 0) throw std::invalid_argument("vertex_count must be positive");
    if (root < 0 || root >= vertex_count) throw std::invalid_argument("root out of range");
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
            throw std::invalid_argument("edge endpoint out of range");
    }
    if (!labels.empty() && labels.size() != edges.size())
        throw std::invalid_argument("labels must be empty or match edge count");
}

int RootedGraph::degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges) {
        if (a == v) ++d;
        if (b == v) ++d;
    }
    return d;
}

std::vector<std::vector<std::pair<int, int>>> RootedGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(vertex_count);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        auto [u, v] = edges[e];
        adj[u].push_back({v, e});
        if (u != v) adj[v].push_back({u, e});
    }
    return adj;
}

RootedGraph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    RootedGraph g;
    g.vertex_count = n;
    for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
    return g;
}

RootedGraph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    RootedGraph g;
    g.vertex_count = n;
    for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
    return g;
}

RootedGraph complete_graph(int n) {
    RootedGraph g;
    g.vertex_count = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j});
    return g;
}

RootedGraph edgeless_graph(int n) {
    RootedGraph g;
    g.vertex_count = n;
    return g;
}

std::vector<int> bfs_distances(const RootedGraph& g, int src) {
    if (src < 0 || src >= g.vertex_count) throw std::invalid_argument("bfs source out of range");
    auto adj = g.adjacency();
    std::vector<int> dist(g.vertex_count, -1);
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (auto [w, e] : adj[u]) {
            (void)e;
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

RootedGraph induced_ball(const RootedGraph& g, int v, int R) {
    if (v < 0 || v >= g.vertex_count) throw std::invalid_argument("ball center out of range");
    auto dist = bfs_distances(g, v);
    std::vector<int> relabel(g.vertex_count, -1);
    RootedGraph ball;
    for (int u = 0; u < g.vertex_count; ++u)
        if (dist[u] >= 0 && dist[u] <= R) relabel[u] = ball.vertex_count++;
    for (const auto& [a, b] : g.edges)
        if (relabel[a] >= 0 && relabel[b] >= 0) ball.edges.push_back({relabel[a], relabel[b]});
    ball.root = relabel[v];
    return ball;
}

RootedGraph universal_cover_ball(const RootedGraph& g, int v, int R) {
    if (v < 0 || v >= g.vertex_count) throw std::invalid_argument("unfold center out of range");
    auto adj = g.adjacency();
    // Cover vertices are non-backtracking walks from v, identified by
    // (projected vertex, edge arrived by). Loops give two directed arrivals
    // of the same edge; we distinguish them by a direction bit.
    struct CoverVertex {
        int proj;
        int in_edge;   // -1 for the root
        int in_dir;    // traversal direction of in_edge
        int depth;
    };
    RootedGraph cover;
    std::vector<CoverVertex> nodes;
    nodes.push_back({v, -1, 0, 0});
    cover.vertex_count = 1;
    cover.root = 0;
    size_t head = 0;
    while (head < nodes.size()) {
        CoverVertex cur = nodes[head];
        int cur_id = static_cast<int>(head);
        ++head;
        if (cur.depth == R) continue;
        int u = cur.proj;
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            auto [a, b] = g.edges[e];
            // directed traversals of e leaving u; dir 0: a->b, dir 1: b->a
            for (int dir = 0; dir < 2; ++dir) {
                int from = dir == 0 ? a : b;
                int to = dir == 0 ? b : a;
                if (from != u) continue;
                if (a == b && dir == 1) continue;  // loop: both directions below
                int times = (a == b) ? 2 : 1;      // loop leaves u both ways
                for (int t = 0; t < times; ++t) {
                    int eff_dir = (a == b) ? t : dir;
                    // non-backtracking: do not reverse the arriving traversal
                    if (cur.in_edge == e && cur.in_dir != eff_dir) continue;
                    nodes.push_back({to, e, eff_dir, cur.depth + 1});
                    cover.edges.push_back({cur_id, cover.vertex_count});
                    ++cover.vertex_count;
                }
            }
        }
    }
    return cover;
}

int injectivity_radius(const RootedGraph& g, int v, int r_max) {
    if (v < 0 || v >= g.vertex_count) throw std::invalid_argument("vertex out of range");
    if (r_max < 0) throw std::invalid_argument("r_max must be nonnegative");
    auto dist = bfs_distances(g, v);
    auto adj = g.adjacency();
    (void)adj;
    int best = 0;
    for (int R = 0; R <= r_max; ++R) {
        RootedGraph ball = induced_ball(g, v, R);
        // The induced ball matches the universal-cover ball exactly when it
        // is a tree; certificates of both sides decide it either way.
        bool tree_shortcut =
            static_cast<int>(ball.edges.size()) == ball.vertex_count - 1;
        bool ok;
        if (!tree_shortcut) {
            ok = false;
        } else {
            ok = canonical_certificate(ball) ==
                 canonical_certificate(universal_cover_ball(g, v, R));
        }
        if (!ok) return best;
        best = R;
        // no vertex beyond the graph's reach can change anything
        bool saturated = true;
        for (int u = 0; u < g.vertex_count; ++u)
            if (dist[u] > R) { saturated = false; break; }
        if (saturated) return r_max;
    }
    return best;
}

double thin_fraction(const RootedGraph& g, int R) {
    if (R < 0) throw std::invalid_argument("R must be nonnegative");
    if (R == 0) return 0.0;
    int thin = 0;
    for (int v = 0; v < g.vertex_count; ++v)
        if (injectivity_radius(g, v, R) < R) ++thin;
    return static_cast<double>(thin) / g.vertex_count;
}

LocalStatistics ball_statistics(const RootedGraph& g, int R) {
    if (R < 0) throw std::invalid_argument("R must be nonnegative");
    LocalStatistics stats;
    stats.radius = R;
    double w = 1.0 / g.vertex_count;
    for (int v = 0; v < g.vertex_count; ++v) {
        BallClass cls{R, canonical_certificate(induced_ball(g, v, R))};
        stats.distribution[cls] += w;
    }
    return stats;
}

double bs_distance(const LocalStatistics& s1, const LocalStatistics& s2) {
    if (s1.radius != s2.radius) throw std::invalid_argument("radius mismatch in bs_distance");
    double total = 0;
    auto it1 = s1.distribution.begin();
    auto it2 = s2.distribution.begin();
    while (it1 != s1.distribution.end() || it2 != s2.distribution.end()) {
        if (it2 == s2.distribution.end() ||
            (it1 != s1.distribution.end() && it1->first < it2->first)) {
            total += it1->second;
            ++it1;
        } else if (it1 == s1.distribution.end() || it2->first < it1->first) {
            total += it2->second;
            ++it2;
        } else {
            total += std::abs(it1->second - it2->second);
            ++it1;
            ++it2;
        }
    }
    return total / 2;
}

std::pair<double, double> mass_transport_check(
    const std::vector<WeightedGraph>& ensemble, const TransportPayoff& payoff, int R) {
    double lhs = 0, rhs = 0;
    for (const auto& wg : ensemble) {
        const RootedGraph& g = wg.graph;
        auto dist = bfs_distances(g, g.root);
        for (int v = 0; v < g.vertex_count; ++v) {
            if (dist[v] < 0 || dist[v] > R) continue;
            lhs += wg.weight * payoff(g, g.root, v);
            rhs += wg.weight * payoff(g, v, g.root);
        }
    }
    return {lhs, rhs};
}

std::vector<WeightedGraph> uniform_root_ensemble(const RootedGraph& g) {
    std::vector<WeightedGraph> ensemble;
    double w = 1.0 / g.vertex_count;
    for (int v = 0; v < g.vertex_count; ++v) {
        RootedGraph h = g;
        h.root = v;
        ensemble.push_back({std::move(h), w});
    }
    return ensemble;
}

namespace {

int edge_multiplicity(const RootedGraph& g, int u, int v) {
    int m = 0;
    for (const auto& [a, b] : g.edges)
        if ((a == u && b == v) || (a == v && b == u)) ++m;
    return m;
}

int ball_size(const RootedGraph& g, int u, int R) {
    auto dist = bfs_distances(g, u);
    int count = 0;
    for (int d : dist)
        if (d >= 0 && d <= R) ++count;
    return count;
}

} // namespace

std::vector<std::pair<std::string, TransportPayoff>> transport_payoff_suite(int R) {
    std::vector<std::pair<std::string, TransportPayoff>> suite;
    suite.emplace_back("adjacency", [](const RootedGraph& g, int u, int v) {
        return u == v ? 0.0 : static_cast<double>(edge_multiplicity(g, u, v));
    });
    suite.emplace_back("sphere_indicator", [R](const RootedGraph& g, int u, int v) {
        auto dist = bfs_distances(g, u);
        return dist[v] == R ? 1.0 : 0.0;
    });
    suite.emplace_back("uniform_on_ball", [R](const RootedGraph& g, int u, int v) {
        auto dist = bfs_distances(g, u);
        if (dist[v] < 0 || dist[v] > R) return 0.0;
        return 1.0 / ball_size(g, u, R);
    });
    suite.emplace_back("degree_weighted_adjacency", [](const RootedGraph& g, int u, int v) {
        if (u == v) return 0.0;
        return static_cast<double>(edge_multiplicity(g, u, v)) * g.degree(v);
    });
    suite.emplace_back("leaf_neighbor", [](const RootedGraph& g, int u, int v) {
        if (u == v) return 0.0;
        return (edge_multiplicity(g, u, v) > 0 && g.degree(v) == 1) ? 1.0 : 0.0;
    });
    return suite;
}

void write_edge_list(std::ostream& out, const RootedGraph& g) {
    out << g.vertex_count << ' ' << g.edges.size() << ' ' << g.root << '\n';
    for (size_t e = 0; e < g.edges.size(); ++e) {
        out << g.edges[e].first << ' ' << g.edges[e].second;
        if (!g.labels.empty() && g.labels[e].generator >= 0)
            out << ' ' << g.labels[e].generator << ' ' << g.labels[e].orientation;
        out << '\n';
    }
}

RootedGraph read_edge_list(std::istream& in) {
    RootedGraph g;
    size_t m = 0;
    if (!(in >> g.vertex_count >> m >> g.root))
        throw std::invalid_argument("bad edge-list header");
    std::string rest;
    std::getline(in, rest);
    bool any_label = false;
    for (size_t e = 0; e < m; ++e) {
        std::string line;
        if (!std::getline(in, line)) throw std::invalid_argument("truncated edge list");
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) throw std::invalid_argument("bad edge line");
        g.edges.push_back({u, v});
        EdgeLabel lab;
        if (ls >> lab.generator >> lab.orientation) any_label = true;
        g.labels.push_back(lab);
    }
    if (!any_label) g.labels.clear();
    g.validate();
    return g;
}

void write_local_statistics_csv(std::ostream& out, const LocalStatistics& s) {
    out << "certificate_hex,frequency\n";
    for (const auto& [cls, freq] : s.distribution)
        out << certificate_hex(cls.certificate) << ',' << fmt_real(freq) << '\n';
}

} // namespace bslab
