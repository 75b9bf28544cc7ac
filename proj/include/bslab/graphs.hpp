#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bslab {

struct EdgeLabel {
    int generator = -1;   // generator index, -1 = unlabeled
    int orientation = 0;  // +1 / -1, 0 = unlabeled
};

// Finite multigraph with a distinguished root. Loops and parallel edges are
// allowed; an edge is an unordered pair stored as (u, v). Immutable by
// convention after construction: all operations below are pure.
struct RootedGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    int root = 0;
    std::vector<EdgeLabel> labels;  // empty or parallel to edges

    void validate() const;  // throws std::invalid_argument on bad indices

    int degree(int v) const;  // loops count twice
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;  // v -> (neighbor, edge id)
};

RootedGraph cycle_graph(int n);
RootedGraph path_graph(int n);
RootedGraph complete_graph(int n);
RootedGraph edgeless_graph(int n);

// Distances from src by BFS; -1 for unreachable vertices.
std::vector<int> bfs_distances(const RootedGraph& g, int src);

// Induced ball of radius R around v: all vertices within distance R and all
// edges (including loops/multi-edges) among them. Re-rooted at v.
RootedGraph induced_ball(const RootedGraph& g, int v, int R);

// Radius-R ball of the universal cover, unfolded from v by non-backtracking
// walks. Always a tree rooted at the trivial walk.
RootedGraph universal_cover_ball(const RootedGraph& g, int v, int R);

// Canonical byte certificate of the rooted-isomorphism class of a rooted
// multigraph. Exact canonical labeling (iterative refinement + exhaustive
// tie-breaking), not a hash.
std::string canonical_certificate(const RootedGraph& g);
std::string certificate_hex(const std::string& cert);

struct BallClass {
    int radius = 0;
    std::string certificate;
    bool operator<(const BallClass& o) const {
        return radius != o.radius ? radius < o.radius : certificate < o.certificate;
    }
    bool operator==(const BallClass& o) const {
        return radius == o.radius && certificate == o.certificate;
    }
};

// Empirical distribution of rooted R-ball classes under a uniformly random
// root. Frequencies sum to 1 (within 1e-12).
struct LocalStatistics {
    int radius = 0;
    std::map<BallClass, double> distribution;
};

// Largest R <= r_max such that the induced R-ball at v is rooted-isomorphic
// to the radius-R ball of the universal cover. Returns r_max when the cap is
// hit; the caller reads that as ">= r_max". A loop at v makes even R = 0
// fail; we return 0 in that case to keep the return type total.
int injectivity_radius(const RootedGraph& g, int v, int r_max);

// Fraction of vertices v with injectivity_radius(v) < R. Monotone
// nondecreasing in R.
double thin_fraction(const RootedGraph& g, int R);

LocalStatistics ball_statistics(const RootedGraph& g, int R);

// Total-variation distance between two ball statistics of equal radius.
double bs_distance(const LocalStatistics& s1, const LocalStatistics& s2);

// Payoff for the mass-transport principle: f(g, u, v) >= 0, required to
// depend only on the rooted-ball isomorphism type of radius R around the
// ordered pair (u, v).
using TransportPayoff = std::function<double(const RootedGraph&, int, int)>;

struct WeightedGraph {
    RootedGraph graph;
    double weight = 1.0;
};

// lhs = E sum_v f(root, v), rhs = E sum_v f(v, root), both sums restricted
// to v within distance R of the root. Unimodular ensembles give lhs == rhs.
std::pair<double, double> mass_transport_check(
    const std::vector<WeightedGraph>& ensemble, const TransportPayoff& payoff, int R);

// Uniform-root ensemble over a single graph: weight 1/n on each rooting.
std::vector<WeightedGraph> uniform_root_ensemble(const RootedGraph& g);

// The built-in payoff suite used by the invariance tests.
std::vector<std::pair<std::string, TransportPayoff>> transport_payoff_suite(int R);

// Edge-list text format: first line "n m root", then m lines
// "u v [label orient]" (0-based vertex ids).
void write_edge_list(std::ostream& out, const RootedGraph& g);
RootedGraph read_edge_list(std::istream& in);

void write_local_statistics_csv(std::ostream& out, const LocalStatistics& s);

} // namespace bslab
