#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "bslab/graphs.hpp"
#include "bslab/rng.hpp"

using namespace bslab;

namespace {

// Independent oracle: cycle detection on the induced ball by edge counting.
// A connected multigraph is a tree iff |E| = |V| - 1, and the injectivity
// radius equals the largest R whose induced ball stays a tree.
bool ball_is_acyclic(const RootedGraph& g, int v, int R) {
    RootedGraph ball = induced_ball(g, v, R);
    return static_cast<int>(ball.edges.size()) == ball.vertex_count - 1;
}

int injectivity_oracle(const RootedGraph& g, int v, int r_max) {
    int best = 0;
    for (int R = 0; R <= r_max; ++R) {
        if (!ball_is_acyclic(g, v, R)) return best;
        best = R;
    }
    return best;
}

RootedGraph random_multigraph(int n, int m, SplitMix64& rng) {
    RootedGraph g;
    g.vertex_count = n;
    for (int e = 0; e < m; ++e)
        g.edges.push_back({static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n))});
    return g;
}

RootedGraph permute_vertices(const RootedGraph& g, const std::vector<int>& perm) {
    RootedGraph h;
    h.vertex_count = g.vertex_count;
    h.root = perm[g.root];
    for (auto [u, v] : g.edges) h.edges.push_back({perm[u], perm[v]});
    return h;
}

} // namespace

TEST_CASE("injectivity radius on the stated examples") {
    RootedGraph c8 = cycle_graph(8);
    for (int v = 0; v < 8; ++v) CHECK(injectivity_radius(c8, v, 10) == 3);

    RootedGraph k4 = complete_graph(4);
    for (int v = 0; v < 4; ++v) CHECK(injectivity_radius(k4, v, 10) == 0);

    RootedGraph isolated = edgeless_graph(1);
    CHECK(injectivity_radius(isolated, 0, 5) == 5);  // cap hit

    CHECK_THROWS_AS(injectivity_radius(c8, 99, 3), std::invalid_argument);
}

TEST_CASE("injectivity radius agrees with the cycle-detection oracle") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng.below(20));
        RootedGraph g = random_multigraph(n, n + static_cast<int>(rng.below(n)), rng);
        for (int v = 0; v < n; ++v)
            CHECK(injectivity_radius(g, v, 6) == injectivity_oracle(g, v, 6));
    }
}

TEST_CASE("injectivity radius >= R forces an acyclic R-ball") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + static_cast<int>(rng.below(15));
        RootedGraph g = random_multigraph(n, n, rng);
        for (int v = 0; v < n; ++v) {
            int r = injectivity_radius(g, v, 5);
            for (int R = 0; R <= r; ++R) CHECK(ball_is_acyclic(g, v, R));
        }
    }
}

TEST_CASE("thin fraction on cycles and trees") {
    RootedGraph c8 = cycle_graph(8);
    CHECK(thin_fraction(c8, 3) == doctest::Approx(0.0));
    CHECK(thin_fraction(c8, 4) == doctest::Approx(1.0));

    RootedGraph path = path_graph(9);
    for (int R = 0; R <= 5; ++R) CHECK(thin_fraction(path, R) == doctest::Approx(0.0));
}

TEST_CASE("thin fraction is monotone in R") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 4 + static_cast<int>(rng.below(20));
        RootedGraph g = random_multigraph(n, n + 3, rng);
        double prev = 0;
        for (int R = 0; R <= 5; ++R) {
            double f = thin_fraction(g, R);
            CHECK(f >= prev - 1e-15);
            prev = f;
        }
    }
}

TEST_CASE("ball statistics on the stated examples") {
    LocalStatistics big_cycle = ball_statistics(cycle_graph(1000), 2);
    CHECK(big_cycle.distribution.size() == 1);
    CHECK(big_cycle.distribution.begin()->second == doctest::Approx(1.0));
    // the single class is the radius-2 path ball rooted at its center
    RootedGraph path5 = path_graph(5);
    path5.root = 2;
    CHECK(big_cycle.distribution.begin()->first.certificate == canonical_certificate(path5));

    LocalStatistics triangle = ball_statistics(cycle_graph(3), 1);
    CHECK(triangle.distribution.size() == 1);
    RootedGraph c3 = cycle_graph(3);
    CHECK(triangle.distribution.begin()->first.certificate == canonical_certificate(c3));

    LocalStatistics dust = ball_statistics(edgeless_graph(7), 3);
    CHECK(dust.distribution.size() == 1);
    CHECK(dust.distribution.begin()->second == doctest::Approx(1.0));
}

TEST_CASE("ball statistics frequencies sum to one") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 5 + static_cast<int>(rng.below(30));
        RootedGraph g = random_multigraph(n, 2 * n, rng);
        for (int R = 0; R <= 3; ++R) {
            LocalStatistics s = ball_statistics(g, R);
            double total = 0;
            for (const auto& [cls, freq] : s.distribution) total += freq;
            CHECK(std::abs(total - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("certificates are relabeling-invariant") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 3 + static_cast<int>(rng.below(12));
        RootedGraph g = random_multigraph(n, n + static_cast<int>(rng.below(8)), rng);
        g.root = static_cast<int>(rng.below(n));
        RootedGraph h = permute_vertices(g, rng.permutation(n));
        CHECK(canonical_certificate(g) == canonical_certificate(h));
        LocalStatistics sg = ball_statistics(g, 2), sh = ball_statistics(h, 2);
        CHECK(bs_distance(sg, sh) == doctest::Approx(0.0));
    }
}

TEST_CASE("distinct rooted balls get distinct certificates") {
    // same underlying graph, different root position
    RootedGraph path = path_graph(4);
    RootedGraph end = path, mid = path;
    end.root = 0;
    mid.root = 1;
    CHECK(canonical_certificate(end) != canonical_certificate(mid));
    // multiplicity matters
    RootedGraph single = path_graph(2), doubled = path_graph(2);
    doubled.edges.push_back({0, 1});
    CHECK(canonical_certificate(single) != canonical_certificate(doubled));
    // loops matter
    RootedGraph loop = edgeless_graph(1);
    loop.edges.push_back({0, 0});
    CHECK(canonical_certificate(loop) != canonical_certificate(edgeless_graph(1)));
}

TEST_CASE("bs distance examples and metric properties") {
    LocalStatistics a = ball_statistics(cycle_graph(8), 2);
    LocalStatistics b = ball_statistics(cycle_graph(1000), 2);
    CHECK(bs_distance(a, a) == doctest::Approx(0.0));
    CHECK(bs_distance(a, b) == doctest::Approx(0.0));  // all balls are 5-paths

    LocalStatistics tri = ball_statistics(cycle_graph(3), 1);
    LocalStatistics line = ball_statistics(cycle_graph(1000), 1);
    CHECK(bs_distance(tri, line) == doctest::Approx(1.0));  // disjoint supports

    LocalStatistics mismatched = ball_statistics(cycle_graph(8), 1);
    CHECK_THROWS_AS(bs_distance(a, mismatched), std::invalid_argument);

    // symmetry and triangle inequality on sampled triples
    SplitMix64 rng(13);
    for (int trial = 0; trial < 15; ++trial) {
        auto sample = [&]() {
            int n = 4 + static_cast<int>(rng.below(12));
            return ball_statistics(random_multigraph(n, n + 2, rng), 2);
        };
        LocalStatistics x = sample(), y = sample(), z = sample();
        CHECK(bs_distance(x, y) == doctest::Approx(bs_distance(y, x)));
        CHECK(bs_distance(x, z) <= bs_distance(x, y) + bs_distance(y, z) + 1e-12);
        CHECK(bs_distance(x, y) >= 0);
        CHECK(bs_distance(x, y) <= 1 + 1e-12);
    }
}

TEST_CASE("mass transport on the stated examples") {
    auto adjacency = transport_payoff_suite(2)[0].second;
    auto [l4, r4] = mass_transport_check(uniform_root_ensemble(cycle_graph(4)), adjacency, 2);
    CHECK(l4 == doctest::Approx(2.0));
    CHECK(r4 == doctest::Approx(2.0));

    auto [lp, rp] = mass_transport_check(uniform_root_ensemble(path_graph(3)), adjacency, 2);
    CHECK(lp == doctest::Approx(4.0 / 3.0));
    CHECK(rp == doctest::Approx(4.0 / 3.0));

    // root fixed at the center of P3 with the leaf-neighbor payoff
    RootedGraph p3 = path_graph(3);
    p3.root = 1;
    auto leaf_payoff = transport_payoff_suite(2)[4].second;
    auto [lhs, rhs] = mass_transport_check({{p3, 1.0}}, leaf_payoff, 2);
    CHECK(lhs == doctest::Approx(2.0));
    CHECK(rhs == doctest::Approx(0.0));
}

TEST_CASE("uniform-root ensembles satisfy mass transport for the whole suite") {
    SplitMix64 rng(17);
    auto suite = transport_payoff_suite(2);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 4 + static_cast<int>(rng.below(20));
        RootedGraph g = random_multigraph(n, n + static_cast<int>(rng.below(10)), rng);
        auto ensemble = uniform_root_ensemble(g);
        for (const auto& [name, payoff] : suite) {
            auto [lhs, rhs] = mass_transport_check(ensemble, payoff, 2);
            INFO(name);
            CHECK(std::abs(lhs - rhs) <= 1e-12);
        }
    }
}

TEST_CASE("edge-list round trip and handshake identity") {
    SplitMix64 rng(3);
    RootedGraph g = random_multigraph(9, 14, rng);
    g.root = 4;
    std::stringstream buffer;
    write_edge_list(buffer, g);
    RootedGraph h = read_edge_list(buffer);
    CHECK(h.vertex_count == g.vertex_count);
    CHECK(h.root == g.root);
    CHECK(h.edges == g.edges);

    int degree_sum = 0;
    for (int v = 0; v < g.vertex_count; ++v) degree_sum += g.degree(v);
    CHECK(degree_sum == 2 * static_cast<int>(g.edges.size()));
}

TEST_CASE("local statistics CSV uses certificate hex and frequency") {
    LocalStatistics s = ball_statistics(cycle_graph(5), 1);
    std::ostringstream out;
    write_local_statistics_csv(out, s);
    CHECK(out.str().find("certificate_hex,frequency") == 0);
    CHECK(out.str().find(",1") != std::string::npos);
}
