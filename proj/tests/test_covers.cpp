#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "bslab/covers.hpp"
#include "bslab/graphs.hpp"
#include "bslab/rng.hpp"
#include "bslab/spectral.hpp"

using namespace bslab;

namespace {

// Independent shortest-cycle oracle: for every edge, remove it and find the
// shortest remaining path between its endpoints.
std::optional<int> girth_oracle(const RootedGraph& g) {
    int best = -1;
    for (size_t skip = 0; skip < g.edges.size(); ++skip) {
        auto [s, t] = g.edges[skip];
        if (s == t) return 1;
        // BFS avoiding edge `skip`
        std::vector<int> dist(g.vertex_count, -1);
        std::vector<int> queue{s};
        dist[s] = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (size_t e = 0; e < g.edges.size(); ++e) {
                if (e == skip) continue;
                auto [a, b] = g.edges[e];
                int w = -1;
                if (a == u) w = b;
                else if (b == u) w = a;
                else continue;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if (dist[t] >= 0) {
            int cycle = dist[t] + 1;
            if (best < 0 || cycle < best) best = cycle;
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

Permutation perm_of(std::vector<int> image) {
    Permutation p{std::move(image)};
    p.validate();
    return p;
}

} // namespace

TEST_CASE("schreier graph examples") {
    // one point, two generators: a bouquet of two loops
    PermRep bouquet{1, {perm_of({0}), perm_of({0})}};
    RootedGraph b = schreier_graph(bouquet);
    CHECK(b.vertex_count == 1);
    CHECK(b.edges.size() == 2);
    CHECK(b.degree(0) == 4);

    // regular representation of Z/5 with the shift
    PermRep shift{5, {perm_of({1, 2, 3, 4, 0})}};
    RootedGraph c = schreier_graph(shift);
    CHECK(canonical_certificate(c) == canonical_certificate(cycle_graph(5)));

    // two random permutations on 100 points: 4-regular, handshake holds
    SplitMix64 rng(41);
    PermRep rep{100, {perm_of(rng.permutation(100)), perm_of(rng.permutation(100))}};
    RootedGraph g = schreier_graph(rep);
    int degree_sum = 0;
    for (int v = 0; v < 100; ++v) {
        CHECK(g.degree(v) == 4);
        degree_sum += g.degree(v);
    }
    CHECK(degree_sum == 2 * static_cast<int>(g.edges.size()));

    CHECK_THROWS_AS(schreier_graph(PermRep{3, {}}), std::invalid_argument);
}

TEST_CASE("sl2 quotient orders match brute force and the closed formula") {
    CHECK(sl2_quotient(2).order() == 6);
    CHECK(sl2_quotient(3).order() == 24);
    CHECK(sl2_quotient(5).order() == 120);
    for (int n : {2, 3, 4, 5, 6, 7, 12}) {
        CHECK(static_cast<uint64_t>(sl2_quotient(n).order()) == sl2_order(n));
    }
    CHECK_THROWS_AS(sl2_quotient(200), std::invalid_argument);
    CHECK_THROWS_AS(sl2_quotient(1), std::invalid_argument);
}

TEST_CASE("group table sanity: generators closed under inversion") {
    FiniteMatrixGroup g = sl2_quotient(5);
    for (int gi : g.generator_indices) {
        int inv = g.inverse_index(gi);
        CHECK(std::find(g.generator_indices.begin(), g.generator_indices.end(), inv) !=
              g.generator_indices.end());
        // element times its inverse is the identity
        CHECK(g.elements[g.multiply_indices(gi, inv)] == Mat2{1, 0, 0, 1});
    }
    for (const auto& m : g.elements)
        CHECK((m.a * m.d - m.b * m.c) % 5 == 1 % 5);
}

TEST_CASE("cayley graph of Z/6 with the shift is a hexagon") {
    auto multiply = [](int i, int j) { return (i + j) % 6; };
    auto inverse = [](int i) { return (6 - i) % 6; };
    RootedGraph c = cayley_graph_table(6, multiply, inverse, 0, {1, 5});
    CHECK(canonical_certificate(c) == canonical_certificate(cycle_graph(6)));
    CHECK(girth(c).value() == 6);
}

TEST_CASE("cayley girth of SL2(Z/5) matches the exhaustive oracle") {
    RootedGraph cay = cayley_graph(sl2_quotient(5));
    auto fast = girth(cay);
    auto slow = girth_oracle(cay);
    REQUIRE(fast.has_value());
    REQUIRE(slow.has_value());
    CHECK(*fast == *slow);
    // vertex transitivity: regular of degree 4
    for (int v = 0; v < cay.vertex_count; ++v) CHECK(cay.degree(v) == 4);
}

TEST_CASE("girth handles forests, loops and parallel edges") {
    CHECK(!girth(path_graph(6)).has_value());
    RootedGraph loop = edgeless_graph(2);
    loop.edges.push_back({1, 1});
    CHECK(girth(loop).value() == 1);
    RootedGraph doubled = path_graph(2);
    doubled.edges.push_back({0, 1});
    CHECK(girth(doubled).value() == 2);
    CHECK(girth(cycle_graph(17)).value() == 17);
}

TEST_CASE("girth oracle agreement on random multigraphs") {
    SplitMix64 rng(59);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 4 + static_cast<int>(rng.below(12));
        RootedGraph g;
        g.vertex_count = n;
        int m = n + static_cast<int>(rng.below(6));
        for (int e = 0; e < m; ++e)
            g.edges.push_back({static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n))});
        auto fast = girth(g);
        auto slow = girth_oracle(g);
        CHECK(fast.has_value() == slow.has_value());
        if (fast) CHECK(*fast == *slow);
    }
}

TEST_CASE("cayley girth is invariant under generator conjugation") {
    FiniteMatrixGroup g = sl2_quotient(7);
    RootedGraph base = cayley_graph(g);
    // conjugate the default generators by a fixed element
    Mat2 h{2, 1, 1, 1};  // det = 1 mod 7
    int hi = g.index_of(h);
    REQUIRE(hi >= 0);
    FiniteMatrixGroup conj = g;
    conj.generator_indices.clear();
    for (int gi : g.generator_indices) {
        Mat2 m = g.multiply(g.multiply(h, g.elements[gi]),
                            g.elements[g.inverse_index(hi)]);
        conj.generator_indices.push_back(g.index_of(m));
    }
    CHECK(girth(cayley_graph(conj)).value() == girth(base).value());
}

TEST_CASE("fixed points and Burnside on the projective line") {
    FiniteMatrixGroup g = sl2_quotient(5);
    // identity fixes everything
    CHECK(fixed_points(projective_action_of(g, Mat2{1, 0, 0, 1})) == 6);
    // unipotent fixes exactly one point
    CHECK(fixed_points(projective_action_of(g, Mat2{1, 1, 0, 1})) == 1);
    // Burnside over all of SL2(Z/5): sum of fix = |G| for a transitive action
    long long total = 0;
    for (const auto& m : g.elements) total += fixed_points(projective_action_of(g, m));
    CHECK(total == 120);
}

TEST_CASE("psl elements pair off +-M") {
    FiniteMatrixGroup g = sl2_quotient(7);
    auto psl = psl_elements(g);
    CHECK(static_cast<int>(psl.size()) * 2 == g.order());
}

TEST_CASE("fixity scan finds the unipotent and respects the word metric") {
    FiniteMatrixGroup g = sl2_quotient(5);
    std::vector<Mat2> gens;
    for (int gi : g.generator_indices) gens.push_back(g.elements[gi]);
    FixityScan scan = fixity_scan(g, projective_line_action(g, gens), 4);
    REQUIRE(!scan.rows.empty());
    // length-1 rows exist and fix exactly 1 point each (unipotents)
    for (const auto& row : scan.rows)
        if (row.length == 1) CHECK(row.fix == 1);
    CHECK(scan.max_ratio <= 2.0 / 6.0 + 1e-12);
    // non-transitive action is rejected
    std::vector<Permutation> frozen(gens.size(), Permutation::identity(6));
    CHECK_THROWS_AS(fixity_scan(g, frozen, 2), std::invalid_argument);
}

TEST_CASE("cell complex validation and boundary maps") {
    CellComplex tri = filled_triangle();
    tri.validate();
    auto d1 = tri.boundary1();
    auto d2 = tri.boundary2();
    // d1 d2 = 0 exactly
    for (size_t i = 0; i < d1.size(); ++i)
        for (size_t f = 0; f < d2[0].size(); ++f) {
            long long sum = 0;
            for (size_t e = 0; e < d2.size(); ++e) sum += d1[i][e] * d2[e][f];
            CHECK(sum == 0);
        }

    CellComplex bad = filled_triangle();
    bad.two_cells = {{1, 2, 3}};  // not a closed walk
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("build_cover: identity, circle double cover, genus-2 triple cover") {
    // identity assignment reproduces the complex
    CellComplex torus = torus_complex();
    CellComplex same = build_cover(torus, {Permutation::identity(1), Permutation::identity(1)});
    CHECK(same.vertex_count == torus.vertex_count);
    CHECK(same.one_cells == torus.one_cells);
    CHECK(same.two_cells.size() == torus.two_cells.size());

    // circle, two sheets, transposition: still a circle, chi = 0
    CellComplex circle = circle_complex();
    CellComplex doubled = build_cover(circle, {perm_of({1, 0})});
    CHECK(doubled.vertex_count == 2);
    CHECK(doubled.one_cells.size() == 2);
    int chi = doubled.vertex_count - static_cast<int>(doubled.one_cells.size());
    CHECK(chi == 0);
    CHECK(betti(doubled, 0) == 1);
    CHECK(betti(doubled, 1) == 1);

    // genus-2 complex, 3 sheets: chi = 3 * (-2) = -6, verified by cell count
    CellComplex g2 = genus2_complex();
    Permutation rot = perm_of({1, 2, 0});
    Permutation id3 = Permutation::identity(3);
    CellComplex cover = build_cover(g2, {rot, id3, rot, id3});
    int chi2 = cover.vertex_count - static_cast<int>(cover.one_cells.size()) +
               static_cast<int>(cover.two_cells.size());
    CHECK(chi2 == -6);
    CHECK(cover.vertex_count == 3 * g2.vertex_count);
    CHECK(cover.one_cells.size() == 3 * g2.one_cells.size());
    CHECK(cover.two_cells.size() == 3 * g2.two_cells.size());
}

TEST_CASE("build_cover rejects inconsistent 2-cell monodromy") {
    // a disk glued along a single loop: nontrivial monodromy cannot lift
    CellComplex disk = circle_complex();
    disk.two_cells = {{1}};
    disk.validate();
    CHECK_THROWS_AS(build_cover(disk, {perm_of({1, 0})}), std::invalid_argument);
}

TEST_CASE("cover connectivity equals transitivity of the assignment") {
    CellComplex wedge = wedge_of_circles(2);
    SplitMix64 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        Permutation a = perm_of(rng.permutation(6));
        Permutation b = perm_of(rng.permutation(6));
        CellComplex cover = build_cover(wedge, {a, b});
        bool transitive = cover_assignment_transitive({a, b});
        CHECK((betti(cover, 0) == 1) == transitive);
    }
}

TEST_CASE("chi multiplicativity across random wedge covers") {
    CellComplex wedge = wedge_of_circles(3);
    SplitMix64 rng(73);
    for (int sheets : {2, 4, 7}) {
        std::vector<Permutation> assignment;
        for (int i = 0; i < 3; ++i) assignment.push_back(perm_of(rng.permutation(sheets)));
        CellComplex cover = build_cover(wedge, assignment);
        int chi_base = 1 - 3;
        int chi_cover = cover.vertex_count - static_cast<int>(cover.one_cells.size());
        CHECK(chi_cover == sheets * chi_base);
    }
}

TEST_CASE("permutation assignment text round trip") {
    std::stringstream in("1 0\n0 1\n");
    auto perms = read_assignment(in, 2);
    CHECK(perms[0].image == std::vector<int>{1, 0});
    CHECK(perms[1].image == std::vector<int>{0, 1});
    std::stringstream bad("0 0\n");
    CHECK_THROWS_AS(read_assignment(bad, 1), std::invalid_argument);
}
