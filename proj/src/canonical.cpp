#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "bslab/graphs.hpp"

namespace bslab {

namespace {

struct MultiAdj {
    int n = 0;
    int root = 0;
    std::vector<std::map<int, int>> nbr;   // v -> {neighbor != v -> multiplicity}
    std::vector<int> loops;                // v -> loop count
};

MultiAdj build_multi_adjacency(const RootedGraph& g) {
    MultiAdj m;
    m.n = g.vertex_count;
    m.root = g.root;
    m.nbr.resize(m.n);
    m.loops.assign(m.n, 0);
    for (const auto& [u, v] : g.edges) {
        if (u == v) {
            ++m.loops[u];
        } else {
            ++m.nbr[u][v];
            ++m.nbr[v][u];
        }
    }
    return m;
}

// One round of color refinement. Keys are intrinsic (no vertex labels), so
// the resulting color ids do not depend on the input labeling.
bool refine_once(const MultiAdj& g, std::vector<int>& color) {
    using Key = std::pair<int, std::vector<std::pair<int, int>>>;
    std::vector<Key> keys(g.n);
    for (int v = 0; v < g.n; ++v) {
        std::vector<std::pair<int, int>> sig;
        for (const auto& [w, mult] : g.nbr[v]) sig.push_back({color[w], mult});
        std::sort(sig.begin(), sig.end());
        keys[v] = {color[v], std::move(sig)};
    }
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    bool changed = false;
    for (int v = 0; v < g.n; ++v) {
        int c = static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
        if (c != color[v]) changed = true;
        color[v] = c;
    }
    return changed;
}

void refine(const MultiAdj& g, std::vector<int>& color) {
    while (refine_once(g, color)) {}
}

std::vector<int> initial_coloring(const MultiAdj& g) {
    using Key = std::tuple<int, int, int>;  // (non-root flag, degree, loops)
    std::vector<Key> keys(g.n);
    for (int v = 0; v < g.n; ++v) {
        int deg = 2 * g.loops[v];
        for (const auto& [w, mult] : g.nbr[v]) {
            (void)w;
            deg += mult;
        }
        keys[v] = {v == g.root ? 0 : 1, deg, g.loops[v]};
    }
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> color(g.n);
    for (int v = 0; v < g.n; ++v)
        color[v] = static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    return color;
}

void append_u32(std::string& s, uint32_t x) {
    s.push_back(static_cast<char>((x >> 24) & 0xff));
    s.push_back(static_cast<char>((x >> 16) & 0xff));
    s.push_back(static_cast<char>((x >> 8) & 0xff));
    s.push_back(static_cast<char>(x & 0xff));
}

// Certificate for a discrete coloring: canonical order is color order.
std::string emit(const MultiAdj& g, const std::vector<int>& color) {
    std::vector<int> pos(g.n);  // vertex -> canonical index
    for (int v = 0; v < g.n; ++v) pos[v] = color[v];
    std::vector<std::tuple<int, int, int>> rows;  // (u, v, mult), u <= v
    for (int v = 0; v < g.n; ++v) {
        if (g.loops[v]) rows.push_back({pos[v], pos[v], g.loops[v]});
        for (const auto& [w, mult] : g.nbr[v])
            if (pos[v] < pos[w]) rows.push_back({pos[v], pos[w], mult});
    }
    std::sort(rows.begin(), rows.end());
    std::string cert;
    append_u32(cert, static_cast<uint32_t>(g.n));
    append_u32(cert, static_cast<uint32_t>(pos[g.root]));
    append_u32(cert, static_cast<uint32_t>(rows.size()));
    for (const auto& [u, v, mult] : rows) {
        append_u32(cert, static_cast<uint32_t>(u));
        append_u32(cert, static_cast<uint32_t>(v));
        append_u32(cert, static_cast<uint32_t>(mult));
    }
    return cert;
}

std::string canonize(const MultiAdj& g, std::vector<int> color) {
    refine(g, color);
    // find the smallest non-singleton color class
    std::vector<int> count(g.n, 0);
    for (int v = 0; v < g.n; ++v) ++count[color[v]];
    int target = -1;
    for (int c = 0; c < g.n; ++c)
        if (count[c] > 1) { target = c; break; }
    if (target < 0) return emit(g, color);
    // exhaustive tie-breaking: individualize each member, take minimal result
    std::string best;
    for (int v = 0; v < g.n; ++v) {
        if (color[v] != target) continue;
        std::vector<int> branch = color;
        for (int u = 0; u < g.n; ++u)
            if (branch[u] >= target && u != v) ++branch[u];
        // v keeps color `target`, everything that tied with it moved up
        std::string cert = canonize(g, std::move(branch));
        if (best.empty() || cert < best) best = std::move(cert);
    }
    return best;
}

} // namespace

std::string canonical_certificate(const RootedGraph& g) {
    g.validate();
    MultiAdj m = build_multi_adjacency(g);
    return canonize(m, initial_coloring(m));
}

std::string certificate_hex(const std::string& cert) {
    static const char* digits = "0123456789abcdef";
    std::string hex;
    hex.reserve(cert.size() * 2);
    for (unsigned char c : cert) {
        hex.push_back(digits[c >> 4]);
        hex.push_back(digits[c & 0xf]);
    }
    return hex;
}

} // namespace bslab
