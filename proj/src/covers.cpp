#include "bslab/covers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bslab {

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (image[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.image.resize(image.size());
    for (int i = 0; i < degree(); ++i) inv.image[image[i]] = i;
    return inv;
}

Permutation Permutation::then(const Permutation& other) const {
    if (degree() != other.degree()) throw std::invalid_argument("degree mismatch");
    Permutation r;
    r.image.resize(image.size());
    for (int i = 0; i < degree(); ++i) r.image[i] = other.image[image[i]];
    return r;
}

Permutation Permutation::identity(int n) {
    Permutation p;
    p.image.resize(n);
    std::iota(p.image.begin(), p.image.end(), 0);
    return p;
}

void Permutation::validate() const {
    std::vector<bool> seen(image.size(), false);
    for (int v : image) {
        if (v < 0 || v >= degree() || seen[v])
            throw std::invalid_argument("not a permutation");
        seen[v] = true;
    }
}

void PermRep::validate() const {
    if (degree <= 0) throw std::invalid_argument("degree must be positive");
    for (const auto& g : generators) {
        if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
        g.validate();
    }
}

bool PermRep::transitive() const {
    std::vector<bool> seen(degree, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
        int p = queue.front();
        queue.pop_front();
        for (const auto& g : generators) {
            for (int q : {g(p), g.inverse()(p)}) {
                if (!seen[q]) {
                    seen[q] = true;
                    ++count;
                    queue.push_back(q);
                }
            }
        }
    }
    return count == degree;
}

RootedGraph schreier_graph(const PermRep& rep) {
    rep.validate();
    if (rep.generators.empty()) throw std::invalid_argument("empty generator list");
    RootedGraph g;
    g.vertex_count = rep.degree;
    g.root = 0;
    for (int i = 0; i < static_cast<int>(rep.generators.size()); ++i)
        for (int p = 0; p < rep.degree; ++p) {
            g.edges.push_back({p, rep.generators[i](p)});
            g.labels.push_back({i, +1});
        }
    return g;
}

bool Mat2::operator<(const Mat2& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    if (c != o.c) return c < o.c;
    return d < o.d;
}

namespace {

inline int mod(int x, int N) {
    int r = x % N;
    return r < 0 ? r + N : r;
}

uint64_t pack(const Mat2& m, int N) {
    return ((static_cast<uint64_t>(m.a) * N + m.b) * N + m.c) * N + m.d;
}

} // namespace

int FiniteMatrixGroup::index_of(const Mat2& m) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), m);
    if (it == elements.end() || !(*it == m)) return -1;
    return static_cast<int>(it - elements.begin());
}

Mat2 FiniteMatrixGroup::multiply(const Mat2& x, const Mat2& y) const {
    int N = modulus;
    return Mat2{mod(x.a * y.a + x.b * y.c, N), mod(x.a * y.b + x.b * y.d, N),
                mod(x.c * y.a + x.d * y.c, N), mod(x.c * y.b + x.d * y.d, N)};
}

int FiniteMatrixGroup::multiply_indices(int i, int j) const {
    return index_of(multiply(elements[i], elements[j]));
}

int FiniteMatrixGroup::inverse_index(int i) const {
    const Mat2& m = elements[i];
    // det = 1, so inverse is (d, -b; -c, a)
    Mat2 inv{m.d, mod(-m.b, modulus), mod(-m.c, modulus), m.a};
    return index_of(inv);
}

uint64_t sl2_order(int N) {
    // N^3 * prod_{p | N} (1 - 1/p^2)
    uint64_t order = 1;
    for (uint64_t i = 0; i < 3; ++i) order *= static_cast<uint64_t>(N);
    int rem = N;
    for (int p = 2; p * p <= rem; ++p) {
        if (rem % p == 0) {
            order = order / (static_cast<uint64_t>(p) * p) * (static_cast<uint64_t>(p) * p - 1);
            while (rem % p == 0) rem /= p;
        }
    }
    if (rem > 1)
        order = order / (static_cast<uint64_t>(rem) * rem) * (static_cast<uint64_t>(rem) * rem - 1);
    return order;
}

FiniteMatrixGroup sl2_quotient(int N) {
    if (N < 2) throw std::invalid_argument("modulus must be >= 2");
    if (sl2_order(N) > 1000000ULL)
        throw std::invalid_argument("sl2_quotient size guard exceeded (|SL2| > 10^6)");
    FiniteMatrixGroup g;
    g.modulus = N;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d)
                    if (mod(a * d - b * c, N) == 1) g.elements.push_back({a, b, c, d});
    std::sort(g.elements.begin(), g.elements.end());
    // move identity to index 0 conceptually: we only record its index where needed
    std::vector<Mat2> gens = {{1, 1, 0, 1}, {1, mod(-1, N), 0, 1}, {1, 0, 1, 1}, {1, 0, mod(-1, N), 1}};
    for (const auto& m : gens) {
        int idx = g.index_of(m);
        if (idx < 0) throw std::logic_error("generator missing from element table");
        if (std::find(g.generator_indices.begin(), g.generator_indices.end(), idx) ==
            g.generator_indices.end())
            g.generator_indices.push_back(idx);
    }
    return g;
}

RootedGraph cayley_graph_table(int order, const std::function<int(int, int)>& multiply,
                               const std::function<int(int)>& inverse, int identity,
                               const std::vector<int>& generators) {
    for (int gi : generators) {
        if (gi == identity) throw std::invalid_argument("identity in generating set");
        if (std::find(generators.begin(), generators.end(), inverse(gi)) == generators.end())
            throw std::invalid_argument("generator set not symmetric");
    }
    RootedGraph g;
    g.vertex_count = order;
    g.root = identity;
    // one undirected edge per {s, s^-1} class and group element
    std::vector<int> class_rep;
    for (int gi : generators)
        if (gi <= inverse(gi)) class_rep.push_back(gi);
    for (int rep : class_rep) {
        bool involution = inverse(rep) == rep;
        for (int x = 0; x < order; ++x) {
            int y = multiply(x, rep);
            if (involution && x > y) continue;
            g.edges.push_back({x, y});
        }
    }
    return g;
}

RootedGraph cayley_graph(const FiniteMatrixGroup& group) {
    Mat2 id{1, 0, 0, 1};
    return cayley_graph_table(
        group.order(), [&](int i, int j) { return group.multiply_indices(i, j); },
        [&](int i) { return group.inverse_index(i); }, group.index_of(id),
        group.generator_indices);
}

std::optional<int> girth(const RootedGraph& g) {
    auto adj = g.adjacency();
    int best = -1;
    // loops and parallel edges first
    for (const auto& [u, v] : g.edges)
        if (u == v) best = 1;
    if (best < 0) {
        std::vector<std::vector<int>> seen(g.vertex_count);
        for (const auto& [u, v] : g.edges) {
            auto& row = seen[std::min(u, v)];
            if (std::find(row.begin(), row.end(), std::max(u, v)) != row.end()) {
                best = 2;
                break;
            }
            row.push_back(std::max(u, v));
        }
    }
    if (best > 0) return best;
    // BFS from every vertex; a non-tree edge at depths (du, dw) closes a
    // cycle of length du + dw + 1 through the start vertex.
    int bound = g.vertex_count + 1;
    for (int s = 0; s < g.vertex_count; ++s) {
        std::vector<int> dist(g.vertex_count, -1), parent_edge(g.vertex_count, -1);
        std::deque<int> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            if (2 * dist[u] >= bound) break;
            for (auto [w, e] : adj[u]) {
                if (e == parent_edge[u]) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent_edge[w] = e;
                    queue.push_back(w);
                } else {
                    bound = std::min(bound, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (bound > g.vertex_count) return std::nullopt;
    return bound;
}

int fixed_points(const Permutation& g) {
    int fix = 0;
    for (int i = 0; i < g.degree(); ++i)
        if (g(i) == i) ++fix;
    return fix;
}

namespace {

std::string letter_for(int generator, bool inverse) {
    // a, b, c, ... for generators; upper case marks the inverse
    char base = static_cast<char>('a' + generator % 26);
    char c = inverse ? static_cast<char>(base - 'a' + 'A') : base;
    std::string s(1, c);
    if (generator >= 26) s += std::to_string(generator / 26);
    return s;
}

} // namespace

FixityScan fixity_scan(const FiniteMatrixGroup& group,
                       const std::vector<Permutation>& action_of_generator,
                       int word_length_bound) {
    if (action_of_generator.size() != group.generator_indices.size())
        throw std::invalid_argument("one action permutation per generator required");
    int n = action_of_generator.empty() ? 0 : action_of_generator[0].degree();
    PermRep rep{n, action_of_generator};
    if (!rep.transitive()) throw std::invalid_argument("fixity_scan requires a transitive action");

    // BFS over the group: each element is reached once, at its word length.
    int id = group.index_of(Mat2{1, 0, 0, 1});
    std::unordered_map<int, std::pair<int, std::string>> info;  // elt -> (length, word)
    info[id] = {0, ""};
    std::deque<int> queue{id};
    std::unordered_map<int, Permutation> action;  // elt -> induced permutation
    action.emplace(id, Permutation::identity(n));

    FixityScan scan;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        auto [len, word] = info[x];
        if (len >= word_length_bound) continue;
        for (size_t gi = 0; gi < group.generator_indices.size(); ++gi) {
            int y = group.multiply_indices(x, group.generator_indices[gi]);
            if (info.count(y)) continue;
            bool inverse_letter = gi % 2 == 1;  // generators stored as s, s^-1 pairs
            info[y] = {len + 1, word + letter_for(static_cast<int>(gi / 2), inverse_letter)};
            action.emplace(y, action.at(x).then(action_of_generator[gi]));
            queue.push_back(y);
        }
    }
    for (const auto& [elt, lw] : info) {
        const Permutation& perm = action.at(elt);
        if (perm.is_identity()) continue;  // nontrivial images only
        FixityRow row;
        row.word = lw.second;
        row.length = lw.first;
        row.fix = fixed_points(perm);
        row.index = n;
        row.ratio = static_cast<double>(row.fix) / n;
        scan.max_ratio = std::max(scan.max_ratio, row.ratio);
        if (row.fix >= 1)
            scan.max_exponent =
                std::max(scan.max_exponent, std::log(static_cast<double>(row.fix)) / std::log(n));
        scan.rows.push_back(std::move(row));
    }
    std::sort(scan.rows.begin(), scan.rows.end(), [](const FixityRow& a, const FixityRow& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.word < b.word;
    });
    return scan;
}

Permutation projective_action_of(const FiniteMatrixGroup& group, const Mat2& m) {
    int p = group.modulus;
    Permutation perm;
    perm.image.resize(p + 1);
    auto point_index = [p](int x, int y) {
        // normalize [x:y]
        if (y != 0) {
            // x/y mod p via Fermat (p prime in our uses)
            int inv = 1, base = mod(y, p), e = p - 2;
            while (e) {
                if (e & 1) inv = mod(inv * base, p);
                base = mod(base * base, p);
                e >>= 1;
            }
            return mod(x * inv, p);
        }
        return p;  // [1:0]
    };
    for (int i = 0; i <= p; ++i) {
        int x = i < p ? i : 1;
        int y = i < p ? 1 : 0;
        perm.image[i] = point_index(mod(m.a * x + m.b * y, p), mod(m.c * x + m.d * y, p));
    }
    perm.validate();
    return perm;
}

std::vector<Permutation> projective_line_action(const FiniteMatrixGroup& group,
                                                const std::vector<Mat2>& mats) {
    std::vector<Permutation> actions;
    actions.reserve(mats.size());
    for (const auto& m : mats) actions.push_back(projective_action_of(group, m));
    return actions;
}

std::vector<Mat2> psl_elements(const FiniteMatrixGroup& group) {
    int N = group.modulus;
    std::vector<Mat2> reps;
    for (const auto& m : group.elements) {
        Mat2 neg{mod(-m.a, N), mod(-m.b, N), mod(-m.c, N), mod(-m.d, N)};
        if (m < neg || m == neg) reps.push_back(m);
    }
    return reps;
}

// --- cell complexes --------------------------------------------------------

void CellComplex::validate() const {
    if (vertex_count <= 0) throw std::invalid_argument("complex needs vertices");
    for (const auto& [t, h] : one_cells)
        if (t < 0 || t >= vertex_count || h < 0 || h >= vertex_count)
            throw std::invalid_argument("1-cell endpoint out of range");
    for (const auto& word : two_cells) {
        if (word.empty()) throw std::invalid_argument("empty 2-cell boundary word");
        int at = -1, start = -1;
        for (int letter : word) {
            int e = std::abs(letter) - 1;
            if (letter == 0 || e >= static_cast<int>(one_cells.size()))
                throw std::invalid_argument("2-cell letter out of range");
            int from = letter > 0 ? one_cells[e].first : one_cells[e].second;
            int to = letter > 0 ? one_cells[e].second : one_cells[e].first;
            if (at < 0) start = from;
            else if (at != from) throw std::invalid_argument("2-cell word is not a walk");
            at = to;
        }
        if (at != start) throw std::invalid_argument("2-cell word is not closed");
    }
}

int CellComplex::cells(int k) const {
    switch (k) {
        case 0: return vertex_count;
        case 1: return static_cast<int>(one_cells.size());
        case 2: return static_cast<int>(two_cells.size());
        default: return 0;
    }
}

std::vector<std::vector<long long>> CellComplex::boundary1() const {
    std::vector<std::vector<long long>> d1(vertex_count,
                                           std::vector<long long>(one_cells.size(), 0));
    for (size_t e = 0; e < one_cells.size(); ++e) {
        d1[one_cells[e].second][e] += 1;
        d1[one_cells[e].first][e] -= 1;
    }
    return d1;
}

std::vector<std::vector<long long>> CellComplex::boundary2() const {
    std::vector<std::vector<long long>> d2(one_cells.size(),
                                           std::vector<long long>(two_cells.size(), 0));
    for (size_t f = 0; f < two_cells.size(); ++f)
        for (int letter : two_cells[f]) {
            int e = std::abs(letter) - 1;
            d2[e][f] += letter > 0 ? 1 : -1;
        }
    return d2;
}

CellComplex circle_complex() {
    CellComplex c;
    c.vertex_count = 1;
    c.one_cells = {{0, 0}};
    return c;
}

CellComplex wedge_of_circles(int k) {
    CellComplex c;
    c.vertex_count = 1;
    for (int i = 0; i < k; ++i) c.one_cells.push_back({0, 0});
    return c;
}

CellComplex torus_complex() {
    CellComplex c;
    c.vertex_count = 1;
    c.one_cells = {{0, 0}, {0, 0}};
    c.two_cells = {{1, 2, -1, -2}};
    return c;
}

CellComplex genus2_complex() {
    CellComplex c;
    c.vertex_count = 1;
    c.one_cells = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
    c.two_cells = {{1, 2, -1, -2, 3, 4, -3, -4}};
    return c;
}

CellComplex filled_triangle() {
    CellComplex c;
    c.vertex_count = 3;
    c.one_cells = {{0, 1}, {1, 2}, {0, 2}};
    c.two_cells = {{1, 2, -3}};
    return c;
}

CellComplex build_cover(const CellComplex& base, const std::vector<Permutation>& assignment) {
    base.validate();
    if (assignment.size() != base.one_cells.size())
        throw std::invalid_argument("need one permutation per 1-cell");
    int sheets = assignment.empty() ? 1 : assignment[0].degree();
    for (const auto& p : assignment) {
        p.validate();
        if (p.degree() != sheets) throw std::invalid_argument("sheet count mismatch");
    }
    // 2-cell monodromy must be trivial for the boundary words to lift
    for (const auto& word : base.two_cells) {
        Permutation mono = Permutation::identity(sheets);
        for (int letter : word) {
            int e = std::abs(letter) - 1;
            mono = mono.then(letter > 0 ? assignment[e] : assignment[e].inverse());
        }
        if (!mono.is_identity())
            throw std::invalid_argument("ill-formed assignment: 2-cell monodromy is nontrivial");
    }

    CellComplex cover;
    cover.vertex_count = base.vertex_count * sheets;
    auto vid = [&](int v, int s) { return s * base.vertex_count + v; };
    auto eid = [&](int e, int s) { return s * static_cast<int>(base.one_cells.size()) + e; };
    cover.one_cells.resize(base.one_cells.size() * sheets);
    for (size_t e = 0; e < base.one_cells.size(); ++e)
        for (int s = 0; s < sheets; ++s)
            cover.one_cells[eid(static_cast<int>(e), s)] = {vid(base.one_cells[e].first, s),
                                                            vid(base.one_cells[e].second, assignment[e](s))};
    for (const auto& word : base.two_cells)
        for (int s = 0; s < sheets; ++s) {
            std::vector<int> lifted;
            int sheet = s;
            for (int letter : word) {
                int e = std::abs(letter) - 1;
                if (letter > 0) {
                    lifted.push_back(eid(e, sheet) + 1);
                    sheet = assignment[e](sheet);
                } else {
                    sheet = assignment[e].inverse()(sheet);
                    lifted.push_back(-(eid(e, sheet) + 1));
                }
            }
            cover.two_cells.push_back(std::move(lifted));
        }
    cover.validate();
    return cover;
}

bool cover_assignment_transitive(const std::vector<Permutation>& assignment) {
    if (assignment.empty()) return true;
    int n = assignment[0].degree();
    std::vector<bool> seen(n, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (const auto& p : assignment)
            for (int t : {p(s), p.inverse()(s)})
                if (!seen[t]) {
                    seen[t] = true;
                    ++count;
                    queue.push_back(t);
                }
    }
    return count == n;
}

std::vector<Permutation> read_assignment(std::istream& in, int expected_cells) {
    std::vector<Permutation> perms;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Permutation p;
        int v;
        while (ls >> v) p.image.push_back(v);
        p.validate();
        perms.push_back(std::move(p));
    }
    if (static_cast<int>(perms.size()) != expected_cells)
        throw std::invalid_argument("assignment line count does not match 1-cells");
    return perms;
}

} // namespace bslab
