#include <algorithm>
#include <cmath>
#include <deque>
#include <quadmath.h>
#include <stdexcept>

#include "bslab/hyperbolic.hpp"

namespace bslab {

namespace qm {

inline QMat mul(const QMat& x, const QMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline QMat inverse(const QMat& m) { return {m.d, -m.b, -m.c, m.a}; }

inline QMat identity() { return {1, 0, 0, 1}; }

inline __float128 trace(const QMat& m) { return m.a + m.d; }

// Raw Fricke pants triple: all traces negative, X*Y*Z = I exactly.
struct RawPants {
    QMat x, y, z;
};

RawPants build_raw(__float128 l1, __float128 l2, __float128 l3) {
    __float128 x1 = -2 * coshq(l1 / 2);
    __float128 x2 = -2 * coshq(l2 / 2);
    __float128 x3 = -2 * coshq(l3 / 2);
    __float128 zeta = (x3 - sqrtq(x3 * x3 - 4)) / 2;
    QMat X{x1, -1, 1, 0};
    QMat Y{0, zeta, -1 / zeta, x2};
    QMat Z = inverse(mul(X, Y));
    return {X, Y, Z};
}

// S with S M S^-1 = diag(lambda_big, 1/lambda_big), lambda_big the eigenvalue
// of largest magnitude. M must be hyperbolic (|tr| > 2).
QMat standardize(const QMat& m) {
    __float128 tr = trace(m);
    __float128 disc = tr * tr - 4;
    if (disc <= 0) throw std::invalid_argument("standardize needs a hyperbolic matrix");
    __float128 root = sqrtq(disc);
    __float128 lam_big = tr < 0 ? (tr - root) / 2 : (tr + root) / 2;
    __float128 lam_small = 1 / lam_big;  // det = 1
    auto eigvec = [&](__float128 lam, __float128& vx, __float128& vy) {
        // rows of (M - lam I) are orthogonal to the eigenvector of the other
        // eigenvalue; solve (M - lam) v = 0 by the larger of two candidates
        __float128 c1x = m.b, c1y = lam - m.a;
        __float128 c2x = lam - m.d, c2y = m.c;
        __float128 n1 = fabsq(c1x) + fabsq(c1y), n2 = fabsq(c2x) + fabsq(c2y);
        if (n1 >= n2) { vx = c1x; vy = c1y; } else { vx = c2x; vy = c2y; }
        __float128 norm = sqrtq(vx * vx + vy * vy);
        vx /= norm;
        vy /= norm;
        if (vx < 0 || (vx == 0 && vy < 0)) { vx = -vx; vy = -vy; }
    };
    __float128 px, py, qx, qy;
    eigvec(lam_big, px, py);
    eigvec(lam_small, qx, qy);
    __float128 det = px * qy - py * qx;
    if (det < 0) { qx = -qx; qy = -qy; det = -det; }
    if (det == 0) throw std::runtime_error("degenerate eigenvector pair");
    __float128 scale = sqrtq(det);
    QMat s_inv{px / scale, qx / scale, py / scale, qy / scale};
    return inverse(s_inv);
}

QMat twist_diag(__float128 s) { return {expq(s / 2), 0, 0, expq(-s / 2)}; }

} // namespace qm

void TreePortion::validate() const {
    if (pants_count < 1) throw std::invalid_argument("portion needs at least one pants");
    std::vector<std::array<bool, 3>> used(pants_count, {false, false, false});
    for (const auto& e : internal_edges) {
        for (auto [p, s] : {std::pair{e.pants_u, e.slot_u}, std::pair{e.pants_v, e.slot_v}}) {
            if (p < 0 || p >= pants_count || s < 0 || s > 2)
                throw std::invalid_argument("edge endpoint out of range");
            if (used[p][s]) throw std::invalid_argument("cuff slot glued twice");
            used[p][s] = true;
        }
        if (e.pants_u == e.pants_v) throw std::invalid_argument("self-gluing not supported");
    }
    // connectivity
    std::vector<bool> seen(pants_count, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
        int p = queue.front();
        queue.pop_front();
        for (const auto& e : internal_edges) {
            int other = -1;
            if (e.pants_u == p) other = e.pants_v;
            if (e.pants_v == p) other = e.pants_u;
            if (other >= 0 && !seen[other]) {
                seen[other] = true;
                ++count;
                queue.push_back(other);
            }
        }
    }
    if (count != pants_count) throw std::invalid_argument("tree portion is disconnected");
}

bool TreePortion::slot_is_internal(int pants, int slot) const {
    for (const auto& e : internal_edges)
        if ((e.pants_u == pants && e.slot_u == slot) || (e.pants_v == pants && e.slot_v == slot))
            return true;
    return false;
}

TreePortion TreePortion::trivalent_ball(int radius) {
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    TreePortion portion;
    portion.pants_count = 1;
    std::vector<std::pair<int, int>> frontier;  // (pants, first free slot)
    frontier.push_back({0, 0});
    // root has three free slots; children have two (slot 0 is the up-cuff)
    for (int level = 0; level < radius; ++level) {
        std::vector<std::pair<int, int>> next;
        for (auto [p, first_slot] : frontier) {
            for (int s = first_slot; s <= 2; ++s) {
                int child = portion.pants_count++;
                portion.internal_edges.push_back({p, s, child, 0});
                next.push_back({child, 1});
            }
        }
        frontier = std::move(next);
    }
    return portion;
}

namespace {

std::vector<int> word_inverse(const std::vector<int>& w) {
    std::vector<int> inv(w.rbegin(), w.rend());
    for (int& x : inv) x = -x;
    return inv;
}

std::vector<int> word_concat(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r = a;
    for (int x : b) {
        if (!r.empty() && r.back() == -x) r.pop_back();
        else r.push_back(x);
    }
    return r;
}

} // namespace

double PantsSurface::cuff_length(int pants, int slot) const {
    for (size_t e = 0; e < portion.internal_edges.size(); ++e) {
        const auto& edge = portion.internal_edges[e];
        if ((edge.pants_u == pants && edge.slot_u == slot) ||
            (edge.pants_v == pants && edge.slot_v == slot))
            return internal_lengths[e];
    }
    return boundary_length;
}

MobiusTransform PantsSurface::boundary_matrix(int pants, int slot) const {
    const QMat& q = boundary[pants][slot];
    return {static_cast<double>(q.a), static_cast<double>(q.b), static_cast<double>(q.c),
            static_cast<double>(q.d)};
}

std::vector<std::vector<int>> PantsSurface::internal_cuff_words() const {
    std::vector<std::vector<int>> words;
    for (const auto& e : portion.internal_edges)
        words.push_back(slot_words[e.pants_u][e.slot_u]);
    return words;
}

std::string PantsSurface::word_string(const std::vector<int>& word) const {
    std::string s;
    for (int letter : word) {
        int g = std::abs(letter) - 1;
        char base = static_cast<char>('a' + g % 26);
        s.push_back(letter > 0 ? base : static_cast<char>(base - 'a' + 'A'));
        if (g >= 26) s += std::to_string(g / 26);
    }
    return s;
}

PantsSurface glue_forest(const TreePortion& portion, const std::vector<double>& lengths,
                         const std::vector<double>& twists, double boundary_length) {
    portion.validate();
    if (lengths.size() != portion.internal_edges.size() ||
        twists.size() != portion.internal_edges.size())
        throw std::invalid_argument("need one length and twist per internal edge");
    for (double l : lengths)
        if (l <= 0) throw std::invalid_argument("cuff lengths must be positive");
    for (double t : twists)
        if (t < 0 || t >= 1) throw std::invalid_argument("twists must lie in [0,1)");
    if (boundary_length <= 0) throw std::invalid_argument("boundary cuff length must be positive");

    PantsSurface surf;
    surf.portion = portion;
    surf.internal_lengths = lengths;
    surf.internal_twists = twists;
    surf.boundary_length = boundary_length;
    int P = portion.pants_count;
    surf.boundary.resize(P);
    surf.local.resize(P);
    surf.slot_words.resize(P);

    // local raw triples
    std::vector<qm::RawPants> raw(P);
    for (int p = 0; p < P; ++p) {
        __float128 l0 = surf.cuff_length(p, 0), l1 = surf.cuff_length(p, 1),
                   l2 = surf.cuff_length(p, 2);
        raw[p] = qm::build_raw(l0, l1, l2);
        surf.local[p] = {raw[p].x, raw[p].y, raw[p].z};
    }

    std::vector<QMat> conj(P, qm::identity());
    std::vector<bool> placed(P, false);

    auto place_boundary = [&](int p) {
        QMat h = conj[p];
        QMat hinv = qm::inverse(h);
        surf.boundary[p][0] = qm::mul(qm::mul(h, raw[p].x), hinv);
        surf.boundary[p][1] = qm::mul(qm::mul(h, raw[p].y), hinv);
        surf.boundary[p][2] = qm::mul(qm::mul(h, raw[p].z), hinv);
    };

    // root pants in the identity frame; free generators start with its cuffs
    placed[0] = true;
    place_boundary(0);
    surf.free_generators.push_back(surf.boundary[0][0]);
    surf.free_generators.push_back(surf.boundary[0][1]);
    surf.slot_words[0][0] = {1};
    surf.slot_words[0][1] = {2};
    surf.slot_words[0][2] = word_concat(word_inverse({2}), word_inverse({1}));  // Z = Y^-1 X^-1

    // BFS over internal edges until all pants placed
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t e = 0; e < portion.internal_edges.size(); ++e) {
            auto edge = portion.internal_edges[e];
            if (placed[edge.pants_u] == placed[edge.pants_v]) continue;
            if (!placed[edge.pants_u]) {
                std::swap(edge.pants_u, edge.pants_v);
                std::swap(edge.slot_u, edge.slot_v);
            }
            int u = edge.pants_u, su = edge.slot_u;
            int v = edge.pants_v, sv = edge.slot_v;
            QMat target = qm::inverse(surf.boundary[u][su]);
            const QMat& local_cuff = sv == 0 ? raw[v].x : (sv == 1 ? raw[v].y : raw[v].z);
            QMat s_t = qm::standardize(target);
            QMat s_v = qm::standardize(local_cuff);
            __float128 twist_len =
                static_cast<__float128>(twists[e]) * static_cast<__float128>(lengths[e]);
            conj[v] = qm::mul(qm::mul(qm::inverse(s_t), qm::twist_diag(twist_len)), s_v);
            placed[v] = true;
            place_boundary(v);

            // words: the glued cuff from v's side is the inverse of u's word;
            // one fresh generator on the first unglued slot; the last slot is
            // forced by the pants relation B0 B1 B2 = I.
            surf.slot_words[v][sv] = word_inverse(surf.slot_words[u][su]);
            int o1 = sv == 0 ? 1 : 0;
            int o2 = sv == 2 ? 1 : 2;
            surf.free_generators.push_back(surf.boundary[v][o1]);
            int fresh = static_cast<int>(surf.free_generators.size());
            surf.slot_words[v][o1] = {fresh};
            const auto& w0 = surf.slot_words[v][0];
            const auto& w1 = surf.slot_words[v][1];
            const auto& w2 = surf.slot_words[v][2];
            if (o2 == 2)
                surf.slot_words[v][2] = word_concat(word_inverse(w1), word_inverse(w0));
            else if (o2 == 1)
                surf.slot_words[v][1] = word_concat(word_inverse(w0), word_inverse(w2));
            else
                surf.slot_words[v][0] = word_concat(word_inverse(w2), word_inverse(w1));
            progress = true;
        }
    }
    return surf;
}

double collar_halfwidth(double cuff_length) {
    return std::asinh(1.0 / std::sinh(cuff_length / 2));
}

} // namespace bslab
