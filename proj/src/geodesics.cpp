#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <quadmath.h>
#include <stdexcept>
#include <thread>

#include "bslab/hyperbolic.hpp"

namespace bslab {

namespace {

struct DMat {
    double a, b, c, d;
};

inline DMat dmul(const DMat& x, const DMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline double dfrob(const DMat& m) {
    return std::sqrt(m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d);
}

inline QMat qmul(const QMat& x, const QMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline QMat qinv(const QMat& m) { return {m.d, -m.b, -m.c, m.a}; }

std::vector<int> cyclic_canonical_key(const std::vector<int>& word) {
    // minimum over rotations of the word and of its inverse
    auto min_rotation = [](const std::vector<int>& w) {
        std::vector<int> best = w;
        std::vector<int> rot = w;
        for (size_t i = 1; i < w.size(); ++i) {
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            if (rot < best) best = rot;
        }
        return best;
    };
    std::vector<int> inv(word.rbegin(), word.rend());
    for (int& x : inv) x = -x;
    std::vector<int> a = min_rotation(word), b = min_rotation(inv);
    return a < b ? a : b;
}

bool is_proper_power(const std::vector<int>& word) {
    size_t n = word.size();
    for (size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (size_t i = p; i < n && periodic; ++i) periodic = word[i] == word[i - p];
        if (periodic) return true;
    }
    return false;
}

std::vector<int> cyclically_reduce(std::vector<int> w) {
    // free reduction
    std::vector<int> r;
    for (int x : w) {
        if (!r.empty() && r.back() == -x) r.pop_back();
        else r.push_back(x);
    }
    // cyclic reduction
    while (r.size() >= 2 && r.front() == -r.back()) {
        r.erase(r.begin());
        r.pop_back();
    }
    return r;
}

struct Candidate {
    std::vector<int> word;  // cyclically reduced free word
};

// Enumerate conjugacy candidates inside one pants subgroup. The two slot
// holonomies generate it freely and their slot words never cancel against
// each other, so super-words expand to reduced free words of the same
// length. Traces are taken on the local (unconjugated) matrices.
void enumerate_vertex_classes(const PantsSurface& surf, int pants, int max_len,
                              __float128 trace_bound, std::vector<Candidate>& out) {
    struct Super {
        QMat m;
        std::vector<int> word;
        int weight;
        int inverse;  // index of the inverse super-letter
    };
    std::vector<Super> letters;
    for (int slot : {0, 1}) {
        QMat m = surf.local[pants][slot];
        std::vector<int> w = surf.slot_words[pants][slot];
        std::vector<int> winv(w.rbegin(), w.rend());
        for (int& x : winv) x = -x;
        int base = static_cast<int>(letters.size());
        letters.push_back({m, w, static_cast<int>(w.size()), base + 1});
        letters.push_back({qinv(m), winv, static_cast<int>(w.size()), base});
    }
    // the two slot words must not cancel against each other, otherwise the
    // weight cutoff would not equal the free word length
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (letters[i].inverse == j) continue;
            if (letters[i].word.back() == -letters[j].word.front())
                throw std::logic_error("pants slot words cancel at a junction");
        }
    // iterative DFS over super-words
    struct Frame {
        int letter;
        QMat prod;
        int weight;
    };
    std::vector<Frame> stack;
    std::vector<int> path;
    auto emit = [&](const QMat& prod) {
        __float128 tr = prod.a + prod.d;
        if (fabsq(tr) >= trace_bound) return;
        std::vector<int> word;
        for (int li : path)
            word.insert(word.end(), letters[li].word.begin(), letters[li].word.end());
        word = cyclically_reduce(std::move(word));
        if (word.empty()) return;
        out.push_back({std::move(word)});
    };
    // recursive lambda via explicit stack of (letter, depth)
    std::function<void(int, QMat, int)> dfs = [&](int last, QMat prod, int weight) {
        for (int li = 0; li < 4; ++li) {
            if (last >= 0 && letters[last].inverse == li) continue;
            int w = weight + letters[li].weight;
            if (w > max_len) continue;
            QMat next = qmul(prod, letters[li].m);
            path.push_back(li);
            // cyclically reduced as a super-word: last letter vs first
            if (letters[path.front()].inverse != li) emit(next);
            dfs(li, next, w);
            path.pop_back();
        }
    };
    dfs(-1, QMat{1, 0, 0, 1}, 0);
}

// Full enumeration over the free generators: FKM-style prenecklace pruning
// (keeps at least one rotation of every class), double-precision matrices
// with a running rounding-error bound, suspects re-checked in quad precision
// by the caller.
struct MixedSuspect {
    std::vector<int> word;
};

void enumerate_mixed_prefix(const std::vector<DMat>& letter_mat,
                            const std::vector<double>& letter_norm, int alphabet, int first,
                            int max_len, double trace_bound, std::vector<MixedSuspect>& out) {
    // letters are indexed 0..alphabet-1; inverse of l is l^1
    struct Node {
        int letter;
        int period;
        DMat prod;
        double frob_bound;
        double err_bound;
    };
    constexpr double kUnit = 1.1e-16;
    std::vector<Node> stack;
    std::vector<int> word(max_len);
    stack.reserve(max_len + 1);
    DMat m0 = letter_mat[first];
    word[0] = first;
    double err0 = kUnit * letter_norm[first];
    stack.push_back({first, 1, m0, letter_norm[first], err0});
    if (std::abs(m0.a + m0.d) < trace_bound + 8 * err0) out.push_back({{first}});
    std::vector<int> child(max_len + 1, -1);
    while (!stack.empty()) {
        int depth = static_cast<int>(stack.size());
        int& next = child[depth];
        ++next;
        if (next >= alphabet || depth >= max_len) {
            child[depth] = -1;
            stack.pop_back();
            continue;
        }
        int c = next;
        const Node& top = stack.back();
        if ((top.letter ^ 1) == c) continue;  // reduced words only
        // prenecklace pruning against the periodic predecessor
        int p = top.period;
        int cmp_idx = depth - p;
        int prev_letter = word[cmp_idx];
        if (c < prev_letter) continue;
        int period = c == prev_letter ? p : depth + 1;
        DMat prod = dmul(top.prod, letter_mat[c]);
        double frob = top.frob_bound * letter_norm[c];
        double err = top.err_bound * letter_norm[c] + 2 * kUnit * frob;
        word[depth] = c;
        // cyclically reduced leaf with a small enough trace -> suspect
        if ((word[0] ^ 1) != c) {
            double tr = std::abs(prod.a + prod.d);
            if (tr < trace_bound + 8 * err) {
                MixedSuspect s;
                s.word.assign(word.begin(), word.begin() + depth + 1);
                out.push_back(std::move(s));
            }
        }
        stack.push_back({c, period, prod, frob, err});
    }
}

} // namespace

std::vector<Geodesic> short_geodesics(const PantsSurface& surface, int word_length_bound,
                                      double tau, bool allow_collar_prune) {
    if (word_length_bound < 1) throw std::invalid_argument("word length bound must be >= 1");
    if (tau <= 0) return {};
    int L = word_length_bound;
    double trace_threshold = 2 * std::cosh(tau / 2);

    std::vector<Candidate> candidates;
    for (int p = 0; p < surface.portion.pants_count; ++p)
        enumerate_vertex_classes(surface, p, L, trace_threshold + 1e-9, candidates);

    // classes crossing an internal cuff are at least twice the collar
    // halfwidth long; skip the expensive enumeration when tau cannot reach
    double max_internal = 0;
    for (double l : surface.internal_lengths) max_internal = std::max(max_internal, l);
    bool need_mixed = !surface.internal_lengths.empty() &&
                      (!allow_collar_prune || tau > 2 * collar_halfwidth(max_internal));

    if (need_mixed) {
        int gens = static_cast<int>(surface.free_generators.size());
        int alphabet = 2 * gens;
        std::vector<DMat> letter_mat(alphabet);
        std::vector<double> letter_norm(alphabet);
        for (int g = 0; g < gens; ++g) {
            const QMat& q = surface.free_generators[g];
            DMat m{static_cast<double>(q.a), static_cast<double>(q.b), static_cast<double>(q.c),
                   static_cast<double>(q.d)};
            QMat qi = qinv(q);
            DMat mi{static_cast<double>(qi.a), static_cast<double>(qi.b),
                    static_cast<double>(qi.c), static_cast<double>(qi.d)};
            letter_mat[2 * g] = m;
            letter_mat[2 * g + 1] = mi;
            letter_norm[2 * g] = dfrob(m);
            letter_norm[2 * g + 1] = dfrob(mi);
        }
        // parallel over the first letter, deterministic merge order
        unsigned threads = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::vector<MixedSuspect>> per_first(alphabet);
        std::atomic<int> cursor{0};
        auto worker = [&]() {
            for (;;) {
                int first = cursor.fetch_add(1);
                if (first >= alphabet) return;
                enumerate_mixed_prefix(letter_mat, letter_norm, alphabet, first, L,
                                       trace_threshold, per_first[first]);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i + 1 < threads; ++i) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
        for (const auto& bucket : per_first)
            for (const auto& suspect : bucket) {
                // signed-letter encoding: letter 2g is +(g+1), 2g+1 is -(g+1)
                std::vector<int> word;
                word.reserve(suspect.word.size());
                for (int l : suspect.word) word.push_back(l % 2 == 0 ? l / 2 + 1 : -(l / 2 + 1));
                candidates.push_back({std::move(word)});
            }
    }

    // quad-precision verification, primitivity, dedup, cuff marking
    std::vector<QMat> gen_inv;
    for (const auto& g : surface.free_generators) gen_inv.push_back(qinv(g));
    auto eval_trace = [&](const std::vector<int>& word) {
        QMat prod{1, 0, 0, 1};
        for (int letter : word)
            prod = qmul(prod, letter > 0 ? surface.free_generators[letter - 1]
                                         : gen_inv[-letter - 1]);
        return static_cast<double>(fabsq(prod.a + prod.d));
    };
    std::map<std::vector<int>, std::vector<int>> cuff_keys;  // key -> slot word
    for (int p = 0; p < surface.portion.pants_count; ++p)
        for (int s = 0; s < 3; ++s) {
            const auto& w = surface.slot_words[p][s];
            cuff_keys.emplace(cyclic_canonical_key(w), w);
        }

    std::map<std::vector<int>, Geodesic> dedup;
    for (const auto& cand : candidates) {
        if (cand.word.empty() || static_cast<int>(cand.word.size()) > L) continue;
        if (is_proper_power(cand.word)) continue;
        double abs_tr = eval_trace(cand.word);
        if (abs_tr <= 2.0) continue;  // not hyperbolic: no closed geodesic
        double length = 2 * std::acosh(abs_tr / 2);
        if (length >= tau) continue;
        auto key = cyclic_canonical_key(cand.word);
        if (dedup.count(key)) continue;
        Geodesic g;
        g.word = key;
        g.word_text = surface.word_string(key);
        g.length = length;
        g.is_cuff = cuff_keys.count(key) > 0;
        dedup.emplace(std::move(key), std::move(g));
    }
    std::vector<Geodesic> result;
    for (auto& [key, g] : dedup) result.push_back(std::move(g));
    std::sort(result.begin(), result.end(), [](const Geodesic& a, const Geodesic& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.word_text < b.word_text;
    });
    return result;
}

} // namespace bslab
