#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bslab/graphs.hpp"

namespace bslab {

// Permutation of {0..n-1} in one-line notation.
struct Permutation {
    std::vector<int> image;

    int degree() const { return static_cast<int>(image.size()); }
    int operator()(int i) const { return image[i]; }
    bool is_identity() const;
    Permutation inverse() const;
    Permutation then(const Permutation& other) const;  // apply *this first
    static Permutation identity(int n);
    void validate() const;  // bijection check
};

// Transitive-or-not permutation representation with base point 0.
struct PermRep {
    int degree = 0;
    std::vector<Permutation> generators;

    void validate() const;
    bool transitive() const;  // orbit of the base point covers everything
};

// Coset graph: vertices {0..n-1}, one labeled edge per (point, generator),
// rooted at the base point.
RootedGraph schreier_graph(const PermRep& rep);

// 2x2 matrix over Z/N, row-major.
struct Mat2 {
    int a, b, c, d;
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator<(const Mat2& o) const;
};

// All of SL(2, Z/N), materialized, with the default symmetric generator set
// {(1,+-1;0,1), (1,0;+-1,1)}.
struct FiniteMatrixGroup {
    int modulus = 0;
    std::vector<Mat2> elements;          // element 0 is the identity
    std::vector<int> generator_indices;  // indices into elements, inverse-closed

    int order() const { return static_cast<int>(elements.size()); }
    int index_of(const Mat2& m) const;   // -1 if absent
    Mat2 multiply(const Mat2& x, const Mat2& y) const;
    int multiply_indices(int i, int j) const;
    int inverse_index(int i) const;
};

uint64_t sl2_order(int N);  // |SL(2, Z/N)|

// Materializes SL(2, Z/N); guarded by |SL2| <= 10^6.
FiniteMatrixGroup sl2_quotient(int N);

// Cayley graph on the stored generator set, rooted at the identity.
// Throws if the generator set contains the identity or is not symmetric.
RootedGraph cayley_graph(const FiniteMatrixGroup& group);

// Cayley graph of any finite group given by a multiplication oracle.
RootedGraph cayley_graph_table(int order, const std::function<int(int, int)>& multiply,
                               const std::function<int(int)>& inverse, int identity,
                               const std::vector<int>& generators);

// Length of the shortest cycle (loops count 1, parallel pairs count 2);
// nullopt for forests.
std::optional<int> girth(const RootedGraph& g);

int fixed_points(const Permutation& g);

struct FixityRow {
    std::string word;   // letters over generators: 'a','A','b','B',...
    int length = 0;     // word length of the group element (BFS metric)
    int fix = 0;
    int index = 0;      // number of points N
    double ratio = 0;
};

struct FixityScan {
    std::vector<FixityRow> rows;
    double max_ratio = 0;          // max fix/N over nontrivial images
    double max_exponent = 0;       // max log(fix)/log(N), fix >= 1, nontrivial
};

// Enumerates the group elements of word length <= L (breadth-first over the
// generator set, so lengths are the genuine word metric) and evaluates the
// fixed-point count of each nontrivial image in the given transitive action.
// `action_of_generator[i]` is the permutation induced by generator i.
FixityScan fixity_scan(const FiniteMatrixGroup& group,
                       const std::vector<Permutation>& action_of_generator,
                       int word_length_bound);

// Projective line P^1(Z/p) action of SL2 (odd prime p): point x in 0..p-1 is
// [x:1], point p is [1:0]. -I acts trivially, so this is the PSL action.
std::vector<Permutation> projective_line_action(const FiniteMatrixGroup& group,
                                                const std::vector<Mat2>& mats);
Permutation projective_action_of(const FiniteMatrixGroup& group, const Mat2& m);

// All elements of PSL(2,Z/p) as canonical +-pair representatives.
std::vector<Mat2> psl_elements(const FiniteMatrixGroup& group);

// --- Cell complexes of dimension <= 2 -------------------------------------

// 1-cells are directed (tail, head); 2-cells are closed edge walks given by
// signed 1-based edge indices (+k forward along edge k-1, -k backward).
struct CellComplex {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> one_cells;
    std::vector<std::vector<int>> two_cells;

    void validate() const;  // index bounds + closed-walk check
    int cells(int k) const;

    // Integer boundary matrices, dense row-major: d1 is n0 x n1, d2 is n1 x n2.
    std::vector<std::vector<long long>> boundary1() const;
    std::vector<std::vector<long long>> boundary2() const;
};

CellComplex circle_complex();                 // one 0-cell, one 1-cell
CellComplex wedge_of_circles(int k);          // one 0-cell, k loops
CellComplex torus_complex();                  // a b a^-1 b^-1
CellComplex genus2_complex();                 // [a,b][c,d]
CellComplex filled_triangle();

// n-fold cover from a per-1-cell permutation assignment on sheets {0..n-1}.
// Every 2-cell boundary word must have identity sheet monodromy.
CellComplex build_cover(const CellComplex& base, const std::vector<Permutation>& assignment);

bool cover_assignment_transitive(const std::vector<Permutation>& assignment);

// Permutation assignment text format: one line per 1-cell, one-line notation.
std::vector<Permutation> read_assignment(std::istream& in, int expected_cells);

} // namespace bslab
