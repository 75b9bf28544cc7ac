#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace bslab {

// Real 2x2 matrix of determinant 1, read projectively (up to sign).
struct MobiusTransform {
    double a = 1, b = 0, c = 0, d = 1;

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    MobiusTransform inverse() const { return {d, -b, -c, a}; }
    MobiusTransform operator*(const MobiusTransform& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    void validate() const;  // |det - 1| <= 1e-10
};

// min(|A - B|, |A + B|) in Frobenius norm; the PSL comparison.
double projective_distance(const MobiusTransform& A, const MobiusTransform& B);

// 2 * arccosh(|tr|/2) for |tr| > 2, else 0.
double translation_length(const MobiusTransform& m);

// Upper-half-plane distance between z and w, cosh d = 1 + |z-w|^2/(2 Im z Im w).
double uhp_distance(double zx, double zy, double wx, double wy);
void apply_mobius(const MobiusTransform& m, double zx, double zy, double& wx, double& wy);

// Boundary holonomies (X, Y, Z) of a hyperbolic pair of pants with geodesic
// boundary lengths (l1, l2, l3): X*Y*Z = identity projectively and
// trace(X) = 2 cosh(l1/2), etc.
struct PantsTriple {
    MobiusTransform x, y, z;
};
PantsTriple build_pants(double l1, double l2, double l3);

// --- trees of pants ---------------------------------------------------------

// Finite connected portion of a 3-valent graph: every pants vertex has three
// cuff slots; internal edges pair two slots, unpaired slots are boundary.
struct TreePortion {
    struct GluedEdge {
        int pants_u = 0, slot_u = 0;
        int pants_v = 0, slot_v = 0;
    };
    int pants_count = 1;
    std::vector<GluedEdge> internal_edges;

    void validate() const;                       // slot usage + connectivity
    bool slot_is_internal(int pants, int slot) const;
    static TreePortion trivalent_ball(int radius);  // 3-valent tree, radius 0..2+
};

// Quad-precision 2x2 matrix; pants surfaces store their holonomies in quad
// precision because glued boundary matrices of small-cuff forests carry
// entries ~ e^{2 diam} and the relation defect scales with their product.
struct QMat {
    __float128 a, b, c, d;
};

struct PantsSurface {
    TreePortion portion;
    std::vector<double> internal_lengths;  // parallel to portion.internal_edges
    std::vector<double> internal_twists;   // fractions of cuff length, in [0,1)
    double boundary_length = 1.0;          // cuff length of every boundary slot

    // boundary[p][s] = global holonomy of pants p, cuff slot s
    std::vector<std::array<QMat, 3>> boundary;
    // local[p][s] = the same cuffs before conjugation into the global frame;
    // traces of words inside one pants are computed here (conjugation-invariant)
    std::vector<std::array<QMat, 3>> local;

    // free generating set of the glued group and, per (pants, slot), the cuff
    // as a word over it (signed 1-based generator indices)
    std::vector<QMat> free_generators;
    std::vector<std::array<std::vector<int>, 3>> slot_words;

    double cuff_length(int pants, int slot) const;
    MobiusTransform boundary_matrix(int pants, int slot) const;  // double view
    std::vector<std::vector<int>> internal_cuff_words() const;   // one per internal edge
    std::string word_string(const std::vector<int>& word) const;
};

// Fenchel-Nielsen gluing across the portion: adjacent pants are conjugated so
// glued boundary axes coincide with opposite orientations, then twisted by a
// hyperbolic translation of length t_c * l_c along the common axis.
PantsSurface glue_forest(const TreePortion& portion, const std::vector<double>& lengths,
                         const std::vector<double>& twists, double boundary_length = 1.0);

struct Geodesic {
    std::vector<int> word;  // signed generator indices, cyclically reduced
    std::string word_text;
    double length = 0;
    bool is_cuff = false;   // conjugate to an internal or boundary cuff
};

// Conjugacy-class representatives of cyclically reduced words of length <= L
// in the free generators whose translation length is below tau. Primitive
// classes only; a word and its inverse count once. Sound always; complete
// relative to L. Classes crossing an internal cuff are skipped without
// enumeration when 2 * collar-halfwidth(min internal cuff) >= tau (collar
// lemma); pass allow_collar_prune = false to force the full enumeration.
std::vector<Geodesic> short_geodesics(const PantsSurface& surface, int word_length_bound,
                                      double tau, bool allow_collar_prune = true);

double collar_halfwidth(double cuff_length);  // arcsinh(1 / sinh(l/2))

// --- heat kernels and cylinders ---------------------------------------------

struct HeatQuery {
    double t = 1.0;
    int dimension = 2;        // 2 or 3
    double tail_tolerance = 1e-12;
    double margulis_cutoff = 0.5;

    void validate() const;
};

// Heat kernel p_t(rho) of hyperbolic d-space at distance rho, d in {2,3}.
// d = 3 is the closed form (4 pi t)^{-3/2} (rho/sinh rho) e^{-t - rho^2/(4t)};
// d = 2 is Millson's integral evaluated by adaptive quadrature.
double heat_kernel(const HeatQuery& q, double rho);

// Empirical Gaussian-shape constant: max over the grid of
// p_t(rho) * t^{d/2} * e^{rho^2/(5t)}.
double heat_kernel_gaussian_constant(int dimension, const std::vector<double>& ts,
                                     const std::vector<double>& rhos);

struct HyperbolicCylinder {
    double tau = 0.1;  // core geodesic length, > 0

    void validate() const;
};

// Distance from a point at perpendicular distance rho off the core axis to
// its gamma^n image: cosh d = 1 + cosh^2(rho) (cosh(n tau) - 1).
double cylinder_orbit_distance(const HyperbolicCylinder& c, double rho, long long n);

// f_t at distance rho from the axis: 2 sum_{n>=1} p_t(d_n), truncated with a
// certified Gaussian tail bound below the query's tail tolerance.
double f_t_cylinder(const HyperbolicCylinder& c, double rho, const HeatQuery& q);

struct ThinPartReport {
    double rho_thin = 0;                // displacement-epsilon radius
    double vol_thin_per_period = 0;     // 2 tau sinh(rho_thin)
    double integral_f_over_thin = 0;
    double ratio = 0;
};

// Requires tau < epsilon (otherwise there is no thin part) and dimension 2.
ThinPartReport thin_part_report(const HyperbolicCylinder& c, const HeatQuery& q);

} // namespace bslab
