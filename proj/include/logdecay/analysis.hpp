#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logdecay/complex_matrix.hpp"

namespace logdecay {

// Smallest eigenvalue of the Hermitian part (A + A*)/2. In finite dimension
// this equals the infimum of Re<Ax,x> over unit vectors x, i.e. the sharpest
// uniform accretivity constant of A.
double numerical_abscissa(const ComplexMatrix& a);

// Smallest real part over the spectrum of A.
double spectral_abscissa(const ComplexMatrix& a);

// gap(A, x) = Re<A^2 x, x>|x|^2 + |Ax|^2 |x|^2 - 2 (Re<Ax, x>)^2.
//
// Nonnegative for every x exactly when every decay curve t -> |e^{-tA}x| is
// log-convex; a negative value at some x certifies a bump in the decay rate.
// Homogeneous of degree 4 in x. Zero vector -> std::invalid_argument.
double criterion_gap(const ComplexMatrix& a, const ComplexVector& x);

struct CriterionWitness {
    ComplexVector x;   // unit vector
    double gap = 0.0;  // criterion_gap(a, x), recomputed from x on return
};

struct MinimizeOptions {
    int starts = 32;        // projected-gradient restarts
    int samples = 10000;    // additional random unit vectors evaluated directly
    int max_iters = 300;    // gradient iterations per start
    std::uint64_t seed = 0; // all randomness forks off this seed
};

// Searches the unit sphere for the smallest criterion gap: multi-start
// projected gradient descent with Armijo backtracking plus dense random
// sampling. Deterministic for a fixed seed (each start forks its own
// substream, so scheduling cannot change the result). The returned gap is an
// upper bound on the true infimum -- evidence, not a certificate.
CriterionWitness criterion_minimize(const ComplexMatrix& a, const MinimizeOptions& opts = {});

// |Ax|^2 - |A*x|^2 for one vector. Zero vector is allowed (gives 0).
double hyponormality_form(const ComplexMatrix& a, const ComplexVector& x);

// Smallest eigenvalue of the self-commutator A*A - AA*; the worst value of
// |Ax|^2 - |A*x|^2 over unit x. The self-commutator is traceless, so for
// matrices the defect is always <= 0, with equality exactly when A is normal.
double hyponormality_defect(const ComplexMatrix& a);

// Minimum of |Ax|^2 - |A*x|^2 over unit x supported on the index set `mask`
// (0-based, treated as a set): the smallest eigenvalue of the corresponding
// principal submatrix of A*A - AA*. This is how a matrix can be "hyponormal
// on a subspace" even though the unrestricted defect must be negative.
// Empty mask or out-of-range index -> std::invalid_argument.
double restricted_hyponormality_defect(const ComplexMatrix& a, const std::vector<int>& mask);

// Spectral norm of A*A - AA*; zero exactly for normal A.
double normality_defect(const ComplexMatrix& a);

enum class AccretivityClass { not_accretive, accretive, positively_accretive };

std::string to_string(AccretivityClass c);

struct ClassifyOptions {
    MinimizeOptions minimize;
    // Tolerance for declaring the two abscissas equal and for the sign band
    // of the accretivity class; <= 0 selects 1e-6 * (1 + ||A||_F).
    double abscissa_tol = 0.0;
    // If nonempty, also report the restricted hyponormality defect over this
    // index set.
    std::vector<int> mask;
};

struct ClassificationReport {
    double numerical_abscissa = 0.0;
    double spectral_abscissa = 0.0;
    bool abscissa_equal = false;
    double abscissa_tol = 0.0;  // tolerance actually used
    double criterion_min_gap = 0.0;
    ComplexVector criterion_witness;  // unit vector attaining criterion_min_gap
    double hyponormality_defect = 0.0;
    std::optional<double> restricted_hyponormality_defect;
    double normality_defect = 0.0;
    AccretivityClass accretivity_class = AccretivityClass::not_accretive;
    std::string note;
};

// One-stop diagnostic bundle. The accretivity class comes from the sign of
// the numerical abscissa with a tolerance band; on a finite-dimensional space
// the unit sphere is compact, so "numerical abscissa > 0" already yields a
// uniform lower bound -- there is no gap between positively and strictly
// accretive here, and the report notes that.
ClassificationReport classify(const ComplexMatrix& a, const ClassifyOptions& opts = {});

// Gap of the sesquilinear-form inequality
//   (Re a(u,u))^2 <= Re(a_sym(Au, u)) <u, u>
// where a(u, v) = <(form_a + form_b) u, v> and a_sym is the Hermitian
// symmetrization a_sym(u, v) = (a(u, v) + conj(a(v, u))) / 2. Only the sum
// form_a + form_b matters; passing the operator split into, say, a diffusion
// part and a drift part is a convenience. When form_a + form_b = A and
// |u| = 1 this equals criterion_gap(A, u) / 2.
// Zero vector -> std::invalid_argument.
double variational_criterion_gap(const ComplexMatrix& form_a, const ComplexMatrix& form_b,
                                 const ComplexMatrix& a, const ComplexVector& u);

struct SectorSample {
    cplx lambda;
    double value = 0.0;  // |lambda| * ||(A + lambda I)^{-1}||_2
};

struct SectorProbeResult {
    double delta = 0.0;
    std::vector<SectorSample> samples;
    double c_estimate = 0.0;     // max of value over kept samples
    std::vector<cplx> skipped;   // shifts where A + lambda I was numerically singular
};

// Estimates the resolvent bound sup |lambda| ||(A + lambda I)^{-1}|| over the
// closed sector of half-opening delta + pi/2 by sampling its two extreme rays
// arg lambda = +-(delta + pi/2 - margin), moduli log-spaced in [1e-3, 1e3]
// with `per_ray` points each. Shifts that make A + lambda I numerically
// singular are skipped and recorded. delta outside (0, pi/2) or per_ray < 2
// -> std::invalid_argument.
SectorProbeResult sectoriality_probe(const ComplexMatrix& a, double delta, int per_ray = 61);

struct SearchOptions {
    int draws = 100;              // family members to sample
    int dim = 4;                  // dimension for families with a free dimension
    MinimizeOptions minimize;     // per-member sphere search
    std::uint64_t seed = 0;       // family sampling seed
    double violation_threshold = 1e-8;
};

struct SearchHit {
    ComplexMatrix matrix;
    CriterionWitness witness;
};

// Draws matrices from a named family and returns each member whose minimized
// criterion gap falls below -violation_threshold, together with the witness
// (whose gap is recomputed directly from the matrix and vector). Families:
//   "jordan"            2x2 blocks [[a, b], [0, a]] with a in [0.1, 2], b in [0, 4]
//   "normal_accretive"  unitary conjugates of diagonals with Re > 0 (uses dim)
//   "complex_symmetric" accretive 2x2 matrices equal to their plain transpose
// Unknown family -> std::invalid_argument listing the available names.
std::vector<SearchHit> counterexample_search(const std::string& family,
                                             const SearchOptions& opts = {});

}  // namespace logdecay
