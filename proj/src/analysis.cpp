#include "logdecay/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "logdecay/eig.hpp"
#include "logdecay/linear_solve.hpp"
#include "logdecay/rng.hpp"

namespace logdecay {

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    const int n = a.dim();
    ComplexMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

ComplexMatrix self_commutator(const ComplexMatrix& a) {
    const ComplexMatrix ah = adjoint(a);
    return ah * a - a * ah;
}

void require_nonzero(const ComplexVector& x, const char* who) {
    validate_finite(x, who);
    if (x.empty() || norm(x) == 0.0)
        throw std::invalid_argument(std::string(who) + ": zero vector");
}

void require_dim(const ComplexMatrix& a, const ComplexVector& x, const char* who) {
    if (a.dim() != static_cast<int>(x.size()))
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

double numerical_abscissa(const ComplexMatrix& a) {
    validate_finite(a, "numerical_abscissa input");
    return eig_hermitian(hermitian_part(a)).values.front();
}

double spectral_abscissa(const ComplexMatrix& a) {
    const std::vector<cplx> eigs = eig_general(a);
    double lo = std::numeric_limits<double>::infinity();
    for (const cplx& l : eigs) lo = std::min(lo, l.real());
    return lo;
}

double criterion_gap(const ComplexMatrix& a, const ComplexVector& x) {
    require_nonzero(x, "criterion_gap");
    require_dim(a, x, "criterion_gap");
    const ComplexVector ax = a * x;
    const ComplexVector aax = a * ax;
    double n2 = 0.0, ax2 = 0.0;
    for (const cplx& c : x) n2 += std::norm(c);
    for (const cplx& c : ax) ax2 += std::norm(c);
    const double re_a2 = inner(aax, x).real();  // Re<A^2 x, x>
    const double re_a = inner(ax, x).real();    // Re<A x, x>
    return re_a2 * n2 + ax2 * n2 - 2.0 * re_a * re_a;
}

namespace {

// The gap and its Euclidean gradient through three Hermitian matrices:
//   gap(x) = (f1 + f2) |x|^2 - 2 f3^2
// with f1 = <S1 x, x>/2, f2 = <S2 x, x>, f3 = <S3 x, x>/2 and
// S1 = A^2 + (A^2)^*, S2 = A^* A, S3 = A + A^*. For a real-valued quadratic
// form <M x, x> with M Hermitian the steepest-ascent direction under the real
// pairing Re<., .> is 2 M x, which gives
//   grad(x) = (S1 x + 2 S2 x) |x|^2 + 2 (f1 + f2) x - 4 f3 S3 x.
class GapObjective {
public:
    explicit GapObjective(const ComplexMatrix& a)
        : s1_(a * a), s2_(adjoint(a) * a), s3_(hermitian_part(a)) {
        s1_ = hermitian_part(s1_);
        s1_ *= 2.0;  // A^2 + (A^2)^*
        s3_ *= 2.0;  // A + A^*
    }

    double value(const ComplexVector& x) const {
        double f1, f2, f3, n2;
        pieces(x, f1, f2, f3, n2);
        return (f1 + f2) * n2 - 2.0 * f3 * f3;
    }

    double value_and_gradient(const ComplexVector& x, ComplexVector& grad) const {
        double f1, f2, f3, n2;
        pieces(x, f1, f2, f3, n2);
        const ComplexVector s1x = s1_ * x;
        const ComplexVector s2x = s2_ * x;
        const ComplexVector s3x = s3_ * x;
        const size_t n = x.size();
        grad.assign(n, cplx(0.0, 0.0));
        for (size_t i = 0; i < n; ++i)
            grad[i] = (s1x[i] + 2.0 * s2x[i]) * n2 + 2.0 * (f1 + f2) * x[i] - 4.0 * f3 * s3x[i];
        return (f1 + f2) * n2 - 2.0 * f3 * f3;
    }

private:
    void pieces(const ComplexVector& x, double& f1, double& f2, double& f3, double& n2) const {
        f1 = 0.5 * inner(s1_ * x, x).real();
        f2 = inner(s2_ * x, x).real();
        f3 = 0.5 * inner(s3_ * x, x).real();
        n2 = 0.0;
        for (const cplx& c : x) n2 += std::norm(c);
    }

    ComplexMatrix s1_, s2_, s3_;
};

struct SphereMinimum {
    ComplexVector x;
    double value = std::numeric_limits<double>::infinity();
};

// Projected gradient descent on the unit sphere with Armijo backtracking.
SphereMinimum project_and_descend(const GapObjective& obj, ComplexVector x, int max_iters,
                                  double scale) {
    x = normalized(x);
    const double step0 = 1.0 / (1.0 + scale * scale);
    const double grad_floor = 1e-13 * (1.0 + scale * scale);
    ComplexVector grad;
    double f = obj.value_and_gradient(x, grad);
    for (int it = 0; it < max_iters; ++it) {
        // Tangential component on the real sphere |x| = 1.
        const double radial = inner(grad, x).real();
        ComplexVector gt(x.size());
        double gn2 = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            gt[i] = grad[i] - radial * x[i];
            gn2 += std::norm(gt[i]);
        }
        if (std::sqrt(gn2) <= grad_floor) break;

        double alpha = step0;
        bool moved = false;
        for (int bt = 0; bt < 60 && alpha > 1e-18; ++bt, alpha *= 0.5) {
            ComplexVector cand(x.size());
            for (size_t i = 0; i < x.size(); ++i) cand[i] = x[i] - alpha * gt[i];
            cand = normalized(cand);
            const double fc = obj.value(cand);
            if (fc <= f - 1e-4 * alpha * gn2) {
                x = std::move(cand);
                f = obj.value_and_gradient(x, grad);
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return {std::move(x), f};
}

}  // namespace

CriterionWitness criterion_minimize(const ComplexMatrix& a, const MinimizeOptions& opts) {
    validate_finite(a, "criterion_minimize input");
    const int n = a.dim();
    if (n == 0) throw std::invalid_argument("criterion_minimize: empty matrix");
    const GapObjective obj(a);
    const double scale = norm_frobenius(a);
    const Rng base(opts.seed);

    ComplexVector e1(static_cast<size_t>(n), cplx(0.0, 0.0));
    e1[0] = 1.0;
    SphereMinimum best{e1, obj.value(e1)};

    for (int s = 0; s < opts.starts; ++s) {
        Rng r = base.fork(static_cast<std::uint64_t>(s));
        SphereMinimum m = project_and_descend(obj, r.unit_vector(n), opts.max_iters, scale);
        if (m.value < best.value) best = std::move(m);
    }

    // Dense sampling catches basins the restarts miss; polish the best sample.
    Rng sampler = base.fork(0x73616d706cULL);
    SphereMinimum best_sample;
    for (int i = 0; i < opts.samples; ++i) {
        ComplexVector x = sampler.unit_vector(n);
        const double v = obj.value(x);
        if (v < best_sample.value) best_sample = {std::move(x), v};
    }
    if (!best_sample.x.empty()) {
        if (best_sample.value < best.value) best = best_sample;
        SphereMinimum polished =
            project_and_descend(obj, best_sample.x, opts.max_iters, scale);
        if (polished.value < best.value) best = std::move(polished);
    }

    CriterionWitness w;
    w.x = normalized(best.x);
    w.gap = criterion_gap(a, w.x);  // report the directly recomputed value
    return w;
}

double hyponormality_form(const ComplexMatrix& a, const ComplexVector& x) {
    validate_finite(x, "hyponormality_form");
    require_dim(a, x, "hyponormality_form");
    const ComplexVector ax = a * x;
    const ComplexVector ahx = adjoint(a) * x;
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) d += std::norm(ax[i]) - std::norm(ahx[i]);
    return d;
}

double hyponormality_defect(const ComplexMatrix& a) {
    validate_finite(a, "hyponormality_defect input");
    return eig_hermitian(self_commutator(a)).values.front();
}

double restricted_hyponormality_defect(const ComplexMatrix& a, const std::vector<int>& mask) {
    validate_finite(a, "restricted_hyponormality_defect input");
    if (mask.empty())
        throw std::invalid_argument("restricted_hyponormality_defect: empty mask");
    std::vector<int> idx(mask);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (int i : idx)
        if (i < 0 || i >= a.dim())
            throw std::invalid_argument(
                "restricted_hyponormality_defect: mask index " + std::to_string(i) +
                " outside [0, " + std::to_string(a.dim()) + ")");
    const ComplexMatrix c = self_commutator(a);
    const int k = static_cast<int>(idx.size());
    ComplexMatrix sub(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            sub(i, j) = c(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    return eig_hermitian(sub).values.front();
}

double normality_defect(const ComplexMatrix& a) {
    validate_finite(a, "normality_defect input");
    return norm_two(self_commutator(a));
}

std::string to_string(AccretivityClass c) {
    switch (c) {
        case AccretivityClass::not_accretive: return "not-accretive";
        case AccretivityClass::accretive: return "accretive";
        case AccretivityClass::positively_accretive: return "positively-accretive";
    }
    return "unknown";
}

ClassificationReport classify(const ComplexMatrix& a, const ClassifyOptions& opts) {
    ClassificationReport rep;
    rep.numerical_abscissa = numerical_abscissa(a);
    rep.spectral_abscissa = spectral_abscissa(a);
    rep.abscissa_tol =
        opts.abscissa_tol > 0.0 ? opts.abscissa_tol : 1e-6 * (1.0 + norm_frobenius(a));
    rep.abscissa_equal =
        std::abs(rep.numerical_abscissa - rep.spectral_abscissa) <= rep.abscissa_tol;

    const CriterionWitness w = criterion_minimize(a, opts.minimize);
    rep.criterion_min_gap = w.gap;
    rep.criterion_witness = w.x;

    rep.hyponormality_defect = hyponormality_defect(a);
    if (!opts.mask.empty())
        rep.restricted_hyponormality_defect = restricted_hyponormality_defect(a, opts.mask);
    rep.normality_defect = normality_defect(a);

    if (rep.numerical_abscissa > rep.abscissa_tol)
        rep.accretivity_class = AccretivityClass::positively_accretive;
    else if (rep.numerical_abscissa >= -rep.abscissa_tol)
        rep.accretivity_class = AccretivityClass::accretive;
    else
        rep.accretivity_class = AccretivityClass::not_accretive;
    rep.note =
        "on a finite-dimensional space the unit sphere is compact, so a positive "
        "numerical abscissa is automatically a uniform (strict) lower bound";
    return rep;
}

double variational_criterion_gap(const ComplexMatrix& form_a, const ComplexMatrix& form_b,
                                 const ComplexMatrix& a, const ComplexVector& u) {
    require_nonzero(u, "variational_criterion_gap");
    require_dim(a, u, "variational_criterion_gap");
    if (form_a.dim() != a.dim() || form_b.dim() != a.dim())
        throw std::invalid_argument("variational_criterion_gap: form dimension mismatch");
    const ComplexMatrix f = form_a + form_b;
    const ComplexVector au = a * u;
    const ComplexVector fu = f * u;
    double n2 = 0.0;
    for (const cplx& c : u) n2 += std::norm(c);
    const double re_form = inner(fu, u).real();  // Re a(u, u)
    // a_sym(Au, u) = ( a(Au, u) + conj(a(u, Au)) ) / 2
    const cplx t1 = inner(f * au, u);
    const cplx t2 = std::conj(inner(fu, au));
    const double lhs = 0.5 * (t1 + t2).real();
    return lhs * n2 - re_form * re_form;
}

SectorProbeResult sectoriality_probe(const ComplexMatrix& a, double delta, int per_ray) {
    validate_finite(a, "sectoriality_probe input");
    if (!(delta > 0.0 && delta < 0.5 * kPi))
        throw std::invalid_argument("sectoriality_probe: delta must lie in (0, pi/2)");
    if (per_ray < 2)
        throw std::invalid_argument("sectoriality_probe: need at least 2 samples per ray");

    const double margin = 1e-3;  // stay strictly inside the sector
    const double theta = delta + 0.5 * kPi - margin;
    const double r_lo = 1e-3, r_hi = 1e3;
    const double a_scale = norm_frobenius(a);

    SectorProbeResult out;
    out.delta = delta;
    for (int sign : {+1, -1}) {
        for (int k = 0; k < per_ray; ++k) {
            const double frac = static_cast<double>(k) / (per_ray - 1);
            const double r = r_lo * std::pow(r_hi / r_lo, frac);
            const cplx lambda = std::polar(r, sign * theta);
            ComplexMatrix shifted(a);
            for (int i = 0; i < a.dim(); ++i) shifted(i, i) += lambda;
            const double smin = smallest_singular_value(shifted);
            if (smin <= 1e-13 * (a_scale + r)) {
                out.skipped.push_back(lambda);
                continue;
            }
            out.samples.push_back({lambda, r / smin});
            out.c_estimate = std::max(out.c_estimate, r / smin);
        }
    }
    return out;
}

namespace {

// Orthonormal columns from a Gaussian matrix via modified Gram-Schmidt.
ComplexMatrix random_unitary(int dim, Rng& rng) {
    ComplexMatrix q = rng.complex_matrix(dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < j; ++i) {
            cplx proj(0.0, 0.0);
            for (int k = 0; k < dim; ++k) proj += q(k, j) * std::conj(q(k, i));
            for (int k = 0; k < dim; ++k) q(k, j) -= proj * q(k, i);
        }
        double nn = 0.0;
        for (int k = 0; k < dim; ++k) nn += std::norm(q(k, j));
        nn = std::sqrt(nn);
        if (nn < 1e-8) {  // essentially impossible for Gaussian draws
            q(j, j) += 1.0;
            nn = std::sqrt(nn * nn + 1.0);
        }
        for (int k = 0; k < dim; ++k) q(k, j) /= nn;
    }
    return q;
}

ComplexMatrix draw_jordan(Rng& rng) {
    ComplexMatrix m(2);
    const double a = rng.uniform(0.1, 2.0);
    const double b = rng.uniform(0.0, 4.0);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 1) = a;
    return m;
}

ComplexMatrix draw_normal_accretive(int dim, Rng& rng) {
    ComplexMatrix q = random_unitary(dim, rng);
    ComplexVector eigs(static_cast<size_t>(dim));
    for (auto& l : eigs) l = cplx(rng.uniform(0.1, 1.1), rng.uniform(-1.0, 1.0));
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            cplx s(0.0, 0.0);
            for (int k = 0; k < dim; ++k)
                s += q(i, k) * eigs[static_cast<size_t>(k)] * std::conj(q(j, k));
            m(i, j) = s;
        }
    return m;
}

ComplexMatrix draw_complex_symmetric_accretive(Rng& rng) {
    ComplexMatrix g(2);
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) g(i, j) = g(j, i) = rng.complex_normal();
    const double m = numerical_abscissa(g);
    const double shift = std::max(0.0, -m) + 0.05;
    g(0, 0) += shift;
    g(1, 1) += shift;
    return g;
}

}  // namespace

std::vector<SearchHit> counterexample_search(const std::string& family,
                                             const SearchOptions& opts) {
    const bool jordan = family == "jordan";
    const bool normal = family == "normal_accretive";
    const bool sym = family == "complex_symmetric";
    if (!jordan && !normal && !sym)
        throw std::invalid_argument(
            "counterexample_search: unknown family '" + family +
            "' (available: jordan, normal_accretive, complex_symmetric)");
    if (opts.dim < 1)
        throw std::invalid_argument("counterexample_search: dim must be positive");

    const Rng base(opts.seed);
    std::vector<SearchHit> hits;
    for (int d = 0; d < opts.draws; ++d) {
        Rng r = base.fork(static_cast<std::uint64_t>(d));
        ComplexMatrix m = jordan   ? draw_jordan(r)
                          : normal ? draw_normal_accretive(opts.dim, r)
                                   : draw_complex_symmetric_accretive(r);
        CriterionWitness w = criterion_minimize(m, opts.minimize);
        if (w.gap < -opts.violation_threshold) hits.push_back({std::move(m), std::move(w)});
    }
    return hits;
}

}  // namespace logdecay
