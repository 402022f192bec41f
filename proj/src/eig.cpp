#include "logdecay/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace logdecay {

namespace {

double off_diagonal_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& h, double hermitian_tol_scale) {
    validate_finite(h, "eig_hermitian input");
    const int n = h.dim();
    const double scale = norm_frobenius(h);

    double asym = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) asym += std::norm(h(i, j) - std::conj(h(j, i)));
    asym = std::sqrt(asym);
    if (asym > hermitian_tol_scale * std::max(scale, 1e-300)) {
        std::ostringstream msg;
        msg << "eig_hermitian: input is not Hermitian (||H - H*|| = " << asym
            << " exceeds " << hermitian_tol_scale << " * ||H|| = "
            << hermitian_tol_scale * scale << ")";
        throw std::invalid_argument(msg.str());
    }

    // Work on the exactly Hermitian average; Jacobi then preserves Hermiticity.
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    if (n > 1) {
        const double target = 1e-14 * std::max(scale, 1e-300);
        const int max_sweeps = 60;
        int sweep = 0;
        while (off_diagonal_norm(a) > target && sweep++ < max_sweeps) {
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const cplx apq = a(p, q);
                    const double gq = std::abs(apq);
                    if (gq <= 1e-300) {
                        a(p, q) = a(q, p) = 0.0;
                        continue;
                    }
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();
                    // Annihilate the pivot: t^2 + 2*tau*t - 1 = 0 with
                    // tau = (a_qq - a_pp) / (2|a_pq|); take the smaller root for stability.
                    const double tau = (aqq - app) / (2.0 * gq);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const cplx s = (apq / gq) * (t * c);
                    // Columns: [p q] <- [p q] * [[c, s],[-conj(s), c]]
                    for (int k = 0; k < n; ++k) {
                        const cplx akp = a(k, p), akq = a(k, q);
                        a(k, p) = c * akp - std::conj(s) * akq;
                        a(k, q) = s * akp + c * akq;
                        const cplx vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp - std::conj(s) * vkq;
                        v(k, q) = s * vkp + c * vkq;
                    }
                    // Rows: [p; q] <- [[c, -s],[conj(s), c]] * [p; q]
                    for (int k = 0; k < n; ++k) {
                        const cplx apk = a(p, k), aqk = a(q, k);
                        a(p, k) = c * apk - s * aqk;
                        a(q, k) = std::conj(s) * apk + c * aqk;
                    }
                    a(p, q) = a(q, p) = 0.0;
                    a(p, p) = cplx(a(p, p).real(), 0.0);
                    a(q, q) = cplx(a(q, q).real(), 0.0);
                }
            }
        }
        if (off_diagonal_norm(a) > 1e-10 * std::max(scale, 1e-300))
            throw std::runtime_error("eig_hermitian: Jacobi sweep limit reached without convergence");
    }

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigen out;
    out.values.resize(static_cast<size_t>(n));
    out.vectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<size_t>(k)];
        out.values[static_cast<size_t>(k)] = a(src, src).real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, src);
    }
    return out;
}

std::vector<double> hermitian_spectrum(const ComplexMatrix& h, double hermitian_tol_scale) {
    return eig_hermitian(h, hermitian_tol_scale).values;
}

namespace {

// Householder reduction to upper Hessenberg form, in place.
void hessenberg_reduce(ComplexMatrix& a) {
    const int n = a.dim();
    for (int k = 0; k < n - 2; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += std::norm(a(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm <= 1e-300) continue;

        const cplx x0 = a(k + 1, k);
        const cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx(1.0, 0.0);
        const cplx alpha = -phase * colnorm;

        ComplexVector w(static_cast<size_t>(n), cplx(0.0, 0.0));
        for (int i = k + 1; i < n; ++i) w[static_cast<size_t>(i)] = a(i, k);
        w[static_cast<size_t>(k + 1)] -= alpha;
        double wn = 0.0;
        for (int i = k + 1; i < n; ++i) wn += std::norm(w[static_cast<size_t>(i)]);
        if (wn <= 1e-300) continue;
        const double beta = 2.0 / wn;

        // A <- (I - beta w w*) A
        for (int j = k; j < n; ++j) {
            cplx s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(w[static_cast<size_t>(i)]) * a(i, j);
            s *= beta;
            for (int i = k + 1; i < n; ++i) a(i, j) -= s * w[static_cast<size_t>(i)];
        }
        // A <- A (I - beta w w*)
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += a(i, j) * w[static_cast<size_t>(j)];
            s *= beta;
            for (int j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(w[static_cast<size_t>(j)]);
        }
        a(k + 1, k) = alpha;
        for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

struct Givens {
    double c;
    cplx s;
};

// G * [a; b] = [r; 0] with G = [[c, s], [-conj(s), c]], c real.
Givens make_givens(cplx a, cplx b, cplx& r) {
    Givens g{1.0, cplx(0.0, 0.0)};
    const double absa = std::abs(a), absb = std::abs(b);
    if (absb == 0.0) {
        r = a;
        return g;
    }
    const double t = std::hypot(absa, absb);
    if (absa == 0.0) {
        g.c = 0.0;
        g.s = std::conj(b) / absb;
        r = absb;
        return g;
    }
    const cplx sign_a = a / absa;
    g.c = absa / t;
    g.s = sign_a * std::conj(b) / t;
    r = sign_a * t;
    return g;
}

// Eigenvalues of [[a, b], [c, d]].
void eig_2x2(cplx a, cplx b, cplx c, cplx d, cplx& l1, cplx& l2) {
    const cplx half_tr = 0.5 * (a + d);
    const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    l1 = half_tr + disc;
    l2 = half_tr - disc;
}

}  // namespace

std::vector<cplx> eig_general(const ComplexMatrix& a_in) {
    validate_finite(a_in, "eig_general input");
    const int n = a_in.dim();
    std::vector<cplx> eigs(static_cast<size_t>(n));
    if (n == 1) {
        eigs[0] = a_in(0, 0);
        return eigs;
    }

    ComplexMatrix h(a_in);
    hessenberg_reduce(h);

    const double scale = std::max(norm_frobenius(h), 1e-300);
    const double eps = 2.220446049250313e-16;

    int hi = n - 1;
    int iter_this_eig = 0;
    long total_iters = 0;
    const long max_total = 60L * n;

    while (hi > 0) {
        // Deflate negligible subdiagonals.
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double diag_scale =
                std::max(std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)), 1e-6 * scale);
            if (sub <= eps * diag_scale) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == hi) {  // 1x1 block isolated
            eigs[static_cast<size_t>(hi)] = h(hi, hi);
            --hi;
            iter_this_eig = 0;
            continue;
        }
        if (lo == hi - 1) {  // solve trailing 2x2 directly
            cplx l1, l2;
            eig_2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), l1, l2);
            // Assign the root closer to the bottom diagonal entry last.
            if (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) std::swap(l1, l2);
            eigs[static_cast<size_t>(hi)] = l2;
            eigs[static_cast<size_t>(hi - 1)] = l1;
            hi -= 2;
            iter_this_eig = 0;
            continue;
        }

        if (++total_iters > max_total)
            throw std::runtime_error(
                "eig_general: QR iteration failed to converge (subdiagonal stagnation after " +
                std::to_string(max_total) + " steps)");

        // Wilkinson shift from the trailing 2x2 of the active block.
        cplx shift;
        {
            cplx l1, l2;
            eig_2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi), l1, l2);
            shift = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
        }
        if (++iter_this_eig % 20 == 0) {
            // Exceptional shift breaks rare symmetric stagnation.
            shift = h(hi, hi) + cplx(0.75 * std::abs(h(hi, hi - 1)), 0.0);
        }

        // Explicit shifted QR sweep on [lo, hi] via Givens rotations.
        std::vector<Givens> rot(static_cast<size_t>(hi - lo));
        for (int i = lo; i <= hi; ++i) h(i, i) -= shift;
        for (int k = lo; k < hi; ++k) {
            cplx r;
            const Givens g = make_givens(h(k, k), h(k + 1, k), r);
            rot[static_cast<size_t>(k - lo)] = g;
            h(k, k) = r;
            h(k + 1, k) = 0.0;
            for (int j = k + 1; j <= hi; ++j) {
                const cplx x = h(k, j), y = h(k + 1, j);
                h(k, j) = g.c * x + g.s * y;
                h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
        }
        for (int k = lo; k < hi; ++k) {  // H <- H G_k^*
            const Givens g = rot[static_cast<size_t>(k - lo)];
            const int jmax = std::min(k + 2, hi);
            for (int i = lo; i <= jmax; ++i) {
                const cplx x = h(i, k), y = h(i, k + 1);
                h(i, k) = x * g.c + y * std::conj(g.s);
                h(i, k + 1) = -x * g.s + y * g.c;
            }
        }
        for (int i = lo; i <= hi; ++i) h(i, i) += shift;
    }
    if (hi == 0) eigs[0] = h(0, 0);

    std::sort(eigs.begin(), eigs.end(), [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return eigs;
}

}  // namespace logdecay
