#include "logdecay/linear_solve.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "logdecay/eig.hpp"

namespace logdecay {

LuFactorization::LuFactorization(const ComplexMatrix& m, double singular_tol)
    : lu_(m), perm_(static_cast<size_t>(m.dim())), sign_(1), smallest_pivot_(0.0) {
    const int n = lu_.dim();
    for (int i = 0; i < n; ++i) perm_[static_cast<size_t>(i)] = i;

    const double scale = norm_max(m);
    const double tiny = singular_tol * (scale > 0.0 ? scale : 1.0);

    smallest_pivot_ = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu_(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double cand = std::abs(lu_(i, k));
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (best <= tiny) {
            std::ostringstream msg;
            msg << "LU factorization: numerically singular matrix (pivot " << best
                << " at column " << k << ", threshold " << tiny << ")";
            throw std::runtime_error(msg.str());
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[static_cast<size_t>(k)], perm_[static_cast<size_t>(piv)]);
            sign_ = -sign_;
        }
        smallest_pivot_ = std::min(smallest_pivot_, best);
        for (int i = k + 1; i < n; ++i) {
            lu_(i, k) /= lu_(k, k);
            const cplx lik = lu_(i, k);
            if (lik == cplx(0.0, 0.0)) continue;
            for (int j = k + 1; j < n; ++j) lu_(i, j) -= lik * lu_(k, j);
        }
    }
}

ComplexVector LuFactorization::solve(const ComplexVector& b) const {
    const int n = lu_.dim();
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("LU solve: right-hand side dimension mismatch");
    ComplexVector x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = b[static_cast<size_t>(perm_[static_cast<size_t>(i)])];
    for (int i = 1; i < n; ++i) {
        cplx s = x[static_cast<size_t>(i)];
        for (int j = 0; j < i; ++j) s -= lu_(i, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        cplx s = x[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] = s / lu_(i, i);
    }
    return x;
}

ComplexMatrix LuFactorization::solve(const ComplexMatrix& b) const {
    const int n = lu_.dim();
    if (b.dim() != n) throw std::invalid_argument("LU solve: right-hand side dimension mismatch");
    ComplexMatrix x(n);
    ComplexVector col(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] = b(i, j);
        const ComplexVector sol = solve(col);
        for (int i = 0; i < n; ++i) x(i, j) = sol[static_cast<size_t>(i)];
    }
    return x;
}

ComplexMatrix LuFactorization::inverse() const { return solve(ComplexMatrix::identity(lu_.dim())); }

cplx LuFactorization::determinant() const {
    cplx d = static_cast<double>(sign_);
    for (int i = 0; i < lu_.dim(); ++i) d *= lu_(i, i);
    return d;
}

ComplexMatrix resolvent_apply(const ComplexMatrix& m, cplx lambda) {
    validate_finite(m, "resolvent_apply operator");
    ComplexMatrix shifted(m);
    for (int i = 0; i < m.dim(); ++i) shifted(i, i) += lambda;
    try {
        return LuFactorization(shifted).inverse();
    } catch (const std::runtime_error&) {
        std::ostringstream msg;
        msg << "resolvent_apply: shift lambda=(" << lambda.real() << "," << lambda.imag()
            << ") is numerically in -spectrum(M); M + lambda*I is singular";
        throw std::runtime_error(msg.str());
    }
}

double smallest_singular_value(const ComplexMatrix& m) {
    const ComplexMatrix gram = adjoint(m) * m;
    const HermitianEigen eig = eig_hermitian(gram);
    const double lo = eig.values.front();
    return std::sqrt(std::max(0.0, lo));
}

double norm_two(const ComplexMatrix& m) {
    const ComplexMatrix gram = adjoint(m) * m;
    const HermitianEigen eig = eig_hermitian(gram);
    return std::sqrt(std::max(0.0, eig.values.back()));
}

}  // namespace logdecay
