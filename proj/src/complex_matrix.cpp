#include "logdecay/complex_matrix.hpp"

#include <cmath>

namespace logdecay {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matrix dimension mismatch: " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("matrix dim must be >= 1");
    a_.assign(static_cast<size_t>(dim) * dim, cplx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs, rhs);
    const int n = lhs.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx aik = lhs(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
    const int n = m.dim();
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("matrix-vector dimension mismatch");
    ComplexVector out(static_cast<size_t>(n), cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += m(i, j) * v[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = s;
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    const int n = m.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = std::conj(m(j, i));
    return out;
}

cplx trace(const ComplexMatrix& m) {
    cplx t = 0.0;
    for (int i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

double norm_frobenius(const ComplexMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

double norm_one(const ComplexMatrix& m) {
    double best = 0.0;
    for (int j = 0; j < m.dim(); ++j) {
        double s = 0.0;
        for (int i = 0; i < m.dim(); ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

double norm_inf(const ComplexMatrix& m) {
    double best = 0.0;
    for (int i = 0; i < m.dim(); ++i) {
        double s = 0.0;
        for (int j = 0; j < m.dim(); ++j) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

double norm_max(const ComplexMatrix& m) {
    double best = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) best = std::max(best, std::abs(m(i, j)));
    return best;
}

cplx inner(const ComplexVector& u, const ComplexVector& v) {
    if (u.size() != v.size()) throw std::invalid_argument("vector dimension mismatch");
    cplx s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
    return s;
}

double norm(const ComplexVector& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

ComplexVector normalized(const ComplexVector& v) {
    const double n = norm(v);
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    ComplexVector out(v);
    for (auto& x : out) x /= n;
    return out;
}

ComplexVector operator+(const ComplexVector& u, const ComplexVector& v) {
    if (u.size() != v.size()) throw std::invalid_argument("vector dimension mismatch");
    ComplexVector out(u);
    for (size_t i = 0; i < v.size(); ++i) out[i] += v[i];
    return out;
}

ComplexVector operator-(const ComplexVector& u, const ComplexVector& v) {
    if (u.size() != v.size()) throw std::invalid_argument("vector dimension mismatch");
    ComplexVector out(u);
    for (size_t i = 0; i < v.size(); ++i) out[i] -= v[i];
    return out;
}

ComplexVector operator*(cplx s, const ComplexVector& v) {
    ComplexVector out(v);
    for (auto& x : out) x *= s;
    return out;
}

bool all_finite(const ComplexMatrix& m) {
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

bool all_finite(const ComplexVector& v) {
    for (const auto& x : v)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

void validate_finite(const ComplexMatrix& m, const std::string& what) {
    if (!all_finite(m)) throw std::invalid_argument(what + ": non-finite entries");
}

void validate_finite(const ComplexVector& v, const std::string& what) {
    if (!all_finite(v)) throw std::invalid_argument(what + ": non-finite entries");
}

}  // namespace logdecay
