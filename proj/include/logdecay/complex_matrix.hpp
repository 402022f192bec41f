#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace logdecay {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

// Dense square complex matrix, row-major. Sized at construction; entries are
// expected to stay finite (validate_finite enforces it at API boundaries).
class ComplexMatrix {
public:
    ComplexMatrix() : dim_(0) {}
    explicit ComplexMatrix(int dim);
    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }
    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

private:
    int dim_;
    std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

ComplexMatrix adjoint(const ComplexMatrix& m);

cplx trace(const ComplexMatrix& m);
double norm_frobenius(const ComplexMatrix& m);
double norm_one(const ComplexMatrix& m);   // max absolute column sum
double norm_inf(const ComplexMatrix& m);   // max absolute row sum
double norm_max(const ComplexMatrix& m);   // max |entry|

// <u, v> = sum_i u_i * conj(v_i): linear in the first slot.
cplx inner(const ComplexVector& u, const ComplexVector& v);
double norm(const ComplexVector& v);
ComplexVector normalized(const ComplexVector& v);

ComplexVector operator+(const ComplexVector& u, const ComplexVector& v);
ComplexVector operator-(const ComplexVector& u, const ComplexVector& v);
ComplexVector operator*(cplx s, const ComplexVector& v);

bool all_finite(const ComplexMatrix& m);
bool all_finite(const ComplexVector& v);

// Throws std::invalid_argument naming `what` if any entry is NaN/Inf.
void validate_finite(const ComplexMatrix& m, const std::string& what);
void validate_finite(const ComplexVector& v, const std::string& what);

}  // namespace logdecay
