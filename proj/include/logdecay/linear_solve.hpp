#pragma once

#include "logdecay/complex_matrix.hpp"

namespace logdecay {

// LU factorization with partial pivoting. Throws std::runtime_error on a
// numerically singular pivot (|pivot| <= singular_tol * max initial |entry|).
class LuFactorization {
public:
    explicit LuFactorization(const ComplexMatrix& m, double singular_tol = 1e-14);

    ComplexVector solve(const ComplexVector& b) const;
    ComplexMatrix solve(const ComplexMatrix& b) const;  // column-wise
    ComplexMatrix inverse() const;
    cplx determinant() const;
    double smallest_pivot() const { return smallest_pivot_; }

private:
    ComplexMatrix lu_;
    std::vector<int> perm_;
    int sign_;
    double smallest_pivot_;
};

// (M + lambda I)^{-1}. A numerically singular shift (lambda close to an
// eigenvalue of -M) raises std::runtime_error naming the offending shift.
ComplexMatrix resolvent_apply(const ComplexMatrix& m, cplx lambda);

// Smallest/largest singular values via the Hermitian eigenproblem of M*M.
double smallest_singular_value(const ComplexMatrix& m);
double norm_two(const ComplexMatrix& m);  // operator 2-norm

}  // namespace logdecay
