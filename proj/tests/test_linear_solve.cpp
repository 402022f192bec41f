#include <doctest.h>

#include <cmath>

#include "logdecay/linear_solve.hpp"
#include "logdecay/rng.hpp"

using namespace logdecay;

TEST_CASE("LU solve and inverse residuals on random systems") {
    Rng rng(2024);
    for (int dim : {1, 2, 7, 25}) {
        const ComplexMatrix a = rng.complex_matrix(dim);
        const ComplexVector b = rng.unit_vector(dim);
        const LuFactorization lu(a);
        const ComplexVector x = lu.solve(b);
        const ComplexVector r = a * x - b;
        CHECK(norm(r) <= 1e-10 * (norm_frobenius(a) * norm(x) + 1.0));

        const ComplexMatrix inv = lu.inverse();
        const ComplexMatrix shouldBeI = a * inv - ComplexMatrix::identity(dim);
        CHECK(norm_frobenius(shouldBeI) <= 1e-9 * std::max(1.0, norm_frobenius(a) * norm_frobenius(inv)));
    }
}

TEST_CASE("LU determinant on a hand case and singular detection") {
    ComplexMatrix a(2);
    a(0, 0) = 1.0; a(0, 1) = 2.0; a(1, 0) = 3.0; a(1, 1) = 4.0;
    CHECK(std::abs(LuFactorization(a).determinant() - cplx(-2.0, 0.0)) <= 1e-14);

    ComplexMatrix s(2);  // rank one
    s(0, 0) = 1.0; s(0, 1) = 2.0; s(1, 0) = 2.0; s(1, 1) = 4.0;
    CHECK_THROWS_AS(LuFactorization{s}, std::runtime_error);
}

TEST_CASE("resolvent_apply inverts the shifted operator and flags spectral shifts") {
    ComplexMatrix m(2);
    m(0, 0) = 1.0; m(1, 1) = 2.0;

    const cplx lambda(0.5, 1.0);
    const ComplexMatrix r = resolvent_apply(m, lambda);
    ComplexMatrix shifted(m);
    shifted(0, 0) += lambda;
    shifted(1, 1) += lambda;
    CHECK(norm_frobenius(shifted * r - ComplexMatrix::identity(2)) <= 1e-12);

    // lambda = -1 lies in -spectrum(diag(1,2)): singular shift must be reported
    CHECK_THROWS_AS(resolvent_apply(m, cplx(-1.0, 0.0)), std::runtime_error);
}

TEST_CASE("singular values: hand cases and unitary invariance") {
    ComplexMatrix d(2);
    d(0, 0) = 2.0;  // diag(2, 0)
    CHECK(smallest_singular_value(d) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(norm_two(d) == doctest::Approx(2.0).epsilon(1e-12));

    ComplexMatrix j(2);
    j(0, 0) = 1.0; j(0, 1) = 1.0; j(1, 1) = 1.0;
    // singular values of the Jordan block: golden ratio and its inverse
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    CHECK(norm_two(j) == doctest::Approx(phi).epsilon(1e-12));
    CHECK(smallest_singular_value(j) == doctest::Approx(1.0 / phi).epsilon(1e-12));

    ComplexMatrix rot(2);  // unitary
    rot(0, 1) = -1.0; rot(1, 0) = 1.0;
    CHECK(norm_two(rot) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(smallest_singular_value(rot) == doctest::Approx(1.0).epsilon(1e-13));
}
