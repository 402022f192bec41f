#include <doctest.h>

#include <cmath>
#include <limits>

#include "logdecay/complex_matrix.hpp"
#include "logdecay/rng.hpp"

using namespace logdecay;

TEST_CASE("adjoint is an exact involution and conjugate-transposes entries") {
    Rng rng(42);
    for (int dim : {1, 2, 5, 17}) {
        const ComplexMatrix a = rng.complex_matrix(dim);
        const ComplexMatrix astar = adjoint(a);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) CHECK(astar(i, j) == std::conj(a(j, i)));
        const ComplexMatrix back = adjoint(astar);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) CHECK(back(i, j) == a(i, j));  // bitwise
    }
}

TEST_CASE("inner product is linear in the first slot and conjugate in the second") {
    const ComplexVector u{cplx(1, 2), cplx(0, -1)};
    const ComplexVector v{cplx(3, 0), cplx(1, 1)};
    CHECK(inner(u, v) == std::conj(inner(v, u)));
    const cplx s(0.5, -2.0);
    CHECK(std::abs(inner(s * u, v) - s * inner(u, v)) < 1e-15);
    CHECK(std::abs(inner(u, s * v) - std::conj(s) * inner(u, v)) < 1e-15);
    CHECK(norm(u) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
}

TEST_CASE("matrix arithmetic against hand values") {
    ComplexMatrix a(2);
    a(0, 0) = 1.0; a(0, 1) = 1.0; a(1, 1) = 1.0;  // [[1,1],[0,1]]
    const ComplexMatrix a2 = a * a;
    CHECK(a2(0, 0) == cplx(1.0, 0.0));
    CHECK(a2(0, 1) == cplx(2.0, 0.0));
    CHECK(a2(1, 0) == cplx(0.0, 0.0));
    CHECK(a2(1, 1) == cplx(1.0, 0.0));

    const ComplexVector x{cplx(std::sqrt(3.0) / 2.0, 0.0), cplx(0.5, 0.0)};
    const ComplexVector ax = a * x;
    CHECK(ax[0].real() == doctest::Approx(std::sqrt(3.0) / 2.0 + 0.5).epsilon(1e-15));
    CHECK(ax[1].real() == doctest::Approx(0.5).epsilon(1e-15));

    CHECK(trace(a2) == cplx(2.0, 0.0));
    CHECK(norm_frobenius(a) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(norm_one(a) == doctest::Approx(2.0));
    CHECK(norm_inf(a) == doctest::Approx(2.0));
}

TEST_CASE("finite-entry validation") {
    ComplexMatrix a(2);
    a(0, 0) = 1.0;
    CHECK_NOTHROW(validate_finite(a, "test"));
    a(1, 0) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(validate_finite(a, "test"), std::invalid_argument);
    ComplexVector v{cplx(0.0, std::numeric_limits<double>::infinity())};
    CHECK_THROWS_AS(validate_finite(v, "test"), std::invalid_argument);
    CHECK_THROWS_AS(normalized(ComplexVector{cplx(0, 0)}), std::invalid_argument);
}

TEST_CASE("rng streams are deterministic and fork-independent") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng base(7);
    base.uniform();  // advancing the parent must not affect forks
    Rng f1 = base.fork(3);
    Rng f2 = Rng(7).fork(3);
    for (int i = 0; i < 10; ++i) CHECK(f1.next_u64() == f2.next_u64());

    Rng c(99);
    const ComplexVector u = c.unit_vector(8);
    CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-14));
}
