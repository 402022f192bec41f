#include "logdecay/analysis.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "logdecay/eig.hpp"
#include "logdecay/rng.hpp"

using namespace logdecay;

namespace {

ComplexMatrix jordan(double a, double b) {
    ComplexMatrix m(2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 1) = a;
    return m;
}

ComplexMatrix rotation90() {
    ComplexMatrix m(2);
    m(0, 1) = -1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix diag2(cplx a, cplx b) {
    ComplexMatrix m(2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

// F diag(eigs) F^* with F the unitary discrete Fourier matrix: a normal
// matrix with prescribed spectrum.
ComplexMatrix normal_with_spectrum(const ComplexVector& eigs) {
    const int n = static_cast<int>(eigs.size());
    const double two_pi = 6.283185307179586476925286766559;
    ComplexMatrix f(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            f(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                                 -two_pi * j * k / n);
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s(0.0, 0.0);
            for (int k = 0; k < n; ++k)
                s += f(i, k) * eigs[static_cast<size_t>(k)] * std::conj(f(j, k));
            m(i, j) = s;
        }
    return m;
}

ComplexMatrix commutator_of_adjoint(const ComplexMatrix& a) {
    const ComplexMatrix ah = adjoint(a);
    return ah * a - a * ah;
}

}  // namespace

TEST_CASE("numerical and spectral abscissas: hand values") {
    CHECK(numerical_abscissa(ComplexMatrix::identity(2)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(numerical_abscissa(diag2(cplx(1.0, 2.0), cplx(3.0, 0.0))) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(numerical_abscissa(jordan(1.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK(spectral_abscissa(diag2(cplx(1.0, 2.0), cplx(3.0, 0.0))) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(spectral_abscissa(jordan(1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(spectral_abscissa(rotation90())) <= 1e-12);
}

TEST_CASE("criterion gap: hand values, homogeneity, bad input") {
    Rng rng(7);
    for (int i = 0; i < 10; ++i) {
        const ComplexVector x = rng.unit_vector(3);
        CHECK(std::abs(criterion_gap(ComplexMatrix::identity(3), x)) <= 1e-13);
    }

    const ComplexVector witness{cplx(std::sqrt(3.0) / 2.0, 0.0), cplx(0.5, 0.0)};
    CHECK(criterion_gap(jordan(1.0, 1.0), witness) == doctest::Approx(-0.125).epsilon(1e-13));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const ComplexVector half{cplx(inv_sqrt2, 0.0), cplx(inv_sqrt2, 0.0)};
    CHECK(criterion_gap(diag2(1.0, 2.0), half) == doctest::Approx(0.5).epsilon(1e-13));

    CHECK_THROWS_AS(criterion_gap(jordan(1.0, 1.0), ComplexVector(2, cplx(0.0, 0.0))),
                    std::invalid_argument);
    CHECK_THROWS_AS(criterion_gap(jordan(1.0, 1.0), ComplexVector(3, cplx(1.0, 0.0))),
                    std::invalid_argument);

    // Degree-4 homogeneity in the vector argument.
    const ComplexMatrix a = Rng(11).complex_matrix(5);
    Rng draw(13);
    for (int i = 0; i < 40; ++i) {
        const ComplexVector x = draw.unit_vector(5);
        const cplx c = 2.0 * draw.complex_normal();
        ComplexVector cx(x.size());
        for (size_t k = 0; k < x.size(); ++k) cx[k] = c * x[k];
        const double g = criterion_gap(a, x);
        const double gc = criterion_gap(a, cx);
        const double scale4 = std::pow(std::abs(c), 4);
        CHECK(std::abs(gc - scale4 * g) <= 1e-10 * std::max(scale4 * std::abs(g), 1e-6));
    }
}

TEST_CASE("criterion minimize: identity, Jordan blocks, normal accretive, determinism") {
    MinimizeOptions light;
    light.samples = 2000;

    const CriterionWitness wi = criterion_minimize(ComplexMatrix::identity(3), light);
    CHECK(std::abs(wi.gap) <= 1e-12);
    CHECK(std::abs(norm(wi.x) - 1.0) <= 1e-12);

    // For [[a, b], [0, a]] the exact minimum over the unit sphere is -b^2/8,
    // independent of a; at (a, b) = (1, 1) it is attained at (sqrt(3)/2, 1/2).
    const double cases[3][2] = {{1.0, 1.0}, {0.3, 2.5}, {2.0, 0.7}};
    for (const auto& ab : cases) {
        const double b = ab[1];
        const CriterionWitness w = criterion_minimize(jordan(ab[0], ab[1]), light);
        CHECK(std::abs(w.gap - (-b * b / 8.0)) <= 1e-6 * (1.0 + b * b));
        CHECK(std::abs(norm(w.x) - 1.0) <= 1e-12);
        CHECK(std::abs(w.gap - criterion_gap(jordan(ab[0], ab[1]), w.x)) <= 1e-12);
    }

    const ComplexMatrix nrm = normal_with_spectrum(
        {cplx(1.0, 0.0), cplx(1.2, 0.8), cplx(1.2, -0.8)});
    const CriterionWitness wn = criterion_minimize(nrm, light);
    CHECK(wn.gap >= -1e-9);

    // Bitwise reproducibility for a fixed seed.
    const CriterionWitness w1 = criterion_minimize(jordan(1.0, 1.0), light);
    const CriterionWitness w2 = criterion_minimize(jordan(1.0, 1.0), light);
    CHECK(w1.gap == w2.gap);
    REQUIRE(w1.x.size() == w2.x.size());
    for (size_t i = 0; i < w1.x.size(); ++i) CHECK(w1.x[i] == w2.x[i]);
}

TEST_CASE("hyponormality: defect, pointwise form, restriction, traceless commutator") {
    CHECK(std::abs(hyponormality_defect(rotation90())) <= 1e-12);
    CHECK(std::abs(normality_defect(rotation90())) <= 1e-12);

    const ComplexMatrix j = jordan(1.0, 1.0);
    CHECK(hyponormality_defect(j) == doctest::Approx(-1.0).epsilon(1e-12));
    ComplexMatrix shift(2);
    shift(0, 1) = 1.0;
    CHECK(hyponormality_defect(shift) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(normality_defect(j) == doctest::Approx(1.0).epsilon(1e-12));

    const ComplexVector e1{cplx(1.0, 0.0), cplx(0.0, 0.0)};
    const ComplexVector e2{cplx(0.0, 0.0), cplx(1.0, 0.0)};
    CHECK(hyponormality_form(j, e1) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(hyponormality_form(j, e2) == doctest::Approx(1.0).epsilon(1e-13));

    CHECK(restricted_hyponormality_defect(j, {0}) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(restricted_hyponormality_defect(j, {1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(restricted_hyponormality_defect(j, {0, 1}) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(restricted_hyponormality_defect(j, {}), std::invalid_argument);
    CHECK_THROWS_AS(restricted_hyponormality_defect(j, {5}), std::invalid_argument);

    const ComplexMatrix nrm = normal_with_spectrum(
        {cplx(1.0, 0.0), cplx(0.5, 1.0), cplx(2.0, -0.5)});
    CHECK(std::abs(restricted_hyponormality_defect(nrm, {0})) <= 1e-12);
    CHECK(std::abs(restricted_hyponormality_defect(nrm, {0, 2})) <= 1e-12);

    // The self-commutator always has zero trace, so its spectrum sums to zero.
    for (int dim : {2, 5, 9}) {
        const ComplexMatrix a = Rng(100 + dim).complex_matrix(dim);
        const std::vector<double> spec = hermitian_spectrum(commutator_of_adjoint(a));
        double sum = 0.0;
        for (double v : spec) sum += v;
        const double scale = norm_frobenius(a);
        CHECK(std::abs(sum) <= 1e-10 * scale * scale);
    }
}

TEST_CASE("flat self-commutator forces nonnegative criterion gap (sampled)") {
    std::vector<ComplexMatrix> flats;
    flats.push_back(ComplexMatrix::identity(4));
    flats.push_back(normal_with_spectrum({cplx(1.0, 0.0), cplx(1.2, 0.8), cplx(1.2, -0.8)}));
    flats.push_back(diag2(cplx(1.0, 2.0), cplx(3.0, 0.0)));
    flats.push_back(rotation90());
    {  // block-diagonal normal matrix of dimension 16
        ComplexMatrix big(16);
        Rng r(31);
        for (int b = 0; b < 8; ++b) {
            const double s = r.uniform(0.5, 2.0), t = r.uniform(0.0, 3.0);
            big(2 * b, 2 * b) = big(2 * b + 1, 2 * b + 1) = s;
            big(2 * b, 2 * b + 1) = -t;
            big(2 * b + 1, 2 * b) = t;
        }
        flats.push_back(big);
    }

    for (size_t k = 0; k < flats.size(); ++k) {
        const ComplexMatrix& a = flats[k];
        REQUIRE(hyponormality_defect(a) >= -1e-12);
        Rng draw(Rng(777).fork(k));
        for (int i = 0; i < 10000; ++i) {
            const ComplexVector x = draw.unit_vector(a.dim());
            CHECK(criterion_gap(a, x) >= -1e-9);
        }
    }
}

TEST_CASE("classification reports: diagonal, Jordan, rotation, flipped sign") {
    ClassifyOptions light;
    light.minimize.samples = 2000;

    const ClassificationReport rd = classify(diag2(1.0, 2.0), light);
    CHECK(rd.numerical_abscissa == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rd.spectral_abscissa == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rd.abscissa_equal);
    CHECK(rd.criterion_min_gap >= -1e-9);
    CHECK(std::abs(rd.hyponormality_defect) <= 1e-12);
    CHECK(std::abs(rd.normality_defect) <= 1e-12);
    CHECK(rd.accretivity_class == AccretivityClass::positively_accretive);
    CHECK(std::abs(norm(rd.criterion_witness) - 1.0) <= 1e-12);
    CHECK(!rd.note.empty());
    CHECK(!rd.restricted_hyponormality_defect.has_value());

    ClassifyOptions with_mask = light;
    with_mask.mask = {0};
    const ClassificationReport rj = classify(jordan(1.0, 1.0), with_mask);
    CHECK(rj.numerical_abscissa == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rj.spectral_abscissa == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(!rj.abscissa_equal);
    CHECK(rj.criterion_min_gap <= -0.1249);
    CHECK(rj.accretivity_class == AccretivityClass::positively_accretive);
    REQUIRE(rj.restricted_hyponormality_defect.has_value());
    CHECK(*rj.restricted_hyponormality_defect == doctest::Approx(-1.0).epsilon(1e-12));

    const ClassificationReport rr = classify(rotation90(), light);
    CHECK(std::abs(rr.numerical_abscissa) <= 1e-12);
    CHECK(std::abs(rr.spectral_abscissa) <= 1e-12);
    CHECK(rr.abscissa_equal);
    CHECK(rr.accretivity_class == AccretivityClass::accretive);
    CHECK(rr.criterion_min_gap >= -1e-9);

    ComplexMatrix neg = ComplexMatrix::identity(2);
    neg *= -1.0;
    CHECK(classify(neg, light).accretivity_class == AccretivityClass::not_accretive);

    CHECK(to_string(AccretivityClass::positively_accretive) == "positively-accretive");
    CHECK(to_string(AccretivityClass::accretive) == "accretive");
    CHECK(to_string(AccretivityClass::not_accretive) == "not-accretive");
}

TEST_CASE("abscissa ordering, equality for normal spectra, violation contrapositive") {
    // min Re<Ax,x> can only sit below every eigenvalue's real part.
    for (int dim : {2, 5, 16, 48, 64}) {
        const ComplexMatrix a = Rng(3 * dim + 1).complex_matrix(dim);
        CHECK(numerical_abscissa(a) <= spectral_abscissa(a) + 1e-8);
    }

    // For normal matrices with right-half-plane spectrum the two coincide.
    for (int dim : {3, 8}) {
        ComplexVector eigs(static_cast<size_t>(dim));
        Rng r(50 + dim);
        for (auto& l : eigs) l = cplx(r.uniform(0.2, 2.0), r.uniform(-1.5, 1.5));
        const ComplexMatrix a = normal_with_spectrum(eigs);
        CHECK(std::abs(numerical_abscissa(a) - spectral_abscissa(a)) <= 1e-8);
    }

    // Whenever the abscissas split, the decay criterion must fail somewhere.
    MinimizeOptions light;
    light.samples = 2000;
    Rng r(42);
    int qualifying = 0;
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix t(3);
        for (int i = 0; i < 3; ++i) {
            t(i, i) = 0.5 + r.uniform();
            for (int j = i + 1; j < 3; ++j) t(i, j) = r.complex_normal();
        }
        if (numerical_abscissa(t) < spectral_abscissa(t) - 1e-6) {
            ++qualifying;
            CHECK(criterion_minimize(t, light).gap < 0.0);
        }
    }
    CHECK(qualifying >= 5);
}

TEST_CASE("variational form gap: hand values, split independence, half identity") {
    ComplexMatrix zero2(2), zero4(4);

    Rng rng(17);
    const ComplexVector u2 = rng.unit_vector(2);
    CHECK(std::abs(variational_criterion_gap(ComplexMatrix::identity(2), zero2,
                                             ComplexMatrix::identity(2), u2)) <= 1e-13);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const ComplexVector half{cplx(inv_sqrt2, 0.0), cplx(inv_sqrt2, 0.0)};
    const ComplexMatrix d12 = diag2(1.0, 2.0);
    CHECK(variational_criterion_gap(d12, zero2, d12, half) ==
          doctest::Approx(0.25).epsilon(1e-13));

    // Only the sum of the two form matrices matters, and with the form equal
    // to the operator the gap is exactly half the pointwise criterion gap.
    const ComplexMatrix a = Rng(21).complex_matrix(4);
    Rng draw(23);
    for (int i = 0; i < 30; ++i) {
        const ComplexVector u = draw.unit_vector(4);
        const double v = variational_criterion_gap(a, zero4, a, u);
        const double g = criterion_gap(a, u);
        CHECK(std::abs(v - 0.5 * g) <= 1e-10 * (1.0 + std::abs(g)));

        const ComplexMatrix r = draw.complex_matrix(4);
        const double v_split = variational_criterion_gap(r, a - r, a, u);
        CHECK(std::abs(v_split - v) <= 1e-9 * (1.0 + std::abs(v)));
    }

    CHECK_THROWS_AS(
        variational_criterion_gap(d12, zero2, d12, ComplexVector(2, cplx(0.0, 0.0))),
        std::invalid_argument);
    CHECK_THROWS_AS(variational_criterion_gap(d12, zero4, d12, half),
                    std::invalid_argument);
}

TEST_CASE("sector probe: scalar-type bounds, spectrum on the boundary, bad input") {
    const SectorProbeResult ri = sectoriality_probe(ComplexMatrix::identity(2), 0.7853981633974483);
    CHECK(ri.c_estimate == doctest::Approx(1.4048443021355685).epsilon(1e-8));
    CHECK(ri.c_estimate <= 2.0);
    CHECK(ri.samples.size() == 122);
    CHECK(ri.skipped.empty());
    for (const SectorSample& s : ri.samples) {
        CHECK(std::abs(std::arg(s.lambda)) < ri.delta + 1.5707963267948966);
        CHECK(s.value > 0.0);
    }

    const SectorProbeResult rd = sectoriality_probe(diag2(1.0, 2.0), 0.7853981633974483);
    CHECK(rd.c_estimate == doctest::Approx(1.405154667957841).epsilon(1e-8));
    CHECK(rd.skipped.empty());

    // Spectrum sits on the imaginary axis: a thin sector hugs it and the
    // resolvent blows up near modulus 1.
    const SectorProbeResult rr = sectoriality_probe(rotation90(), 0.01);
    CHECK(rr.c_estimate == doctest::Approx(111.11148611199611).epsilon(1e-6));
    const SectorProbeResult rw = sectoriality_probe(rotation90(), 0.7);
    CHECK(rw.c_estimate == doctest::Approx(1.5525572956661406).epsilon(1e-8));

    CHECK_THROWS_AS(sectoriality_probe(rotation90(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sectoriality_probe(rotation90(), 1.5707963267948966),
                    std::invalid_argument);
    CHECK_THROWS_AS(sectoriality_probe(rotation90(), 0.5, 1), std::invalid_argument);
}

TEST_CASE("counterexample search: families and re-verification") {
    SearchOptions opts;
    opts.minimize.samples = 2000;

    SearchOptions j = opts;
    j.draws = 100;
    const std::vector<SearchHit> jordan_hits = counterexample_search("jordan", j);
    CHECK(jordan_hits.size() >= 90);
    for (const SearchHit& hit : jordan_hits) {
        CHECK(hit.witness.gap < -1e-8);
        CHECK(std::abs(hit.witness.gap - criterion_gap(hit.matrix, hit.witness.x)) <= 1e-12);
        const double b = hit.matrix(0, 1).real();
        CHECK(std::abs(hit.witness.gap - (-b * b / 8.0)) <= 1e-5 * (1.0 + b * b));
    }

    SearchOptions n = opts;
    n.draws = 40;
    n.dim = 4;
    CHECK(counterexample_search("normal_accretive", n).empty());

    SearchOptions s = opts;
    s.draws = 60;
    const std::vector<SearchHit> sym_hits = counterexample_search("complex_symmetric", s);
    CHECK(sym_hits.size() >= 30);
    for (const SearchHit& hit : sym_hits) {
        CHECK(hit.witness.gap < -1e-8);
        CHECK(hit.matrix(0, 1) == hit.matrix(1, 0));
        CHECK(numerical_abscissa(hit.matrix) >= 0.049);
    }

    CHECK_THROWS_WITH_AS(counterexample_search("mystery", opts),
                         doctest::Contains("jordan"), std::invalid_argument);
}
