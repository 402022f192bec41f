#include "logdecay/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "logdecay/analysis.hpp"
#include "logdecay/linear_solve.hpp"
#include "logdecay/rng.hpp"

namespace logdecay {

namespace {

double sign_of(AdvectionSign s) { return s == AdvectionSign::plus ? 1.0 : -1.0; }

// Raw ghost-closed matrix on the grid including the right endpoint, before
// the metric symmetrization. robin_c = 0 gives the Neumann closure.
ComplexMatrix mixed_raw(const DiscretizationSpec& spec, double robin_c) {
    const double h = spec.spacing();
    const double s = sign_of(spec.sign);
    const int n = spec.n + 1;
    ComplexMatrix a(n);
    for (int i = 0; i + 1 < n; ++i) {
        a(i, i) = 2.0 / (h * h);
        if (i > 0) a(i, i - 1) = -1.0 / (h * h) - s / (2.0 * h);
        a(i, i + 1) = -1.0 / (h * h) + s / (2.0 * h);
    }
    // Ghost elimination at beta: u' closed by the central difference, so the
    // advection term drops out for Neumann and contributes -s*c for Robin.
    a(n - 1, n - 2) = -2.0 / (h * h);
    a(n - 1, n - 1) = 2.0 / (h * h) + 2.0 * robin_c / h - s * robin_c;
    return a;
}

cplx parse_scalar(const nlohmann::json& v, const char* what) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cplx(v[0].get<double>(), v[1].get<double>());
    throw std::invalid_argument(std::string(what) +
                                ": expected a number or an [re, im] pair");
}

int required_dim(const nlohmann::json& params, int fallback) {
    const int dim = params.value("dim", fallback);
    if (dim < 1) throw std::invalid_argument("gallery: dim must be >= 1");
    return dim;
}

ComplexMatrix random_unitary(Rng& rng, int dim) {
    const ComplexMatrix g = rng.complex_matrix(dim);
    ComplexMatrix u(dim);
    for (int j = 0; j < dim; ++j) {
        ComplexVector col(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) col[static_cast<size_t>(i)] = g(i, j);
        for (int k = 0; k < j; ++k) {
            cplx proj(0.0, 0.0);
            for (int i = 0; i < dim; ++i)
                proj += col[static_cast<size_t>(i)] * std::conj(u(i, k));
            for (int i = 0; i < dim; ++i) col[static_cast<size_t>(i)] -= proj * u(i, k);
        }
        double len = norm(col);
        while (len < 1e-8) {  // essentially never: re-draw a degenerate column
            for (auto& c : col) c = rng.complex_normal();
            for (int k = 0; k < j; ++k) {
                cplx proj(0.0, 0.0);
                for (int i = 0; i < dim; ++i)
                    proj += col[static_cast<size_t>(i)] * std::conj(u(i, k));
                for (int i = 0; i < dim; ++i) col[static_cast<size_t>(i)] -= proj * u(i, k);
            }
            len = norm(col);
        }
        for (int i = 0; i < dim; ++i) u(i, j) = col[static_cast<size_t>(i)] / len;
    }
    return u;
}

}  // namespace

void validate(const DiscretizationSpec& spec) {
    if (!std::isfinite(spec.alpha) || !std::isfinite(spec.beta))
        throw std::invalid_argument("interval endpoints must be finite");
    if (!(spec.alpha < spec.beta))
        throw std::invalid_argument("interval requires alpha < beta");
    if (spec.n < 3) throw std::invalid_argument("need at least 3 interior nodes");
}

DiscretizationSpec spec_from_json(const nlohmann::json& j) {
    DiscretizationSpec spec;
    spec.alpha = j.value("alpha", 0.0);
    spec.beta = j.value("beta", 1.0);
    spec.n = j.value("n", 16);
    const std::string sign = j.value("sign", "+");
    if (sign == "+")
        spec.sign = AdvectionSign::plus;
    else if (sign == "-")
        spec.sign = AdvectionSign::minus;
    else
        throw std::invalid_argument("sign must be \"+\" or \"-\", got \"" + sign + "\"");
    const std::string bc = j.value("bc", "DD");
    if (bc == "DD")
        spec.bc = BoundaryCondition::dirichlet_dirichlet;
    else if (bc == "DN")
        spec.bc = BoundaryCondition::dirichlet_neumann;
    else if (bc == "DR")
        spec.bc = BoundaryCondition::dirichlet_robin;
    else
        throw std::invalid_argument("bc must be \"DD\", \"DN\" or \"DR\", got \"" + bc +
                                    "\"");
    validate(spec);
    return spec;
}

nlohmann::json spec_to_json(const DiscretizationSpec& spec) {
    return nlohmann::json{
        {"alpha", spec.alpha},
        {"beta", spec.beta},
        {"n", spec.n},
        {"sign", spec.sign == AdvectionSign::plus ? "+" : "-"},
        {"bc", spec.bc == BoundaryCondition::dirichlet_dirichlet   ? "DD"
               : spec.bc == BoundaryCondition::dirichlet_neumann ? "DN"
                                                                 : "DR"}};
}

ComplexMatrix assemble_advection_diffusion(const DiscretizationSpec& spec) {
    validate(spec);
    const double h = spec.spacing();
    const double s = sign_of(spec.sign);
    if (spec.bc == BoundaryCondition::dirichlet_dirichlet) {
        ComplexMatrix a(spec.n);
        for (int i = 0; i < spec.n; ++i) {
            a(i, i) = 2.0 / (h * h);
            if (i > 0) a(i, i - 1) = -1.0 / (h * h) - s / (2.0 * h);
            if (i + 1 < spec.n) a(i, i + 1) = -1.0 / (h * h) + s / (2.0 * h);
        }
        return a;
    }
    const double robin_c = spec.bc == BoundaryCondition::dirichlet_robin ? 1.0 : 0.0;
    ComplexMatrix a = mixed_raw(spec, robin_c);
    // Conjugate by diag(1, ..., 1, 1/sqrt(2)): the endpoint node carries half
    // a trapezoidal weight, and this change of basis makes the quadrature
    // adjoint equal to the plain matrix adjoint.
    const int last = a.dim() - 1;
    const double r = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < last; ++j) a(last, j) *= r;
    for (int i = 0; i < last; ++i) a(i, last) /= r;
    return a;
}

FormMatrices assemble_form(const DiscretizationSpec& spec) {
    validate(spec);
    const double h = spec.spacing();
    const int n = spec.n + 1;
    FormMatrices out;
    out.stiffness = ComplexMatrix(n);
    out.advection = ComplexMatrix(n);
    out.sobolev_gram = ComplexMatrix(n);
    for (int i = 0; i < n; ++i) {
        out.stiffness(i, i) = (i + 1 < n ? 2.0 : 1.0) / h;
        if (i > 0) out.stiffness(i, i - 1) = -1.0 / h;
        if (i + 1 < n) out.stiffness(i, i + 1) = -1.0 / h;
        if (i > 0) out.advection(i, i - 1) = -0.5;
        if (i + 1 < n) out.advection(i, i + 1) = 0.5;
    }
    out.advection(n - 1, n - 1) = 0.5;  // one-sided hat at the free endpoint
    for (int i = 0; i < n; ++i) {
        const double mass = (i + 1 < n ? h : h / 2.0);
        for (int j = 0; j < n; ++j)
            out.sobolev_gram(i, j) = out.stiffness(i, j) + (i == j ? mass : 0.0);
    }
    const double len = spec.beta - spec.alpha;
    out.c0 = std::min(0.5, 1.0 / (len * len));
    return out;
}

EllipticityReport ellipticity_check(const FormMatrices& form, int trials,
                                    double fraction, std::uint64_t seed) {
    const int dim = form.stiffness.dim();
    if (dim < 1) throw std::invalid_argument("ellipticity_check: empty form");
    if (trials < 0) throw std::invalid_argument("ellipticity_check: trials < 0");
    const ComplexMatrix f = form.stiffness + form.advection;
    const auto ratio = [&](const ComplexVector& x) {
        return inner(f * x, x).real() / inner(form.sobolev_gram * x, x).real();
    };

    double best = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) best = std::min(best, ratio(rng.unit_vector(dim)));

    // The minimum of the ratio is the smallest eigenvalue of the pencil
    // (sym(f), gram); inverse power iteration drives a deterministic start
    // vector onto it, and every iterate's ratio is a valid upper bound.
    ComplexMatrix sym = f;
    const ComplexMatrix fa = adjoint(f);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) sym(i, j) = 0.5 * (sym(i, j) + fa(i, j));
    const LuFactorization lu(sym);
    ComplexVector x(static_cast<size_t>(dim), cplx(1.0, 0.0));
    x = normalized(x);
    for (int it = 0; it < 400; ++it) x = normalized(lu.solve(form.sobolev_gram * x));
    best = std::min(best, ratio(x));

    EllipticityReport report;
    report.measured_min_ratio = best;
    report.c0 = form.c0;
    report.threshold = fraction * form.c0;
    report.satisfied = best >= report.threshold - 1e-12;
    return report;
}

double norm_identity_check(const DiscretizationSpec& spec, const ComplexVector& u) {
    validate(spec);
    if (spec.bc != BoundaryCondition::dirichlet_dirichlet)
        throw std::invalid_argument(
            "norm_identity_check: needs the Dirichlet-Dirichlet discretization");
    const int n = spec.n;
    if (static_cast<int>(u.size()) != n)
        throw std::invalid_argument("norm_identity_check: vector size != node count");
    for (int i : {0, 1, n - 2, n - 1})
        if (u[static_cast<size_t>(i)] != cplx(0.0, 0.0))
            throw std::invalid_argument(
                "norm_identity_check: vector must vanish at the two nodes adjacent "
                "to each endpoint");

    const double h = spec.spacing();
    const ComplexMatrix a = assemble_advection_diffusion(spec);
    double au2 = 0.0, d2 = 0.0, d1 = 0.0;
    const ComplexVector av = a * u;
    for (int i = 0; i < n; ++i) {
        const cplx um = i > 0 ? u[static_cast<size_t>(i - 1)] : cplx(0.0, 0.0);
        const cplx up = i + 1 < n ? u[static_cast<size_t>(i + 1)] : cplx(0.0, 0.0);
        const cplx ui = u[static_cast<size_t>(i)];
        au2 += std::norm(av[static_cast<size_t>(i)]);
        d2 += std::norm((um - 2.0 * ui + up) / (h * h));
        d1 += std::norm((up - um) / (2.0 * h));
    }
    return h * (au2 - d2 - d1);
}

std::vector<std::string> gallery_names() {
    return {"adv_diff", "complex_symmetric_random", "diag",          "identity",
            "jordan",   "normal_random",            "rotation_shift"};
}

ComplexMatrix gallery(const std::string& name, const nlohmann::json& params) {
    if (name == "identity") {
        return ComplexMatrix::identity(required_dim(params, 2));
    }
    if (name == "diag") {
        if (!params.contains("entries") || !params["entries"].is_array() ||
            params["entries"].empty())
            throw std::invalid_argument("diag preset needs a nonempty 'entries' array");
        const auto& entries = params["entries"];
        ComplexMatrix m(static_cast<int>(entries.size()));
        for (int i = 0; i < m.dim(); ++i)
            m(i, i) = parse_scalar(entries[static_cast<size_t>(i)], "diag entry");
        return m;
    }
    if (name == "jordan") {
        ComplexMatrix m(2);
        m(0, 0) = m(1, 1) = params.value("a", 1.0);
        m(0, 1) = params.value("b", 1.0);
        return m;
    }
    if (name == "rotation_shift") {
        const double omega = params.value("omega", 1.0);
        const double sigma = params.value("sigma", 1.0);
        ComplexMatrix m(2);
        m(0, 0) = m(1, 1) = sigma;
        m(0, 1) = -omega;
        m(1, 0) = omega;
        return m;
    }
    if (name == "normal_random") {
        const int dim = required_dim(params, 4);
        Rng rng(params.value("seed", std::uint64_t{0}));
        const ComplexMatrix u = random_unitary(rng, dim);
        ComplexVector lambda(static_cast<size_t>(dim));
        for (auto& l : lambda)
            l = cplx(0.1 + rng.uniform(), 2.0 * rng.uniform() - 1.0);
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                cplx sum(0.0, 0.0);
                for (int k = 0; k < dim; ++k)
                    sum += u(i, k) * lambda[static_cast<size_t>(k)] * std::conj(u(j, k));
                m(i, j) = sum;
            }
        return m;
    }
    if (name == "complex_symmetric_random") {
        const int dim = required_dim(params, 4);
        Rng rng(params.value("seed", std::uint64_t{0}));
        const ComplexMatrix g = rng.complex_matrix(dim);
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = 0.5 * (g(i, j) + g(j, i));
        const double shift = std::max(0.0, -numerical_abscissa(m)) + 0.05;
        for (int i = 0; i < dim; ++i) m(i, i) += shift;
        return m;
    }
    if (name == "adv_diff") {
        return assemble_advection_diffusion(spec_from_json(params));
    }
    std::ostringstream msg;
    msg << "unknown gallery preset '" << name << "'; available:";
    for (const std::string& known : gallery_names()) msg << " " << known;
    throw std::invalid_argument(msg.str());
}

}  // namespace logdecay
