#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "logdecay/complex_matrix.hpp"

namespace logdecay {

enum class AdvectionSign { plus, minus };
enum class BoundaryCondition { dirichlet_dirichlet, dirichlet_neumann, dirichlet_robin };

// Uniform-grid discretization of -u'' ± u' on the interval (alpha, beta) with
// n interior nodes, spacing h = (beta - alpha)/(n + 1). The left endpoint
// always carries a homogeneous Dirichlet condition; the right endpoint carries
// Dirichlet, Neumann u'(beta) = 0, or Robin u'(beta) + u(beta) = 0.
struct DiscretizationSpec {
    double alpha = 0.0;
    double beta = 1.0;
    int n = 3;
    AdvectionSign sign = AdvectionSign::plus;
    BoundaryCondition bc = BoundaryCondition::dirichlet_dirichlet;

    double spacing() const { return (beta - alpha) / (n + 1); }
};

// Throws std::invalid_argument unless alpha < beta (finite) and n >= 3.
void validate(const DiscretizationSpec& spec);

// JSON shape: {alpha, beta, n, sign: "+"|"-", bc: "DD"|"DN"|"DR"}; absent keys
// take the struct defaults above except n, which defaults to 16.
DiscretizationSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const DiscretizationSpec& spec);

// Second-order finite-difference matrix for -u'' ± u'. Dirichlet-Dirichlet:
// n x n on the interior nodes. Dirichlet-Neumann / Dirichlet-Robin:
// (n+1) x (n+1) including the right endpoint, closed with a second-order
// ghost node at beta and then conjugated by the square root of the
// trapezoidal weight matrix diag(1, ..., 1, 1/2) so that the Euclidean
// adjoint coincides with the adjoint in the quadrature inner product.
ComplexMatrix assemble_advection_diffusion(const DiscretizationSpec& spec);

// P1 finite-element matrices for the sesquilinear form
//   a(u, v) = integral u' conj(v') + integral u' conj(v)
// on grid functions vanishing at alpha (the right endpoint stays free).
// Quadrature for the zeroth-order metric is trapezoidal (lumped mass).
struct FormMatrices {
    ComplexMatrix stiffness;     // integral u' conj(v')
    ComplexMatrix advection;     // integral u' conj(v); skew except the corner
    ComplexMatrix sobolev_gram;  // lumped mass + stiffness
    double c0 = 0.0;             // coercivity constant min(1/2, (beta-alpha)^-2)
};
FormMatrices assemble_form(const DiscretizationSpec& spec);

// Estimates min over u != 0 of Re a(u,u) / <u,u>_sobolev by seeded random
// sampling plus inverse power iteration on the associated matrix pencil, and
// compares it against fraction * c0.
struct EllipticityReport {
    double measured_min_ratio = 0.0;
    double c0 = 0.0;
    double threshold = 0.0;
    bool satisfied = false;
};
EllipticityReport ellipticity_check(const FormMatrices& form, int trials = 200,
                                    double fraction = 0.9, std::uint64_t seed = 0);

// Quadrature-weighted residual |Au|^2 - |D2 u|^2 - |D1 u|^2 for the
// Dirichlet-Dirichlet matrix A and plain central difference operators D1, D2.
// The boundary terms of the underlying integration-by-parts identity vanish
// because u is required to be zero at the two nodes adjacent to each
// endpoint; inadmissible vectors raise std::invalid_argument.
double norm_identity_check(const DiscretizationSpec& spec, const ComplexVector& u);

// Named deterministic example operators. Parameters come as a JSON object;
// every preset documents its keys in gallery.cpp and falls back to defaults.
// Unknown names raise std::invalid_argument listing gallery_names().
std::vector<std::string> gallery_names();
ComplexMatrix gallery(const std::string& name,
                      const nlohmann::json& params = nlohmann::json::object());

}  // namespace logdecay
