#pragma once

#include <string>
#include <utility>
#include <vector>

#include "logdecay/complex_matrix.hpp"

namespace logdecay {

// Solution of u' + Au = 0, u(0) = u0, evaluated at time t >= 0 through the
// matrix exponential. t = 0 returns u0 bit-for-bit. Negative t or a zero
// start vector -> std::invalid_argument.
ComplexVector propagate(const ComplexMatrix& a, const ComplexVector& u0, double t);

struct HeightDerivatives {
    double h = 0.0;        // |u(t)|
    double h_prime = 0.0;  // -Re<Au,u>/|u|
    double h_second = 0.0; // (Re<A^2 u,u> + |Au|^2)/|u| - (Re<Au,u>)^2/|u|^3
};

// The decay curve h(t) = |e^{-tA} u0| with its first two derivatives in
// closed form (no finite differences). h > 0 always: the propagator is
// invertible, so a nonzero start vector cannot reach zero.
HeightDerivatives height_derivatives(const ComplexMatrix& a, const ComplexVector& u0,
                                     double t);

// h h'' - (h')^2 at time t: nonnegative exactly where log h is convex.
// Equals criterion_gap(A, u(t)) / |u(t)|^2.
double logconvexity_gap(const ComplexMatrix& a, const ComplexVector& u0, double t);

struct TrajectorySample {
    double t = 0.0;
    ComplexVector u;
    double h = 0.0;
    double h_prime = 0.0;
    double h_second = 0.0;
    double logconvexity_gap = 0.0;
};

struct TrajectoryOptions {
    // Slack for the pointwise log-convexity flag; <= 0 selects
    // 1e-9 (1 + ||A||_F^2) |u0|^4, matching the gap's degree-4 scaling.
    double gap_tol = 0.0;
    // Slack for three-point residuals; <= 0 selects 1e-12 (1 + |u0|).
    double three_point_tol = 0.0;
    std::string operator_id;
};

struct Trajectory {
    std::string operator_id;
    ComplexVector u0;
    std::vector<double> grid;  // equals the sample times; may be shortened
    std::vector<TrajectorySample> samples;
    bool strictly_decreasing = false;   // h' < 0 at every sample
    bool pointwise_logconvex = false;   // gap >= -gap_tol at every sample
    bool three_point_logconvex = false; // all sampled triples pass
    bool truncated = false;             // grid shortened by decay underflow
    double gap_tol = 0.0;               // tolerances actually used
    double three_point_tol = 0.0;
};

// Time grid with 201 points by default: t = 0, then geometric spacing from
// first_step up to t_max, dense near 0 where the short-time behavior lives.
// t_max = 0 collapses to the single point {0}; if first_step does not fit
// below t_max the grid falls back to uniform spacing.
std::vector<double> default_grid(double t_max, int points = 201, double first_step = 1e-4);

// Samples h, h', h'' and the log-convexity gap along the grid (which must
// start at 0 and increase strictly), then grades the decay curve: strict
// decrease, pointwise log-convexity, and the three-point inequality over all
// triples drawn from a 12-point subgrid. Samples with h below 1e-280 are cut
// off to keep the derivative quotients out of the denormal range.
Trajectory trajectory_scan(const ComplexMatrix& a, const ComplexVector& u0,
                           const std::vector<double>& grid,
                           const TrajectoryOptions& opts = {});

// h(r)^{(t-s)/(t-r)} h(t)^{(s-r)/(t-r)} - h(s): nonnegative exactly when the
// chord of log h at (r, t) lies above its value at s. Requires 0 <= r < s < t.
double three_point_check(const ComplexMatrix& a, const ComplexVector& u0, double r,
                         double s, double t);

struct DecayEnvelope {
    double eta = 0.0;
    double m_eta = 0.0;     // max over the grid of h(t) e^{t eta} / |u0|
    double t_at_max = 0.0;
    // The max landing on the last grid point usually means the horizon was
    // too short to see the true supremum.
    bool max_at_right_endpoint = false;
};

// Best constant M so that h(t) <= M e^{-t eta} |u0| on the grid. eta must
// satisfy 0 <= eta < (smallest spectral real part), otherwise no such finite
// constant exists for all u0 and the call fails with std::invalid_argument.
DecayEnvelope decay_envelope(const ComplexMatrix& a, const ComplexVector& u0, double eta,
                             const std::vector<double>& grid);

struct ShortTimeCheck {
    double h_prime_closed_form = 0.0;  // h'(0) from the inner-product formula
    double h_prime_fd = 0.0;           // one-sided difference, Richardson-extrapolated
    double minus_numerical_abscissa = 0.0;
    double minus_rayleigh = 0.0;       // -Re<A u0, u0> for the normalized u0
    double fd_tol = 0.0;
    bool fd_consistent = false;              // |fd - closed_form| <= fd_tol
    bool slope_at_most_minus_abscissa = false;  // h'(0) <= -m(A) + slack
};

// Initial-slope audit: h'(0) computed three ways (closed form, Rayleigh
// quotient, one-sided finite difference on steps 1e-3 and 5e-4) plus the
// bound h'(0) <= -m(A), which holds because m(A) is the infimum of the
// Rayleigh quotient. u0 is normalized internally.
ShortTimeCheck short_time_check(const ComplexMatrix& a, const ComplexVector& u0);

struct ScalarScanOptions {
    double second_diff_tol = 1e-8;
    double three_point_tol = 0.0;  // <= 0 selects 1e-10 (1 + max f)
    double flat_slope_tol = 1e-10; // |d log f / dt| below this counts as flat
};

struct ScalarLogConvexity {
    bool pointwise = false;      // second differences of log f >= -tol
    bool three_point = false;    // weighted geometric-mean inequality on triples
    bool has_flat_segment = false;
    double min_second_difference = 0.0;
    double min_three_point_residual = 0.0;
};

// Log-convexity verdicts for a sampled positive scalar function, independent
// of any operator. Times must increase strictly and values must be positive.
// Triples are exhaustive for up to 32 samples, otherwise drawn from a
// 12-point subgrid. A flat segment is a consecutive pair with (numerically)
// zero log-slope -- this is what distinguishes "log-convex but not strictly
// convex" data such as a decay curve with a plateau.
ScalarLogConvexity logconvex_scan(const std::vector<std::pair<double, double>>& samples,
                                  const ScalarScanOptions& opts = {});

}  // namespace logdecay
