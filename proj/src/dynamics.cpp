#include "logdecay/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "logdecay/analysis.hpp"
#include "logdecay/expm.hpp"

namespace logdecay {

namespace {

void require_start_vector(const ComplexMatrix& a, const ComplexVector& u0, const char* who) {
    validate_finite(u0, who);
    if (u0.empty() || norm(u0) == 0.0)
        throw std::invalid_argument(std::string(who) + ": zero start vector");
    if (a.dim() != static_cast<int>(u0.size()))
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

// Indices of an (at most) `count`-point subgrid spread evenly over [0, n-1].
std::vector<int> spread_indices(int n, int count) {
    std::set<int> picked;
    for (int k = 0; k < count; ++k)
        picked.insert(static_cast<int>(std::lround(
            static_cast<double>(k) * (n - 1) / (count - 1))));
    return {picked.begin(), picked.end()};
}

double three_point_residual(double t_r, double h_r, double t_s, double h_s, double t_t,
                            double h_t) {
    const double alpha = (t_t - t_s) / (t_t - t_r);
    const double beta = (t_s - t_r) / (t_t - t_r);
    return std::pow(h_r, alpha) * std::pow(h_t, beta) - h_s;
}

}  // namespace

ComplexVector propagate(const ComplexMatrix& a, const ComplexVector& u0, double t) {
    require_start_vector(a, u0, "propagate");
    if (!(t >= 0.0))
        throw std::invalid_argument("propagate: time must be nonnegative");
    if (t == 0.0) return u0;
    ComplexMatrix m(a);
    m *= cplx(-t, 0.0);
    return matexp(m) * u0;
}

HeightDerivatives height_derivatives(const ComplexMatrix& a, const ComplexVector& u0,
                                     double t) {
    const ComplexVector u = propagate(a, u0, t);
    const ComplexVector au = a * u;
    const ComplexVector aau = a * au;
    const double h = norm(u);
    const double re_au = inner(au, u).real();
    const double re_aau = inner(aau, u).real();
    double au2 = 0.0;
    for (const cplx& c : au) au2 += std::norm(c);
    HeightDerivatives d;
    d.h = h;
    d.h_prime = -re_au / h;
    d.h_second = (re_aau + au2) / h - (re_au * re_au) / (h * h * h);
    return d;
}

double logconvexity_gap(const ComplexMatrix& a, const ComplexVector& u0, double t) {
    const HeightDerivatives d = height_derivatives(a, u0, t);
    return d.h * d.h_second - d.h_prime * d.h_prime;
}

std::vector<double> default_grid(double t_max, int points, double first_step) {
    if (!(t_max >= 0.0))
        throw std::invalid_argument("default_grid: t_max must be nonnegative");
    if (t_max == 0.0) return {0.0};
    if (points < 2) throw std::invalid_argument("default_grid: need at least 2 points");
    std::vector<double> grid(static_cast<size_t>(points));
    grid[0] = 0.0;
    if (first_step <= 0.0 || first_step >= t_max) {
        for (int k = 1; k < points; ++k)
            grid[static_cast<size_t>(k)] = t_max * k / (points - 1);
    } else {
        const double ratio = first_step / t_max;
        for (int k = 1; k < points; ++k)
            grid[static_cast<size_t>(k)] =
                t_max * std::pow(ratio, static_cast<double>(points - 1 - k) / (points - 2));
    }
    grid.back() = t_max;
    return grid;
}

Trajectory trajectory_scan(const ComplexMatrix& a, const ComplexVector& u0,
                           const std::vector<double>& grid, const TrajectoryOptions& opts) {
    require_start_vector(a, u0, "trajectory_scan");
    if (grid.empty() || grid.front() != 0.0)
        throw std::invalid_argument("trajectory_scan: grid must start at 0");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("trajectory_scan: grid must increase strictly");

    Trajectory traj;
    traj.operator_id = opts.operator_id;
    traj.u0 = u0;
    const double u0n = norm(u0);
    const double fro = norm_frobenius(a);
    traj.gap_tol = opts.gap_tol > 0.0
                       ? opts.gap_tol
                       : 1e-9 * (1.0 + fro * fro) * u0n * u0n * u0n * u0n;
    traj.three_point_tol =
        opts.three_point_tol > 0.0 ? opts.three_point_tol : 1e-12 * (1.0 + u0n);

    for (double t : grid) {
        TrajectorySample s;
        s.t = t;
        s.u = propagate(a, u0, t);
        const ComplexVector au = a * s.u;
        const ComplexVector aau = a * au;
        s.h = norm(s.u);
        if (s.h < 1e-280) {  // decay has hit the underflow floor; stop here
            traj.truncated = true;
            break;
        }
        const double re_au = inner(au, s.u).real();
        const double re_aau = inner(aau, s.u).real();
        double au2 = 0.0;
        for (const cplx& c : au) au2 += std::norm(c);
        s.h_prime = -re_au / s.h;
        s.h_second = (re_aau + au2) / s.h - (re_au * re_au) / (s.h * s.h * s.h);
        s.logconvexity_gap = s.h * s.h_second - s.h_prime * s.h_prime;
        traj.grid.push_back(t);
        traj.samples.push_back(std::move(s));
    }

    traj.strictly_decreasing = true;
    traj.pointwise_logconvex = true;
    for (const TrajectorySample& s : traj.samples) {
        if (!(s.h_prime < 0.0)) traj.strictly_decreasing = false;
        if (s.logconvexity_gap < -traj.gap_tol) traj.pointwise_logconvex = false;
    }

    traj.three_point_logconvex = true;
    const int n = static_cast<int>(traj.samples.size());
    if (n >= 3) {
        const std::vector<int> idx = spread_indices(n, 12);
        const int m = static_cast<int>(idx.size());
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int k = j + 1; k < m; ++k) {
                    const TrajectorySample& r = traj.samples[static_cast<size_t>(idx[i])];
                    const TrajectorySample& s = traj.samples[static_cast<size_t>(idx[j])];
                    const TrajectorySample& t = traj.samples[static_cast<size_t>(idx[k])];
                    if (three_point_residual(r.t, r.h, s.t, s.h, t.t, t.h) <
                        -traj.three_point_tol)
                        traj.three_point_logconvex = false;
                }
    }
    return traj;
}

double three_point_check(const ComplexMatrix& a, const ComplexVector& u0, double r,
                         double s, double t) {
    if (!(0.0 <= r && r < s && s < t))
        throw std::invalid_argument("three_point_check: need 0 <= r < s < t");
    const double hr = norm(propagate(a, u0, r));
    const double hs = norm(propagate(a, u0, s));
    const double ht = norm(propagate(a, u0, t));
    return three_point_residual(r, hr, s, hs, t, ht);
}

DecayEnvelope decay_envelope(const ComplexMatrix& a, const ComplexVector& u0, double eta,
                             const std::vector<double>& grid) {
    require_start_vector(a, u0, "decay_envelope");
    if (grid.empty() || grid.front() < 0.0)
        throw std::invalid_argument("decay_envelope: grid must start at a time >= 0");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("decay_envelope: grid must increase strictly");
    const double sa = spectral_abscissa(a);
    if (!(eta >= 0.0 && eta < sa)) {
        std::ostringstream msg;
        msg << "decay_envelope: rate eta = " << eta
            << " must satisfy 0 <= eta < smallest spectral real part = " << sa;
        throw std::invalid_argument(msg.str());
    }

    DecayEnvelope env;
    env.eta = eta;
    const double u0n = norm(u0);
    size_t arg = 0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double v = norm(propagate(a, u0, grid[i])) * std::exp(eta * grid[i]) / u0n;
        if (v > env.m_eta) {
            env.m_eta = v;
            arg = i;
        }
    }
    env.t_at_max = grid[arg];
    env.max_at_right_endpoint = (arg + 1 == grid.size());
    return env;
}

ShortTimeCheck short_time_check(const ComplexMatrix& a, const ComplexVector& u0) {
    require_start_vector(a, u0, "short_time_check");
    const ComplexVector un = normalized(u0);

    ShortTimeCheck out;
    out.h_prime_closed_form = height_derivatives(a, un, 0.0).h_prime;
    out.minus_rayleigh = -inner(a * un, un).real();
    out.minus_numerical_abscissa = -numerical_abscissa(a);

    // One-sided slope at 0: first-order differences at steps 1e-3 and 5e-4,
    // combined so the leading error term cancels.
    const double h0 = norm(un);
    const auto one_sided = [&](double eps) {
        return (norm(propagate(a, un, eps)) - h0) / eps;
    };
    out.h_prime_fd = 2.0 * one_sided(5e-4) - one_sided(1e-3);

    const double fro = norm_frobenius(a);
    out.fd_tol = 1e-6 * (1.0 + fro) * (1.0 + fro) * (1.0 + fro);
    out.fd_consistent = std::abs(out.h_prime_fd - out.h_prime_closed_form) <= out.fd_tol;
    out.slope_at_most_minus_abscissa =
        out.h_prime_closed_form <= out.minus_numerical_abscissa + 1e-10 * (1.0 + fro);
    return out;
}

ScalarLogConvexity logconvex_scan(const std::vector<std::pair<double, double>>& samples,
                                  const ScalarScanOptions& opts) {
    if (samples.empty()) throw std::invalid_argument("logconvex_scan: no samples");
    double fmax = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second))
            throw std::invalid_argument("logconvex_scan: non-finite sample");
        if (!(samples[i].second > 0.0))
            throw std::invalid_argument("logconvex_scan: values must be positive");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw std::invalid_argument("logconvex_scan: times must increase strictly");
        fmax = std::max(fmax, samples[i].second);
    }

    const int n = static_cast<int>(samples.size());
    std::vector<double> t(static_cast<size_t>(n)), g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        t[static_cast<size_t>(i)] = samples[static_cast<size_t>(i)].first;
        g[static_cast<size_t>(i)] = std::log(samples[static_cast<size_t>(i)].second);
    }

    ScalarLogConvexity out;
    out.min_second_difference = std::numeric_limits<double>::infinity();
    for (int i = 1; i + 1 < n; ++i) {
        const double sl = (g[static_cast<size_t>(i)] - g[static_cast<size_t>(i - 1)]) /
                          (t[static_cast<size_t>(i)] - t[static_cast<size_t>(i - 1)]);
        const double sr = (g[static_cast<size_t>(i + 1)] - g[static_cast<size_t>(i)]) /
                          (t[static_cast<size_t>(i + 1)] - t[static_cast<size_t>(i)]);
        const double d2 =
            2.0 * (sr - sl) / (t[static_cast<size_t>(i + 1)] - t[static_cast<size_t>(i - 1)]);
        out.min_second_difference = std::min(out.min_second_difference, d2);
    }
    if (n < 3) out.min_second_difference = 0.0;
    out.pointwise = out.min_second_difference >= -opts.second_diff_tol;

    const double tp_tol =
        opts.three_point_tol > 0.0 ? opts.three_point_tol : 1e-10 * (1.0 + fmax);
    std::vector<int> idx;
    if (n <= 32) {
        for (int i = 0; i < n; ++i) idx.push_back(i);
    } else {
        idx = spread_indices(n, 12);
    }
    out.min_three_point_residual = std::numeric_limits<double>::infinity();
    const int m = static_cast<int>(idx.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                const size_t ii = static_cast<size_t>(idx[i]);
                const size_t jj = static_cast<size_t>(idx[j]);
                const size_t kk = static_cast<size_t>(idx[k]);
                out.min_three_point_residual = std::min(
                    out.min_three_point_residual,
                    three_point_residual(t[ii], samples[ii].second, t[jj],
                                         samples[jj].second, t[kk], samples[kk].second));
            }
    if (m < 3) out.min_three_point_residual = 0.0;
    out.three_point = out.min_three_point_residual >= -tp_tol;

    for (int i = 0; i + 1 < n; ++i) {
        const size_t ii = static_cast<size_t>(i);
        const double slope = (g[ii + 1] - g[ii]) / (t[ii + 1] - t[ii]);
        if (std::abs(slope) <= opts.flat_slope_tol) out.has_flat_segment = true;
    }
    return out;
}

}  // namespace logdecay
