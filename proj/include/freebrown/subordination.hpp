#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "freebrown/measure.hpp"

namespace freebrown {

/// One point of the implicit boundary function v_t: the unique v > 0 with
/// i0(u, v) = 1/t, or 0 where no such v exists.
struct FlowPoint {
    double u = 0.0;
    double t = 0.0;
    double v = 0.0;
    double dv_du = 0.0;   // implicit derivative; NaN at component endpoints
    double residual = 0.0; // |i0(u,v) - 1/t| at the returned root (v > 0)
};

/// Maximal open intervals where v_t > 0.
struct SupportComponents {
    std::vector<std::pair<double, double>> intervals;
    bool unbounded = false; // v_t > 0 on the whole line (full-support density)
};

struct ComponentSearch {
    double lower = 0.0;
    double upper = 0.0;
    double step = 0.0;
};

FlowPoint v_t(const MeasureSpec& measure, double t, double u);

SupportComponents support_components(const MeasureSpec& measure, double t,
                                     const ComponentSearch& search);

/// H_r(z) = z + r G(z).
std::complex<double> h_map(const MeasureSpec& measure, double r, std::complex<double> z);

/// psi_t(u) = H_t(u + i v_t(u)), always real.
double psi_t(const MeasureSpec& measure, double t, double u);

/// Analytic derivative of psi_t where v_t(u) > 0 (and its one-sided value
/// where v_t = 0 off the support).
double psi_t_prime(const MeasureSpec& measure, double t, double u);

/// Density samples of the free convolution with a semicircular of variance t:
/// pairs (psi_t(u), v_t(u) / (pi t)).
std::vector<std::pair<double, double>> free_convolution_density(
    const MeasureSpec& measure, double t, const std::vector<double>& u_grid);

/// Validation helper: analytic dv/du against a central finite difference.
std::pair<double, double> v_t_derivative_fd_check(const MeasureSpec& measure, double t, double u);

/// Limit of i0(u, v) as v -> 0+; +inf encoded by the divergence flag in
/// MeasureSpec (callers should test kernel_diverges_at first).
double i0_zero_limit(const MeasureSpec& measure, double u);

} // namespace freebrown
