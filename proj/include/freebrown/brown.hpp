#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "freebrown/measure.hpp"
#include "freebrown/subordination.hpp"

namespace freebrown {

/// Variance pair (alpha, beta) of the elliptic perturbation; alpha >= 0,
/// beta > 0. alpha = beta is the circular case, alpha = 0 the purely
/// imaginary semicircular case.
struct EllipticParams {
    double alpha = 0.0;
    double beta = 1.0;

    EllipticParams(double a, double b) : alpha(a), beta(b) {
        if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
        if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    }
    double s() const { return alpha + beta; }
    double r() const { return alpha - beta; }
    bool circular() const { return alpha == beta; }
};

/// Sampled Brown-measure field: boundary curve phi and vertical-strip
/// density w over a grid, in both the Lambda (u0) and Omega (u) coordinates.
struct DensityField {
    EllipticParams params{0.0, 1.0};
    std::vector<double> u0_grid;
    std::vector<double> u_grid;
    std::vector<double> phi;
    std::vector<double> w;
    SupportComponents components; // in u0 coordinates
    double mass = 0.0;            // grid mass + tail correction
    double grid_mass = 0.0;
    double tail_correction = 0.0;
};

/// Boundary map f(u0) = u0 + (alpha - beta) * i1(u0, v_s(u0)); strictly
/// increasing homeomorphism of the real line.
double f_ab(const MeasureSpec& measure, const EllipticParams& p, double u0);
double f_ab_prime(const MeasureSpec& measure, const EllipticParams& p, double u0);
double f_ab_inverse(const MeasureSpec& measure, const EllipticParams& p, double u);

/// Height of the Brown-measure domain over u (Omega coordinates).
double phi_ab(const MeasureSpec& measure, const EllipticParams& p, double u);

/// Brown-measure density on the vertical strip through u; constant in v.
double brown_density(const MeasureSpec& measure, const EllipticParams& p, double u);

/// Assemble the field over the component set. The window is in u0
/// coordinates; when absent it is auto-selected from the measure's support.
DensityField density_field(const MeasureSpec& measure, const EllipticParams& p,
                           int resolution,
                           std::optional<std::pair<double, double>> window = std::nullopt);

/// Push-forward Lambda_s -> Omega_{alpha,beta}.
std::complex<double> pushforward_U(const MeasureSpec& measure, const EllipticParams& p,
                                   std::complex<double> lambda0);

/// Push-forward Omega_{alpha,beta} -> law of x0 + sigma_s.
double pushforward_Q(const MeasureSpec& measure, const EllipticParams& p,
                     std::complex<double> lambda);

/// Closed-form gradient of s_t on Omega (alpha = 0 family).
std::pair<double, double> grad_s(const MeasureSpec& measure, double t,
                                 std::complex<double> lambda);

/// f''(u0) = ((alpha - beta)/s) psi_s''(u0), via finite differences of the
/// analytic psi'.
double f_second_derivative(const MeasureSpec& measure, const EllipticParams& p, double u0);

/// Default u0 window for field assembly (support plus 3 sqrt(s), or a
/// quantile-based expansion for unbounded support).
std::pair<double, double> auto_window(const MeasureSpec& measure, double s);

} // namespace freebrown
