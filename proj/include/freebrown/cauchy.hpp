#pragma once

#include <string>
#include <vector>

#include "freebrown/brown.hpp"

namespace freebrown {

/// Closed forms for the standard Cauchy base law. Everything here is a pure
/// formula; the general pipeline is validated against these.
namespace cauchy_oracle {

/// Unique positive root of v u^2 = (1 + v)(t - v - v^2).
double v(double t, double u);

/// Peak of the boundary curve of Lambda_t, attained at u = 0.
double v_peak(double t);

/// Strip density of the circular case with variance t, at real coordinate u
/// of the Lambda picture (the density is constant on vertical strips).
double circular_density(double t, double u);

/// psi_t(u) = u + u v / (1 + v).
double psi(double t, double u);

/// f(u0) for variances (alpha, beta), with s = alpha + beta.
double f(const EllipticParams& p, double u0);

/// u^2 of the boundary point of Omega at height b; throws NegativeSquare
/// past the peak height beta (-1 + sqrt(1 + 4 s)) / s.
double elliptic_boundary(const EllipticParams& p, double b);

double boundary_peak(const EllipticParams& p);

/// Height b = phi(u) of the Omega boundary over u, by monotone bisection of
/// elliptic_boundary.
double phi(const EllipticParams& p, double u);

/// Strip density of the elliptic case at real coordinate u of the Omega
/// picture.
double elliptic_density(const EllipticParams& p, double u);

/// alpha = 0 specialization: boundary height and density explicit in u.
double isigma_phi(double t, double u);
double isigma_density(double t, double u);

} // namespace cauchy_oracle

/// One formula family's oracle-vs-pipeline comparison.
struct OracleCheck {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Run the full comparison of the closed forms against the general pipeline
/// on the standard grids; shared by the validation subcommand and the tests.
std::vector<OracleCheck> validate_cauchy_report();

} // namespace freebrown
