#pragma once

#include <complex>

#include "freebrown/measure.hpp"

namespace freebrown {

/// Initial data of one characteristic of the Hamilton-Jacobi system for
/// S(t, lambda, eps), started at (lambda0, eps0) with eps0 > 0.
struct CharacteristicInit {
    std::complex<double> lambda0;
    double eps0 = 0.0;
    double p_u = 0.0;    // 2 i1(u0, v0; eps0)
    double p_v = 0.0;    // 2 v0 i0(u0, v0; eps0)
    double p_eps = 0.0;  // i0(u0, v0; eps0)
    double h0 = 0.0;     // conserved Hamiltonian value
    double s0 = 0.0;     // S(0) = (1/2) log-energy at the start point
    double t_star = 0.0; // lifetime 1 / p_eps
};

/// State of a characteristic at time t; p_u and p_v do not move.
struct CharacteristicState {
    double t = 0.0;
    double u = 0.0;
    double v = 0.0;
    double eps = 0.0;
    double p_u = 0.0;
    double p_v = 0.0;
    double p_eps = 0.0;
    double s = 0.0; // S along the path: s0 + t h0
};

CharacteristicInit characteristic_init(const MeasureSpec& measure,
                                       std::complex<double> lambda0, double eps0);

/// Closed-form solution of the flow; throws BeyondLifetime past t_star.
CharacteristicState characteristic_flow(const CharacteristicInit& init, double t);

/// Hamiltonian -(p_u^2 - p_v^2)/4 - eps p_eps^2 evaluated at a state.
double hamiltonian(const CharacteristicState& st);

/// Limit of the lifetime as eps0 -> 0+: 1 / i0(u0, v0; 0). Zero when the
/// kernel diverges at a real start point on the support; unbounded is an
/// explicit state, never an infinity sentinel.
struct LifetimeLimit {
    bool unbounded = false;
    double value = 0.0; // meaningful only when !unbounded
};

LifetimeLimit lifetime_limit(const MeasureSpec& measure, std::complex<double> lambda0);

/// The eps0 whose characteristic from lambda0 has lifetime exactly t:
/// v_t(u0)^2 - v0^2. Defined on the closure of Lambda_t.
double epsilon0_for_lifetime(const MeasureSpec& measure, std::complex<double> lambda0,
                             double t);

/// Terminal point at time t of the characteristic relevant for lambda0:
/// inside Lambda_t the eps0-matched path, outside the eps0 = 0 path
/// lambda0 - t G(lambda0).
std::complex<double> terminal_position(const MeasureSpec& measure,
                                       std::complex<double> lambda0, double t);

/// Whether lambda0 lies in the open set Lambda_t (|v0| < v_t(u0)).
bool in_lambda(const MeasureSpec& measure, std::complex<double> lambda0, double t);

} // namespace freebrown
