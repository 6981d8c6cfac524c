#include "freebrown/characteristics.hpp"

#include <cmath>
#include <limits>

#include "freebrown/subordination.hpp"

namespace freebrown {

CharacteristicInit characteristic_init(const MeasureSpec& measure,
                                       std::complex<double> lambda0, double eps0) {
    if (!(eps0 > 0.0)) throw std::invalid_argument("characteristic_init needs eps0 > 0");
    const double u0 = lambda0.real();
    const double v0 = lambda0.imag();
    const KernelBundle kb = kernel_bundle(measure, u0, v0, eps0);

    CharacteristicInit init;
    init.lambda0 = lambda0;
    init.eps0 = eps0;
    init.p_u = 2.0 * kb.i1;
    init.p_v = 2.0 * v0 * kb.i0;
    init.p_eps = kb.i0;
    init.h0 = -(init.p_u * init.p_u - init.p_v * init.p_v) / 4.0 -
              eps0 * init.p_eps * init.p_eps;
    init.s0 = 0.5 * log_energy(measure, lambda0, eps0);
    init.t_star = 1.0 / init.p_eps;
    return init;
}

CharacteristicState characteristic_flow(const CharacteristicInit& init, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("characteristic_flow needs t >= 0");
    if (t > init.t_star) throw BeyondLifetime("characteristic past its lifetime");

    CharacteristicState st;
    st.t = t;
    st.u = init.lambda0.real() - 0.5 * t * init.p_u;
    st.v = init.lambda0.imag() + 0.5 * t * init.p_v;
    st.p_u = init.p_u;
    st.p_v = init.p_v;
    // The factor vanishes identically at the lifetime; keep that exact.
    const double factor = (t == init.t_star) ? 0.0 : 1.0 - t * init.p_eps;
    st.eps = init.eps0 * factor * factor;
    st.p_eps = (factor == 0.0) ? std::numeric_limits<double>::infinity()
                               : init.p_eps / factor;
    st.s = init.s0 + t * init.h0;
    return st;
}

double hamiltonian(const CharacteristicState& st) {
    return -(st.p_u * st.p_u - st.p_v * st.p_v) / 4.0 - st.eps * st.p_eps * st.p_eps;
}

LifetimeLimit lifetime_limit(const MeasureSpec& measure, std::complex<double> lambda0) {
    const double u0 = lambda0.real();
    const double v0 = lambda0.imag();
    if (v0 == 0.0 && measure.kernel_diverges_at(u0)) return {false, 0.0};
    const double i0 = kernel_bundle(measure, u0, v0, 0.0).i0;
    if (!(i0 > 0.0)) return {true, 0.0};
    return {false, 1.0 / i0};
}

double epsilon0_for_lifetime(const MeasureSpec& measure, std::complex<double> lambda0,
                             double t) {
    const double u0 = lambda0.real();
    const double v0 = lambda0.imag();
    const FlowPoint fp = v_t(measure, t, u0);
    const double e = fp.v * fp.v - v0 * v0;
    if (e < 0.0)
        throw OutsideLambdaClosure("epsilon0_for_lifetime: point outside the closure of Lambda_t");
    return e;
}

bool in_lambda(const MeasureSpec& measure, std::complex<double> lambda0, double t) {
    const FlowPoint fp = v_t(measure, t, lambda0.real());
    return std::abs(lambda0.imag()) < fp.v;
}

std::complex<double> terminal_position(const MeasureSpec& measure,
                                       std::complex<double> lambda0, double t) {
    const double u0 = lambda0.real();
    const double v0 = lambda0.imag();
    const FlowPoint fp = v_t(measure, t, u0);
    if (std::abs(v0) < fp.v) {
        // eps0 matched to the lifetime: i0 = 1/t there, so u(t) = t ix and
        // v(t) = 2 v0.
        const double eps0 = fp.v * fp.v - v0 * v0;
        const KernelBundle kb = kernel_bundle(measure, u0, v0, eps0);
        return {t * kb.ix, 2.0 * v0};
    }
    // eps0 = 0 branch, which survives up to t whenever lambda0 is outside
    // Lambda_t.
    return lambda0 - t * cauchy_transform(measure, lambda0);
}

} // namespace freebrown
