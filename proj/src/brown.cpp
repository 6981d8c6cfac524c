#include "freebrown/brown.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace freebrown {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct StripSample {
    double u0 = 0.0;
    double v = 0.0;       // v_s(u0)
    double i1 = 0.0;      // i1(u0, v)
    double dI1 = 0.0;     // d/du0 of i1(u0, v_s(u0))
    double f_prime = 0.0;
};

StripSample strip_sample(const MeasureSpec& measure, const EllipticParams& p, double u0) {
    const double s = p.s();
    const FlowPoint fp = v_t(measure, s, u0);
    const KernelBundle kb = kernel_bundle(measure, u0, fp.v, 0.0);
    StripSample out;
    out.u0 = u0;
    out.v = fp.v;
    out.i1 = kb.i1;
    if (fp.v > 0.0) {
        const double v = fp.v;
        out.dI1 = 2.0 * v * v * kb.j0 - kb.i0 + 2.0 * kb.j1 * kb.j1 / kb.j0;
    } else {
        out.dI1 = -kb.i0;
    }
    out.f_prime = 1.0 + p.r() * out.dI1;
    return out;
}

} // namespace

double f_ab(const MeasureSpec& measure, const EllipticParams& p, double u0) {
    if (p.circular()) return u0;
    const double s = p.s();
    const FlowPoint fp = v_t(measure, s, u0);
    const KernelBundle kb = kernel_bundle(measure, u0, fp.v, 0.0);
    return u0 + p.r() * kb.i1;
}

double f_ab_prime(const MeasureSpec& measure, const EllipticParams& p, double u0) {
    if (p.circular()) return 1.0;
    return strip_sample(measure, p, u0).f_prime;
}

double f_ab_inverse(const MeasureSpec& measure, const EllipticParams& p, double u) {
    if (p.circular()) return u;
    const double scale = measure.scale() + std::sqrt(p.s());
    const double tol = 1e-11 * std::max(1.0, std::abs(u));

    double d = scale;
    double lo = u - d, hi = u + d;
    while (f_ab(measure, p, lo) > u) {
        d *= 2.0;
        lo = u - d;
        if (d > 1e9 * scale) throw BracketFailure("f inverse: lower bracket expansion failed");
    }
    d = scale;
    while (f_ab(measure, p, hi) < u) {
        d *= 2.0;
        hi = u + d;
        if (d > 1e9 * scale) throw BracketFailure("f inverse: upper bracket expansion failed");
    }

    double x = 0.5 * (lo + hi);
    for (int k = 0; k < 100; ++k) {
        const StripSample smp = strip_sample(measure, p, x);
        const double fx = x + p.r() * smp.i1;
        if (fx > u)
            hi = std::min(hi, x);
        else
            lo = std::max(lo, x);
        if (std::abs(fx - u) <= tol) return x;
        double next = (smp.f_prime > 0.0) ? x - (fx - u) / smp.f_prime : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    const double fx = f_ab(measure, p, x);
    if (std::abs(fx - u) > 10.0 * tol)
        throw BracketFailure("f inverse did not converge");
    return x;
}

double phi_ab(const MeasureSpec& measure, const EllipticParams& p, double u) {
    const double u0 = f_ab_inverse(measure, p, u);
    const FlowPoint fp = v_t(measure, p.s(), u0);
    return (2.0 * p.beta / p.s()) * fp.v;
}

double brown_density(const MeasureSpec& measure, const EllipticParams& p, double u) {
    const double u0 = f_ab_inverse(measure, p, u);
    const StripSample smp = strip_sample(measure, p, u0);
    if (!(smp.v > 0.0)) throw OutsideDomain("brown_density: phi(u) = 0");
    return (1.0 + 2.0 * p.beta * smp.dI1 / smp.f_prime) / (4.0 * kPi * p.beta);
}

std::pair<double, double> auto_window(const MeasureSpec& measure, double s) {
    const double pad = 3.0 * std::sqrt(s);
    if (measure.has_unbounded_support())
        return {measure.quantile(1e-4) - pad, measure.quantile(1.0 - 1e-4) + pad};
    return {measure.support_lower() - pad, measure.support_upper() + pad};
}

DensityField density_field(const MeasureSpec& measure, const EllipticParams& p,
                           int resolution,
                           std::optional<std::pair<double, double>> window) {
    if (resolution < 16) throw std::invalid_argument("resolution must be >= 16");
    const double s = p.s();
    const auto [wlo, whi] = window.value_or(auto_window(measure, s));
    if (!(whi > wlo)) throw std::invalid_argument("empty window");

    DensityField field;
    field.params = p;
    field.components = support_components(
        measure, s, {wlo, whi, (whi - wlo) / std::max(resolution, 64)});

    // Sample per component. Unbounded supports get an arctangent-stretched
    // grid so the resolution concentrates where the density varies. The mass
    // accumulates in u0 coordinates: 2 phi w du = 2 phi w f' du0 and
    // w f' = psi'/(4 pi beta), which stays finite even when f degenerates
    // (a Dirac base with alpha = 0 collapses Omega to a segment).
    const double total_len = [&] {
        double acc = 0.0;
        for (auto& iv : field.components.intervals) acc += iv.second - iv.first;
        return acc;
    }();
    const double w_inf = 1.0 / (4.0 * kPi * p.beta);
    double mass = 0.0;
    for (auto& iv : field.components.intervals) {
        const double len = iv.second - iv.first;
        const int n = std::max(8, int(std::lround(double(resolution) * len / total_len)));
        const bool stretched = field.components.unbounded && len > 40.0 * measure.scale();
        const double c = measure.scale();
        const double th_lo = std::atan(iv.first / c);
        const double th_hi = std::atan(iv.second / c);
        double prev_g0 = 0.0, prev_th = th_lo, prev_u0 = iv.first;
        for (int k = 0; k <= n; ++k) {
            const double t01 = double(k) / double(n);
            const double th = th_lo + t01 * (th_hi - th_lo);
            double u0 = stretched ? c * std::tan(th) : iv.first + t01 * len;
            if (k == 0) u0 = iv.first;
            if (k == n) u0 = iv.second;

            const StripSample smp = strip_sample(measure, p, u0);
            const double phi = (2.0 * p.beta / s) * smp.v;
            field.u0_grid.push_back(u0);
            field.u_grid.push_back(u0 + p.r() * smp.i1);
            field.phi.push_back(phi);
            field.w.push_back(smp.v > 0.0
                                  ? (1.0 + 2.0 * p.beta * smp.dI1 / smp.f_prime) /
                                        (4.0 * kPi * p.beta)
                                  : std::numeric_limits<double>::quiet_NaN());

            const double psi_prime = 1.0 + s * smp.dI1;
            const double g0 = (smp.v > 0.0) ? 2.0 * phi * psi_prime * w_inf : 0.0;
            if (k > 0) {
                // Trapezoid in theta for stretched grids keeps the far-tail
                // integrand bounded; plain u0 spacing otherwise.
                if (stretched) {
                    auto jac = [&](double x) { return (c * c + x * x) / c; };
                    mass += 0.5 * (g0 * jac(u0) + prev_g0 * jac(prev_u0)) *
                            (th - prev_th);
                } else {
                    mass += 0.5 * (g0 + prev_g0) * (u0 - prev_u0);
                }
            }
            prev_g0 = g0;
            prev_th = th;
            prev_u0 = u0;
        }
    }
    field.grid_mass = mass;
    if (field.components.unbounded) {
        const double u_l = field.u_grid.front();
        const double u_r = field.u_grid.back();
        const double c_l = field.phi.front() * u_l * u_l;
        const double c_r = field.phi.back() * u_r * u_r;
        field.tail_correction = 2.0 * w_inf * (c_l / std::abs(u_l) + c_r / std::abs(u_r));
    }
    field.mass = field.grid_mass + field.tail_correction;
    return field;
}

std::complex<double> pushforward_U(const MeasureSpec& measure, const EllipticParams& p,
                                   std::complex<double> lambda0) {
    const double u0 = lambda0.real();
    const double v0 = lambda0.imag();
    const FlowPoint fp = v_t(measure, p.s(), u0);
    if (std::abs(v0) > fp.v + 1e-9)
        throw OutsideLambda("pushforward_U: point outside the closure of Lambda");
    return {f_ab(measure, p, u0), (2.0 * p.beta / p.s()) * v0};
}

double pushforward_Q(const MeasureSpec& measure, const EllipticParams& p,
                     std::complex<double> lambda) {
    const double u = lambda.real();
    const double s = p.s();
    const double u0 = f_ab_inverse(measure, p, u);
    const FlowPoint fp = v_t(measure, s, u0);
    const double phi = (2.0 * p.beta / s) * fp.v;
    if (std::abs(lambda.imag()) > phi + 1e-9)
        throw OutsideOmega("pushforward_Q: point outside the closure of Omega");
    if (p.circular()) return psi_t(measure, s, u);
    return (s * u - 2.0 * p.beta * u0) / p.r();
}

std::pair<double, double> grad_s(const MeasureSpec& measure, double t,
                                 std::complex<double> lambda) {
    const EllipticParams p(0.0, t);
    const double u = lambda.real();
    const double u0 = f_ab_inverse(measure, p, u);
    const FlowPoint fp = v_t(measure, t, u0);
    if (std::abs(lambda.imag()) >= 2.0 * fp.v)
        throw OutsideOmega("grad_s: point outside Omega");
    return {2.0 * (u0 - u) / t, lambda.imag() / t};
}

double f_second_derivative(const MeasureSpec& measure, const EllipticParams& p, double u0) {
    const double s = p.s();
    if (!(v_t(measure, s, u0).v > 0.0))
        throw OutsideLambda("f'' is defined only where v_s(u0) > 0");
    const double h = 1e-4 * std::max(1.0, std::abs(u0));
    const double psi2 =
        (psi_t_prime(measure, s, u0 + h) - psi_t_prime(measure, s, u0 - h)) / (2.0 * h);
    return (p.r() / s) * psi2;
}

} // namespace freebrown
