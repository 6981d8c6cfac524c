#include "freebrown/subordination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace freebrown {

namespace {

constexpr double kPi = 3.14159265358979323846;

double i0_at(const MeasureSpec& m, double u, double v) {
    return kernel_bundle(m, u, v, 0.0).i0;
}

} // namespace

double i0_zero_limit(const MeasureSpec& measure, double u) {
    if (measure.kernel_diverges_at(u)) return std::numeric_limits<double>::infinity();
    return kernel_bundle(measure, u, 0.0, 0.0).i0;
}

FlowPoint v_t(const MeasureSpec& measure, double t, double u) {
    if (!(t > 0.0)) throw std::invalid_argument("v_t needs t > 0");
    FlowPoint fp;
    fp.u = u;
    fp.t = t;

    const double target = 1.0 / t;
    const bool diverges = measure.kernel_diverges_at(u);
    if (!diverges) {
        const double limit = i0_zero_limit(measure, u);
        if (limit <= target) {
            fp.v = 0.0;
            // Exactly critical points are component endpoints where the
            // implicit derivative degenerates.
            fp.dv_du = (std::abs(limit - target) <= 1e-9 * target)
                           ? std::numeric_limits<double>::quiet_NaN()
                           : 0.0;
            return fp;
        }
    }

    // i0(u, v) is strictly decreasing in v and i0 <= 1/v^2, so the root lies
    // in (0, sqrt(t)]. Bisect into a tight bracket, then Newton-polish with
    // d i0 / dv = -2 v j0.
    double hi = std::sqrt(t);
    double lo = 0.0;
    double f_hi = i0_at(measure, u, hi) - target;
    if (f_hi > 0.0) {
        // Only possible within rounding of the Dirac case; treat as root.
        fp.v = hi;
        fp.residual = std::abs(f_hi);
        fp.dv_du = 0.0;
        return fp;
    }
    for (int k = 0; k < 40 && (hi - lo) > 1e-6 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = i0_at(measure, u, mid) - target;
        if (f_mid > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    double v = 0.5 * (lo + hi);
    KernelBundle kb;
    for (int k = 0; k < 60; ++k) {
        kb = kernel_bundle(measure, u, v, 0.0);
        const double f = kb.i0 - target;
        if (f > 0.0)
            lo = std::max(lo, v);
        else
            hi = std::min(hi, v);
        const double slope = -2.0 * v * kb.j0;
        double next = v - f / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - v) <= 1e-16 * std::max(1.0, v)) {
            v = next;
            break;
        }
        v = next;
    }
    kb = kernel_bundle(measure, u, v, 0.0);

    fp.v = v;
    fp.residual = std::abs(kb.i0 - target);
    fp.dv_du = -kb.j1 / (v * kb.j0);
    return fp;
}

SupportComponents support_components(const MeasureSpec& measure, double t,
                                     const ComponentSearch& search) {
    if (!(t > 0.0)) throw std::invalid_argument("support_components needs t > 0");
    if (!(search.upper > search.lower) || !(search.step > 0.0))
        throw std::invalid_argument("invalid search window");

    SupportComponents sc;
    if (measure.has_unbounded_support()) {
        // Full-support density: i0(u, 0+) diverges at every u.
        sc.intervals.emplace_back(search.lower, search.upper);
        sc.unbounded = true;
        return sc;
    }

    const double target = 1.0 / t;
    auto inside = [&](double u) {
        return measure.kernel_diverges_at(u) || i0_zero_limit(measure, u) > target;
    };
    auto refine = [&](double u_out, double u_in) {
        for (int k = 0; k < 80 && std::abs(u_out - u_in) > 1e-12; ++k) {
            const double mid = 0.5 * (u_out + u_in);
            (inside(mid) ? u_in : u_out) = mid;
        }
        return 0.5 * (u_out + u_in);
    };

    const std::size_t n = std::size_t((search.upper - search.lower) / search.step) + 1;
    std::vector<double> us(n + 1);
    std::vector<char> flags(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        us[k] = std::min(search.lower + double(k) * search.step, search.upper);
        flags[k] = inside(us[k]) ? 1 : 0;
    }

    // A component hiding between two same-sign scan points means the step is
    // too coarse; probe midpoints of same-sign pairs.
    for (std::size_t k = 0; k + 1 <= n; ++k) {
        if (flags[k] == flags[k + 1] && us[k + 1] > us[k]) {
            const double mid = 0.5 * (us[k] + us[k + 1]);
            if (inside(mid) != bool(flags[k]))
                throw ResolutionTooCoarse("two v_t sign changes within one scan step");
        }
    }

    std::size_t k = 0;
    while (k <= n) {
        if (!flags[k]) {
            ++k;
            continue;
        }
        double left = (k == 0) ? us[0] : refine(us[k - 1], us[k]);
        std::size_t j = k;
        while (j + 1 <= n && flags[j + 1]) ++j;
        double right = (j == n) ? us[n] : refine(us[j + 1], us[j]);
        sc.intervals.emplace_back(left, right);
        k = j + 1;
    }
    return sc;
}

std::complex<double> h_map(const MeasureSpec& measure, double r, std::complex<double> z) {
    return z + r * cauchy_transform(measure, z);
}

double psi_t(const MeasureSpec& measure, double t, double u) {
    const FlowPoint fp = v_t(measure, t, u);
    const std::complex<double> h = h_map(measure, t, {u, fp.v});
    if (std::abs(h.imag()) > 1e-9)
        throw ImaginaryResidual("psi_t: H(u + i v_t(u)) has non-vanishing imaginary part");
    return h.real();
}

namespace {

// d/du0 of I1(u0) = i1(u0, v_t(u0)); the building block of f', psi' and the
// Brown density.
double i1_total_derivative(const MeasureSpec& measure, double t, double u,
                           FlowPoint* fp_out = nullptr, KernelBundle* kb_out = nullptr) {
    const FlowPoint fp = v_t(measure, t, u);
    const KernelBundle kb = kernel_bundle(measure, u, fp.v, 0.0);
    if (fp_out) *fp_out = fp;
    if (kb_out) *kb_out = kb;
    if (fp.v > 0.0) {
        const double v = fp.v;
        return 2.0 * v * v * kb.j0 - kb.i0 + 2.0 * kb.j1 * kb.j1 / kb.j0;
    }
    // v = 0 off the support: I1 = G(u) and dI1/du = -i0.
    return -kb.i0;
}

} // namespace

double psi_t_prime(const MeasureSpec& measure, double t, double u) {
    return 1.0 + t * i1_total_derivative(measure, t, u);
}

std::vector<std::pair<double, double>> free_convolution_density(
    const MeasureSpec& measure, double t, const std::vector<double>& u_grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(u_grid.size());
    for (double u : u_grid) {
        const FlowPoint fp = v_t(measure, t, u);
        out.emplace_back(psi_t(measure, t, u), fp.v / (kPi * t));
    }
    for (std::size_t k = 1; k < out.size(); ++k)
        if (!(out[k].first > out[k - 1].first))
            throw NumericError("free convolution locations are not strictly increasing");
    return out;
}

std::pair<double, double> v_t_derivative_fd_check(const MeasureSpec& measure, double t, double u) {
    const FlowPoint fp = v_t(measure, t, u);
    if (!(fp.v > 0.0)) throw std::invalid_argument("fd check needs v_t(u) > 0");
    const double h = 1e-5;
    const double fd = (v_t(measure, t, u + h).v - v_t(measure, t, u - h).v) / (2.0 * h);
    return {fp.dv_du, fd};
}

} // namespace freebrown
