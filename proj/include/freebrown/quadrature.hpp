#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

#include "freebrown/errors.hpp"

namespace freebrown {

/// Result of an adaptive integration: value(s) plus an error estimate.
template <std::size_t N>
struct QuadResult {
    std::array<double, N> value{};
    double error_estimate = 0.0;
};

namespace detail {

// Gauss-Kronrod 15/7 nodes and weights on [-1, 1] (QUADPACK values).
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kGk15Weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGauss7Weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
    double a = 0.0;
    double b = 0.0;
    std::array<double, N> value{};
    double error = 0.0;
    bool operator<(const Panel& other) const { return error < other.error; }
};

// One Gauss-Kronrod 15-point evaluation on [a, b]. The error estimate is
// the QUADPACK-style rescaled difference between the 15- and 7-point rules.
template <std::size_t N, typename F>
Panel<N> gk15(const F& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    std::array<double, N> kronrod{};
    std::array<double, N> gauss{};
    double resabs = 0.0;

    auto accumulate = [&](double x, double wk, bool in_gauss, double wg) {
        std::array<double, N> fx{};
        f(x, fx);
        for (std::size_t i = 0; i < N; ++i) {
            kronrod[i] += wk * fx[i];
            if (in_gauss) gauss[i] += wg * fx[i];
        }
        resabs += wk * std::abs(fx[0]);
    };

    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kGk15Nodes[j];
        const bool in_gauss = (j % 2 == 1);
        const double wg = in_gauss ? kGauss7Weights[j / 2] : 0.0;
        accumulate(mid - dx, kGk15Weights[j], in_gauss, wg);
        accumulate(mid + dx, kGk15Weights[j], in_gauss, wg);
    }
    accumulate(mid, kGk15Weights[7], true, kGauss7Weights[3]);

    Panel<N> panel;
    panel.a = a;
    panel.b = b;
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        panel.value[i] = kronrod[i] * half;
        err = std::max(err, std::abs(kronrod[i] - gauss[i]) * std::abs(half));
    }
    resabs *= std::abs(half);
    if (resabs > 0.0 && err > 0.0) {
        const double scaled = 200.0 * err / resabs;
        err = resabs * std::min(1.0, scaled * std::sqrt(scaled));
    }
    panel.error = err;
    return panel;
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of a vector-valued integrand over the
/// union of intervals delimited by `breakpoints` (which must be sorted).
/// `f(x, out)` fills `out` with the N integrand components at x.
template <std::size_t N, typename F>
QuadResult<N> integrate_adaptive(const F& f, const std::vector<double>& breakpoints,
                                 double rel_tol = 1e-11, double abs_tol = 1e-300,
                                 std::size_t max_panels = 4000) {
    QuadResult<N> total;
    if (breakpoints.size() < 2) return total;

    std::priority_queue<detail::Panel<N>> queue;
    std::array<double, N> sum{};
    double err_sum = 0.0;

    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        if (breakpoints[k + 1] <= breakpoints[k]) continue;
        auto panel = detail::gk15<N>(f, breakpoints[k], breakpoints[k + 1]);
        for (std::size_t i = 0; i < N; ++i) sum[i] += panel.value[i];
        err_sum += panel.error;
        queue.push(panel);
    }

    std::size_t n_panels = queue.size();
    auto magnitude = [&sum]() {
        double m = 0.0;
        for (double v : sum) m = std::max(m, std::abs(v));
        return m;
    };

    while (!queue.empty() && n_panels < max_panels) {
        if (err_sum <= std::max(abs_tol, rel_tol * magnitude())) break;
        auto worst = queue.top();
        if (worst.error <= 1e-4 * std::max(abs_tol, rel_tol * magnitude()) / double(n_panels + 1)) break;
        queue.pop();

        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval is at floating point resolution; keep its estimate.
            continue;
        }
        auto left = detail::gk15<N>(f, worst.a, mid);
        auto right = detail::gk15<N>(f, mid, worst.b);
        for (std::size_t i = 0; i < N; ++i)
            sum[i] += left.value[i] + right.value[i] - worst.value[i];
        err_sum += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++n_panels;
    }

    total.value = sum;
    total.error_estimate = std::max(err_sum, 0.0);
    return total;
}

/// Scalar convenience wrapper.
template <typename F>
QuadResult<1> integrate_adaptive_scalar(const F& f, const std::vector<double>& breakpoints,
                                        double rel_tol = 1e-11, double abs_tol = 1e-300,
                                        std::size_t max_panels = 4000) {
    auto wrapped = [&f](double x, std::array<double, 1>& out) { out[0] = f(x); };
    return integrate_adaptive<1>(wrapped, breakpoints, rel_tol, abs_tol, max_panels);
}

} // namespace freebrown
