#include "freebrown/cauchy.hpp"

#include <cmath>

#include "freebrown/subordination.hpp"

namespace freebrown {
namespace cauchy_oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

double v_peak(double t) { return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * t)); }

double v(double t, double u) {
    if (!(t > 0.0)) throw std::invalid_argument("cauchy v needs t > 0");
    // v u^2 = (1 + v)(t - v - v^2) rearranged to the monic cubic
    // g(v) = v^3 + 2 v^2 + (1 + u^2 - t) v - t, increasing through its unique
    // positive root.
    const double c1 = 1.0 + u * u - t;
    auto g = [&](double x) { return ((x + 2.0) * x + c1) * x - t; };
    auto dg = [&](double x) { return (3.0 * x + 4.0) * x + c1; };

    double lo = 0.0, hi = v_peak(t);
    for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int k = 0; k < 8; ++k) {
        const double step = g(x) / dg(x);
        const double next = x - step;
        if (!(next > 0.0)) break;
        x = next;
        if (std::abs(step) <= 1e-16 * x) break;
    }
    return x;
}

double circular_density(double t, double u) {
    const double w = v(t, u);
    const double op = 1.0 + w;
    return (t + 4.0 * w * w * op * op) / (2.0 * kPi * t * op * (t + 2.0 * w * w * op));
}

double psi(double t, double u) {
    const double w = v(t, u);
    return u + u * w / (1.0 + w);
}

double f(const EllipticParams& p, double u0) {
    const double w = v(p.s(), u0);
    return u0 + (p.r() / p.s()) * u0 * w / (1.0 + w);
}

double boundary_peak(const EllipticParams& p) {
    const double s = p.s();
    return p.beta * (-1.0 + std::sqrt(1.0 + 4.0 * s)) / s;
}

double elliptic_boundary(const EllipticParams& p, double b) {
    if (!(b > 0.0)) throw std::invalid_argument("boundary height must be positive");
    const double s = p.s();
    const double beta = p.beta;
    double num_factor = 4.0 * beta * beta - 2.0 * b * beta - b * b * s;
    // Rounding at b = peak can leave a tiny negative residue.
    if (num_factor < 0.0 && num_factor > -1e-12 * 4.0 * beta * beta) num_factor = 0.0;
    if (num_factor < 0.0)
        throw NegativeSquare("boundary height exceeds the peak of phi");
    const double a = b * p.alpha + beta;
    return a * a * num_factor / (b * beta * beta * (b * s + 2.0 * beta));
}

double phi(const EllipticParams& p, double u) {
    const double peak = boundary_peak(p);
    const double u2 = u * u;
    if (u2 == 0.0) return peak;
    // elliptic_boundary is strictly decreasing in b; bisect in log b so tiny
    // heights at large |u| keep relative accuracy.
    double hi = std::log(peak);
    double lo = hi;
    for (int k = 0; k < 2000; ++k) {
        lo -= 1.0;
        if (elliptic_boundary(p, std::exp(lo)) >= u2) break;
    }
    for (int k = 0; k < 120; ++k) {
        const double mid = 0.5 * (lo + hi);
        (elliptic_boundary(p, std::exp(mid)) >= u2 ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

double elliptic_density(const EllipticParams& p, double u) {
    const double b = phi(p, u);
    const double s = p.s();
    const double beta = p.beta;
    const double b2 = b * b, b3 = b2 * b, b4 = b3 * b;
    const double beta2 = beta * beta, beta4 = beta2 * beta2;
    const double num = b4 * s * s * s + 4.0 * b3 * s * s * beta +
                       4.0 * b2 * s * beta2 + 4.0 * beta4;
    const double den = b4 * s * s * p.alpha + 4.0 * b3 * s * p.alpha * beta +
                       4.0 * b2 * p.alpha * beta2 + 4.0 * b * beta4 + 4.0 * beta4;
    return num / (4.0 * kPi * beta * den);
}

double isigma_phi(double t, double u) {
    const double r1 = std::sqrt(u * u + 1.0);
    const double r2 = std::sqrt(u * u + 1.0 + 4.0 * t);
    return 4.0 * t / (r1 * (r1 + r2));
}

double isigma_density(double t, double u) {
    const double q = 1.0 + u * u;
    return (4.0 * t + q * q) / (4.0 * kPi * t * q * std::sqrt(q) * std::sqrt(q + 4.0 * t));
}

} // namespace cauchy_oracle

std::vector<OracleCheck> validate_cauchy_report() {
    const MeasureSpec cauchy = MeasureSpec::cauchy(0.0, 1.0);
    std::vector<OracleCheck> checks;

    auto grid = [](double lo, double hi, int n) {
        std::vector<double> g(n);
        for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * double(k) / double(n - 1);
        return g;
    };
    auto add = [&checks](const std::string& name, double tol, auto&& residual_fn,
                         const std::vector<double>& us) {
        OracleCheck c;
        c.name = name;
        c.tolerance = tol;
        for (double u : us) c.max_residual = std::max(c.max_residual, residual_fn(u));
        c.pass = c.max_residual <= tol;
        checks.push_back(c);
    };

    const auto u200 = grid(-8.0, 8.0, 200);

    for (double t : {0.25, 1.0, 4.0}) {
        add("boundary v_t (t=" + std::to_string(t) + ")", 1e-10,
            [&](double u) {
                return std::abs(v_t(cauchy, t, u).v - cauchy_oracle::v(t, u));
            },
            u200);
    }

    add("subordination psi_1", 1e-9,
        [&](double u) { return std::abs(psi_t(cauchy, 1.0, u) - cauchy_oracle::psi(1.0, u)); },
        u200);

    {
        const EllipticParams circ(0.5, 0.5);
        add("circular density (t=1)", 1e-8,
            [&](double u) {
                return std::abs(brown_density(cauchy, circ, u) -
                                cauchy_oracle::circular_density(1.0, u));
            },
            u200);
    }
    {
        const EllipticParams p(0.125, 0.875);
        add("elliptic density (1/8, 7/8)", 1e-8,
            [&](double u) {
                return std::abs(brown_density(cauchy, p, u) -
                                cauchy_oracle::elliptic_density(p, u));
            },
            u200);
        add("elliptic boundary height (1/8, 7/8)", 1e-8,
            [&](double u) {
                return std::abs(phi_ab(cauchy, p, u) - cauchy_oracle::phi(p, u));
            },
            u200);
        add("boundary/height inverse residual", 1e-9,
            [&](double u) {
                if (u == 0.0) return 0.0;
                const double b = cauchy_oracle::phi(p, u);
                return std::abs(cauchy_oracle::elliptic_boundary(p, b) - u * u) /
                       std::max(1.0, u * u);
            },
            u200);
    }
    {
        const EllipticParams p(0.0, 1.0);
        const auto u20 = grid(-20.0, 20.0, 200);
        add("imaginary-semicircular density (t=1)", 1e-9,
            [&](double u) {
                return std::abs(brown_density(cauchy, p, u) -
                                cauchy_oracle::isigma_density(1.0, u));
            },
            u20);
        add("imaginary-semicircular phi (t=1)", 1e-9,
            [&](double u) {
                return std::abs(phi_ab(cauchy, p, u) - cauchy_oracle::isigma_phi(1.0, u));
            },
            u20);
    }
    return checks;
}

} // namespace freebrown
