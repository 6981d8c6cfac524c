#include "freebrown/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "freebrown/quadrature.hpp"

namespace freebrown {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kKernelRelTol = 1e-11;

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw NonFiniteInput(std::string("non-finite input: ") + name);
}

} // namespace

MeasureSpec MeasureSpec::atoms(std::vector<Atom> atoms, bool allow_dirac) {
    if (atoms.empty()) throw std::invalid_argument("atom list is empty");
    double mass = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        require_finite(atoms[k].location, "atom location");
        if (atoms[k].weight <= 0.0) throw std::invalid_argument("atom weight must be positive");
        if (k > 0 && atoms[k].location <= atoms[k - 1].location)
            throw std::invalid_argument("atom locations must be strictly increasing");
        mass += atoms[k].weight;
    }
    if (std::abs(mass - 1.0) > 1e-12) throw std::invalid_argument("atom weights must sum to 1");
    if (atoms.size() == 1 && !allow_dirac)
        throw std::invalid_argument("single Dirac atom requires allow_dirac");
    MeasureSpec m;
    m.kind_ = MeasureKind::Atoms;
    m.atoms_ = std::move(atoms);
    m.allow_dirac_ = allow_dirac;
    return m;
}

MeasureSpec MeasureSpec::cauchy(double location, double scale) {
    require_finite(location, "location");
    if (!(scale > 0.0)) throw std::invalid_argument("cauchy scale must be positive");
    MeasureSpec m;
    m.kind_ = MeasureKind::Cauchy;
    m.param_a_ = location;
    m.param_b_ = scale;
    return m;
}

MeasureSpec MeasureSpec::semicircle(double variance) {
    if (!(variance > 0.0)) throw std::invalid_argument("semicircle variance must be positive");
    MeasureSpec m;
    m.kind_ = MeasureKind::Semicircle;
    m.param_a_ = variance;
    return m;
}

MeasureSpec MeasureSpec::uniform(double lower, double upper) {
    require_finite(lower, "lower");
    require_finite(upper, "upper");
    if (!(upper > lower)) throw std::invalid_argument("uniform needs upper > lower");
    MeasureSpec m;
    m.kind_ = MeasureKind::Uniform;
    m.param_a_ = lower;
    m.param_b_ = upper;
    return m;
}

MeasureSpec MeasureSpec::tabulated(std::vector<double> grid, std::vector<double> density) {
    if (grid.size() != density.size() || grid.size() < 2)
        throw std::invalid_argument("tabulated grid/density must be parallel arrays of size >= 2");
    double mass = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        require_finite(grid[k], "grid");
        if (density[k] < 0.0) throw std::invalid_argument("tabulated density must be nonnegative");
        if (k > 0) {
            if (grid[k] <= grid[k - 1])
                throw std::invalid_argument("tabulated grid must be strictly increasing");
            mass += 0.5 * (density[k] + density[k - 1]) * (grid[k] - grid[k - 1]);
        }
    }
    if (std::abs(mass - 1.0) > 1e-9)
        throw std::invalid_argument("tabulated density must integrate to 1 (trapezoid)");
    MeasureSpec m;
    m.kind_ = MeasureKind::Tabulated;
    m.grid_ = std::move(grid);
    m.density_ = std::move(density);
    return m;
}

double MeasureSpec::density_at(double x) const {
    switch (kind_) {
        case MeasureKind::Atoms:
            return 0.0;
        case MeasureKind::Cauchy: {
            const double y = x - param_a_;
            return param_b_ / (kPi * (y * y + param_b_ * param_b_));
        }
        case MeasureKind::Semicircle: {
            const double r2 = 4.0 * param_a_ - x * x;
            return r2 > 0.0 ? std::sqrt(r2) / (2.0 * kPi * param_a_) : 0.0;
        }
        case MeasureKind::Uniform:
            return (x >= param_a_ && x <= param_b_) ? 1.0 / (param_b_ - param_a_) : 0.0;
        case MeasureKind::Tabulated: {
            if (x <= grid_.front() || x >= grid_.back()) {
                if (x == grid_.front()) return density_.front();
                if (x == grid_.back()) return density_.back();
                return 0.0;
            }
            auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
            const std::size_t k = std::size_t(it - grid_.begin());
            const double t = (x - grid_[k - 1]) / (grid_[k] - grid_[k - 1]);
            return density_[k - 1] + t * (density_[k] - density_[k - 1]);
        }
    }
    return 0.0;
}

double MeasureSpec::support_lower() const {
    switch (kind_) {
        case MeasureKind::Atoms: return atoms_.front().location;
        case MeasureKind::Cauchy: return -std::numeric_limits<double>::infinity();
        case MeasureKind::Semicircle: return -2.0 * std::sqrt(param_a_);
        case MeasureKind::Uniform: return param_a_;
        case MeasureKind::Tabulated: return grid_.front();
    }
    return 0.0;
}

double MeasureSpec::support_upper() const {
    switch (kind_) {
        case MeasureKind::Atoms: return atoms_.back().location;
        case MeasureKind::Cauchy: return std::numeric_limits<double>::infinity();
        case MeasureKind::Semicircle: return 2.0 * std::sqrt(param_a_);
        case MeasureKind::Uniform: return param_b_;
        case MeasureKind::Tabulated: return grid_.back();
    }
    return 0.0;
}

std::vector<double> MeasureSpec::density_breakpoints() const {
    switch (kind_) {
        case MeasureKind::Atoms:
        case MeasureKind::Cauchy:
            return {};
        case MeasureKind::Semicircle:
        case MeasureKind::Uniform:
            return {support_lower(), support_upper()};
        case MeasureKind::Tabulated:
            return grid_;
    }
    return {};
}

bool MeasureSpec::kernel_diverges_at(double u) const {
    switch (kind_) {
        case MeasureKind::Atoms:
            for (const auto& a : atoms_)
                if (a.location == u) return true;
            return false;
        case MeasureKind::Cauchy:
            return true;
        case MeasureKind::Semicircle:
        case MeasureKind::Uniform:
            return u >= support_lower() && u <= support_upper();
        case MeasureKind::Tabulated: {
            if (u < grid_.front() || u > grid_.back()) return false;
            if (density_at(u) > 0.0) return true;
            // Density is zero at u: the kernel still diverges (logarithmically)
            // unless the density vanishes on a neighborhood of u.
            auto it = std::upper_bound(grid_.begin(), grid_.end(), u);
            const std::size_t k = std::min<std::size_t>(std::size_t(it - grid_.begin()), grid_.size() - 1);
            const double left = (k >= 1) ? density_[k - 1] : 0.0;
            const double right = density_[k];
            if (u > grid_.front() && u < grid_.back() && left == 0.0 && right == 0.0) {
                // Check the segment slopes on both sides of u.
                const double eps = 1e-9 * std::max(1.0, std::abs(u));
                return density_at(u - eps) > 0.0 || density_at(u + eps) > 0.0;
            }
            return true;
        }
    }
    return false;
}

double MeasureSpec::scale() const {
    switch (kind_) {
        case MeasureKind::Atoms: {
            double m = 1.0;
            for (const auto& a : atoms_) m = std::max(m, std::abs(a.location));
            return m;
        }
        case MeasureKind::Cauchy:
            return std::max(1.0, std::abs(param_a_) + param_b_);
        case MeasureKind::Semicircle:
            return std::max(1.0, 2.0 * std::sqrt(param_a_));
        case MeasureKind::Uniform:
            return std::max({1.0, std::abs(param_a_), std::abs(param_b_)});
        case MeasureKind::Tabulated:
            return std::max({1.0, std::abs(grid_.front()), std::abs(grid_.back())});
    }
    return 1.0;
}

double MeasureSpec::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile needs p in (0,1)");
    switch (kind_) {
        case MeasureKind::Atoms: {
            double acc = 0.0;
            for (const auto& a : atoms_) {
                acc += a.weight;
                if (p <= acc) return a.location;
            }
            return atoms_.back().location;
        }
        case MeasureKind::Cauchy:
            return param_a_ + param_b_ * std::tan(kPi * (p - 0.5));
        case MeasureKind::Uniform:
            return param_a_ + p * (param_b_ - param_a_);
        case MeasureKind::Semicircle: {
            const double r = 2.0 * std::sqrt(param_a_);
            auto cdf = [r](double x) {
                return 0.5 + x * std::sqrt(std::max(r * r - x * x, 0.0)) / (kPi * r * r) +
                       std::asin(std::clamp(x / r, -1.0, 1.0)) / kPi;
            };
            double lo = -r, hi = r;
            for (int k = 0; k < 200; ++k) {
                const double mid = 0.5 * (lo + hi);
                (cdf(mid) < p ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        case MeasureKind::Tabulated:
            throw UnsupportedSampling("tabulated measure has no CDF construction");
    }
    return 0.0;
}

std::string MeasureSpec::kind_name() const {
    switch (kind_) {
        case MeasureKind::Atoms: return "atoms";
        case MeasureKind::Cauchy: return "cauchy";
        case MeasureKind::Semicircle: return "semicircle";
        case MeasureKind::Uniform: return "uniform";
        case MeasureKind::Tabulated: return "tabulated";
    }
    return "?";
}

namespace {

// Continuous-part kernel integrals with the x = u + c*tan(theta)
// substitution, c^2 = v^2 + eps. Maps the pole at x = u to a flat region
// and compactifies heavy tails.
KernelBundle kernel_bundle_tan(const MeasureSpec& m, double u, double c) {
    const double lo = m.support_lower();
    const double hi = m.support_upper();
    const double th_lo = std::isinf(lo) ? -kPi / 2.0 : std::atan((lo - u) / c);
    const double th_hi = std::isinf(hi) ? kPi / 2.0 : std::atan((hi - u) / c);

    std::vector<double> breaks{th_lo};
    for (double b : m.density_breakpoints()) {
        const double th = std::atan((b - u) / c);
        if (th > th_lo && th < th_hi) breaks.push_back(th);
    }
    if (0.0 > th_lo && 0.0 < th_hi) breaks.push_back(0.0);
    breaks.push_back(th_hi);
    std::sort(breaks.begin(), breaks.end());

    const double inv_c = 1.0 / c;
    auto f = [&](double th, std::array<double, 5>& out) {
        const double tn = std::tan(th);
        const double cs = std::cos(th);
        const double x = u + c * tn;
        const double p = m.density_at(x);
        out[0] = p * inv_c;                       // i0
        out[1] = -tn * p;                         // i1
        out[2] = x * p * inv_c;                   // ix
        out[3] = cs * cs * p * inv_c * inv_c * inv_c; // j0
        out[4] = -std::sin(th) * cs * p * inv_c * inv_c; // j1
    };
    auto res = integrate_adaptive<5>(f, breaks, kKernelRelTol);

    KernelBundle kb;
    kb.i0 = res.value[0];
    kb.i1 = res.value[1];
    kb.ix = res.value[2];
    kb.j0 = res.value[3];
    kb.j1 = res.value[4];
    kb.quad_error = res.error_estimate;
    return kb;
}

// Degenerate case c = 0 (v = 0, eps = 0): u must lie outside the support;
// integrate directly in x over the (necessarily bounded) support.
KernelBundle kernel_bundle_direct(const MeasureSpec& m, double u) {
    if (m.kernel_diverges_at(u))
        throw DivergentIntegral("kernel integral diverges: u on the support with v = eps = 0");
    const double lo = m.support_lower();
    const double hi = m.support_upper();
    if (std::isinf(lo) || std::isinf(hi))
        throw DivergentIntegral("kernel integral at v = eps = 0 needs bounded support");

    std::vector<double> breaks{lo};
    for (double b : m.density_breakpoints())
        if (b > lo && b < hi) breaks.push_back(b);
    if (u > lo && u < hi) breaks.push_back(u);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());

    auto f = [&](double x, std::array<double, 5>& out) {
        const double p = m.density_at(x);
        const double y = u - x;
        const double D = y * y;
        out[0] = p / D;
        out[1] = p * y / D;
        out[2] = p * x / D;
        out[3] = p / (D * D);
        out[4] = p * y / (D * D);
    };
    auto res = integrate_adaptive<5>(f, breaks, kKernelRelTol);

    KernelBundle kb;
    kb.i0 = res.value[0];
    kb.i1 = res.value[1];
    kb.ix = res.value[2];
    kb.j0 = res.value[3];
    kb.j1 = res.value[4];
    kb.quad_error = res.error_estimate;
    return kb;
}

} // namespace

KernelBundle kernel_bundle(const MeasureSpec& measure, double u, double v, double eps) {
    require_finite(u, "u");
    require_finite(v, "v");
    require_finite(eps, "eps");
    if (eps < 0.0) throw std::invalid_argument("eps must be nonnegative");

    const double c2 = v * v + eps;

    if (measure.is_atomic()) {
        KernelBundle kb;
        for (const auto& a : measure.atom_list()) {
            const double y = u - a.location;
            const double D = y * y + c2;
            if (D == 0.0)
                throw DivergentIntegral("kernel pole coincides with an atom");
            kb.i0 += a.weight / D;
            kb.i1 += a.weight * y / D;
            kb.ix += a.weight * a.location / D;
            kb.j0 += a.weight / (D * D);
            kb.j1 += a.weight * y / (D * D);
        }
        return kb;
    }

    KernelBundle kb = (c2 > 0.0) ? kernel_bundle_tan(measure, u, std::sqrt(c2))
                                 : kernel_bundle_direct(measure, u);
    const double mag = std::max({std::abs(kb.i0), std::abs(kb.i1), std::abs(kb.ix),
                                 std::abs(kb.j0), std::abs(kb.j1)});
    if (kb.quad_error > 10.0 * std::max(kKernelRelTol * mag, 1e-14) && kb.quad_error > 1e-13 * mag)
        throw QuadratureFailure("kernel bundle quadrature did not reach tolerance");
    return kb;
}

std::complex<double> cauchy_transform(const MeasureSpec& measure, std::complex<double> z) {
    require_finite(z.real(), "Re z");
    require_finite(z.imag(), "Im z");
    const double u = z.real();
    const double v = z.imag();

    if (v == 0.0) {
        if (measure.is_atomic()) {
            std::complex<double> g = 0.0;
            for (const auto& a : measure.atom_list()) {
                if (a.location == u) throw OnSupport("z coincides with an atom");
                g += a.weight / (u - a.location);
            }
            return g;
        }
        const double lo = measure.support_lower();
        const double hi = measure.support_upper();
        if (u > lo && u < hi && measure.kernel_diverges_at(u))
            throw OnSupport("real z inside the support");
        if (u == lo || u == hi) {
            if (measure.density_at(u) > 0.0)
                throw OnSupport("real z at a support endpoint with positive density");
            // The squared kernel diverges at an endpoint even when the first
            // power converges, so integrate 1/(u - x) directly. x = u -+ y^2
            // removes the square-root edge of the density.
            const double sgn = (u == hi) ? 1.0 : -1.0;
            const double ymax = std::sqrt(hi - lo);
            std::vector<double> breaks{0.0};
            for (double b : measure.density_breakpoints()) {
                const double d = sgn * (u - b);
                if (d > 0.0 && d < hi - lo) breaks.push_back(std::sqrt(d));
            }
            breaks.push_back(ymax);
            std::sort(breaks.begin(), breaks.end());
            auto res = integrate_adaptive_scalar(
                [&](double y) {
                    return 2.0 * sgn * measure.density_at(u - sgn * y * y) / y;
                },
                breaks, kKernelRelTol);
            return {res.value[0], 0.0};
        }
        const KernelBundle kb = kernel_bundle(measure, u, 0.0, 0.0);
        return {kb.i1, 0.0};
    }

    // G(u + iv) = i1 - i v i0 with D = (u-x)^2 + v^2.
    const KernelBundle kb = kernel_bundle(measure, u, v, 0.0);
    return {kb.i1, -v * kb.i0};
}

double log_energy(const MeasureSpec& measure, std::complex<double> lambda, double eps) {
    require_finite(lambda.real(), "Re lambda");
    require_finite(lambda.imag(), "Im lambda");
    if (!(eps > 0.0)) throw std::invalid_argument("log_energy needs eps > 0");
    const double u = lambda.real();
    const double v = lambda.imag();

    if (measure.is_atomic()) {
        double s = 0.0;
        for (const auto& a : measure.atom_list()) {
            const double y = a.location - u;
            s += a.weight * std::log(y * y + v * v + eps);
        }
        return s;
    }
    if (!check_log_integrability(measure))
        throw DivergentIntegral("log-energy integral diverges for this tabulated tail");

    // Substitution x = u + c tan(theta) with c^2 = v^2 + eps makes
    // |x-lambda|^2 + eps = c^2 sec^2(theta) exactly.
    const double c = std::sqrt(v * v + eps);
    const double lo = measure.support_lower();
    const double hi = measure.support_upper();
    const double th_lo = std::isinf(lo) ? -kPi / 2.0 : std::atan((lo - u) / c);
    const double th_hi = std::isinf(hi) ? kPi / 2.0 : std::atan((hi - u) / c);

    std::vector<double> breaks{th_lo};
    for (double b : measure.density_breakpoints()) {
        const double th = std::atan((b - u) / c);
        if (th > th_lo && th < th_hi) breaks.push_back(th);
    }
    if (0.0 > th_lo && 0.0 < th_hi) breaks.push_back(0.0);
    breaks.push_back(th_hi);
    std::sort(breaks.begin(), breaks.end());

    const double log_c2 = 2.0 * std::log(c);
    auto f = [&](double th) {
        const double cs = std::cos(th);
        const double x = u + c * std::tan(th);
        const double p = measure.density_at(x);
        return (log_c2 - 2.0 * std::log(cs)) * p * c / (cs * cs);
    };
    auto res = integrate_adaptive_scalar(f, breaks, 1e-12, 1e-13);
    return res.value[0];
}

bool check_log_integrability(const MeasureSpec& measure) {
    switch (measure.kind()) {
        case MeasureKind::Atoms:
        case MeasureKind::Cauchy:
        case MeasureKind::Semicircle:
        case MeasureKind::Uniform:
            return true;
        case MeasureKind::Tabulated: {
            // Extrapolate each tail as a power law p ~ C |x|^-q fitted on the
            // outermost grid segment; the log-weighted tail converges iff q > 1.
            const auto& g = measure.grid();
            const auto& d = measure.density_values();
            auto tail_ok = [](double x1, double p1, double x2, double p2) {
                // x2 is the outermost point, |x2| > |x1|.
                if (p2 == 0.0) return true;
                if (std::abs(x2) <= 1.0 || std::abs(x2) <= std::abs(x1)) return true;
                if (p1 <= 0.0) return true;
                const double q = -(std::log(p2) - std::log(p1)) /
                                 (std::log(std::abs(x2)) - std::log(std::abs(x1)));
                return q > 1.0;
            };
            const std::size_t n = g.size();
            return tail_ok(g[n - 2], d[n - 2], g[n - 1], d[n - 1]) &&
                   tail_ok(g[1], d[1], g[0], d[0]);
        }
    }
    return true;
}

} // namespace freebrown
