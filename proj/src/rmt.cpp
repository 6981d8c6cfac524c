#include "freebrown/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace freebrown {

Eigen::MatrixXcd sample_gue(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_gue needs n >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::MatrixXcd m(n, n);
    const double d = 1.0 / std::sqrt(double(n));
    const double o = 1.0 / std::sqrt(2.0 * double(n));
    for (int i = 0; i < n; ++i) {
        m(i, i) = d * gauss(rng);
        for (int j = i + 1; j < n; ++j) {
            const std::complex<double> z(o * gauss(rng), o * gauss(rng));
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

Eigen::MatrixXcd sample_diag_law(const MeasureSpec& measure, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_diag_law needs n >= 1");
    if (measure.kind() == MeasureKind::Tabulated)
        throw UnsupportedSampling("tabulated measure has no CDF construction");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double p;
        do {
            p = unif(rng);
        } while (!(p > 0.0 && p < 1.0));
        m(i, i) = measure.quantile(p);
    }
    return m;
}

Eigen::MatrixXcd build_model(const Eigen::MatrixXcd& a, const EllipticParams& p,
                             std::uint64_t seed_re, std::uint64_t seed_im) {
    const int n = int(a.rows());
    if (a.cols() != n) throw std::invalid_argument("build_model needs a square matrix");
    Eigen::MatrixXcd m = a;
    if (p.alpha > 0.0) m += std::sqrt(p.alpha) * sample_gue(n, seed_re);
    m += std::complex<double>(0.0, std::sqrt(p.beta)) * sample_gue(n, seed_im);
    return m;
}

EigenCloud eigenvalues(const Eigen::MatrixXcd& m) {
    const int n = int(m.rows());
    if (m.cols() != n) throw std::invalid_argument("eigenvalues needs a square matrix");
    if (!m.allFinite()) throw NonFiniteInput("matrix has non-finite entries");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("eigensolver did not converge");

    EigenCloud cloud;
    cloud.n = n;
    cloud.eigenvalues.assign(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + n);
    std::complex<double> sum = 0.0;
    for (const auto& z : cloud.eigenvalues) sum += z;
    cloud.backward_error = std::abs(sum - m.trace());
    return cloud;
}

EigenCloud sample_model_cloud(const MeasureSpec& measure, const EllipticParams& p,
                              int n, std::uint64_t seed) {
    // Decorrelate the three seeds deterministically from the master seed.
    std::mt19937_64 rng(seed);
    const std::uint64_t sd = rng(), sr = rng(), si = rng();
    const Eigen::MatrixXcd a = sample_diag_law(measure, n, sd);
    EigenCloud cloud = eigenvalues(build_model(a, p, sr, si));
    cloud.diag_seed = sd;
    cloud.gue_seed_re = sr;
    cloud.gue_seed_im = si;
    return cloud;
}

CloudComparison cloud_vs_density(const std::vector<std::complex<double>>& cloud,
                                 const DensityField& field, int bins_u, int bins_v) {
    if (bins_u < 1 || bins_v < 1) throw std::invalid_argument("need positive bin counts");
    if (field.u_grid.size() < 2) throw std::invalid_argument("field too small");

    const double u_lo = field.u_grid.front();
    const double u_hi = field.u_grid.back();
    double v_max = 0.0;
    for (double ph : field.phi) v_max = std::max(v_max, ph);
    const double v_lo = -v_max, v_hi = v_max;

    CloudComparison cmp;
    cmp.bins_u = bins_u;
    cmp.bins_v = bins_v;
    cmp.empirical.assign(std::size_t(bins_u) * bins_v, 0.0);
    cmp.theoretical.assign(std::size_t(bins_u) * bins_v, 0.0);

    std::size_t inside = 0;
    for (const auto& z : cloud) {
        if (z.real() < u_lo || z.real() >= u_hi || z.imag() < v_lo || z.imag() >= v_hi)
            continue;
        const int bu = std::min(bins_u - 1,
                                int((z.real() - u_lo) / (u_hi - u_lo) * bins_u));
        const int bv = std::min(bins_v - 1,
                                int((z.imag() - v_lo) / (v_hi - v_lo) * bins_v));
        cmp.empirical[std::size_t(bu) * bins_v + bv] += 1.0;
        ++inside;
    }
    cmp.clipped_fraction = cloud.empty() ? 0.0
                                         : 1.0 - double(inside) / double(cloud.size());
    if (inside == 0) {
        cmp.tv_distance = 1.0;
        return cmp;
    }
    for (double& e : cmp.empirical) e /= double(inside);

    // Bin mass of the field: along u, trapezoid of 2 phi w clipped to the
    // bin; along v, the strip is uniform on (-phi, phi), so the fraction in
    // [a, b] is (overlap with (-phi, phi)) / (2 phi).
    const double dv = (v_hi - v_lo) / bins_v;
    for (std::size_t k = 1; k < field.u_grid.size(); ++k) {
        const double ua = field.u_grid[k - 1];
        const double ub = field.u_grid[k];
        if (!(ub > ua)) continue;
        auto strip = [&](std::size_t i) {
            return (field.phi[i] > 0.0 && std::isfinite(field.w[i]))
                       ? 2.0 * field.phi[i] * field.w[i]
                       : 0.0;
        };
        const double mass_seg = 0.5 * (strip(k - 1) + strip(k)) * (ub - ua);
        if (mass_seg <= 0.0) continue;
        const double u_mid = 0.5 * (ua + ub);
        const double phi_mid = 0.5 * (field.phi[k - 1] + field.phi[k]);
        if (u_mid < u_lo || u_mid >= u_hi) continue;
        const int bu = std::min(bins_u - 1, int((u_mid - u_lo) / (u_hi - u_lo) * bins_u));
        if (phi_mid <= 0.0) continue;
        for (int bv = 0; bv < bins_v; ++bv) {
            const double a = v_lo + bv * dv;
            const double b = a + dv;
            const double overlap =
                std::max(0.0, std::min(b, phi_mid) - std::max(a, -phi_mid));
            if (overlap > 0.0)
                cmp.theoretical[std::size_t(bu) * bins_v + bv] +=
                    mass_seg * overlap / (2.0 * phi_mid);
        }
    }
    double tot = 0.0;
    for (double m : cmp.theoretical) tot += m;
    if (tot > 0.0)
        for (double& m : cmp.theoretical) m /= tot;

    double tv = 0.0;
    for (std::size_t k = 0; k < cmp.empirical.size(); ++k)
        tv += std::abs(cmp.empirical[k] - cmp.theoretical[k]);
    cmp.tv_distance = 0.5 * tv;
    return cmp;
}

} // namespace freebrown
