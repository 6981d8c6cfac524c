#include <doctest.h>

#include <cmath>
#include <random>

#include "freebrown/rmt.hpp"

using namespace freebrown;

namespace {

MeasureSpec two_atoms() {
    return MeasureSpec::atoms({{-1.0, 1.0 / 3.0}, {1.0, 2.0 / 3.0}});
}

} // namespace

TEST_CASE("gue sampling") {
    // n = 1 is a single real standard Gaussian.
    double acc = 0.0, acc2 = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const auto m = sample_gue(1, 1000 + k);
        CHECK(m(0, 0).imag() == 0.0);
        acc += m(0, 0).real();
        acc2 += m(0, 0).real() * m(0, 0).real();
    }
    CHECK(acc / 2000.0 == doctest::Approx(0.0).scale(1.0).epsilon(0.08));
    CHECK(acc2 / 2000.0 == doctest::Approx(1.0).epsilon(0.1));

    // Hermitian by construction.
    const auto m = sample_gue(40, 7);
    CHECK((m - m.adjoint()).norm() == 0.0);

    // Semicircle support: nearly all eigenvalues in [-2, 2].
    const auto big = sample_gue(2000, 3);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(big, Eigen::EigenvaluesOnly);
    int inside = 0;
    for (int k = 0; k < 2000; ++k)
        if (std::abs(es.eigenvalues()[k]) <= 2.0) ++inside;
    CHECK(double(inside) / 2000.0 >= 0.995);

    // Centered entries: mean of trace/n over draws.
    double tr = 0.0;
    for (int k = 0; k < 100; ++k) tr += sample_gue(200, 50 + k).trace().real() / 200.0;
    CHECK(tr / 100.0 == doctest::Approx(0.0).scale(1.0).epsilon(0.02));
}

TEST_CASE("diagonal law sampling") {
    const auto d = sample_diag_law(two_atoms(), 3000, 5);
    int plus = 0;
    for (int k = 0; k < 3000; ++k) {
        const double x = d(k, k).real();
        CHECK((x == -1.0 || x == 1.0));
        if (x == 1.0) ++plus;
    }
    CHECK(double(plus) / 3000.0 == doctest::Approx(2.0 / 3.0).epsilon(0.045));

    // Cauchy empirical median near the location.
    const auto c = sample_diag_law(MeasureSpec::cauchy(0.0, 1.0), 5000, 11);
    std::vector<double> xs(5000);
    for (int k = 0; k < 5000; ++k) xs[k] = c(k, k).real();
    std::nth_element(xs.begin(), xs.begin() + 2500, xs.end());
    CHECK(xs[2500] == doctest::Approx(0.0).scale(1.0).epsilon(0.05));

    const auto dirac = MeasureSpec::atoms({{0.5, 1.0}}, true);
    const auto dd = sample_diag_law(dirac, 10, 1);
    for (int k = 0; k < 10; ++k) CHECK(dd(k, k).real() == 0.5);

    const auto tab = MeasureSpec::tabulated({0.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(sample_diag_law(tab, 5, 1), UnsupportedSampling);
}

TEST_CASE("model assembly") {
    const auto a = sample_diag_law(two_atoms(), 50, 2);
    const auto m0 = build_model(a, EllipticParams(0.0, 1.0), 10, 20);
    // alpha = 0 leaves the real part of the diagonal law plus i X.
    const auto x = sample_gue(50, 20);
    CHECK((m0 - (a + std::complex<double>(0.0, 1.0) * x)).norm() < 1e-14);

    const auto mc = build_model(a, EllipticParams(0.5, 0.5), 10, 20);
    const auto xr = sample_gue(50, 10);
    CHECK((mc - (a + (xr + std::complex<double>(0.0, 1.0) * x) / std::sqrt(2.0))).norm() <
          1e-13);
}

TEST_CASE("eigenvalue decomposition") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    d(0, 0) = 2.0;
    d(1, 1) = std::complex<double>(0.0, -1.0);
    d(2, 2) = -5.0;
    auto cloud = eigenvalues(d);
    REQUIRE(cloud.eigenvalues.size() == 3);
    std::sort(cloud.eigenvalues.begin(), cloud.eigenvalues.end(),
              [](auto a, auto b) { return a.real() < b.real(); });
    CHECK(std::abs(cloud.eigenvalues[0] - std::complex<double>(-5.0, 0.0)) < 1e-12);
    CHECK(std::abs(cloud.eigenvalues[1] - std::complex<double>(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(cloud.eigenvalues[2] - std::complex<double>(2.0, 0.0)) < 1e-12);

    Eigen::MatrixXcd rot(2, 2);
    rot << 0.0, 1.0, -1.0, 0.0;
    auto rc = eigenvalues(rot);
    std::sort(rc.eigenvalues.begin(), rc.eigenvalues.end(),
              [](auto a, auto b) { return a.imag() < b.imag(); });
    CHECK(std::abs(rc.eigenvalues[0] - std::complex<double>(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(rc.eigenvalues[1] - std::complex<double>(0.0, 1.0)) < 1e-12);

    // Trace identity on a random dense matrix.
    const auto m = build_model(sample_diag_law(two_atoms(), 50, 4),
                               EllipticParams(0.5, 0.5), 5, 6);
    const auto cl = eigenvalues(m);
    CHECK(cl.backward_error <= 1e-10 * m.norm());
}

TEST_CASE("determinism of seeded clouds") {
    const auto a = sample_model_cloud(two_atoms(), EllipticParams(0.0, 0.5), 40, 99);
    const auto b = sample_model_cloud(two_atoms(), EllipticParams(0.0, 0.5), 40, 99);
    REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
    for (std::size_t k = 0; k < a.eigenvalues.size(); ++k)
        CHECK(a.eigenvalues[k] == b.eigenvalues[k]);
}

TEST_CASE("cloud comparison") {
    const auto m = two_atoms();
    const EllipticParams p(0.5, 0.5);
    const DensityField field = density_field(m, p, 500);

    // Sample directly from the field density: inverse-CDF in u of 2 phi w,
    // uniform in v on the strip.
    std::vector<double> cdf(field.u_grid.size(), 0.0);
    for (std::size_t k = 1; k < cdf.size(); ++k) {
        auto g = [&](std::size_t i) {
            return (field.phi[i] > 0.0 && std::isfinite(field.w[i]))
                       ? 2.0 * field.phi[i] * field.w[i]
                       : 0.0;
        };
        cdf[k] = cdf[k - 1] +
                 0.5 * (g(k) + g(k - 1)) * (field.u_grid[k] - field.u_grid[k - 1]);
    }
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::complex<double>> draws;
    while (draws.size() < 100000) {
        const double target = unif(rng) * cdf.back();
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
        const std::size_t j = std::max<std::size_t>(1, std::size_t(it - cdf.begin()));
        const double frac = (target - cdf[j - 1]) / std::max(cdf[j] - cdf[j - 1], 1e-300);
        const double u = field.u_grid[j - 1] +
                         frac * (field.u_grid[j] - field.u_grid[j - 1]);
        const double phi = field.phi[j - 1] + frac * (field.phi[j] - field.phi[j - 1]);
        draws.emplace_back(u, (2.0 * unif(rng) - 1.0) * phi);
    }
    const auto self = cloud_vs_density(draws, field, 10, 10);
    CHECK(self.tv_distance <= 0.02);
    CHECK(self.clipped_fraction <= 0.01);

    // Negative control: a field at a different flow time.
    const DensityField other = density_field(m, EllipticParams(2.0, 2.0), 500);
    const auto mismatch = cloud_vs_density(draws, other, 10, 10);
    CHECK(mismatch.tv_distance >= 0.2);
}
