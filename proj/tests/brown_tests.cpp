#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "freebrown/brown.hpp"
#include "freebrown/cauchy.hpp"

using namespace freebrown;

namespace {

MeasureSpec two_atoms() {
    return MeasureSpec::atoms({{-1.0, 1.0 / 3.0}, {1.0, 2.0 / 3.0}});
}

} // namespace

TEST_CASE("f is the identity in the circular case") {
    const EllipticParams p(0.5, 0.5);
    for (double u0 : {-2.0, 0.0, 1.3}) {
        CHECK(f_ab(two_atoms(), p, u0) == u0);
        CHECK(f_ab_inverse(two_atoms(), p, u0) == u0);
        CHECK(f_ab_prime(two_atoms(), p, u0) == 1.0);
    }
}

TEST_CASE("f closed form for the Cauchy law") {
    const auto m = MeasureSpec::cauchy(0.0, 1.0);
    const EllipticParams p(0.125, 0.875);
    for (double u0 : {-3.0, 0.4, 7.0}) {
        const double v = v_t(m, 1.0, u0).v;
        const double expect = u0 + (p.r() / p.s()) * u0 * v / (1.0 + v);
        CHECK(f_ab(m, p, u0) == doctest::Approx(expect).epsilon(1e-11));
    }
    CHECK(f_ab(m, p, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(f_ab_inverse(m, EllipticParams(0.0, 1.0), f_ab(m, EllipticParams(0.0, 1.0), 2.0)) ==
          doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("f inverse vs tabulation oracle on a two-atom measure") {
    const EllipticParams p(0.0, 1.0);
    const auto m = two_atoms();
    std::vector<double> u0s, fs;
    for (int k = 0; k <= 4000; ++k) {
        const double u0 = -5.0 + 10.0 * k / 4000.0;
        u0s.push_back(u0);
        fs.push_back(f_ab(m, p, u0));
    }
    for (int k = 0; k < 40; ++k) {
        const double u = fs.front() + (fs.back() - fs.front()) * (k + 0.5) / 40.0;
        const auto it = std::lower_bound(fs.begin(), fs.end(), u);
        const std::size_t j =
            std::clamp<std::size_t>(std::size_t(it - fs.begin()), 2, fs.size() - 2);
        // Cubic Lagrange through the four bracketing table rows; linear
        // interpolation is not accurate enough at this grid spacing.
        double interp = 0.0;
        for (std::size_t a = j - 2; a <= j + 1; ++a) {
            double ell = 1.0;
            for (std::size_t b = j - 2; b <= j + 1; ++b)
                if (b != a) ell *= (u - fs[b]) / (fs[a] - fs[b]);
            interp += ell * u0s[a];
        }
        CHECK(f_ab_inverse(m, p, u) == doctest::Approx(interp).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("monotonicity and derivative bounds of f") {
    for (const auto& m : {MeasureSpec::cauchy(0.0, 1.0), MeasureSpec::semicircle(1.0),
                          two_atoms()}) {
        const EllipticParams p(0.0, 1.0);
        double prev = -1e300;
        for (int k = 0; k <= 1000; ++k) {
            const double u0 = -4.0 + 8.0 * k / 1000.0;
            const double f = f_ab(m, p, u0);
            CHECK(f > prev);
            prev = f;
            if (v_t(m, 1.0, u0).v > 0.0) {
                const double fp = f_ab_prime(m, p, u0);
                CHECK(fp > 0.0);
                CHECK(fp < 2.0);
            }
        }
    }
}

TEST_CASE("phi") {
    const auto m = MeasureSpec::cauchy(0.0, 1.0);
    // Circular case: Omega = Lambda, phi = v_t.
    const EllipticParams circ(0.5, 0.5);
    for (double u : {-1.0, 0.0, 2.5})
        CHECK(phi_ab(m, circ, u) == doctest::Approx(v_t(m, 1.0, u).v).epsilon(1e-11));

    const EllipticParams p(0.0, 1.0);
    CHECK(phi_ab(m, p, 0.0) ==
          doctest::Approx(std::sqrt(5.0) - 1.0).epsilon(1e-11));
    CHECK(phi_ab(m, p, 50.0) < 0.01);
}

TEST_CASE("brown density values") {
    const auto m = MeasureSpec::cauchy(0.0, 1.0);
    const EllipticParams p(0.0, 1.0);
    CHECK(brown_density(m, p, 0.0) ==
          doctest::Approx(std::sqrt(5.0) / (4.0 * M_PI)).epsilon(1e-10));
    CHECK(brown_density(m, p, 50.0) ==
          doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(0.02));

    // Circular case reduces to psi' / (2 pi t).
    const EllipticParams circ(0.5, 0.5);
    for (double u : {-1.5, 0.2, 3.0})
        CHECK(brown_density(m, circ, u) ==
              doctest::Approx(psi_t_prime(m, 1.0, u) / (2.0 * M_PI)).epsilon(1e-10));

    const auto sc = MeasureSpec::semicircle(1.0);
    CHECK_THROWS_AS(brown_density(sc, p, 25.0), OutsideDomain);
}

TEST_CASE("density field mass") {
    const auto cauchy_field =
        density_field(MeasureSpec::cauchy(0.0, 1.0), EllipticParams(0.0, 1.0), 2000);
    CHECK(cauchy_field.mass == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(cauchy_field.tail_correction > 0.0);
    CHECK(cauchy_field.components.unbounded);

    // At s = 1 a thin gap survives between the atoms (min i0 ~ 0.96), so the
    // domain still has two components.
    const auto atom_field = density_field(two_atoms(), EllipticParams(0.5, 0.5), 2000);
    CHECK(atom_field.mass == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(atom_field.tail_correction == 0.0);
    CHECK(atom_field.components.intervals.size() == 2);

    for (std::size_t k = 0; k < atom_field.u_grid.size(); ++k)
        if (atom_field.phi[k] > 0.0 && std::isfinite(atom_field.w[k]))
            CHECK(atom_field.w[k] > 0.0);
}

TEST_CASE("degenerate Dirac field is the translated elliptic law") {
    const auto dirac = MeasureSpec::atoms({{0.5, 1.0}}, true);
    const EllipticParams p(0.0, 1.0);
    // v_t is the half circle around the atom; f(u0) = u0 - i1 with the
    // closed single-atom kernel.
    const double u0 = 0.7;
    const double v = std::sqrt(1.0 - 0.2 * 0.2);
    CHECK(v_t(dirac, 1.0, u0).v == doctest::Approx(v).epsilon(1e-12));
    const double i1 = (u0 - 0.5) / ((u0 - 0.5) * (u0 - 0.5) + v * v);
    CHECK(f_ab(dirac, p, u0) == doctest::Approx(u0 - i1).epsilon(1e-12));
    const auto field = density_field(dirac, p, 600);
    CHECK(field.mass == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("pushforward U") {
    const auto m = MeasureSpec::cauchy(0.0, 1.0);
    const EllipticParams circ(0.5, 0.5);
    CHECK(pushforward_U(m, circ, {0.3, 0.2}) == std::complex<double>(0.3, 0.2));

    // On the boundary U agrees with H_{alpha-beta}.
    const EllipticParams p(0.125, 0.875);
    for (int k = 0; k < 50; ++k) {
        const double u0 = -5.0 + 10.0 * (k + 0.5) / 50.0;
        const double v = v_t(m, 1.0, u0).v;
        const std::complex<double> boundary(u0, v);
        CHECK(std::abs(pushforward_U(m, p, boundary) - h_map(m, p.r(), boundary)) < 1e-8);
    }

    // Linear in v on interior segments.
    const double u0 = 0.8;
    const double v = v_t(m, 1.0, u0).v;
    const double re = pushforward_U(m, p, {u0, 0.0}).real();
    for (double k : {-1.0, -0.4, 0.3, 0.9}) {
        const auto z = pushforward_U(m, p, {u0, k * v});
        CHECK(z.real() == doctest::Approx(re).epsilon(1e-12));
        CHECK(z.imag() == doctest::Approx((2.0 * p.beta / p.s()) * k * v).epsilon(1e-12));
    }

    CHECK_THROWS_AS(pushforward_U(m, p, {0.0, 2.0}), OutsideLambda);
}

TEST_CASE("pushforward Q") {
    const auto m = MeasureSpec::cauchy(0.0, 1.0);
    const EllipticParams circ(0.5, 0.5);
    for (double u : {-2.0, 0.5})
        CHECK(pushforward_Q(m, circ, {u, 0.0}) ==
              doctest::Approx(psi_t(m, 1.0, u)).epsilon(1e-11));

    const EllipticParams p(0.0, 1.0);
    for (double u : {-1.0, 0.0, 2.0}) {
        const double u0 = f_ab_inverse(m, p, u);
        CHECK(pushforward_Q(m, p, {u, 0.0}) ==
              doctest::Approx(2.0 * u0 - u).epsilon(1e-10).scale(1.0));
        // General identity Q = psi_s(f^{-1}(u)).
        CHECK(pushforward_Q(m, p, {u, 0.0}) ==
              doctest::Approx(psi_t(m, 1.0, u0)).epsilon(1e-9).scale(1.0));
    }
    CHECK_THROWS_AS(pushforward_Q(m, p, {0.0, 5.0}), OutsideOmega);
}

TEST_CASE("gradient of the log potential on Omega") {
    const auto m = MeasureSpec::cauchy(0.0, 1.0);
    const double t = 1.0;
    CHECK(grad_s(m, t, {0.0, 0.1}).first == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(grad_s(m, t, {0.7, 0.25}).second == 0.25 / t);

    // Laplacian of s equals 4 pi times the density.
    const EllipticParams p(0.0, 1.0);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    int tested = 0;
    while (tested < 20) {
        const double u = unif(rng);
        const double phi = phi_ab(m, p, u);
        const double v = 0.25 * phi * unif(rng) / 2.0;
        if (std::abs(v) > 0.4 * phi) continue;
        const double h = 1e-4;
        const double d2u =
            (grad_s(m, t, {u + h, v}).first - grad_s(m, t, {u - h, v}).first) / (2.0 * h);
        const double d2v =
            (grad_s(m, t, {u, v + h}).second - grad_s(m, t, {u, v - h}).second) / (2.0 * h);
        CHECK((d2u + d2v) / (4.0 * M_PI) ==
              doctest::Approx(brown_density(m, p, u)).epsilon(1e-5).scale(1.0));
        ++tested;
    }
}

TEST_CASE("f second derivative") {
    const auto m = MeasureSpec::cauchy(0.0, 1.0);
    CHECK(f_second_derivative(m, EllipticParams(0.5, 0.5), 1.3) == 0.0);
    CHECK(f_second_derivative(m, EllipticParams(0.125, 0.875), 0.0) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-8));

    // Agreement of the two stated forms: f'' = 2 pi (alpha - beta) times the
    // derivative of the circular density.
    const EllipticParams p(0.125, 0.875);
    for (double u0 : {0.8, 2.0, 3.5}) {
        const double h = 1e-4;
        const double wprime = (cauchy_oracle::circular_density(1.0, u0 + h) -
                               cauchy_oracle::circular_density(1.0, u0 - h)) /
                              (2.0 * h);
        CHECK(f_second_derivative(m, p, u0) ==
              doctest::Approx(2.0 * M_PI * p.r() * wprime).epsilon(1e-6).scale(1.0));
    }

    CHECK_THROWS_AS(f_second_derivative(MeasureSpec::semicircle(1.0),
                                        EllipticParams(0.0, 1.0), 30.0),
                    OutsideLambda);
}

TEST_CASE("density transfer under U") {
    // w_{a,b}(U(lambda0)) in terms of the circular density at lambda0.
    const auto m = MeasureSpec::cauchy(0.0, 1.0);
    const EllipticParams p(0.125, 0.875);
    const double s = p.s();
    const double rhat = 2.0 * p.beta / s;
    for (double u0 : {-2.5, 0.0, 0.9, 4.0}) {
        const double wc = brown_density(m, EllipticParams(s / 2.0, s / 2.0), u0);
        const double expect =
            (1.0 / rhat) * wc / (rhat + 2.0 * M_PI * (1.0 - rhat) * s * wc);
        const double u = pushforward_U(m, p, {u0, 0.0}).real();
        CHECK(brown_density(m, p, u) == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("real part of Omega stays between the support bounds") {
    const EllipticParams p(0.0, 1.0);
    const auto field = density_field(two_atoms(), p, 400);
    for (std::size_t k = 0; k < field.u_grid.size(); ++k) {
        if (!(field.phi[k] > 0.0)) continue;
        CHECK(field.u_grid[k] > -1.0);
        CHECK(field.u_grid[k] < 1.0);
    }
}
