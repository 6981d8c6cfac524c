#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "freebrown/brown.hpp"

namespace freebrown {

struct EigenCloud {
    int n = 0;
    std::vector<std::complex<double>> eigenvalues;
    std::uint64_t diag_seed = 0;
    std::uint64_t gue_seed_re = 0;
    std::uint64_t gue_seed_im = 0;
    double backward_error = 0.0; // |sum of eigenvalues - trace|
};

struct CloudComparison {
    double tv_distance = 0.0;
    double clipped_fraction = 0.0; // eigenvalues outside the field window
    int bins_u = 0;
    int bins_v = 0;
    std::vector<double> empirical;   // row-major (bins_u x bins_v), sums to 1
    std::vector<double> theoretical; // same layout, renormalized over window
};

/// GUE with entry variance 1/n, so the spectral law tends to the semicircle
/// of variance 1.
Eigen::MatrixXcd sample_gue(int n, std::uint64_t seed);

/// Diagonal matrix of i.i.d. draws from the measure (inverse-CDF sampling).
Eigen::MatrixXcd sample_diag_law(const MeasureSpec& measure, int n, std::uint64_t seed);

/// A + sqrt(alpha) X1 + i sqrt(beta) X2 with independent GUE factors.
Eigen::MatrixXcd build_model(const Eigen::MatrixXcd& a, const EllipticParams& p,
                             std::uint64_t seed_re, std::uint64_t seed_im);

EigenCloud eigenvalues(const Eigen::MatrixXcd& m);

/// Sample the whole model in one call.
EigenCloud sample_model_cloud(const MeasureSpec& measure, const EllipticParams& p,
                              int n, std::uint64_t seed);

/// Binned total-variation distance between the cloud and the field over the
/// field's bounding box. Both histograms are renormalized over the window;
/// the escape mass is reported separately.
CloudComparison cloud_vs_density(const std::vector<std::complex<double>>& cloud,
                                 const DensityField& field, int bins_u, int bins_v);

} // namespace freebrown
