#pragma once

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "freebrown/errors.hpp"

namespace freebrown {

enum class MeasureKind { Atoms, Cauchy, Semicircle, Uniform, Tabulated };

struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

/// Probability law on the real line: a finite list of atoms, a named analytic
/// family, or a tabulated (piecewise-linear) density. Immutable after
/// construction; all transforms below are pure functions of it.
class MeasureSpec {
public:
    static MeasureSpec atoms(std::vector<Atom> atoms, bool allow_dirac = false);
    static MeasureSpec cauchy(double location, double scale);
    static MeasureSpec semicircle(double variance);
    static MeasureSpec uniform(double lower, double upper);
    static MeasureSpec tabulated(std::vector<double> grid, std::vector<double> density);

    MeasureKind kind() const { return kind_; }
    bool is_atomic() const { return kind_ == MeasureKind::Atoms; }
    bool dirac_allowed() const { return allow_dirac_; }

    const std::vector<Atom>& atom_list() const { return atoms_; }
    double cauchy_location() const { return param_a_; }
    double cauchy_scale() const { return param_b_; }
    double variance() const { return param_a_; }
    double lower() const { return param_a_; }
    double upper() const { return param_b_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& density_values() const { return density_; }

    /// Continuous density at x (0 for atomic measures and outside support).
    double density_at(double x) const;

    /// Support bounds; -inf/+inf for full-line families.
    double support_lower() const;
    double support_upper() const;
    bool has_unbounded_support() const { return kind_ == MeasureKind::Cauchy; }

    /// Interior knots/endpoints where the density is not smooth.
    std::vector<double> density_breakpoints() const;

    /// True iff the Poisson kernel integral i0(u, v) diverges as v -> 0+.
    bool kernel_diverges_at(double u) const;

    /// Characteristic length scale (used for brackets and default windows).
    double scale() const;

    /// Inverse CDF; throws UnsupportedSampling for tabulated measures.
    double quantile(double p) const;

    std::string kind_name() const;

private:
    MeasureSpec() = default;

    MeasureKind kind_ = MeasureKind::Atoms;
    std::vector<Atom> atoms_;
    double param_a_ = 0.0; // location / variance / lower
    double param_b_ = 0.0; // scale / upper
    std::vector<double> grid_;
    std::vector<double> density_;
    bool allow_dirac_ = false;
};

/// Poisson-kernel integrals against the measure at (u, v) with optional
/// epsilon shift: D = (u-x)^2 + v^2 + eps.
///   i0 = int dmu / D        i1 = int (u-x) dmu / D    ix = int x dmu / D
///   j0 = int dmu / D^2      j1 = int (u-x) dmu / D^2
struct KernelBundle {
    double i0 = 0.0;
    double i1 = 0.0;
    double ix = 0.0;
    double j0 = 0.0;
    double j1 = 0.0;
    double quad_error = 0.0;
};

KernelBundle kernel_bundle(const MeasureSpec& measure, double u, double v, double eps);

/// G(z) = int dmu(x) / (z - x).
std::complex<double> cauchy_transform(const MeasureSpec& measure, std::complex<double> z);

/// int log(|x - lambda|^2 + eps) dmu(x), eps > 0.
double log_energy(const MeasureSpec& measure, std::complex<double> lambda, double eps);

/// Log-integrability of the tails (finite for every measure we can build,
/// except tabulated tails extrapolated to decay order <= 1).
bool check_log_integrability(const MeasureSpec& measure);

} // namespace freebrown
