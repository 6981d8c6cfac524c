#include <complex>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freebrown/cauchy.hpp"
#include "freebrown/io.hpp"

using namespace freebrown;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string measure_path;
    double alpha = 0.0;
    double beta = 1.0;
    double t = 1.0;
    std::vector<double> window;   // empty or {lo, hi}
    std::vector<double> point;    // {re, im}
    double eps0 = 1.0;
    int resolution = 400;
    int n = 200;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string format = "csv";

    json to_json() const {
        json j;
        j["measure"] = measure_path;
        j["alpha"] = alpha;
        j["beta"] = beta;
        j["t"] = t;
        if (window.size() == 2) j["window"] = window;
        if (point.size() == 2) j["point"] = point;
        j["resolution"] = resolution;
        j["seed"] = seed;
        j["format"] = format;
        return j;
    }

    MeasureSpec measure() const { return load_measure(measure_path); }
    EllipticParams params() const { return {alpha, beta}; }
    std::optional<std::pair<double, double>> window_opt() const {
        if (window.size() == 2) {
            if (!(window[1] > window[0]))
                throw CLI::ValidationError("--window", "window must be nonempty");
            return std::make_pair(window[0], window[1]);
        }
        return std::nullopt;
    }
    std::string path(const std::string& name) const {
        std::filesystem::create_directories(out_dir);
        return out_dir + "/" + name;
    }
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool needs_measure = true) {
    auto* m = cmd->add_option("--measure", cfg.measure_path, "measure spec JSON file");
    if (needs_measure) m->required()->check(CLI::ExistingFile);
    cmd->add_option("--alpha", cfg.alpha, "real semicircular variance (>= 0)");
    cmd->add_option("--beta", cfg.beta, "imaginary semicircular variance (> 0)");
    cmd->add_option("--t", cfg.t, "semicircular flow time");
    cmd->add_option("--window", cfg.window, "window lo hi")->expected(2);
    cmd->add_option("--resolution", cfg.resolution, "grid resolution")
        ->check(CLI::Range(16, 1000000));
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--format", cfg.format, "csv, json, or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * double(k) / double(n - 1);
    return g;
}

int cmd_density(const RunConfig& cfg) {
    const MeasureSpec m = cfg.measure();
    const DensityField field = density_field(m, cfg.params(), cfg.resolution, cfg.window_opt());
    write_field_csv(cfg.path("density.csv"), field, cfg.to_json());
    write_json(cfg.path("density.json"), field_sidecar(field, cfg.to_json()));
    if (cfg.format == "svg") write_field_svg(cfg.path("density.svg"), field);
    std::printf("mass %.6f (tail correction %.2e)\n", field.mass, field.tail_correction);
    return 0;
}

int cmd_boundary(const RunConfig& cfg) {
    const MeasureSpec m = cfg.measure();
    const DensityField field = density_field(m, cfg.params(), cfg.resolution, cfg.window_opt());
    auto out = json::array();
    std::FILE* f = std::fopen(cfg.path("boundary.csv").c_str(), "w");
    if (!f) throw std::runtime_error("cannot open boundary.csv");
    std::fprintf(f, "# config=%s\nu,phi\n", cfg.to_json().dump().c_str());
    for (std::size_t k = 0; k < field.u_grid.size(); ++k)
        std::fprintf(f, "%.17g,%.17g\n", field.u_grid[k], field.phi[k]);
    std::fclose(f);
    (void)out;
    return 0;
}

int cmd_convolve(const RunConfig& cfg) {
    const MeasureSpec m = cfg.measure();
    const auto win = cfg.window_opt().value_or(auto_window(m, cfg.t));
    const auto samples =
        free_convolution_density(m, cfg.t, linspace(win.first, win.second, cfg.resolution));
    write_convolution_csv(cfg.path("convolution.csv"), samples, cfg.to_json());
    return 0;
}

int cmd_pushforward(const RunConfig& cfg) {
    const MeasureSpec m = cfg.measure();
    const EllipticParams p = cfg.params();
    const std::complex<double> lambda0(cfg.point[0], cfg.point[1]);
    const std::complex<double> u = pushforward_U(m, p, lambda0);
    const double q = pushforward_Q(m, p, u);
    json j;
    j["config"] = cfg.to_json();
    j["lambda0"] = {lambda0.real(), lambda0.imag()};
    j["U"] = {u.real(), u.imag()};
    j["Q"] = q;
    write_json(cfg.path("pushforward.json"), j);
    std::printf("U = %.12g + %.12gi, Q = %.12g\n", u.real(), u.imag(), q);
    return 0;
}

int cmd_characteristics(const RunConfig& cfg) {
    const MeasureSpec m = cfg.measure();
    const std::complex<double> lambda0(cfg.point[0], cfg.point[1]);
    const CharacteristicInit init = characteristic_init(m, lambda0, cfg.eps0);
    const double t_end = std::min(cfg.t, init.t_star);
    std::vector<CharacteristicState> states;
    for (int k = 0; k <= cfg.resolution; ++k)
        states.push_back(
            characteristic_flow(init, t_end * double(k) / double(cfg.resolution)));
    write_characteristic_csv(cfg.path("characteristic.csv"), states, cfg.to_json());
    std::printf("lifetime %.12g, followed to %.12g\n", init.t_star, t_end);
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    const MeasureSpec m = cfg.measure();
    const EllipticParams p = cfg.params();
    const EigenCloud cloud = sample_model_cloud(m, p, cfg.n, cfg.seed);
    const DensityField field = density_field(m, p, cfg.resolution, cfg.window_opt());
    const CloudComparison cmp = cloud_vs_density(cloud.eigenvalues, field, 10, 10);

    write_cloud_csv(cfg.path("cloud.csv"), cloud.eigenvalues, cfg.to_json());
    json report;
    report["config"] = cfg.to_json();
    report["n"] = cloud.n;
    report["seeds"] = {cloud.diag_seed, cloud.gue_seed_re, cloud.gue_seed_im};
    report["backward_error"] = cloud.backward_error;
    report["tv_distance"] = cmp.tv_distance;
    report["clipped_fraction"] = cmp.clipped_fraction;
    write_json(cfg.path("simulate.json"), report);
    if (cfg.format == "svg") write_cloud_svg(cfg.path("cloud.svg"), cloud.eigenvalues, field);
    std::printf("tv %.4f, clipped %.4f\n", cmp.tv_distance, cmp.clipped_fraction);
    return 0;
}

int cmd_validate_cauchy(const RunConfig& cfg) {
    const auto checks = validate_cauchy_report();
    json rows = json::array();
    bool all_pass = true;
    for (const auto& c : checks) {
        std::printf("%-42s max residual %.3e (tol %.0e) %s\n", c.name.c_str(),
                    c.max_residual, c.tolerance, c.pass ? "PASS" : "FAIL");
        rows.push_back({{"name", c.name},
                        {"max_residual", c.max_residual},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
        all_pass = all_pass && c.pass;
    }
    json report;
    report["config"] = cfg.to_json();
    report["checks"] = rows;
    report["pass"] = all_pass;
    write_json(cfg.path("validate_cauchy.json"), report);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brown measures of a self-adjoint variable plus a free elliptic element"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto* density = app.add_subcommand("density", "Brown-measure density field");
    add_common(density, cfg);
    auto* boundary = app.add_subcommand("boundary", "domain boundary curve");
    add_common(boundary, cfg);
    auto* convolve = app.add_subcommand("convolve", "free convolution with a semicircular");
    add_common(convolve, cfg);
    auto* pushforward = app.add_subcommand("pushforward", "apply the U and Q maps to a point");
    add_common(pushforward, cfg);
    pushforward->add_option("--point", cfg.point, "start point re im")->expected(2)->required();
    auto* characteristics =
        app.add_subcommand("characteristics", "Hamilton-Jacobi characteristic path");
    add_common(characteristics, cfg);
    characteristics->add_option("--point", cfg.point, "start point re im")
        ->expected(2)
        ->required();
    characteristics->add_option("--eps0", cfg.eps0, "initial regularization (> 0)");
    auto* simulate = app.add_subcommand("simulate", "finite-N eigenvalue simulation");
    add_common(simulate, cfg);
    simulate->add_option("--n", cfg.n, "matrix size")->check(CLI::Range(1, 20000));
    auto* validate =
        app.add_subcommand("validate-cauchy", "closed-form oracle vs pipeline report");
    add_common(validate, cfg, /*needs_measure=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (density->parsed()) return cmd_density(cfg);
        if (boundary->parsed()) return cmd_boundary(cfg);
        if (convolve->parsed()) return cmd_convolve(cfg);
        if (pushforward->parsed()) return cmd_pushforward(cfg);
        if (characteristics->parsed()) return cmd_characteristics(cfg);
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (validate->parsed()) return cmd_validate_cauchy(cfg);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
