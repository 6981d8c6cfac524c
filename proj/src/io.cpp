#include "freebrown/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace freebrown {

using nlohmann::json;

std::string library_version() { return "0.1.0"; }

MeasureSpec measure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("measure spec needs a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "atoms") {
        std::vector<Atom> atoms;
        for (const auto& row : j.at("atoms"))
            atoms.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
        return MeasureSpec::atoms(std::move(atoms), j.value("allow_dirac", false));
    }
    if (kind == "cauchy")
        return MeasureSpec::cauchy(j.value("location", 0.0), j.value("scale", 1.0));
    if (kind == "semicircle")
        return MeasureSpec::semicircle(j.at("variance").get<double>());
    if (kind == "uniform")
        return MeasureSpec::uniform(j.at("lower").get<double>(), j.at("upper").get<double>());
    if (kind == "tabulated")
        return MeasureSpec::tabulated(j.at("grid").get<std::vector<double>>(),
                                      j.at("density").get<std::vector<double>>());
    throw std::invalid_argument("unknown measure kind: " + kind);
}

MeasureSpec load_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open measure file: " + path);
    json j;
    in >> j;
    return measure_from_json(j);
}

json measure_to_json(const MeasureSpec& m) {
    json j;
    j["kind"] = m.kind_name();
    switch (m.kind()) {
        case MeasureKind::Atoms: {
            json rows = json::array();
            for (const auto& a : m.atom_list()) rows.push_back({a.location, a.weight});
            j["atoms"] = rows;
            if (m.dirac_allowed()) j["allow_dirac"] = true;
            break;
        }
        case MeasureKind::Cauchy:
            j["location"] = m.cauchy_location();
            j["scale"] = m.cauchy_scale();
            break;
        case MeasureKind::Semicircle:
            j["variance"] = m.variance();
            break;
        case MeasureKind::Uniform:
            j["lower"] = m.lower();
            j["upper"] = m.upper();
            break;
        case MeasureKind::Tabulated:
            j["grid"] = m.grid();
            j["density"] = m.density_values();
            break;
    }
    return j;
}

json field_sidecar(const DensityField& field, const json& config) {
    json j;
    j["config"] = config;
    j["version"] = library_version();
    j["alpha"] = field.params.alpha;
    j["beta"] = field.params.beta;
    j["mass"] = field.mass;
    j["grid_mass"] = field.grid_mass;
    j["tail_correction"] = field.tail_correction;
    j["unbounded"] = field.components.unbounded;
    json ivs = json::array();
    for (const auto& iv : field.components.intervals) ivs.push_back({iv.first, iv.second});
    j["components"] = ivs;
    return j;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.precision(17);
    return out;
}

void write_header(std::ofstream& out, const json& config) {
    out << "# version=" << library_version() << "\n";
    out << "# config=" << config.dump() << "\n";
}

} // namespace

void write_field_csv(const std::string& path, const DensityField& field,
                     const json& config) {
    auto out = open_out(path);
    write_header(out, config);
    out << "u0,u,phi,w\n";
    for (std::size_t k = 0; k < field.u_grid.size(); ++k) {
        out << field.u0_grid[k] << ',' << field.u_grid[k] << ',' << field.phi[k] << ',';
        if (std::isfinite(field.w[k]))
            out << field.w[k];
        out << '\n';
    }
}

void write_convolution_csv(const std::string& path,
                           const std::vector<std::pair<double, double>>& samples,
                           const json& config) {
    auto out = open_out(path);
    write_header(out, config);
    out << "location,density\n";
    for (const auto& [x, p] : samples) out << x << ',' << p << '\n';
}

void write_cloud_csv(const std::string& path,
                     const std::vector<std::complex<double>>& cloud,
                     const json& config) {
    auto out = open_out(path);
    write_header(out, config);
    out << "re,im\n";
    for (const auto& z : cloud) out << z.real() << ',' << z.imag() << '\n';
}

void write_characteristic_csv(const std::string& path,
                              const std::vector<CharacteristicState>& states,
                              const json& config) {
    auto out = open_out(path);
    write_header(out, config);
    out << "t,u,v,eps,p_u,p_v,p_eps,s_value\n";
    for (const auto& st : states)
        out << st.t << ',' << st.u << ',' << st.v << ',' << st.eps << ',' << st.p_u << ','
            << st.p_v << ',' << st.p_eps << ',' << st.s << '\n';
}

void write_json(const std::string& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

namespace {

struct SvgFrame {
    double u_lo, u_hi, v_lo, v_hi;
    double width = 800.0, height = 400.0, margin = 20.0;

    double x(double u) const {
        return margin + (u - u_lo) / (u_hi - u_lo) * (width - 2.0 * margin);
    }
    double y(double v) const {
        return height - margin - (v - v_lo) / (v_hi - v_lo) * (height - 2.0 * margin);
    }
};

SvgFrame field_frame(const DensityField& field) {
    double v_max = 1e-12;
    for (double ph : field.phi) v_max = std::max(v_max, ph);
    return {field.u_grid.front(), field.u_grid.back(), -1.2 * v_max, 1.2 * v_max};
}

void svg_boundary_path(std::ofstream& out, const DensityField& field, const SvgFrame& fr) {
    for (int sign : {1, -1}) {
        out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
        for (std::size_t k = 0; k < field.u_grid.size(); ++k)
            out << fr.x(field.u_grid[k]) << ',' << fr.y(sign * field.phi[k]) << ' ';
        out << "\"/>\n";
    }
}

} // namespace

void write_field_svg(const std::string& path, const DensityField& field) {
    auto out = open_out(path);
    SvgFrame fr = field_frame(field);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fr.width
        << "\" height=\"" << fr.height << "\">\n";
    double w_max = 1e-12;
    for (double w : field.w)
        if (std::isfinite(w)) w_max = std::max(w_max, w);
    for (std::size_t k = 1; k < field.u_grid.size(); ++k) {
        if (!(field.phi[k] > 0.0) || !std::isfinite(field.w[k])) continue;
        const int shade = 255 - int(std::lround(230.0 * field.w[k] / w_max));
        out << "<rect x=\"" << fr.x(field.u_grid[k - 1]) << "\" y=\""
            << fr.y(field.phi[k]) << "\" width=\""
            << (fr.x(field.u_grid[k]) - fr.x(field.u_grid[k - 1])) << "\" height=\""
            << (fr.y(-field.phi[k]) - fr.y(field.phi[k])) << "\" fill=\"rgb(" << shade
            << ',' << shade << ',' << shade << ")\"/>\n";
    }
    svg_boundary_path(out, field, fr);
    out << "</svg>\n";
}

void write_cloud_svg(const std::string& path,
                     const std::vector<std::complex<double>>& cloud,
                     const DensityField& field) {
    auto out = open_out(path);
    SvgFrame fr = field_frame(field);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fr.width
        << "\" height=\"" << fr.height << "\">\n";
    svg_boundary_path(out, field, fr);
    for (const auto& z : cloud) {
        if (z.real() < fr.u_lo || z.real() > fr.u_hi || z.imag() < fr.v_lo ||
            z.imag() > fr.v_hi)
            continue;
        out << "<circle cx=\"" << fr.x(z.real()) << "\" cy=\"" << fr.y(z.imag())
            << "\" r=\"1.2\" fill=\"steelblue\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace freebrown
