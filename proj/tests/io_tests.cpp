#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "freebrown/io.hpp"

using namespace freebrown;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("measure json round trip") {
    const json specs = json::parse(R"([
        {"kind": "atoms", "atoms": [[-1.0, 0.25], [2.0, 0.75]]},
        {"kind": "cauchy", "location": 0.5, "scale": 2.0},
        {"kind": "semicircle", "variance": 1.5},
        {"kind": "uniform", "lower": -1.0, "upper": 3.0},
        {"kind": "tabulated", "grid": [0.0, 1.0, 2.0], "density": [0.0, 1.0, 0.0]}
    ])");
    for (const auto& j : specs) {
        const MeasureSpec m = measure_from_json(j);
        const json round = measure_to_json(m);
        CHECK(measure_from_json(round).kind_name() == m.kind_name());
        CHECK(round["kind"] == j["kind"]);
    }
    CHECK_THROWS_AS(measure_from_json(json::parse(R"({"kind": "lorentz"})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(measure_from_json(json::parse("[]")), std::invalid_argument);

    const json dirac = json::parse(R"({"kind":"atoms","atoms":[[0,1]],"allow_dirac":true})");
    CHECK(measure_from_json(dirac).dirac_allowed());
}

TEST_CASE("load measure from file") {
    const std::string path = "test_measure.json";
    {
        std::ofstream out(path);
        out << R"({"kind": "cauchy", "location": 0.0, "scale": 1.0})";
    }
    const MeasureSpec m = load_measure(path);
    CHECK(m.kind() == MeasureKind::Cauchy);
    CHECK(m.cauchy_scale() == 1.0);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_measure("does_not_exist.json"), std::invalid_argument);
}

TEST_CASE("field csv and sidecar") {
    const auto m = MeasureSpec::atoms({{-1.0, 0.5}, {1.0, 0.5}});
    const DensityField field = density_field(m, EllipticParams(0.5, 0.5), 64);
    const json config = {{"measure", "inline"}, {"resolution", 64}};

    write_field_csv("test_field.csv", field, config);
    const std::string text = slurp("test_field.csv");
    CHECK(text.find("# version=") == 0);
    CHECK(text.find("# config=") != std::string::npos);
    CHECK(text.find("u0,u,phi,w\n") != std::string::npos);

    // Stable column layout: same field, same bytes.
    write_field_csv("test_field2.csv", field, config);
    CHECK(slurp("test_field2.csv") == text);
    std::remove("test_field2.csv");
    std::remove("test_field.csv");

    const json sidecar = field_sidecar(field, config);
    CHECK(sidecar["config"]["resolution"] == 64);
    CHECK(sidecar["mass"].get<double>() == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(sidecar["components"].size() == field.components.intervals.size());
    write_json("test_sidecar.json", sidecar);
    const json reread = json::parse(slurp("test_sidecar.json"));
    CHECK(reread == sidecar);
    std::remove("test_sidecar.json");
}

TEST_CASE("cloud and characteristic csv") {
    write_cloud_csv("test_cloud.csv", {{1.0, -2.0}, {0.5, 0.25}}, json::object());
    const std::string cloud = slurp("test_cloud.csv");
    CHECK(cloud.find("re,im\n1,-2\n0.5,0.25\n") != std::string::npos);
    std::remove("test_cloud.csv");

    const auto m = MeasureSpec::cauchy(0.0, 1.0);
    const auto init = characteristic_init(m, {0.0, 0.0}, 1.0);
    std::vector<CharacteristicState> states{characteristic_flow(init, 0.0),
                                            characteristic_flow(init, 1.0)};
    write_characteristic_csv("test_path.csv", states, json::object());
    const std::string path = slurp("test_path.csv");
    CHECK(path.find("t,u,v,eps,p_u,p_v,p_eps,s_value\n") != std::string::npos);
    std::remove("test_path.csv");
}

TEST_CASE("svg rendering emits well-formed documents") {
    const auto m = MeasureSpec::atoms({{-1.0, 0.5}, {1.0, 0.5}});
    const DensityField field = density_field(m, EllipticParams(0.5, 0.5), 64);
    write_field_svg("test_field.svg", field);
    const std::string svg = slurp("test_field.svg");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    CHECK(svg.find("<rect") != std::string::npos);
    std::remove("test_field.svg");

    write_cloud_svg("test_cloud.svg", {{0.0, 0.1}, {0.5, -0.2}}, field);
    const std::string cs = slurp("test_cloud.svg");
    CHECK(cs.find("<circle") != std::string::npos);
    std::remove("test_cloud.svg");
}
