#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "freebrown/brown.hpp"
#include "freebrown/characteristics.hpp"
#include "freebrown/rmt.hpp"

namespace freebrown {

/// Measure-spec JSON: {"kind": "...", ...}. Atoms carry [[location, weight],
/// ...]; tabulated carries parallel "grid"/"density" arrays.
MeasureSpec measure_from_json(const nlohmann::json& j);
MeasureSpec load_measure(const std::string& path);
nlohmann::json measure_to_json(const MeasureSpec& measure);

nlohmann::json field_sidecar(const DensityField& field, const nlohmann::json& config);

/// CSV writers. Every file starts with '#'-prefixed header lines embedding
/// the run configuration, then a fixed column row.
void write_field_csv(const std::string& path, const DensityField& field,
                     const nlohmann::json& config);
void write_convolution_csv(const std::string& path,
                           const std::vector<std::pair<double, double>>& samples,
                           const nlohmann::json& config);
void write_cloud_csv(const std::string& path,
                     const std::vector<std::complex<double>>& cloud,
                     const nlohmann::json& config);
void write_characteristic_csv(const std::string& path,
                              const std::vector<CharacteristicState>& states,
                              const nlohmann::json& config);
void write_json(const std::string& path, const nlohmann::json& j);

/// Grayscale strip heatmap of the field between the boundary curves.
void write_field_svg(const std::string& path, const DensityField& field);

/// Scatter of the cloud over the field's boundary curve.
void write_cloud_svg(const std::string& path,
                     const std::vector<std::complex<double>>& cloud,
                     const DensityField& field);

std::string library_version();

} // namespace freebrown
