#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramlc/fockspace.hpp"
#include "paramlc/model.hpp"

namespace paramlc::io {

/// CSV emitter keeping full double precision (17 significant digits).
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void write_row(const std::vector<double>& values);
    void write_row_mixed(const std::vector<std::string>& values);

    static std::string format(double value);

private:
    std::ofstream out_;
    std::size_t n_cols_;
};

/// Run manifest: config echo, version, seed, wall time.
void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const nlohmann::json& config, std::uint64_t seed, double wall_seconds);

std::string version_string();

/// Binary density-matrix dump. Layout (little endian):
///   char[8]  magic "PLCDM001"
///   u32      n_modes
///   u32[n]   per-mode cutoffs
///   u32      basis tag (0 = a basis, 1 = b basis)
///   f64[5]   n_modes (as double), u, D, kappa, h
///   f64[n*n] coupling matrix, row major
///   f64[2*dim*dim]  matrix entries, row major, interleaved re/im
void dump_density_matrix(const std::filesystem::path& path, const fockspace::DensityMatrix& rho,
                         const ModelParams& params);

nlohmann::json params_to_json(const ModelParams& params);
ModelParams params_from_json(const nlohmann::json& j);

} // namespace paramlc::io
