#include "paramlc/io.hpp"

#include <cstdio>

namespace paramlc::io {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), n_cols_(header.size()) {
    if (!out_) throw ConfigInvalid("cannot open CSV file " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

std::string CsvWriter::format(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void CsvWriter::write_row(const std::vector<double>& values) {
    if (values.size() != n_cols_) throw ConfigInvalid("CSV row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format(values[i]);
    }
    out_ << '\n';
}

void CsvWriter::write_row_mixed(const std::vector<std::string>& values) {
    if (values.size() != n_cols_) throw ConfigInvalid("CSV row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << values[i];
    }
    out_ << '\n';
}

std::string version_string() { return "paramlc 0.1.0"; }

void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const nlohmann::json& config, std::uint64_t seed, double wall_seconds) {
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["version"] = version_string();
    manifest["seed"] = seed;
    manifest["wall_time_s"] = wall_seconds;
    std::ofstream out(dir / "manifest.json");
    if (!out) throw ConfigInvalid("cannot write manifest in " + dir.string());
    out << manifest.dump(2) << '\n';
}

void dump_density_matrix(const std::filesystem::path& path, const fockspace::DensityMatrix& rho,
                         const ModelParams& params) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigInvalid("cannot open dump file " + path.string());

    const char magic[8] = {'P', 'L', 'C', 'D', 'M', '0', '0', '1'};
    out.write(magic, sizeof magic);
    const auto put_u32 = [&](std::uint32_t v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof v);
    };
    const auto put_f64 = [&](double v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof v);
    };

    put_u32(static_cast<std::uint32_t>(rho.mode_cutoffs.size()));
    for (int c : rho.mode_cutoffs) put_u32(static_cast<std::uint32_t>(c));
    put_u32(rho.basis == fockspace::BasisTag::a_basis ? 0u : 1u);
    put_f64(params.n_modes);
    put_f64(params.u);
    put_f64(params.drive);
    put_f64(params.kappa);
    put_f64(params.h);
    for (Eigen::Index r = 0; r < params.coupling.rows(); ++r)
        for (Eigen::Index c = 0; c < params.coupling.cols(); ++c) put_f64(params.coupling(r, c));
    for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c) {
            put_f64(rho.matrix(r, c).real());
            put_f64(rho.matrix(r, c).imag());
        }
}

nlohmann::json params_to_json(const ModelParams& params) {
    nlohmann::json j;
    j["n_modes"] = params.n_modes;
    j["u"] = params.u;
    j["drive"] = params.drive;
    j["kappa"] = params.kappa;
    j["h"] = params.h;
    auto coupling = nlohmann::json::array();
    for (Eigen::Index r = 0; r < params.coupling.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < params.coupling.cols(); ++c) row.push_back(params.coupling(r, c));
        coupling.push_back(row);
    }
    j["coupling"] = coupling;
    return j;
}

ModelParams params_from_json(const nlohmann::json& j) {
    ModelParams p;
    p.n_modes = j.value("n_modes", 2);
    p.u = j.value("u", 1.0);
    p.drive = j.value("drive", 1.0);
    p.kappa = j.value("kappa", 1.0);
    p.h = j.value("h", 0.0);
    if (j.contains("coupling")) {
        const auto& rows = j.at("coupling");
        p.coupling = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                           static_cast<Eigen::Index>(rows.size()));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < rows[r].size(); ++c)
                p.coupling(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    rows[r][c].get<double>();
    } else if (p.n_modes == 2) {
        p.coupling = ModelParams::two_mode(p.u, p.drive, p.kappa, p.h).coupling;
    } else {
        p.coupling = Eigen::MatrixXd::Zero(p.n_modes, p.n_modes);
    }
    return p;
}

} // namespace paramlc::io
