#pragma once

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace logdet::cli {

struct InputDescriptor {
    std::string path;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t nnz = 0;
};

struct ReportParams {
    std::optional<std::size_t> m;
    std::optional<std::size_t> n;
    std::optional<double> delta;
    std::optional<double> sigma_min;
    std::optional<double> sigma_max;
    std::optional<double> kappa;
    std::optional<std::uint64_t> seed;
};

/// One machine-readable result line. Every field is always emitted; absent
/// values serialize as null. elapsed_seconds is the only non-deterministic field.
struct RunReport {
    std::string command;
    std::optional<InputDescriptor> input;
    std::optional<double> gamma;
    ReportParams params;
    double elapsed_seconds = 0.0;
    std::optional<double> oracle;
    std::optional<double> relative_error;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::ordered_json& j);

std::string csv_header();
std::string to_csv(const RunReport& report);

} // namespace logdet::cli
