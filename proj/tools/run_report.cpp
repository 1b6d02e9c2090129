#include "run_report.hpp"

#include <iomanip>
#include <sstream>

namespace logdet::cli {

namespace {

using json = nlohmann::ordered_json;

template <typename T>
json nullable(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<T>();
}

template <typename T>
std::string csv_cell(const std::optional<T>& v) {
    if (!v) return "";
    std::ostringstream s;
    s << std::setprecision(17) << *v;
    return s.str();
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

json to_json(const RunReport& r) {
    json j;
    j["command"] = r.command;
    if (r.input)
        j["input"] = {{"path", r.input->path}, {"rows", r.input->rows}, {"cols", r.input->cols}, {"nnz", r.input->nnz}};
    else
        j["input"] = nullptr;
    j["gamma"] = nullable(r.gamma);
    j["params"] = {{"m", nullable(r.params.m)},
                   {"n", nullable(r.params.n)},
                   {"delta", nullable(r.params.delta)},
                   {"sigma_min", nullable(r.params.sigma_min)},
                   {"sigma_max", nullable(r.params.sigma_max)},
                   {"kappa", nullable(r.params.kappa)},
                   {"seed", nullable(r.params.seed)}};
    j["oracle"] = nullable(r.oracle);
    j["relative_error"] = nullable(r.relative_error);
    j["details"] = r.details;
    j["elapsed_seconds"] = r.elapsed_seconds;
    return j;
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    if (!j.at("input").is_null()) {
        const auto& in = j.at("input");
        r.input = InputDescriptor{in.at("path").get<std::string>(), in.at("rows").get<std::size_t>(),
                                  in.at("cols").get<std::size_t>(), in.at("nnz").get<std::size_t>()};
    }
    r.gamma = optional_from<double>(j, "gamma");
    const auto& p = j.at("params");
    r.params.m = optional_from<std::size_t>(p, "m");
    r.params.n = optional_from<std::size_t>(p, "n");
    r.params.delta = optional_from<double>(p, "delta");
    r.params.sigma_min = optional_from<double>(p, "sigma_min");
    r.params.sigma_max = optional_from<double>(p, "sigma_max");
    r.params.kappa = optional_from<double>(p, "kappa");
    r.params.seed = optional_from<std::uint64_t>(p, "seed");
    r.oracle = optional_from<double>(j, "oracle");
    r.relative_error = optional_from<double>(j, "relative_error");
    r.details = j.at("details");
    r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    return r;
}

std::string csv_header() {
    return "command,path,rows,cols,nnz,gamma,m,n,delta,sigma_min,sigma_max,kappa,seed,oracle,"
           "relative_error,elapsed_seconds";
}

std::string to_csv(const RunReport& r) {
    std::ostringstream s;
    const auto in = r.input;
    s << csv_quote(r.command) << ',' << (in ? csv_quote(in->path) : "") << ','
      << (in ? std::to_string(in->rows) : "") << ',' << (in ? std::to_string(in->cols) : "") << ','
      << (in ? std::to_string(in->nnz) : "") << ',' << csv_cell(r.gamma) << ',' << csv_cell(r.params.m)
      << ',' << csv_cell(r.params.n) << ',' << csv_cell(r.params.delta) << ','
      << csv_cell(r.params.sigma_min) << ',' << csv_cell(r.params.sigma_max) << ','
      << csv_cell(r.params.kappa) << ',' << csv_cell(r.params.seed) << ',' << csv_cell(r.oracle) << ','
      << csv_cell(r.relative_error) << ',' << csv_cell(std::optional<double>(r.elapsed_seconds));
    return s.str();
}

} // namespace logdet::cli
