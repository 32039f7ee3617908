#include "cornerlayer/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cornerlayer {

namespace {

double number_field(const nlohmann::json& v, const char* key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return parse_real_literal(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("field '") + key + "': " + e.what());
        }
    }
    throw ConfigError(std::string("field '") + key + "' must be a number or a numeric string");
}

std::string expression_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    throw ConfigError(std::string("field '") + key + "' must be an expression string");
}

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

ProblemSource problem_source_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("problem file must hold a JSON object");
    ProblemSource s;
    if (!j.contains("eps")) throw ConfigError("missing field 'eps'");
    s.eps = number_field(j.at("eps"), "eps");
    if (j.contains("beta") && !j.at("beta").is_null()) s.beta = number_field(j.at("beta"), "beta");
    if (j.contains("T")) s.T = number_field(j.at("T"), "T");
    s.b = expression_field(j, "b");
    s.f = expression_field(j, "f");
    s.gL = expression_field(j, "gL");
    s.gR = expression_field(j, "gR");
    s.phi = expression_field(j, "phi");
    if (j.contains("derivatives")) {
        const auto& d = j.at("derivatives");
        if (!d.is_object()) throw ConfigError("'derivatives' must be an object");
        for (const auto& [key, value] : d.items()) s.derivatives.emplace_back(key, expression_field(d, key.c_str()));
    }
    return s;
}

ProblemSource load_problem_source(const std::string& name_or_path) {
    if (name_or_path == "example23") return example23_source(std::ldexp(1.0, -12));
    std::ifstream in(name_or_path);
    if (!in) throw ConfigError("cannot open problem file '" + name_or_path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed JSON in '" + name_or_path + "': " + e.what());
    }
    return problem_source_from_json(j);
}

std::string solution_csv_window(const GridFunction& Y, double x_max, double t_max) {
    const TensorMesh& m = Y.mesh();
    int last_i = 0, last_j = 0;
    while (last_i < m.N() && m.x(last_i + 1) <= x_max) ++last_i;
    while (last_j < m.M() && m.t(last_j + 1) <= t_max) ++last_j;

    std::string out = "t\\x";
    for (int i = 0; i <= last_i; ++i) {
        out += ',';
        append_number(out, m.x(i));
    }
    out += '\n';
    for (int j = 0; j <= last_j; ++j) {
        append_number(out, m.t(j));
        for (int i = 0; i <= last_i; ++i) {
            out += ',';
            append_number(out, Y(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string solution_csv(const GridFunction& Y) {
    const TensorMesh& m = Y.mesh();
    return solution_csv_window(Y, m.space.back(), m.time.back());
}

nlohmann::json metadata_json(const RunMetadata& m) {
    return nlohmann::json{
        {"eps", m.eps},     {"beta", m.beta}, {"T", m.T},   {"N", m.N},
        {"M", m.M},         {"sigma", m.sigma}, {"tau", m.tau}, {"A0", m.A0},
        {"wall_time_seconds", m.wall_seconds},
    };
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

}  // namespace cornerlayer
