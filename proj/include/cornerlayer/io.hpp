#pragma once

// File formats: JSON problem files, solution CSV, run metadata.
//
// Problem file:
//   {
//     "eps": 0.000244140625 | "2^-12",
//     "beta": 1.0,                      (optional)
//     "T": 1.0,                         (optional, default 1)
//     "b": "1 + x^2 + t", "f": "exp(-x)",
//     "gL": "0", "gR": "-t^2", "phi": "1 - x",
//     "derivatives": { "gL_t": "0", "phi_xx": "0", ... }   (optional)
//   }

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cornerlayer/problem.hpp"
#include "cornerlayer/solver.hpp"

namespace cornerlayer {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ProblemSource problem_source_from_json(const nlohmann::json& j);

/// "example23" or a path to a JSON problem file.
ProblemSource load_problem_source(const std::string& name_or_path);

/// Header row "t\x,x_0,...,x_N", then one row per time level starting with t_j.
std::string solution_csv(const GridFunction& Y);

/// Same layout restricted to nodes with x <= x_max and t <= t_max.
std::string solution_csv_window(const GridFunction& Y, double x_max, double t_max);

struct RunMetadata {
    double eps, beta, T;
    int N, M;
    double sigma, tau, A0;
    double wall_seconds;
};

nlohmann::json metadata_json(const RunMetadata& m);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace cornerlayer
