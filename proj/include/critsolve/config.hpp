#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "critsolve/model.hpp"

namespace critsolve {

enum class Method { Analytic, Quadrature, Cn, Coupling };

const char* to_string(Method m);
std::optional<Method> method_from_string(const std::string& token);

/// One batch run: which samples, which representations, which solvers, where
/// the outputs go.  Flags override file values; unset fields keep defaults.
struct RunConfig {
    double sigma0 = 0.0;
    double sigma_half = 0.0;
    double sigma1 = 0.0;
    std::vector<SigmaKind> kinds;    // default: all six
    std::vector<Method> methods;     // default: all four
    std::vector<int> cn_meshes = {40, 80, 160, 320, 640, 1280};
    int coupling_grid = 800;
    int coupling_max_iter = 200;
    std::map<std::string, double> tolerances = {
        {"solve", 1e-12}, {"cn", 1e-12}, {"coupling", 1e-10},
        {"quadrature", 1e-10}};
    std::filesystem::path output_dir = "out";
    bool write_json = true;
    bool write_csv = true;
    int profile_points = 201;
};

/// Fills defaults (all kinds / all methods) and validates; throws ConfigError
/// naming the offending field.
RunConfig finalize_config(RunConfig config);

/// Reads a JSON config file mirroring RunConfig.  Unknown keys are rejected.
RunConfig load_config_file(const std::filesystem::path& path);

} // namespace critsolve
