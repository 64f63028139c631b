#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "critsolve/errors.hpp"
#include "critsolve/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Criticality eigenvalue workbench: solves the normalized coupled "
        "flux/enthalpy problem for several cross-section representations and "
        "cross-compares closed-form, quadrature, discrete and code-coupling "
        "routes."};
    app.get_formatter()->column_width(34);

    std::vector<double> sigma;
    std::vector<std::string> kind_tokens, method_tokens, tol_tokens,
        format_tokens;
    std::vector<int> cn_meshes;
    int coupling_grid = -1;
    std::string out_dir, config_path;

    app.add_option("--sigma", sigma, "Cross-section samples at h = 0, 1/2, 1")
        ->expected(3);
    app.add_option("--kinds", kind_tokens,
                   "Representations: constant affine quadratic piecewise "
                   "semi_quadratic semi_piecewise (default all)")
        ->delimiter(',');
    app.add_option("--methods", method_tokens,
                   "Solvers: analytic quadrature cn coupling (default all)")
        ->delimiter(',');
    app.add_option("--cn-meshes", cn_meshes,
                   "Mesh sizes for the discrete solver")
        ->delimiter(',');
    app.add_option("--coupling-grid", coupling_grid,
                   "Interior grid points for the coupling iteration");
    app.add_option("--tol", tol_tokens,
                   "Tolerance override, name=value (solve, cn, coupling, "
                   "quadrature)")
        ->delimiter(',');
    app.add_option("--out", out_dir, "Output directory (default: out)");
    app.add_option("--format", format_tokens, "Output formats: json, csv")
        ->delimiter(',');
    app.add_option("--config", config_path, "JSON config file (flags win)");

    CLI11_PARSE(app, argc, argv);

    critsolve::RunConfig config;
    try {
        if (!config_path.empty()) {
            config = critsolve::load_config_file(config_path);
        }
        if (sigma.size() == 3) {
            config.sigma0 = sigma[0];
            config.sigma_half = sigma[1];
            config.sigma1 = sigma[2];
        }
        if (!kind_tokens.empty()) {
            config.kinds.clear();
            for (const auto& tok : kind_tokens) {
                const auto kind = critsolve::kind_from_string(tok);
                if (!kind) {
                    throw critsolve::ConfigError("--kinds: unknown kind '" +
                                                 tok + "'");
                }
                config.kinds.push_back(*kind);
            }
        }
        if (!method_tokens.empty()) {
            config.methods.clear();
            for (const auto& tok : method_tokens) {
                const auto m = critsolve::method_from_string(tok);
                if (!m) {
                    throw critsolve::ConfigError("--methods: unknown method '" +
                                                 tok + "'");
                }
                config.methods.push_back(*m);
            }
        } else if (config_path.empty()) {
            config.methods = {critsolve::Method::Analytic,
                              critsolve::Method::Quadrature,
                              critsolve::Method::Cn,
                              critsolve::Method::Coupling};
        }
        if (!cn_meshes.empty()) config.cn_meshes = cn_meshes;
        if (coupling_grid > 0) config.coupling_grid = coupling_grid;
        for (const auto& tok : tol_tokens) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) {
                throw critsolve::ConfigError(
                    "--tol: expected name=value, got '" + tok + "'");
            }
            try {
                config.tolerances[tok.substr(0, eq)] =
                    std::stod(tok.substr(eq + 1));
            } catch (const std::exception&) {
                throw critsolve::ConfigError("--tol: bad numeric value in '" +
                                             tok + "'");
            }
        }
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (!format_tokens.empty()) {
            config.write_json = false;
            config.write_csv = false;
            for (const auto& tok : format_tokens) {
                if (tok == "json") config.write_json = true;
                else if (tok == "csv") config.write_csv = true;
                else {
                    throw critsolve::ConfigError("--format: unknown format '" +
                                                 tok + "'");
                }
            }
        }
        config = critsolve::finalize_config(config);
    } catch (const critsolve::ConfigError& ex) {
        std::fprintf(stderr, "config error: %s\n", ex.what());
        return 1;
    }

    const auto reports = critsolve::run(config);
    bool any_failed = false;
    for (const auto& r : reports) {
        std::string line;
        if (r.analytic_lambda) {
            line += "lambda=" + critsolve::format_float(*r.analytic_lambda) +
                    " keff=" + critsolve::format_float(*r.analytic_keff) +
                    " [" + r.case_tag + "]";
        }
        if (r.quadrature_lambda) {
            line += " quad=" + critsolve::format_float(*r.quadrature_lambda);
        }
        if (!r.cn_lambdas.empty()) {
            line += " cn@" + std::to_string(r.cn_series.back().n) + "=" +
                    critsolve::format_float(r.cn_lambdas.back());
        }
        if (r.coupling_lambda) {
            line += " coupling=" + critsolve::format_float(*r.coupling_lambda) +
                    " (" + std::to_string(r.coupling_iterations) + " it)";
        }
        if (r.error) {
            any_failed = true;
            line += (line.empty() ? "" : " ") + ("FAILED: " + *r.error);
        }
        std::printf("%-16s%s\n", critsolve::to_string(r.kind), line.c_str());
    }
    std::printf("outputs written to %s\n", config.output_dir.string().c_str());
    return any_failed ? 2 : 0;
}
