#include "critsolve/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "critsolve/coupling.hpp"
#include "critsolve/errors.hpp"

namespace critsolve {

using nlohmann::json;

const char* to_string(Method m) {
    switch (m) {
        case Method::Analytic: return "analytic";
        case Method::Quadrature: return "quadrature";
        case Method::Cn: return "cn";
        case Method::Coupling: return "coupling";
    }
    return "?";
}

std::optional<Method> method_from_string(const std::string& token) {
    if (token == "analytic") return Method::Analytic;
    if (token == "quadrature") return Method::Quadrature;
    if (token == "cn") return Method::Cn;
    if (token == "coupling") return Method::Coupling;
    return std::nullopt;
}

RunConfig finalize_config(RunConfig config) {
    if (!(config.sigma0 > 0.0) || !(config.sigma_half > 0.0) ||
        !(config.sigma1 > 0.0)) {
        throw ConfigError("sigma: all three samples must be > 0");
    }
    if (config.kinds.empty()) {
        config.kinds = {SigmaKind::Constant,
                        SigmaKind::Affine,
                        SigmaKind::Quadratic,
                        SigmaKind::PiecewiseAffine,
                        SigmaKind::SemiAnalyticQuadratic,
                        SigmaKind::SemiAnalyticPiecewise};
    }
    if (config.methods.empty()) {
        throw ConfigError("methods: at least one method is required");
    }
    if (config.cn_meshes.empty()) {
        throw ConfigError("cn_meshes: at least one mesh is required");
    }
    for (int n : config.cn_meshes) {
        if (n < 2) throw ConfigError("cn_meshes: every mesh must be >= 2");
    }
    if (config.coupling_grid < 10) {
        throw ConfigError("coupling_grid: must be >= 10");
    }
    for (const auto& [name, value] : config.tolerances) {
        if (!(value > 0.0)) {
            throw ConfigError("tolerances: '" + name + "' must be > 0");
        }
    }
    if (!config.write_json && !config.write_csv) {
        throw ConfigError("formats: at least one of json, csv");
    }
    if (config.profile_points < 3) {
        throw ConfigError("profile_points: must be >= 3");
    }
    return config;
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("config: invalid JSON: ") + ex.what());
    }
    RunConfig config;
    static const char* known[] = {"sigma",         "kinds",
                                  "methods",       "cn_meshes",
                                  "coupling_grid", "coupling_max_iter",
                                  "tolerances",    "out",
                                  "formats",       "profile_points"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError("config: unknown key '" + it.key() + "'");
    }
    try {
        if (j.contains("sigma")) {
            const auto& s = j.at("sigma");
            if (!s.is_array() || s.size() != 3) {
                throw ConfigError("sigma: expected an array of three numbers");
            }
            config.sigma0 = s.at(0).get<double>();
            config.sigma_half = s.at(1).get<double>();
            config.sigma1 = s.at(2).get<double>();
        }
        if (j.contains("kinds")) {
            for (const auto& k : j.at("kinds")) {
                const auto kind = kind_from_string(k.get<std::string>());
                if (!kind) {
                    throw ConfigError("kinds: unknown kind '" +
                                      k.get<std::string>() + "'");
                }
                config.kinds.push_back(*kind);
            }
        }
        if (j.contains("methods")) {
            for (const auto& mth : j.at("methods")) {
                const auto m = method_from_string(mth.get<std::string>());
                if (!m) {
                    throw ConfigError("methods: unknown method '" +
                                      mth.get<std::string>() + "'");
                }
                config.methods.push_back(*m);
            }
        } else {
            config.methods = {Method::Analytic, Method::Quadrature, Method::Cn,
                              Method::Coupling};
        }
        if (j.contains("cn_meshes")) {
            config.cn_meshes = j.at("cn_meshes").get<std::vector<int>>();
        }
        if (j.contains("coupling_grid")) {
            config.coupling_grid = j.at("coupling_grid").get<int>();
        }
        if (j.contains("coupling_max_iter")) {
            config.coupling_max_iter = j.at("coupling_max_iter").get<int>();
        }
        if (j.contains("tolerances")) {
            for (auto it = j.at("tolerances").begin();
                 it != j.at("tolerances").end(); ++it) {
                config.tolerances[it.key()] = it.value().get<double>();
            }
        }
        if (j.contains("out")) {
            config.output_dir = j.at("out").get<std::string>();
        }
        if (j.contains("formats")) {
            config.write_json = false;
            config.write_csv = false;
            for (const auto& f : j.at("formats")) {
                const std::string fmt = f.get<std::string>();
                if (fmt == "json") config.write_json = true;
                else if (fmt == "csv") config.write_csv = true;
                else throw ConfigError("formats: unknown format '" + fmt + "'");
            }
        }
        if (j.contains("profile_points")) {
            config.profile_points = j.at("profile_points").get<int>();
        }
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("config: ") + ex.what());
    }
    return config;
}

std::string format_float(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

bool wants(const RunConfig& config, Method m) {
    return std::find(config.methods.begin(), config.methods.end(), m) !=
           config.methods.end();
}

double tol_of(const RunConfig& config, const std::string& name,
              double fallback) {
    const auto it = config.tolerances.find(name);
    return it == config.tolerances.end() ? fallback : it->second;
}

CaseReport run_case(const RunConfig& config, const SigmaModel& model) {
    CaseReport report;
    report.kind = model.kind;
    const double solve_tol = tol_of(config, "solve", 1e-12);

    // one route failing must not discard the others' columns
    const auto guarded = [&](const char* name, auto&& body) {
        try {
            Stopwatch timer;
            body();
            report.wall_times_ms[name] = timer.ms();
        } catch (const Error& ex) {
            report.error = (report.error ? *report.error + "; " : "") +
                           std::string(name) + ": " + ex.what();
        }
    };

    if (wants(config, Method::Analytic)) {
        guarded("analytic", [&] {
            SolveResult solved =
                solve_lambda(model, solve_tol, config.profile_points);
            report.analytic_lambda = solved.lambda;
            report.analytic_keff = solved.keff;
            report.case_tag = to_string(solved.used_quadrature_fallback
                                            ? PsiCase::QuadratureFallback
                                            : solved.case_tag);
            report.profile = std::move(solved.profile);
        });
    }
    if (wants(config, Method::Quadrature)) {
        guarded("quadrature", [&] {
            // bisection on the quadrature integral only
            const double qtol = tol_of(config, "quadrature", 1e-10);
            const double llow = lambda_lower_bound(model);
            double lo = llow * (1.0 + 1e-6);
            double hi = llow * 1.5;
            for (int i = 0;
                 integral_I_quadrature(model, hi, qtol) > 1.0 && i < 200; ++i) {
                hi = llow + 2.0 * (hi - llow);
            }
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (integral_I_quadrature(model, mid, qtol) > 1.0) lo = mid;
                else hi = mid;
                if (hi - lo <= 1e-12 * hi) break;
            }
            report.quadrature_lambda = 0.5 * (lo + hi);
            if (report.profile.empty()) {
                report.profile = reconstruct_profiles(
                    model, *report.quadrature_lambda, config.profile_points);
            }
        });
    }
    if (wants(config, Method::Cn)) {
        guarded("cn", [&] {
            const double cn_tol = tol_of(config, "cn", 1e-12);
            double lambda_ref = report.analytic_lambda
                                    ? *report.analytic_lambda
                                    : (report.quadrature_lambda
                                           ? *report.quadrature_lambda
                                           : 0.0);
            std::vector<double> lambdas;
            for (int n : config.cn_meshes) {
                lambdas.push_back(
                    solve_lambda_discrete(model, n, cn_tol).lambda_n);
            }
            if (lambda_ref == 0.0) lambda_ref = lambdas.back();
            for (std::size_t i = 0; i < lambdas.size(); ++i) {
                const int n = config.cn_meshes[i];
                const double err = std::abs(lambdas[i] - lambda_ref);
                std::optional<double> order;
                if (i > 0 && n != config.cn_meshes[i - 1] &&
                    report.cn_series[i - 1].error > 0.0 && err > 0.0) {
                    order = std::log(report.cn_series[i - 1].error / err) /
                            std::log(static_cast<double>(n) /
                                     config.cn_meshes[i - 1]);
                }
                report.cn_series.push_back({n, err, order});
            }
            report.cn_lambdas = std::move(lambdas);
        });
    }
    if (wants(config, Method::Coupling)) {
        guarded("coupling", [&] {
            const CouplingState state =
                coupling_iterate(model, config.coupling_grid,
                                 tol_of(config, "coupling", 1e-10),
                                 config.coupling_max_iter);
            report.coupling_lambda = state.lambda_seq.back();
            report.coupling_iterations =
                static_cast<int>(state.h_delta_seq.size());
            report.coupling_converged = state.converged;
        });
    }
    return report;
}

json report_to_json(const CaseReport& r) {
    json j;
    j["kind"] = to_string(r.kind);
    if (r.error) j["error"] = *r.error;
    if (r.analytic_lambda) {
        j["analytic"] = {{"lambda", *r.analytic_lambda},
                         {"keff", *r.analytic_keff},
                         {"case", r.case_tag}};
    }
    if (r.quadrature_lambda) {
        j["quadrature"] = {{"lambda", *r.quadrature_lambda}};
    }
    if (!r.cn_series.empty()) {
        json series = json::array();
        for (std::size_t i = 0; i < r.cn_series.size(); ++i) {
            json e = {{"n", r.cn_series[i].n},
                      {"lambda", r.cn_lambdas[i]},
                      {"error", r.cn_series[i].error}};
            if (r.cn_series[i].order) e["order"] = *r.cn_series[i].order;
            series.push_back(std::move(e));
        }
        j["cn"] = std::move(series);
    }
    if (r.coupling_lambda) {
        j["coupling"] = {{"lambda", *r.coupling_lambda},
                         {"iterations", r.coupling_iterations},
                         {"converged", r.coupling_converged}};
    }
    j["wall_times_ms"] = r.wall_times_ms;
    return j;
}

void write_csv_line(std::ofstream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
    }
    out << '\n';
}

} // namespace

std::vector<CaseReport> run(const RunConfig& config) {
    const SigmaSamples samples =
        make_samples(config.sigma0, config.sigma_half, config.sigma1);
    std::vector<CaseReport> reports;
    reports.reserve(config.kinds.size());
    for (SigmaKind kind : config.kinds) {
        CaseReport report;
        report.kind = kind;
        try {
            report = run_case(config, build_model(samples, kind));
        } catch (const Error& ex) {
            report.error = ex.what();
        }
        reports.push_back(std::move(report));
    }
    if (config.write_json || config.write_csv) {
        write_outputs(config, reports);
    }
    return reports;
}

void write_outputs(const RunConfig& config,
                   const std::vector<CaseReport>& reports) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output_dir);

    if (config.write_json) {
        json doc;
        doc["schema"] = 1;
        doc["sigma"] = {config.sigma0, config.sigma_half, config.sigma1};
        json cases = json::array();
        for (const auto& r : reports) cases.push_back(report_to_json(r));
        doc["cases"] = std::move(cases);
        std::ofstream out(config.output_dir / "report.json", std::ios::binary);
        out << doc.dump(2) << '\n';
    }

    if (!config.write_csv) return;

    {
        std::ofstream out(config.output_dir / "table.csv", std::ios::binary);
        write_csv_line(out, {"kind", "lambda_analytic", "k_eff", "lambda_cn",
                             "cn_order", "lambda_coupling", "coupling_iters"});
        for (const auto& r : reports) {
            std::vector<std::string> cells(7);
            cells[0] = to_string(r.kind);
            if (r.analytic_lambda) {
                cells[1] = format_float(*r.analytic_lambda);
                cells[2] = format_float(*r.analytic_keff);
            }
            if (!r.cn_series.empty()) {
                cells[3] = format_float(r.cn_lambdas.back());
                if (r.cn_series.back().order) {
                    cells[4] = format_float(*r.cn_series.back().order);
                }
            }
            if (r.coupling_lambda) {
                cells[5] = format_float(*r.coupling_lambda);
                cells[6] = std::to_string(r.coupling_iterations);
            }
            write_csv_line(out, cells);
        }
    }

    const SigmaSamples samples =
        make_samples(config.sigma0, config.sigma_half, config.sigma1);
    for (const auto& r : reports) {
        const std::string kind_name = to_string(r.kind);
        if (!r.profile.empty()) {
            std::ofstream out(
                config.output_dir / ("profile_" + kind_name + ".csv"),
                std::ios::binary);
            write_csv_line(out, {"z", "h", "phi"});
            for (const auto& pt : r.profile) {
                write_csv_line(out, {format_float(pt.z), format_float(pt.h),
                                     format_float(pt.phi)});
            }
        }
        SigmaModel model;
        try {
            model = build_model(samples, r.kind);
        } catch (const Error&) {
            continue;  // the representation itself is not constructible
        }
        std::ofstream out(config.output_dir / ("sigma_v_" + kind_name + ".csv"),
                          std::ios::binary);
        write_csv_line(out, {"h", "sigma", "v"});
        const int n = config.profile_points;
        for (int i = 0; i < n; ++i) {
            const double h = static_cast<double>(i) / (n - 1);
            write_csv_line(out, {format_float(h),
                                 format_float(sigma_eval(model, h)),
                                 format_float(v_eval(model, h))});
        }
    }
}

} // namespace critsolve
