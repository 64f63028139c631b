#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "critsolve/errors.hpp"
#include "critsolve/report.hpp"

using namespace critsolve;
namespace fs = std::filesystem;

namespace {

RunConfig base_config(const fs::path& out) {
    RunConfig config;
    config.sigma0 = 8.0;
    config.sigma_half = 6.0;
    config.sigma1 = 3.0;
    config.methods = {Method::Analytic};
    config.output_dir = out;
    return config;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const char* leaf) {
    const fs::path dir = fs::temp_directory_path() / "critsolve_tests" / leaf;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("config validation names the offending field") {
    RunConfig config = base_config(temp_dir("cfg"));
    config.sigma0 = -1.0;
    CHECK_THROWS_WITH_AS(finalize_config(config), doctest::Contains("sigma"),
                         ConfigError);

    config = base_config(temp_dir("cfg"));
    config.methods.clear();
    CHECK_THROWS_WITH_AS(finalize_config(config), doctest::Contains("methods"),
                         ConfigError);

    config = base_config(temp_dir("cfg"));
    config.cn_meshes = {1};
    CHECK_THROWS_WITH_AS(finalize_config(config),
                         doctest::Contains("cn_meshes"), ConfigError);

    config = base_config(temp_dir("cfg"));
    config.tolerances["solve"] = 0.0;
    CHECK_THROWS_WITH_AS(finalize_config(config), doctest::Contains("solve"),
                         ConfigError);

    config = base_config(temp_dir("cfg"));
    config.write_csv = false;
    config.write_json = false;
    CHECK_THROWS_WITH_AS(finalize_config(config), doctest::Contains("formats"),
                         ConfigError);

    // defaults fill in all six kinds
    config = base_config(temp_dir("cfg"));
    const RunConfig final = finalize_config(config);
    CHECK(final.kinds.size() == 6);
}

TEST_CASE("config file loading") {
    const fs::path dir = temp_dir("cfgfile");
    const fs::path file = dir / "run.json";
    {
        std::ofstream out(file);
        out << R"({"sigma": [8, 6, 3], "kinds": ["quadratic"],
                   "methods": ["analytic"], "tolerances": {"solve": 1e-10},
                   "out": ")" << (dir / "out").string() << R"("})";
    }
    const RunConfig config = finalize_config(load_config_file(file));
    CHECK(config.sigma0 == 8.0);
    CHECK(config.kinds.size() == 1);
    CHECK(config.kinds[0] == SigmaKind::Quadratic);
    CHECK(config.methods.size() == 1);
    CHECK(config.tolerances.at("solve") == 1e-10);

    {
        std::ofstream out(file);
        out << R"({"sigma": [8, 6, 3], "unexpected": 1})";
    }
    CHECK_THROWS_WITH_AS(load_config_file(file),
                         doctest::Contains("unexpected"), ConfigError);

    {
        std::ofstream out(file);
        out << R"({"sigma": [8, 6]})";
    }
    CHECK_THROWS_AS(load_config_file(file), ConfigError);

    CHECK_THROWS_AS(load_config_file(dir / "missing.json"), ConfigError);
}

TEST_CASE("analytic-only run reproduces the published table") {
    const RunConfig config =
        finalize_config(base_config(temp_dir("table")));
    const auto reports = run(config);
    REQUIRE(reports.size() == 6);
    const double expected[] = {1.89036, 1.99533, 1.86593,
                               1.89454, 1.85769, 1.88614};
    for (std::size_t i = 0; i < 6; ++i) {
        REQUIRE(!reports[i].error);
        REQUIRE(reports[i].analytic_lambda.has_value());
        CHECK(std::abs(*reports[i].analytic_lambda - expected[i]) <= 2e-4);
        CHECK(*reports[i].analytic_keff ==
              doctest::Approx(1.0 / *reports[i].analytic_lambda)
                  .epsilon(1e-14));
    }
    CHECK(fs::exists(config.output_dir / "report.json"));
    CHECK(fs::exists(config.output_dir / "table.csv"));
    CHECK(fs::exists(config.output_dir / "profile_quadratic.csv"));
    CHECK(fs::exists(config.output_dir / "sigma_v_piecewise.csv"));
}

TEST_CASE("identical configs produce byte-identical outputs") {
    RunConfig config = base_config(temp_dir("det1"));
    config.methods = {Method::Analytic, Method::Cn};
    config.cn_meshes = {40, 80};
    const RunConfig config1 = finalize_config(config);
    run(config1);
    config.output_dir = temp_dir("det2");
    const RunConfig config2 = finalize_config(config);
    run(config2);
    // CSV outputs are bit-exact; report.json carries wall times
    for (const char* name :
         {"table.csv", "profile_quadratic.csv", "sigma_v_affine.csv",
          "profile_semi_piecewise.csv"}) {
        INFO("file = " << name);
        CHECK(slurp(config1.output_dir / name) ==
              slurp(config2.output_dir / name));
    }
    const std::string table = slurp(config1.output_dir / "table.csv");
    CHECK(table.find('\r') == std::string::npos);  // LF endings
    CHECK(table.rfind("kind,lambda_analytic,k_eff,lambda_cn,cn_order,"
                      "lambda_coupling,coupling_iters\n", 0) == 0);
}

TEST_CASE("analytic and quadrature columns cohere") {
    RunConfig config = base_config(temp_dir("coh"));
    config.methods = {Method::Analytic, Method::Quadrature, Method::Cn};
    config.cn_meshes = {40, 80};
    const auto reports = run(finalize_config(config));
    for (const auto& r : reports) {
        REQUIRE(!r.error);
        CHECK(std::abs(*r.analytic_lambda - *r.quadrature_lambda) <= 1e-7);
        // second-order mesh error keeps n^2 * |lambda_cn - lambda| bounded
        const double n = r.cn_series.back().n;
        CHECK(std::abs(r.cn_lambdas.back() - *r.analytic_lambda) * n * n <=
              100.0);
    }
}

TEST_CASE("a failing case does not abort the batch") {
    RunConfig config = base_config(temp_dir("isolate"));
    // this projection leaves the positive cone for the semi-analytic kinds
    config.sigma0 = 1.0;
    config.sigma_half = 1.0;
    config.sigma1 = 20.0;
    const auto reports = run(finalize_config(config));
    REQUIRE(reports.size() == 6);
    int failed = 0, succeeded = 0;
    for (const auto& r : reports) {
        if (r.error) {
            ++failed;
        } else {
            REQUIRE(r.analytic_lambda.has_value());
            ++succeeded;
        }
    }
    CHECK(failed >= 1);
    CHECK(succeeded >= 4);
}

TEST_CASE("fixed-width float formatting") {
    CHECK(format_float(1.0 / 3.0) == "0.333333333333");
    CHECK(format_float(2.0) == "2");
    CHECK(format_float(1.8903659827981445) == "1.8903659828");
}
