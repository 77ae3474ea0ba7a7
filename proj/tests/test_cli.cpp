/*
   Copyright 2026 The yule Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "manifest.hpp"
#include "yule/bounds.hpp"
#include "yule/moments.hpp"

using namespace yule;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("yule_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("charpoly") {
    const auto r = run({"charpoly", "--n", "3", "--lambda", "1"});
    REQUIRE(r.code == cli::kExitOk);
    const auto d = r.doc();
    CHECK(d["schema"] == "yule/1");
    CHECK(d["kind"] == "charpoly");
    CHECK(d["value"].get<double>() == doctest::Approx(16.0 / 27.0).epsilon(1e-14));
    CHECK_FALSE(d.contains("derivative"));

    const auto neg = run({"charpoly", "--n", "10", "--lambda", "0", "--backend", "oracle"}).doc();
    CHECK(neg["value"].get<double>() == 1.0);
    CHECK(neg["derivative"].get<double>() == doctest::Approx(-1.65).epsilon(1e-13));
}

TEST_CASE("mgf") {
    auto d = run({"mgf", "--n", "4", "--s11", "0", "--s12", "0", "--s22", "0"}).doc();
    CHECK(d["value"].get<double>() == 1.0);
    d = run({"mgf", "--n", "2", "--s11", "4", "--s22", "4", "--backend", "spectral"}).doc();
    CHECK(d["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d["alpha"].get<double>() == doctest::Approx(-4.0));
    d = run({"mgf", "--continuous", "--s11", "2", "--s12", "1", "--s22", "3"}).doc();
    CHECK(d["n"].is_null());
    CHECK(d["value"].get<double>() > 0.0);
    CHECK(run({"mgf", "--n", "4", "--s11", "1", "--s12", "2", "--s22", "1"}).code == cli::kExitUsage);
    CHECK(run({"mgf", "--s11", "1"}).code == cli::kExitUsage);
}

TEST_CASE("moment") {
    auto r = run({"moment", "--n", "7", "--order", "3"});
    REQUIRE(r.code == cli::kExitOk);
    auto d = r.doc();
    CHECK(d["value"].get<double>() == 0.0);
    CHECK(d["exact"].get<bool>());

    r = run({"moment", "--n", "5", "--order", "2"});
    REQUIRE(r.code == cli::kExitOk);
    d = r.doc();
    CHECK(std::abs(d["value"].get<double>() - 0.341109) <= 5e-6);
    CHECK(d["order"] == 2);
    CHECK(d["continuous"] == false);

    // The emitted value re-parses to the library result exactly.
    MomentRequest req;
    req.n = 5;
    const auto lib = moment(req);
    CHECK(d["value"].get<double>() == lib.value);
    CHECK(d["abs_error_estimate"].get<double>() == lib.abs_error_estimate);
    CHECK(d["cells_used"].get<long>() == lib.cells_used);
    CHECK(moment_backend_from_string(d["backend"].get<std::string>()) == lib.backend);

    d = run({"moment", "--n", "50", "--order", "16"}).doc();
    CHECK(std::abs(d["value"].get<double>() - 0.009586) <= 1e-4);

    d = run({"moment", "--continuous", "--backend", "closed"}).doc();
    CHECK(std::abs(d["value"].get<double>() - 0.240523) <= 5e-6);
    CHECK(d["backend"] == "closed_form_theorem2");
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"moment", "--n", "5", "--bogus"}).code == cli::kExitUsage);
    CHECK(run({"moment", "--n", "1"}).code == cli::kExitUsage);
    CHECK(run({"moment", "--n", "10", "--order", "18"}).code == cli::kExitUsage);
    CHECK(run({"moment", "--n", "abc"}).code == cli::kExitUsage);
    CHECK(run({"charpoly", "--n", "3"}).code == cli::kExitUsage);
    CHECK(run({"simulate", "--n", "1"}).code == cli::kExitUsage);
    CHECK(run({"moment", "--help"}).code == cli::kExitOk);

    const auto r = run({"moment", "--n", "10", "--rel-tol", "1e-15", "--max-cells", "50"});
    CHECK(r.code == cli::kExitNumeric);
    const auto e = json::parse(r.err);
    CHECK(e["error"] == "convergence");
    CHECK(e["partial_value"].get<double>() > 0.2);
}

TEST_CASE("threads flag") {
    const auto a = run({"--threads", "1", "moment", "--n", "12", "--order", "4"}).doc();
    const auto b = run({"--threads", "2", "moment", "--n", "12", "--order", "4"}).doc();
    CHECK(a["value"].get<double>() == b["value"].get<double>());
}

TEST_CASE("table2 csv and manifest") {
    const auto dir = scratch_dir("table");
    const auto csv = dir / "table2.csv";
    const auto r = run({"table", "--which", "table2", "--out", csv.string()});
    REQUIRE(r.code == cli::kExitOk);
    const std::string text = slurp(csv);
    CHECK(text.rfind("k,value,abs_error,published_value,abs_diff\r\n", 0) == 0);
    CHECK(r.doc()["max_abs_diff"].get<double>() <= 1e-4);
    CHECK(r.doc()["rows"].size() == 8);

    const auto manifest = cli::read_manifest(cli::manifest_path_for(csv));
    CHECK(manifest.outputs == std::vector<std::string>{csv.string()});
    CHECK(manifest.config["which"] == "table2");
    CHECK(!manifest.versions.empty());
    CHECK(manifest.args.front() == "table");

    // Manifest JSON round trip.
    const auto again = cli::manifest_from_json(json::parse(cli::to_json(manifest).dump()));
    CHECK(again.args == manifest.args);
    CHECK(again.started == manifest.started);
    CHECK(again.config == manifest.config);
    fs::remove_all(dir);
}

TEST_CASE("replay reproduces outputs") {
    const auto dir = scratch_dir("replay");
    const auto out = dir / "m.json";
    REQUIRE(run({"moment", "--n", "20", "--order", "6", "--out", out.string()}).code == cli::kExitOk);
    auto r = run({"replay", "--manifest", cli::manifest_path_for(out).string(), "--scratch", (dir / "s1").string()});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.doc()["identical"].get<bool>());

    const auto csv = dir / "sim.csv";
    REQUIRE(run({"simulate", "--n", "6", "--fine-factor", "3", "--replicates", "300", "--seed", "9", "--out",
                 csv.string()})
                .code == cli::kExitOk);
    r = run({"replay", "--manifest", cli::manifest_path_for(csv).string(), "--scratch", (dir / "s2").string()});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.doc()["identical"].get<bool>());
    CHECK(r.doc()["files"].size() == 1);

    // A tampered output is detected.
    {
        std::ofstream f(csv, std::ios::app);
        f << "x";
    }
    r = run({"replay", "--manifest", cli::manifest_path_for(csv).string(), "--scratch", (dir / "s3").string()});
    CHECK(r.code == cli::kExitNumeric);
    CHECK_FALSE(r.doc()["identical"].get<bool>());
    fs::remove_all(dir);
}

TEST_CASE("simulate summary") {
    const auto r = run({"simulate", "--n", "10", "--fine-factor", "2", "--replicates", "4000", "--seed", "3"});
    REQUIRE(r.code == cli::kExitOk);
    const auto d = r.doc();
    CHECK(d["l1_distance"]["count"] == 4000);
    const double mean = d["B_n_mean"]["mean"].get<double>();
    const double se = d["B_n_mean"]["stderr"].get<double>();
    CHECK(std::abs(mean - 99.0 / 600.0) <= 3.0 * se);
    CHECK(d["redraws"] == 0);
}

TEST_CASE("rate") {
    const auto dir = scratch_dir("rate");
    const auto r = run({"rate", "--n-list", "10,20,40", "--replicates", "500", "--fine-factor", "2", "--out",
                        (dir / "rate.csv").string()});
    REQUIRE(r.code == cli::kExitOk);
    const auto d = r.doc();
    CHECK(d["points"].size() == 3);
    CHECK(d["slope"].get<double>() < 0.0);
    CHECK(d["C5"].get<double>() == doctest::Approx(28.681749998101715).epsilon(1e-9));
    CHECK(slurp(dir / "rate.csv").rfind("n,mean,stderr,c5_bound,allowance,within_bound\r\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("bounds") {
    const auto dir = scratch_dir("bounds");
    const auto r = run({"bounds", "--scan-max", "40", "--out", (dir / "b.json").string()});
    REQUIRE(r.code == cli::kExitOk);
    const auto report = bound_report_from_json(r.out);
    CHECK(report.C1 == doctest::Approx(10.7582578482015).epsilon(1e-10));
    CHECK(report.n_scan_max == 40);
    CHECK(report.lemma_checks.at("lemma_all"));
    CHECK(to_json(bound_report_from_json(slurp(dir / "b.json"))) + "\n" == slurp(dir / "b.json"));
    fs::remove_all(dir);
}

TEST_CASE("kernel cache directory") {
    const auto dir = scratch_dir("cache");
    ::setenv("YULE_CACHE_DIR", dir.c_str(), 1);
    const auto r = run({"charpoly", "--n", "23", "--lambda", "-2", "--backend", "spectral"});
    ::unsetenv("YULE_CACHE_DIR");
    REQUIRE(r.code == cli::kExitOk);
    CHECK(fs::exists(dir / "kernel_23.json"));
    fs::remove_all(dir);
}
