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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "manifest.hpp"
#include "yule/bounds.hpp"
#include "yule/errors.hpp"
#include "yule/kernel.hpp"
#include "yule/kernel_io.hpp"
#include "yule/mgf.hpp"
#include "yule/moments.hpp"
#include "yule/montecarlo.hpp"
#include "yule/parallel.hpp"

namespace yule::cli {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Published six-decimal values of E[theta_n^2] and of the even moments of theta_50.
const std::vector<std::pair<int, double>> kTable1 = {
    {2, 1.000000},    {5, 0.341109},    {10, 0.265140},   {20, 0.246645},
    {50, 0.241501},   {100, 0.240767},  {200, 0.240584},  {500, 0.240532},
    {1000, 0.240525}, {2000, 0.240523}, {5000, 0.240523},
};
constexpr double kTable1Continuous = 0.240523;
const std::vector<std::pair<int, double>> kTable2 = {
    {2, 0.241501},  {4, 0.109961},  {6, 0.061465},  {8, 0.038257},
    {10, 0.025485}, {12, 0.017803}, {14, 0.012885}, {16, 0.009586},
};

std::string fmt17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Session {
public:
    Session(const std::vector<std::string>& args, std::ostream& out) : out_(out) {
        manifest_.args = args;
        manifest_.command_line = join_command_line(args);
        manifest_.versions = version_string();
        manifest_.started = utc_timestamp();
    }

    RunManifest& manifest() { return manifest_; }

    void print(const ojson& doc) { out_ << doc.dump() << '\n'; }

    void write_file(const std::string& path, const std::string& content) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path);
        f << content;
        f.close();
        if (!f) throw std::runtime_error("failed writing " + path);
        manifest_.outputs.push_back(path);
    }

    /// Writes the manifest to manifest_path, or next to the first output.
    void finish(const std::string& manifest_path) {
        manifest_.finished = utc_timestamp();
        fs::path target;
        if (!manifest_path.empty())
            target = manifest_path;
        else if (!manifest_.outputs.empty())
            target = manifest_path_for(manifest_.outputs.front());
        else
            return;
        write_manifest(manifest_, target);
    }

private:
    std::ostream& out_;
    RunManifest manifest_;
};

ojson moment_json(const MomentRequest& req, const MomentResult& r) {
    ojson doc;
    doc["schema"] = "yule/1";
    doc["kind"] = "moment";
    if (req.n)
        doc["n"] = *req.n;
    else
        doc["n"] = nullptr;
    doc["continuous"] = !req.n.has_value();
    doc["order"] = req.m;
    doc["value"] = r.value;
    doc["abs_error_estimate"] = r.abs_error_estimate;
    doc["cells_used"] = r.cells_used;
    doc["backend"] = std::string(to_string(r.backend));
    doc["exact"] = r.exact;
    return doc;
}

ojson estimate_json(const MeanEstimate& e) { return ojson{{"mean", e.mean}, {"stderr", e.stderr}, {"count", e.count}}; }

// Options shared by every subcommand.
struct OutputOptions {
    std::string out;
    std::string manifest;
};

void add_output_options(CLI::App* cmd, OutputOptions& o, const std::string& out_help) {
    cmd->add_option("--out", o.out, out_help);
    cmd->add_option("--manifest", o.manifest, "Manifest path (default: <out>.manifest.json)");
}

// ---------------------------------------------------------------------------

struct MomentOptions {
    std::optional<int> n;
    bool continuous = false;
    int order = 2;
    double rel_tol = 1e-7;
    long max_cells = 2'000'000;
    std::string backend = "series";
    bool allow_high_order = false;
    OutputOptions io;
};

int cmd_moment(Session& s, const MomentOptions& o) {
    if (o.n.has_value() == o.continuous) throw std::invalid_argument("give exactly one of --n or --continuous");
    MomentRequest req;
    req.n = o.continuous ? std::nullopt : o.n;
    req.m = o.order;
    req.rel_tol = o.rel_tol;
    req.max_subdivisions = o.max_cells;
    req.backend = moment_backend_from_string(o.backend);
    req.allow_high_order = o.allow_high_order;
    s.manifest().config = {{"command", "moment"},  {"n", o.n ? ojson(*o.n) : ojson(nullptr)},
                           {"continuous", o.continuous}, {"order", o.order},
                           {"rel_tol", o.rel_tol},    {"max_cells", o.max_cells},
                           {"backend", o.backend}};
    const ojson doc = moment_json(req, moment(req));
    s.print(doc);
    if (!o.io.out.empty()) s.write_file(o.io.out, doc.dump(2) + "\n");
    s.finish(o.io.manifest);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct TableOptions {
    std::string which = "table1";
    double rel_tol = 1e-7;
    OutputOptions io;
};

int cmd_table(Session& s, const TableOptions& o) {
    if (o.which != "table1" && o.which != "table2") throw std::invalid_argument("--which must be table1 or table2");
    s.manifest().config = {{"command", "table"}, {"which", o.which}, {"rel_tol", o.rel_tol}};
    std::ostringstream csv;
    ojson rows = ojson::array();
    double max_diff = 0.0;
    auto add_row = [&](const std::string& key, const std::string& label, const MomentResult& r, double published) {
        const double diff = std::fabs(r.value - published);
        max_diff = std::max(max_diff, diff);
        csv << label << ',' << fmt17(r.value) << ',' << fmt17(r.abs_error_estimate) << ',' << fmt17(published) << ','
            << fmt17(diff) << "\r\n";
        rows.push_back({{key, label}, {"value", r.value}, {"abs_error", r.abs_error_estimate},
                        {"published_value", published}, {"abs_diff", diff}});
    };
    if (o.which == "table1") {
        csv << "n,value,abs_error,published_value,abs_diff\r\n";
        for (const auto& [n, published] : kTable1) {
            MomentRequest req;
            req.n = n;
            req.rel_tol = o.rel_tol;
            add_row("n", std::to_string(n), moment(req), published);
        }
        MomentRequest req;
        req.rel_tol = o.rel_tol;
        add_row("n", "inf", moment(req), kTable1Continuous);
    } else {
        csv << "k,value,abs_error,published_value,abs_diff\r\n";
        for (const auto& [k, published] : kTable2) {
            MomentRequest req;
            req.n = 50;
            req.m = k;
            req.rel_tol = o.rel_tol;
            add_row("k", std::to_string(k), moment(req), published);
        }
    }
    if (o.io.out.empty()) {
        s.print({{"schema", "yule/1"}, {"kind", "table"}, {"which", o.which}, {"rows", rows}, {"max_abs_diff", max_diff}});
    } else {
        s.write_file(o.io.out, csv.str());
        s.print({{"schema", "yule/1"},
                 {"kind", "table"},
                 {"which", o.which},
                 {"out", o.io.out},
                 {"rows", rows},
                 {"max_abs_diff", max_diff}});
    }
    s.finish(o.io.manifest);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimOptions {
    int n = 10;
    int fine_factor = 200;
    long replicates = 10000;
    std::uint64_t seed = 1;
    bool antithetic = false;
    OutputOptions io;
};

int cmd_simulate(Session& s, const SimOptions& o) {
    SimConfig cfg{o.n, o.fine_factor, o.replicates, o.seed, o.antithetic};
    validate(cfg);
    s.manifest().seed = o.seed;
    s.manifest().config = {{"command", "simulate"},         {"n", o.n},
                           {"fine_factor", o.fine_factor}, {"replicates", o.replicates},
                           {"seed", o.seed},               {"antithetic", o.antithetic}};
    long redraws = 0;
    const auto est = estimate_means(
        cfg,
        {
            [](const CoupledSample& c) { return std::fabs(c.theta_n - c.theta_hat); },
            [](const CoupledSample& c) { return (c.A_n - c.A_hat) * (c.A_n - c.A_hat); },
            [](const CoupledSample& c) { return (c.B_n - c.B_hat) * (c.B_n - c.B_hat); },
            [](const CoupledSample& c) { return (c.C_n - c.C_hat) * (c.C_n - c.C_hat); },
            [](const CoupledSample& c) { return c.A_n * c.A_n; },
            [](const CoupledSample& c) { return c.B_n; },
            [](const CoupledSample& c) { return c.theta_n * c.theta_n; },
            [](const CoupledSample& c) { return c.theta_hat * c.theta_hat; },
        },
        &redraws);
    ojson doc;
    doc["schema"] = "yule/1";
    doc["kind"] = "simulate";
    doc["n"] = o.n;
    doc["fine_factor"] = o.fine_factor;
    doc["replicates"] = o.replicates;
    doc["seed"] = o.seed;
    doc["antithetic"] = o.antithetic;
    doc["l1_distance"] = estimate_json(est[0]);
    doc["var_A"] = estimate_json(est[1]);
    doc["var_B"] = estimate_json(est[2]);
    doc["var_C"] = estimate_json(est[3]);
    doc["A_n_second_moment"] = estimate_json(est[4]);
    doc["B_n_mean"] = estimate_json(est[5]);
    doc["theta_n_second_moment"] = estimate_json(est[6]);
    doc["theta_hat_second_moment"] = estimate_json(est[7]);
    doc["redraws"] = redraws;
    if (!o.io.out.empty()) {
        std::ostringstream csv;
        write_samples_csv(csv, cfg);
        s.write_file(o.io.out, csv.str());
        doc["out"] = o.io.out;
    }
    s.print(doc);
    s.finish(o.io.manifest);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct RateOptions {
    std::vector<int> n_list = {50, 100, 200, 400, 800};
    int fine_factor = 20;
    long replicates = 20000;
    std::uint64_t seed = 1;
    double slope_lo = -1.15;
    double slope_hi = -0.85;
    OutputOptions io;
};

int cmd_rate(Session& s, const RateOptions& o) {
    s.manifest().seed = o.seed;
    s.manifest().config = {{"command", "rate"}, {"n_list", o.n_list},   {"fine_factor", o.fine_factor},
                           {"replicates", o.replicates}, {"seed", o.seed}};
    const double C5 = compute_C5(compute_Cm(1), compute_Cm(3), compute_C4().envelope);
    SimConfig base;
    base.fine_factor = o.fine_factor;
    base.replicates = o.replicates;
    base.seed = o.seed;
    const RateStudy study = rate_study(o.n_list, base, C5);
    ojson points = ojson::array();
    std::ostringstream csv;
    csv << "n,mean,stderr,c5_bound,allowance,within_bound\r\n";
    bool all_within = true;
    for (const auto& p : study.points) {
        points.push_back({{"n", p.n},
                          {"mean", p.l1.mean},
                          {"stderr", p.l1.stderr},
                          {"c5_bound", p.bound},
                          {"allowance", p.allowance},
                          {"within_bound", p.within_bound}});
        csv << p.n << ',' << fmt17(p.l1.mean) << ',' << fmt17(p.l1.stderr) << ',' << fmt17(p.bound) << ','
            << fmt17(p.allowance) << ',' << (p.within_bound ? "true" : "false") << "\r\n";
        all_within = all_within && p.within_bound;
    }
    ojson doc;
    doc["schema"] = "yule/1";
    doc["kind"] = "rate";
    doc["C5"] = C5;
    doc["slope"] = study.slope;
    doc["slope_stderr"] = study.slope_stderr;
    doc["intercept"] = study.intercept;
    doc["slope_in_range"] = study.slope >= o.slope_lo && study.slope <= o.slope_hi;
    doc["all_within_bound"] = all_within;
    doc["points"] = points;
    if (!o.io.out.empty()) {
        s.write_file(o.io.out, csv.str());
        doc["out"] = o.io.out;
    }
    s.print(doc);
    s.finish(o.io.manifest);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct BoundsOptions {
    int scan_max = 500;
    double rel_tol = 1e-10;
    OutputOptions io;
};

int cmd_bounds(Session& s, const BoundsOptions& o) {
    s.manifest().config = {{"command", "bounds"}, {"scan_max", o.scan_max}, {"rel_tol", o.rel_tol}};
    const BoundReport report = compute_bound_report(o.scan_max, o.rel_tol);
    const std::string text = to_json(report);
    s.print(ojson::parse(text));
    if (!o.io.out.empty()) s.write_file(o.io.out, text + "\n");
    s.finish(o.io.manifest);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct CharpolyOptions {
    int n = 2;
    double lambda = 0.0;
    std::string backend = "explicit";
    OutputOptions io;
};

int cmd_charpoly(Session& s, const CharpolyOptions& o) {
    s.manifest().config = {{"command", "charpoly"}, {"n", o.n}, {"lambda", o.lambda}, {"backend", o.backend}};
    double value;
    if (o.backend == "explicit")
        value = dn_explicit(o.n, o.lambda);
    else if (o.backend == "oracle")
        value = dn_oracle(o.n, o.lambda);
    else if (o.backend == "spectral")
        value = dn_spectral(*shared_kernel(o.n, BuildMode::spectral), o.lambda);
    else
        throw std::invalid_argument("--backend must be explicit, oracle or spectral");
    ojson doc;
    doc["schema"] = "yule/1";
    doc["kind"] = "charpoly";
    doc["n"] = o.n;
    doc["lambda"] = o.lambda;
    doc["backend"] = o.backend;
    doc["value"] = value;
    if (o.lambda <= 0.0) doc["derivative"] = dn_neg_prime(o.n, -o.lambda);
    s.print(doc);
    if (!o.io.out.empty()) s.write_file(o.io.out, doc.dump(2) + "\n");
    s.finish(o.io.manifest);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct MgfOptions {
    std::optional<int> n;
    bool continuous = false;
    double s11 = 0.0, s12 = 0.0, s22 = 0.0;
    std::string backend = "charpoly";
    OutputOptions io;
};

int cmd_mgf(Session& s, const MgfOptions& o) {
    if (o.n.has_value() == o.continuous) throw std::invalid_argument("give exactly one of --n or --continuous");
    s.manifest().config = {{"command", "mgf"}, {"n", o.n ? ojson(*o.n) : ojson(nullptr)}, {"continuous", o.continuous},
                           {"s11", o.s11},     {"s12", o.s12},   {"s22", o.s22},   {"backend", o.backend}};
    const MgfPoint p{o.s11, o.s12, o.s22};
    const AlphaBeta ab = alpha_beta(p);
    double value;
    if (o.continuous)
        value = phi_continuous(p);
    else if (o.backend == "charpoly")
        value = phi_n(*o.n, p);
    else if (o.backend == "spectral")
        value = phi_n_spectral(*shared_kernel(*o.n), p);
    else
        throw std::invalid_argument("--backend must be charpoly or spectral");
    ojson doc;
    doc["schema"] = "yule/1";
    doc["kind"] = "mgf";
    doc["n"] = o.n ? ojson(*o.n) : ojson(nullptr);
    doc["continuous"] = o.continuous;
    doc["s11"] = o.s11;
    doc["s12"] = o.s12;
    doc["s22"] = o.s22;
    doc["alpha"] = ab.alpha;
    doc["beta"] = ab.beta;
    doc["value"] = value;
    s.print(doc);
    if (!o.io.out.empty()) s.write_file(o.io.out, doc.dump(2) + "\n");
    s.finish(o.io.manifest);
    return kExitOk;
}

// ---------------------------------------------------------------------------

bool same_bytes(const fs::path& a, const fs::path& b) {
    std::ifstream fa(a, std::ios::binary);
    std::ifstream fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    return std::equal(std::istreambuf_iterator<char>(fa), std::istreambuf_iterator<char>(),
                      std::istreambuf_iterator<char>(fb), std::istreambuf_iterator<char>());
}

struct ReplayOptions {
    std::string manifest;
    std::string scratch;
};

int cmd_replay(const ReplayOptions& o, std::ostream& out, std::ostream& err) {
    const RunManifest m = read_manifest(o.manifest);
    if (!m.args.empty() && m.args.front() == "replay") throw std::invalid_argument("cannot replay a replay");
    fs::path scratch = o.scratch;
    if (scratch.empty()) {
        std::random_device rd;
        scratch = fs::temp_directory_path() / ("yule-replay-" + std::to_string(rd()));
    }
    fs::create_directories(scratch);

    // Redirect every output of the recorded run into the scratch directory.
    std::vector<std::string> args;
    std::vector<std::pair<fs::path, fs::path>> pairs;
    for (std::size_t i = 0; i < m.args.size(); ++i) {
        const std::string& a = m.args[i];
        auto redirect = [&](const std::string& path) {
            const fs::path target = scratch / (std::to_string(pairs.size()) + "_" + fs::path(path).filename().string());
            pairs.emplace_back(path, target);
            return target.string();
        };
        if ((a == "--out" || a == "--manifest") && i + 1 < m.args.size()) {
            args.push_back(a);
            const std::string target = redirect(m.args[++i]);
            if (a == "--out") args.push_back(target);
            else args.push_back((scratch / "replay.manifest.json").string());
            if (a == "--manifest") pairs.pop_back();
        } else if (a.rfind("--out=", 0) == 0) {
            args.push_back("--out=" + redirect(a.substr(6)));
        } else if (a.rfind("--manifest=", 0) == 0) {
            args.push_back("--manifest=" + (scratch / "replay.manifest.json").string());
        } else {
            args.push_back(a);
        }
    }
    std::ostringstream replay_out;
    const int code = run_cli(args, replay_out, err);
    ojson files = ojson::array();
    bool identical = code == kExitOk;
    for (const auto& [original, replayed] : pairs) {
        const bool same = same_bytes(original, replayed);
        identical = identical && same;
        files.push_back({{"original", original.string()}, {"replayed", replayed.string()}, {"identical", same}});
    }
    ojson doc;
    doc["schema"] = "yule/1";
    doc["kind"] = "replay";
    doc["manifest"] = o.manifest;
    doc["exit_code"] = code;
    doc["identical"] = identical;
    doc["files"] = files;
    doc["stdout"] = replay_out.str();
    out << doc.dump() << '\n';
    return identical ? kExitOk : kExitNumeric;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moments of the nonsense correlation of two independent random walks"};
    app.name("yule");
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "Cap on worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);

    MomentOptions mo;
    auto* moment_cmd = app.add_subcommand("moment", "E[theta_n^m] or the continuous-limit moment");
    auto* mo_n = moment_cmd->add_option("--n", mo.n, "Walk length (>= 2)");
    moment_cmd->add_flag("--continuous", mo.continuous, "Continuous limit")->excludes(mo_n);
    moment_cmd->add_option("--order", mo.order, "Moment order m");
    moment_cmd->add_option("--rel-tol", mo.rel_tol, "Relative tolerance of the cubature");
    moment_cmd->add_option("--max-cells", mo.max_cells, "Cubature cell budget");
    moment_cmd->add_option("--backend", mo.backend, "series or closed")->check(CLI::IsMember({"series", "closed", "series_spectral", "closed_form_theorem2"}));
    moment_cmd->add_flag("--allow-high-order", mo.allow_high_order, "Permit m > 16");
    add_output_options(moment_cmd, mo.io, "Also write the JSON result here");

    TableOptions to;
    auto* table_cmd = app.add_subcommand("table", "Regenerate the E[theta_n^2] or theta_50 moment table");
    table_cmd->add_option("--which", to.which, "table1 or table2")->check(CLI::IsMember({"table1", "table2"}));
    table_cmd->add_option("--rel-tol", to.rel_tol, "Relative tolerance of the cubature");
    add_output_options(table_cmd, to.io, "CSV output");

    SimOptions so;
    auto* sim_cmd = app.add_subcommand("simulate", "Coupled Monte Carlo of (theta_n, theta)");
    sim_cmd->add_option("--n", so.n, "Walk length")->required();
    sim_cmd->add_option("--fine-factor", so.fine_factor, "Fine grid factor L (N = L n)");
    sim_cmd->add_option("--replicates", so.replicates, "Replicates R");
    sim_cmd->add_option("--seed", so.seed, "RNG seed");
    sim_cmd->add_flag("--antithetic", so.antithetic, "Pair replicates with W2 negated");
    add_output_options(sim_cmd, so.io, "Per-replicate CSV");

    RateOptions ro;
    auto* rate_cmd = app.add_subcommand("rate", "Empirical convergence rate of E|theta_n - theta|");
    rate_cmd->add_option("--n-list", ro.n_list, "Comma-separated walk lengths")->delimiter(',');
    rate_cmd->add_option("--fine-factor", ro.fine_factor, "Fine grid factor L");
    rate_cmd->add_option("--replicates", ro.replicates, "Replicates per n");
    rate_cmd->add_option("--seed", ro.seed, "RNG seed");
    add_output_options(rate_cmd, ro.io, "CSV of per-n estimates");

    BoundsOptions bo;
    auto* bounds_cmd = app.add_subcommand("bounds", "Constants C1..C5 and the d_n lower-bound checks");
    bounds_cmd->add_option("--scan-max", bo.scan_max, "Largest n in the E[B_n^-1] scan");
    bounds_cmd->add_option("--rel-tol", bo.rel_tol, "Relative tolerance of the 1-D integrals");
    add_output_options(bounds_cmd, bo.io, "JSON report");

    CharpolyOptions co;
    auto* charpoly_cmd = app.add_subcommand("charpoly", "d_n(lambda) = det(I - lambda K_n)");
    charpoly_cmd->add_option("--n", co.n, "Walk length")->required();
    charpoly_cmd->add_option("--lambda", co.lambda, "Argument")->required();
    charpoly_cmd->add_option("--backend", co.backend, "explicit, oracle or spectral")->check(CLI::IsMember({"explicit", "oracle", "spectral"}));
    add_output_options(charpoly_cmd, co.io, "Also write the JSON result here");

    MgfOptions go;
    auto* mgf_cmd = app.add_subcommand("mgf", "Joint mgf of (Z11, Z12, Z22)");
    auto* go_n = mgf_cmd->add_option("--n", go.n, "Walk length");
    mgf_cmd->add_flag("--continuous", go.continuous, "Continuous limit")->excludes(go_n);
    mgf_cmd->add_option("--s11", go.s11, "s11 >= 0");
    mgf_cmd->add_option("--s12", go.s12, "s12 with s12^2 <= s11 s22");
    mgf_cmd->add_option("--s22", go.s22, "s22 >= 0");
    mgf_cmd->add_option("--backend", go.backend, "charpoly or spectral")->check(CLI::IsMember({"charpoly", "spectral"}));
    add_output_options(mgf_cmd, go.io, "Also write the JSON result here");

    ReplayOptions po;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a manifest and compare its outputs byte for byte");
    replay_cmd->add_option("--manifest", po.manifest, "Manifest file")->required();
    replay_cmd->add_option("--scratch", po.scratch, "Directory for the replayed outputs");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    const int previous_cap = thread_cap();
    if (threads > 0) set_max_threads(threads);
    Session session(args, out);
    int code = kExitOk;
    try {
        if (moment_cmd->parsed()) code = cmd_moment(session, mo);
        else if (table_cmd->parsed()) code = cmd_table(session, to);
        else if (sim_cmd->parsed()) code = cmd_simulate(session, so);
        else if (rate_cmd->parsed()) code = cmd_rate(session, ro);
        else if (bounds_cmd->parsed()) code = cmd_bounds(session, bo);
        else if (charpoly_cmd->parsed()) code = cmd_charpoly(session, co);
        else if (mgf_cmd->parsed()) code = cmd_mgf(session, go);
        else if (replay_cmd->parsed()) code = cmd_replay(po, out, err);
    } catch (const ConvergenceError& e) {
        err << ojson{{"schema", "yule/1"}, {"kind", "error"}, {"error", "convergence"}, {"message", e.what()},
                     {"partial_value", e.value()}, {"abs_error", e.abs_error()}, {"cells", e.cells()}}
                   .dump()
            << '\n';
        code = kExitNumeric;
    } catch (const DivergenceError& e) {
        err << ojson{{"schema", "yule/1"}, {"kind", "error"}, {"error", "divergence"}, {"message", e.what()}}.dump() << '\n';
        code = kExitNumeric;
    } catch (const NumericError& e) {
        err << ojson{{"schema", "yule/1"}, {"kind", "error"}, {"error", "numeric"}, {"message", e.what()}}.dump() << '\n';
        code = kExitNumeric;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n' << app.help();
        code = kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n' << app.help();
        code = kExitUsage;
    } catch (const std::exception& e) {
        err << ojson{{"schema", "yule/1"}, {"kind", "error"}, {"error", "runtime"}, {"message", e.what()}}.dump() << '\n';
        code = kExitNumeric;
    }
    set_max_threads(previous_cap);
    return code;
}

}  // namespace yule::cli
