// Copyright 2026 The qre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qre/io.hpp"
#include "qre/qre.hpp"

namespace {

using nlohmann::json;
using namespace qre;

constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Global {
    std::string output_dir = ".";
    std::uint64_t seed = 42;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool degrees = false;
    std::vector<std::string> argv;
};

struct SweepArgs {
    int stage = 1;
    std::string target = "b";
    std::string config = "both";
    std::size_t grid = 41;
    double theta_min = 0.0;
    double theta_max = kPi / 2;
    std::string branch = "plus";
    std::string bob_branch = "plus";
    bool tomo = false;
    std::int64_t shots = 10000;
    std::size_t resamples = 100;
};

struct TomoArgs {
    std::string input;
    bool simulate = false;
    std::string state = "omega2x";
    double theta = kPi / 2;
    std::int64_t shots = 10000;
};

struct MziArgs {
    bool open = false;
    bool extended = false;
    bool decohere = false;
    double phi = 0.0;
    std::size_t points = mzi::kVisibilityGridPoints;
};

double to_radians(double v, const Global& g) { return g.degrees ? v * kPi / 180.0 : v; }

std::string timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path output_path(const Global& g, const std::string& name) {
    std::filesystem::path dir(g.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + g.output_dir + "': " + ec.message());
    }
    return dir / name;
}

void write_file(const Global& g, const std::string& name, const std::function<void(std::ostream&)>& body) {
    auto path = output_path(g, name);
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    body(out);
    out.flush();
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
    std::cout << "wrote " << path.string() << "\n";
}

void write_json(const Global& g, const std::string& name, const json& j) {
    write_file(g, name, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
}

void write_manifest(const Global& g, const std::string& command, const json& config) {
    json m;
    m["command"] = command;
    m["argv"] = g.argv;
    m["config"] = config;
    m["seed"] = g.seed;
    m["threads"] = g.threads;
    m["version"] = QRE_VERSION;
    m["timestamp"] = timestamp();
    write_json(g, "manifest.json", m);
}

eraser::Branch parse_branch(const std::string& s) { return s == "minus" ? eraser::Branch::minus : eraser::Branch::plus; }

eraser::Target parse_target(const std::string& s) {
    if (s == "d1") {
        return eraser::Target::d1;
    }
    if (s == "d2") {
        return eraser::Target::d2;
    }
    return eraser::Target::path_b;
}

int run_sweep(const Global& g, SweepArgs a) {
    a.theta_min = to_radians(a.theta_min, g);
    a.theta_max = to_radians(a.theta_max, g);
    if (!(a.theta_min >= 0.0 && a.theta_max <= kPi + 1e-12 && a.theta_min <= a.theta_max)) {
        throw UsageError("theta range must satisfy 0 <= theta-min <= theta-max <= pi");
    }
    a.theta_max = std::min(a.theta_max, kPi);

    std::vector<eraser::AliceConfig> configs;
    if (a.config == "Cz" || a.config == "both") {
        configs.push_back(eraser::AliceConfig::Cz);
    }
    if (a.config == "Cx" || a.config == "both") {
        configs.push_back(eraser::AliceConfig::Cx);
    }
    auto target = parse_target(a.target);
    auto grid = eraser::uniform_grid(a.theta_min, a.theta_max, a.grid);
    std::cout << "seed: " << g.seed << "\n";

    std::vector<eraser::SweepRecord> rows;
    json per_config = json::object();
    for (auto ac : configs) {
        eraser::ProtocolConfig cfg;
        cfg.alice_config = ac;
        cfg.alice_branch = parse_branch(a.branch);
        cfg.bob_branch = parse_branch(a.bob_branch);
        double best = -1.0, best_theta = 0.0;
        std::size_t impossible = 0;
        for (double theta : grid) {
            eraser::SweepRecord r;
            try {
                r = eraser::irreality_curve(cfg, a.stage, target, {theta}).front();
            } catch (const ZeroProbabilityError&) {
                double nan = std::numeric_limits<double>::quiet_NaN();
                r = {theta, a.stage, ac, target, nan, nan, nan, 0.0, std::nullopt, std::nullopt};
                ++impossible;
                rows.push_back(r);
                continue;
            }
            if (a.tomo) {
                cfg.theta = theta;
                auto bob = eraser::alice_and_bob_project(eraser::stage_from_index(a.stage), cfg);
                std::uint64_t stream = 2 * rows.size();
                auto data = tomo::simulate_counts(bob.omega, a.shots, split_seed(g.seed, stream));
                auto mc = tomo::monte_carlo_irreality(data, ObservableSpec::sigma_z(eraser::label_of(target)),
                                                      a.resamples, split_seed(g.seed, stream + 1), g.threads);
                r.irreality_tomo_mean = mc.mean;
                r.irreality_tomo_std = mc.std;
            }
            if (r.irreality_analytic > best) {
                best = r.irreality_analytic;
                best_theta = theta;
            }
            rows.push_back(r);
        }
        json c;
        c["max_irreality"] = best < 0 ? json(nullptr) : json(best);
        c["theta_at_max"] = best < 0 ? json(nullptr) : json(best_theta);
        c["zero_probability_points"] = impossible;
        per_config[eraser::to_string(ac)] = c;
        if (impossible > 0) {
            std::cerr << "warning: " << impossible << " grid point(s) have zero post-selection probability for "
                      << eraser::to_string(ac) << "\n";
        }
    }

    json config;
    config["stage"] = a.stage;
    config["target"] = a.target;
    config["config"] = a.config;
    config["grid"] = a.grid;
    config["theta_min"] = a.theta_min;
    config["theta_max"] = a.theta_max;
    config["alice_branch"] = a.branch;
    config["bob_branch"] = a.bob_branch;
    config["tomo"] = a.tomo;
    if (a.tomo) {
        config["shots"] = a.shots;
        config["resamples"] = a.resamples;
    }

    write_file(g, "sweep.csv", [&](std::ostream& os) { io::write_sweep_csv(os, rows); });
    json summary;
    summary["schema"] = "qre.sweep_summary.v1";
    summary["config"] = config;
    summary["rows"] = rows.size();
    summary["configs"] = per_config;
    write_json(g, "sweep_summary.json", summary);
    write_manifest(g, "sweep", config);
    return 0;
}

DensityMatrix named_state(const std::string& name, double theta) {
    eraser::ProtocolConfig cfg;
    cfg.theta = theta;
    cfg.validate();
    cfg.alice_config = name.back() == 'z' ? eraser::AliceConfig::Cz : eraser::AliceConfig::Cx;
    auto stage = name[5] == '1' ? eraser::Stage::Psi1 : eraser::Stage::Psi2;
    return eraser::alice_and_bob_project(stage, cfg).omega;
}

int run_tomo(const Global& g, TomoArgs a) {
    a.theta = to_radians(a.theta, g);
    if (a.simulate == !a.input.empty()) {
        throw UsageError("give exactly one of --input FILE or --simulate");
    }
    if (a.simulate && !(a.theta >= 0.0 && a.theta <= kPi)) {
        throw UsageError("--theta must lie in [0, pi]");
    }
    std::cout << "seed: " << g.seed << "\n";

    json config;
    std::vector<std::string> labels;
    auto result = [&] {
        if (a.simulate) {
            DensityMatrix truth = named_state(a.state, a.theta);
            labels = truth.reg().labels();
            config = {{"source", "simulate"}, {"state", a.state}, {"theta", a.theta}, {"shots", a.shots}};
            return tomo::tomography_end_to_end(truth, a.shots, g.seed);
        }
        auto data = io::load_dataset(a.input);
        labels = data.reg().labels();
        config = {{"source", "input"}, {"input", a.input}};
        return tomo::reconstruct(data);
    }();

    json rho;
    rho["schema"] = "qre.rho.v1";
    rho["physical"] = io::matrix_to_json(result.rho_physical.matrix(), labels);
    rho["linear"] = io::matrix_to_json(result.rho_linear, labels);
    write_json(g, "rho.json", rho);
    write_file(g, "rho_real.csv",
               [&](std::ostream& os) { io::write_matrix_csv(os, result.rho_physical.matrix(), labels.size()); });

    json report;
    report["schema"] = "qre.tomo_report.v1";
    report["labels"] = labels;
    report["purity"] = result.purity;
    report["min_linear_eigenvalue"] = result.min_linear_eigenvalue;
    report["fidelity"] = result.fidelity_to_truth ? json(*result.fidelity_to_truth) : json(nullptr);
    write_json(g, "report.json", report);
    write_manifest(g, "tomo", config);

    std::cout << "purity: " << io::format_double(result.purity) << "\n";
    if (result.fidelity_to_truth) {
        std::cout << "fidelity: " << io::format_double(*result.fidelity_to_truth) << "\n";
    }
    return 0;
}

int run_mzi(const Global& g, MziArgs a) {
    a.phi = to_radians(a.phi, g);
    if (a.points < 64) {
        throw UsageError("--points must be at least 64");
    }
    mzi::MziConfig cfg;
    cfg.phi = a.phi;
    cfg.closed = !a.open;
    cfg.extended = a.extended;
    cfg.decohere_after_first_bs = a.decohere;

    auto probs = mzi::detector_probabilities(cfg, mzi::phase_grid(a.points));
    json summary;
    summary["schema"] = "qre.mzi_summary.v1";
    summary["closed"] = cfg.closed;
    summary["extended"] = cfg.extended;
    summary["decohere"] = cfg.decohere_after_first_bs;
    summary["visibility"] = mzi::visibility(cfg);
    summary["irreality_sigma_z_at_s1"] =
        irreality_value(mzi::mzi_state({cfg.phi, cfg.closed, false, cfg.decohere_after_first_bs}, mzi::Stage::s1),
                        ObservableSpec::sigma_z(mzi::kQ));
    if (cfg.extended) {
        auto r = mzi::extended_output_analysis(cfg);
        json ext;
        ext["phi"] = cfg.phi;
        ext["postselection_probability"] = r.postselection_probability;
        ext["separable"] = r.separable;
        ext["entanglement_entropy"] = r.entanglement_entropy ? json(*r.entanglement_entropy) : json(nullptr);
        ext["mutual_information"] = r.mutual_information;
        ext["postselected_state"] = io::matrix_to_json(r.postselected_state.matrix(), {"d1", "d2"});
        summary["extended_output"] = ext;
        summary["separable"] = r.separable;
    }
    write_file(g, "mzi.csv", [&](std::ostream& os) { io::write_mzi_csv(os, probs); });
    write_json(g, "mzi_summary.json", summary);
    write_manifest(g, "mzi",
                   {{"closed", cfg.closed}, {"extended", cfg.extended}, {"decohere", cfg.decohere_after_first_bs},
                    {"phi", cfg.phi}, {"points", a.points}});
    std::cout << "visibility: " << io::format_double(summary["visibility"].get<double>()) << "\n";
    return 0;
}

int run_selftest(const Global& g) {
    struct Check {
        std::string name;
        std::function<bool()> body;
    };
    auto near = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };
    auto omega_irr = [](eraser::AliceConfig ac, eraser::Stage st, double theta, const std::string& label) {
        eraser::ProtocolConfig cfg;
        cfg.theta = theta;
        cfg.alice_config = ac;
        return irreality(eraser::alice_and_bob_project(st, cfg).omega, ObservableSpec::sigma_z(label));
    };
    const double h34 = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
    std::vector<Check> checks{
        {"entropy of diag(3/4,1/4)",
         [&] {
             Matrix m = Matrix::Zero(2, 2);
             m(0, 0) = 0.75;
             m(1, 1) = 0.25;
             return near(von_neumann_entropy(DensityMatrix(QubitRegister{"q"}, m)), h34, 1e-12);
         }},
        {"definite path has no irreality",
         [&] { return near(omega_irr(eraser::AliceConfig::Cz, eraser::Stage::Psi1, 1.0, "b").irreality, 0, 1e-9); }},
        {"maximal entanglement gives one bit",
         [&] {
             return near(omega_irr(eraser::AliceConfig::Cx, eraser::Stage::Psi1, kPi / 2, "b").irreality, 1, 1e-9);
         }},
        {"marker irreality is pure discord",
         [&] {
             auto r = omega_irr(eraser::AliceConfig::Cx, eraser::Stage::Psi2, kPi / 3, "d1");
             return near(r.irreality, h34, 1e-9) && near(r.coherence, 0, 1e-9);
         }},
        {"interferometer visibilities",
         [&] {
             return near(mzi::visibility({0, true, false, false}), 1, 1e-12) &&
                    near(mzi::visibility({0, false, false, false}), 0, 1e-12);
         }},
        {"decohered markers are separable",
         [&] { return mzi::extended_output_analysis({0, true, true, true}).separable; }},
        {"tomography recovers a protocol state",
         [&] {
             eraser::ProtocolConfig cfg;
             auto truth = eraser::alice_and_bob_project(eraser::Stage::Psi2, cfg).omega;
             return *tomo::tomography_end_to_end(truth, 100000, g.seed).fidelity_to_truth >= 0.99;
         }},
    };
    std::cout << "seed: " << g.seed << "\n";
    int failed = 0;
    for (const auto& c : checks) {
        bool ok = false;
        try {
            ok = c.body();
        } catch (const std::exception& e) {
            std::cout << "  error: " << e.what() << "\n";
        }
        std::cout << (ok ? "PASS " : "FAIL ") << c.name << "\n";
        failed += ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Global g;
    g.argv.assign(argv, argv + argc);
    SweepArgs sweep;
    TomoArgs tomo_args;
    MziArgs mzi_args;

    CLI::App app{"Quantum realism and eraser toolkit"};
    app.set_version_flag("--version", QRE_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("-o,--output-dir", g.output_dir, "Directory for output files")->envname("QRE_OUTPUT_DIR");
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads")->envname("QRE_THREADS")->check(CLI::PositiveNumber);
    app.add_flag("--degrees", g.degrees, "Read angles in degrees");

    auto* s = app.add_subcommand("sweep", "Irreality versus theta");
    s->add_option("--stage", sweep.stage, "Protocol stage")->check(CLI::IsMember({1, 2}))->capture_default_str();
    s->add_option("--target", sweep.target, "Measured subsystem")->check(CLI::IsMember({"b", "d1", "d2"}));
    s->add_option("--config", sweep.config, "Alice's configuration")->check(CLI::IsMember({"Cz", "Cx", "both"}));
    s->add_option("--grid", sweep.grid, "Number of theta points")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--theta-min", sweep.theta_min, "Lower end of the theta range");
    s->add_option("--theta-max", sweep.theta_max, "Upper end of the theta range");
    s->add_option("--branch", sweep.branch, "Alice's outcome")->check(CLI::IsMember({"plus", "minus"}));
    s->add_option("--bob-branch", sweep.bob_branch, "Bob's outcome")->check(CLI::IsMember({"plus", "minus"}));
    s->add_flag("--tomo", sweep.tomo, "Add simulated tomography with Monte Carlo error bars");
    s->add_option("--shots", sweep.shots, "Shots per setting")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--resamples", sweep.resamples, "Monte Carlo resamples")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
        ->capture_default_str();

    auto* t = app.add_subcommand("tomo", "State reconstruction");
    auto* in = t->add_option("--input", tomo_args.input, "Dataset JSON file");
    auto* sim = t->add_flag("--simulate", tomo_args.simulate, "Simulate counts for a protocol state");
    in->excludes(sim);
    t->add_option("--state", tomo_args.state, "Protocol state")
        ->check(CLI::IsMember({"omega1z", "omega1x", "omega2z", "omega2x"}));
    t->add_option("--theta", tomo_args.theta, "Preparation angle");
    t->add_option("--shots", tomo_args.shots, "Shots per setting")->check(CLI::PositiveNumber)->capture_default_str();

    auto* m = app.add_subcommand("mzi", "Mach-Zehnder interferometer");
    auto* closed = m->add_flag("--closed", "Second beam splitter in place (default)");
    auto* open = m->add_flag("--open", mzi_args.open, "Remove the second beam splitter");
    closed->excludes(open);
    m->add_flag("--extended", mzi_args.extended, "Add which-path markers");
    m->add_flag("--decohere", mzi_args.decohere, "Dephase after the first beam splitter");
    m->add_option("--phi", mzi_args.phi, "Phase for the extended output analysis");
    m->add_option("--points", mzi_args.points, "Phase grid size")->capture_default_str();

    auto* st = app.add_subcommand("selftest", "Run built-in consistency checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (s->parsed()) {
            return run_sweep(g, sweep);
        }
        if (t->parsed()) {
            return run_tomo(g, tomo_args);
        }
        if (m->parsed()) {
            return run_mzi(g, mzi_args);
        }
        if (st->parsed()) {
            return run_selftest(g);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
