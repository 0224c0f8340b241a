// phasembed command-line tool: dataset generation, dynamical analysis,
// phase-space embedding, forecasting benchmarks, and theory verification.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
// 3 numerical divergence, 4 data too short.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phasembed/core/linalg.hpp"
#include "phasembed/core/rng.hpp"
#include "phasembed/core/types.hpp"
#include "phasembed/dynamics/analyze.hpp"
#include "phasembed/dynamics/dimension.hpp"
#include "phasembed/dynamics/lyapunov.hpp"
#include "phasembed/dynamics/spectrum.hpp"
#include "phasembed/embed/embedding.hpp"
#include "phasembed/experiments/forecast.hpp"
#include "phasembed/experiments/verify.hpp"
#include "phasembed/io/csv.hpp"
#include "phasembed/io/report_json.hpp"
#include "phasembed/synth/generators.hpp"
#include "phasembed/synth/ode.hpp"

namespace {

namespace core = phasembed::core;
namespace synth = phasembed::synth;
namespace dynamics = phasembed::dynamics;
namespace embed = phasembed::embed;
namespace experiments = phasembed::experiments;
namespace io = phasembed::io;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitTooShort = 4;

int exit_code_for(const core::Error& e) {
    switch (e.code()) {
        case core::Errc::Diverged:
        case core::Errc::Singular:
        case core::Errc::NotSymmetric:
        case core::Errc::IllConditioned:
            return kExitDiverged;
        case core::Errc::TooShort:
        case core::Errc::LengthMismatch:
        case core::Errc::NoNeighbors:
        case core::Errc::ChannelMismatch:
        case core::Errc::Flat:
            return kExitTooShort;
        default:
            return kExitUsage;
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PHASEMBED_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring non-numeric PHASEMBED_SEED\n";
        }
    }
    return 0;
}

core::PaddingMode parse_padding(const std::string& name) {
    if (name == "left-zero") return core::PaddingMode::LeftZero;
    if (name == "right-zero") return core::PaddingMode::RightZero;
    if (name == "left-repeat") return core::PaddingMode::LeftRepeat;
    if (name == "right-repeat") return core::PaddingMode::RightRepeat;
    throw core::Error(core::Errc::BadConfig, "unknown padding mode " + name);
}

core::Method parse_method(const std::string& name) {
    if (name == "td") return core::Method::TD;
    if (name == "hd") return core::Method::HD;
    if (name == "id") return core::Method::ID;
    if (name == "pc") return core::Method::PC;
    throw core::Error(core::Errc::BadConfig, "unknown method " + name);
}

std::string channel_suffixed_path(const std::string& path, std::size_t channel) {
    const std::filesystem::path p(path);
    std::filesystem::path out = p.parent_path() / p.stem();
    out += "_ch" + std::to_string(channel);
    out += p.extension();
    return out.string();
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string system;
    double omega = 1.0, amplitude = 1.0, phase = 0.0;
    double sigma = 10.0, rho = 28.0, beta = 8.0 / 3.0;
    double ra = 0.2, rb = 0.2, rc = 5.7;
    double tau_mg = 17.0;
    double dt = 0.01;
    std::size_t len = 1000;
    double snr_db = synth::kNoiselessSnrDb;
    std::uint64_t seed = 0;
    std::string out;
};

int run_generate(const GenerateArgs& args) {
    core::TimeSeries ts;
    if (args.system == "sine") {
        ts = synth::make_sine(args.omega, args.amplitude, args.phase, args.dt, args.len);
    } else if (args.system == "lorenz") {
        ts = synth::make_lorenz(args.dt, args.len, args.seed, args.sigma, args.rho, args.beta);
    } else if (args.system == "rossler") {
        ts = synth::make_rossler(args.dt, args.len, args.seed, args.ra, args.rb, args.rc);
    } else if (args.system == "mackey-glass") {
        ts = synth::make_mackey_glass(args.dt, args.len, args.seed, args.tau_mg);
    } else {
        throw core::Error(core::Errc::BadConfig, "unknown system " + args.system);
    }
    if (!(std::isinf(args.snr_db) && args.snr_db > 0))
        ts = synth::add_noise(ts, args.snr_db, args.seed + 1);
    io::write_series_csv(ts, args.out);
    std::cerr << "wrote " << ts.channels() << " channel(s) x " << ts.length() << " samples to "
              << args.out << "\n";
    return 0;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string in, out;
    dynamics::AnalyzeOptions options;
};

int run_analyze(const AnalyzeArgs& args) {
    const core::TimeSeries ts = io::read_series_csv(args.in);
    const dynamics::DynamicsReport report = dynamics::analyze(ts, args.options);
    io::write_file_atomic(args.out, io::report_to_json(report));
    std::cerr << "strategy " << (report.strategy == core::ChannelStrategy::CD ? "CD" : "CI")
              << " (" << report.rationale << ")\n";
    return 0;
}

// ------------------------------------------------------------------- embed

struct EmbedArgs {
    std::string in, out;
    std::string method = "td";
    std::optional<int> m, tau, delta, k;
    bool auto_params = false;
    int patch = 16, stride = 8;
    std::string padding = "left-zero";
    std::string strategy = "ci";
};

core::EmbeddingConfig resolve_config(const EmbedArgs& args, const core::TimeSeries& ts,
                                     nlohmann::ordered_json* sidecar) {
    core::EmbeddingConfig cfg;
    cfg.method = parse_method(args.method);
    cfg.patch_len = args.patch;
    cfg.stride = args.stride;
    cfg.padding = parse_padding(args.padding);
    cfg.strategy = args.strategy == "cd" ? core::ChannelStrategy::CD : core::ChannelStrategy::CI;

    // Method defaults: HD (3,1) and ID (1); TD/PC take theirs from flags or
    // the analyze pipeline below.
    cfg.m = 3;
    cfg.delta = 1;
    cfg.tau = 1;

    if (args.auto_params &&
        (cfg.method == core::Method::TD || cfg.method == core::Method::PC)) {
        dynamics::AnalyzeOptions options;
        const dynamics::DynamicsReport report = dynamics::analyze(ts, options);
        const dynamics::ChannelDiagnostics& lead = report.channels.front();
        if (!lead.has_tau)
            throw core::Error(core::Errc::Flat,
                              "auto hyper-parameters unavailable: " +
                                  (lead.warnings.empty() ? "no period" : lead.warnings.front()));
        cfg.tau = lead.tau_samples;
        if (lead.has_m) cfg.m = lead.m_cc;
        std::cerr << "auto: tau=" << cfg.tau << " m=" << cfg.m << " (channel "
                  << lead.name << ")\n";
        if (sidecar != nullptr) {
            (*sidecar)["auto"] = {{"tau", cfg.tau}, {"m", cfg.m}, {"channel", lead.name}};
        }
    }

    if (args.m) {
        if (cfg.method == core::Method::ID)
            std::cerr << "warning: --m ignored for id (dimension fixed at 3)\n";
        else
            cfg.m = *args.m;
    }
    if (args.tau) cfg.tau = *args.tau;
    if (args.delta) cfg.delta = *args.delta;
    cfg.k = args.k ? *args.k : cfg.m;  // PC defaults to the full basis

    cfg.validate();
    if (sidecar != nullptr) {
        (*sidecar)["config"] = {{"method", core::method_name(cfg.method)},
                                {"m", cfg.m},
                                {"tau", cfg.tau},
                                {"delta", cfg.delta},
                                {"k", cfg.k},
                                {"patch", cfg.patch_len},
                                {"stride", cfg.stride},
                                {"padding", core::padding_name(cfg.padding)},
                                {"strategy", cfg.strategy == core::ChannelStrategy::CD ? "cd" : "ci"}};
    }
    return cfg;
}

int run_embed(const EmbedArgs& args) {
    const core::TimeSeries ts = io::read_series_csv(args.in);
    nlohmann::ordered_json sidecar;
    const core::EmbeddingConfig cfg = resolve_config(args, ts, &sidecar);

    const std::vector<core::TokenMatrix> outputs = embed::embed_series(ts, cfg);
    if (cfg.strategy == core::ChannelStrategy::CD || outputs.size() == 1) {
        io::write_tokens_csv(outputs.front(), args.out);
        std::cerr << "wrote " << outputs.front().count() << " tokens x "
                  << outputs.front().width() << " to " << args.out << "\n";
    } else {
        for (std::size_t c = 0; c < outputs.size(); ++c) {
            const std::string path = channel_suffixed_path(args.out, c);
            io::write_tokens_csv(outputs[c], path);
            std::cerr << "wrote " << outputs[c].count() << " tokens x " << outputs[c].width()
                      << " to " << path << "\n";
        }
    }
    if (args.auto_params)
        io::write_file_atomic(args.out + ".auto.json", sidecar.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
    EmbedArgs embed;
    int horizon = 5;
    double lambda = 1e-3;
    double split = 0.7;
    std::size_t channel = 0;
    std::vector<int> dims;
    std::string out = "bench.csv";
    std::string sweep_out;
};

int run_bench(const BenchArgs& args) {
    const core::TimeSeries ts = io::read_series_csv(args.embed.in);
    if (args.channel >= ts.channels())
        throw core::Error(core::Errc::BadConfig, "channel index out of range");
    nlohmann::ordered_json sidecar;
    const core::EmbeddingConfig cfg = resolve_config(args.embed, ts, &sidecar);

    const std::vector<core::TokenMatrix> outputs = embed::embed_series(ts, cfg);
    const core::TokenMatrix& tokens =
        cfg.strategy == core::ChannelStrategy::CD ? outputs.front() : outputs[args.channel];
    const std::vector<double> target = ts.channel(args.channel);

    const experiments::SupervisedSet set =
        experiments::build_supervised(tokens, target, args.horizon);
    const experiments::RidgeOutcome ridge = experiments::ridge_forecast(
        set.features, set.targets, args.lambda, args.split, core::method_name(cfg.method));
    const experiments::ForecastResult persistence =
        experiments::persistence_at(target, set.anchors, args.horizon, args.split);

    std::ostringstream results;
    results << "method_tag,mse,mae\n";
    results << ridge.test.method_tag << "," << format_double(ridge.test.mse) << ","
            << format_double(ridge.test.mae) << "\n";
    results << persistence.method_tag << "," << format_double(persistence.mse) << ","
            << format_double(persistence.mae) << "\n";
    io::write_file_atomic(args.out, results.str());
    std::cerr << ridge.test.method_tag << " mse=" << format_double(ridge.test.mse)
              << " persistence mse=" << format_double(persistence.mse) << "\n";

    if (!args.dims.empty()) {
        const std::vector<experiments::DimSweepRow> rows = experiments::dim_sweep(
            target, cfg.patch_len, cfg.stride, args.dims, args.horizon, args.lambda,
            default_seed(), args.split);
        std::ostringstream sweep;
        sweep << "dim,test_mse,train_mse\n";
        for (const experiments::DimSweepRow& row : rows)
            sweep << row.dim << "," << format_double(row.test_mse) << ","
                  << format_double(row.train_mse) << "\n";
        const std::string path = args.sweep_out.empty() ? args.out + ".sweep.csv" : args.sweep_out;
        io::write_file_atomic(path, sweep.str());
        std::cerr << "wrote " << rows.size() << " sweep rows to " << path << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    std::string suite = "all";
    int trials = 100;
    std::uint64_t seed = 1;
    bool inject_singular = false;  // test hook: forces a failing case
};

double det_from_char_poly(const core::Matrix& m) {
    const std::vector<double> coeffs = core::char_poly(m);
    const double cn = coeffs.back();
    return (m.rows() % 2 == 0) ? cn : -cn;
}

bool verify_similarity_suite(const VerifyArgs& args) {
    core::Rng rng(args.seed);
    bool all_pass = true;
    int done = 0;
    double worst = 0.0;
    for (int trial = 0; trial < args.trials; ++trial) {
        const std::size_t n = 4;
        core::Matrix j(n, n), w(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) j(r, c) = rng.uniform(-1.0, 1.0);
        do {
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) w(r, c) = rng.uniform(-1.0, 1.0);
        } while (std::fabs(det_from_char_poly(w)) < 0.1);

        try {
            const experiments::SimilarityCheck check = experiments::verify_similarity(j, w);
            worst = std::max(worst, check.max_deviation);
            if (!check.pass) {
                std::cout << "similarity FAIL at trial " << trial << " (seed " << args.seed
                          << "): deviation " << check.max_deviation << "\n";
                all_pass = false;
            }
        } catch (const core::Error& e) {
            std::cout << "similarity FAIL at trial " << trial << " (seed " << args.seed
                      << "): " << e.what() << "\n";
            all_pass = false;
        }
        ++done;
    }
    if (args.inject_singular) {
        try {
            const core::Matrix j = {{1.0, 0.0}, {0.0, 2.0}};
            const core::Matrix w = {{1.0, 1.0}, {1.0, 1.0}};
            experiments::verify_similarity(j, w);
            std::cout << "similarity FAIL injected case: singular W not detected\n";
        } catch (const core::Error&) {
            std::cout << "similarity FAIL injected case: W singular (as injected)\n";
        }
        all_pass = false;
    }
    std::cout << "similarity: " << done << " trials, max coefficient deviation "
              << format_double(worst) << " -> " << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass;
}

bool verify_lyapunov_suite() {
    bool all_pass = true;
    struct Fixture {
        const char* name;
        core::Matrix a;
        double t;
        std::vector<double> expected;
    };
    const std::vector<Fixture> fixtures = {
        {"diag(0.3,-0.2) t=5", {{0.3, 0.0}, {0.0, -0.2}}, 5.0, {0.3, -0.2}},
        {"rotation t=5", {{0.0, 1.0}, {-1.0, 0.0}}, 5.0, {0.0, 0.0}},
        {"diag(1,0,-1) t=3", {{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, -1.0}}, 3.0,
         {1.0, 0.0, -1.0}},
    };
    for (const Fixture& fx : fixtures) {
        const std::vector<double> exponents = experiments::verify_lyapunov_svd(fx.a, fx.t);
        bool ok = exponents.size() == fx.expected.size();
        std::cout << "lyapunov " << fx.name << ": [";
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            std::cout << (i > 0 ? ", " : "") << format_double(exponents[i]);
            if (ok && std::fabs(exponents[i] - fx.expected[i]) > 1e-6) ok = false;
        }
        std::cout << "] -> " << (ok ? "PASS" : "FAIL") << "\n";
        if (!ok) all_pass = false;
    }
    return all_pass;
}

int run_verify(const VerifyArgs& args) {
    bool pass = true;
    if (args.suite == "similarity" || args.suite == "all")
        pass = verify_similarity_suite(args) && pass;
    if (args.suite == "lyapunov" || args.suite == "all") pass = verify_lyapunov_suite() && pass;
    std::cout << (pass ? "all suites passed" : "verification FAILED") << "\n";
    return pass ? 0 : kExitVerifyFailure;
}

// ------------------------------------------------------------ make-goldens

struct GoldenArgs {
    std::string out = "goldens.txt";
    std::uint64_t seed = 42;
};

int run_make_goldens(const GoldenArgs& args) {
    std::ostringstream out;
    out << "# oracle outputs for the acceptance suite (deterministic given seeds)\n";

    // Ground-truth Lorenz largest Lyapunov exponent via tangent dynamics.
    {
        const synth::OdeSystem sys = synth::lorenz_system();
        core::Rng rng(args.seed);
        const synth::State x0 = {1.0 + 0.1 * rng.uniform(), 1.0 + 0.1 * rng.uniform(),
                                 1.0 + 0.1 * rng.uniform()};
        const double lle = synth::benettin_lle(sys, x0, 0.01, 100000);
        out << "lorenz_lle_benettin=" << format_double(lle) << "\n";
        std::cerr << "benettin lle " << lle << "\n";
    }

    // Data-driven estimate on the x channel. Fixture constants: tau is a
    // quarter of the ~86-sample mean orbital period at dt=0.01, the Theiler
    // window is one orbit, and the slope is fit over five orbits (the linear
    // region of the divergence curve).
    {
        const core::TimeSeries lorenz = synth::make_lorenz(0.01, 50000, args.seed);
        const double lle = dynamics::rosenstein_lle(lorenz.channel(0), 21, 3, lorenz.dt, 86, 430);
        out << "lorenz_lle_rosenstein=" << format_double(lle) << "\n";
        std::cerr << "rosenstein lle " << lle << "\n";
    }

    // TD embedding with auto hyper-parameters vs the persistence baseline.
    {
        const core::TimeSeries lorenz = synth::make_lorenz(0.01, 10000, args.seed + 7);
        const std::vector<double> x = lorenz.channel(0);
        const double period = dynamics::dominant_period(x, lorenz.dt);
        const int tau = dynamics::select_tau(period);
        const dynamics::CcResult cc = dynamics::cc_method(x, tau);

        core::EmbeddingConfig cfg;
        cfg.method = core::Method::TD;
        cfg.m = cc.m;
        cfg.tau = tau;
        cfg.patch_len = 16;
        cfg.stride = 8;

        const embed::Trajectory traj = embed::td_embed(x, cfg.m, cfg.tau);
        const core::TokenMatrix tokens =
            embed::pad_and_unfold(traj, cfg.patch_len, cfg.stride, cfg.padding, &cfg);
        const experiments::SupervisedSet set = experiments::build_supervised(tokens, x, 5);
        const experiments::RidgeOutcome ridge =
            experiments::ridge_forecast(set.features, set.targets, 1e-3, 0.7, "td");
        const experiments::ForecastResult persistence =
            experiments::persistence_at(x, set.anchors, 5, 0.7);

        out << "ridge_mse_td_auto=" << format_double(ridge.test.mse) << "\n";
        out << "persistence_mse=" << format_double(persistence.mse) << "\n";
        out << "ridge_over_persistence=" << format_double(ridge.test.mse / persistence.mse)
            << "\n";
        out << "td_auto_m=" << cc.m << "\n";
        out << "td_auto_tau=" << tau << "\n";
        std::cerr << "ridge mse " << ridge.test.mse << " persistence mse " << persistence.mse
                  << "\n";
    }

    io::write_file_atomic(args.out, out.str());
    std::cerr << "wrote goldens to " << args.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"physics-guided phase-space embeddings for time series"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* cmd_gen = app.add_subcommand("generate", "synthesize a test series to CSV");
    cmd_gen->add_option("--system", gen.system, "sine|lorenz|rossler|mackey-glass")->required();
    cmd_gen->add_option("--omega", gen.omega, "sine angular frequency");
    cmd_gen->add_option("--amplitude", gen.amplitude, "sine amplitude");
    cmd_gen->add_option("--phase", gen.phase, "sine phase");
    cmd_gen->add_option("--sigma", gen.sigma, "lorenz sigma");
    cmd_gen->add_option("--rho", gen.rho, "lorenz rho");
    cmd_gen->add_option("--beta", gen.beta, "lorenz beta");
    cmd_gen->add_option("--a", gen.ra, "rossler a");
    cmd_gen->add_option("--b", gen.rb, "rossler b");
    cmd_gen->add_option("--c", gen.rc, "rossler c");
    cmd_gen->add_option("--tau-mg", gen.tau_mg, "mackey-glass delay (time units)");
    cmd_gen->add_option("--dt", gen.dt, "sampling interval")->required();
    cmd_gen->add_option("--len", gen.len, "number of samples")->required();
    cmd_gen->add_option("--snr-db", gen.snr_db, "additive noise SNR in dB (omit for none)");
    cmd_gen->add_option("--seed", gen.seed, "random seed")->default_val(default_seed());
    cmd_gen->add_option("--out", gen.out, "output CSV path")->required();

    AnalyzeArgs ana;
    CLI::App* cmd_ana = app.add_subcommand("analyze", "per-channel dynamical diagnostics");
    cmd_ana->add_option("--in", ana.in, "input series CSV")->required();
    cmd_ana->add_option("--out", ana.out, "output report JSON")->required();
    cmd_ana->add_option("--bins", ana.options.mi_bins, "MI histogram bins");
    cmd_ana->add_option("--mi-threshold", ana.options.mi_ratio_threshold,
                        "CD needs MI ratio above this");
    cmd_ana->add_option("--lle-spread", ana.options.lle_spread_threshold,
                        "CD needs LLE spread below this");

    EmbedArgs emb;
    CLI::App* cmd_emb = app.add_subcommand("embed", "tokenize a series via a phase-space embedding");
    cmd_emb->add_option("--in", emb.in, "input series CSV")->required();
    cmd_emb->add_option("--method", emb.method, "td|hd|id|pc")->required();
    cmd_emb->add_option("--m", emb.m, "embedding dimension / derivative order");
    cmd_emb->add_option("--tau", emb.tau, "delay in samples (td)");
    cmd_emb->add_option("--delta", emb.delta, "difference step in samples (hd/id)");
    cmd_emb->add_option("--k", emb.k, "principal components (pc)");
    cmd_emb->add_flag("--auto", emb.auto_params, "estimate tau/m from the data first");
    cmd_emb->add_option("--patch", emb.patch, "patch length p");
    cmd_emb->add_option("--stride", emb.stride, "stride s");
    cmd_emb->add_option("--padding", emb.padding,
                        "left-zero|right-zero|left-repeat|right-repeat");
    cmd_emb->add_option("--strategy", emb.strategy, "ci|cd");
    cmd_emb->add_option("--out", emb.out, "output tokens CSV path")->required();

    BenchArgs bench;
    CLI::App* cmd_bench = app.add_subcommand("bench", "ridge probe vs persistence baseline");
    cmd_bench->add_option("--in", bench.embed.in, "input series CSV")->required();
    cmd_bench->add_option("--method", bench.embed.method, "td|hd|id|pc");
    cmd_bench->add_option("--m", bench.embed.m, "embedding dimension / derivative order");
    cmd_bench->add_option("--tau", bench.embed.tau, "delay in samples (td)");
    cmd_bench->add_option("--delta", bench.embed.delta, "difference step (hd/id)");
    cmd_bench->add_option("--k", bench.embed.k, "principal components (pc)");
    cmd_bench->add_flag("--auto", bench.embed.auto_params, "estimate tau/m from the data first");
    cmd_bench->add_option("--patch", bench.embed.patch, "patch length p");
    cmd_bench->add_option("--stride", bench.embed.stride, "stride s");
    cmd_bench->add_option("--padding", bench.embed.padding, "padding mode");
    cmd_bench->add_option("--strategy", bench.embed.strategy, "ci|cd");
    cmd_bench->add_option("--horizon", bench.horizon, "forecast horizon H");
    cmd_bench->add_option("--lambda", bench.lambda, "ridge regularization");
    cmd_bench->add_option("--split", bench.split, "train fraction");
    cmd_bench->add_option("--channel", bench.channel, "target channel index");
    cmd_bench->add_option("--dims", bench.dims, "dim-sweep target dimensions")->delimiter(',');
    cmd_bench->add_option("--out", bench.out, "results CSV path");
    cmd_bench->add_option("--sweep-out", bench.sweep_out, "dim-sweep CSV path");

    VerifyArgs ver;
    CLI::App* cmd_ver = app.add_subcommand("verify", "run the theory verification suites");
    cmd_ver->add_option("--suite", ver.suite, "similarity|lyapunov|all");
    cmd_ver->add_option("--trials", ver.trials, "random trials for the similarity suite");
    cmd_ver->add_option("--seed", ver.seed, "random seed")->default_val(default_seed() + 1);
    cmd_ver->add_flag("--inject-singular", ver.inject_singular)->group("");  // test hook

    GoldenArgs gold;
    CLI::App* cmd_gold = app.add_subcommand("make-goldens", "regenerate oracle numbers");
    cmd_gold->add_option("--out", gold.out, "output key=value file");
    cmd_gold->add_option("--seed", gold.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_gen->parsed()) return run_generate(gen);
        if (cmd_ana->parsed()) return run_analyze(ana);
        if (cmd_emb->parsed()) return run_embed(emb);
        if (cmd_bench->parsed()) return run_bench(bench);
        if (cmd_ver->parsed()) return run_verify(ver);
        if (cmd_gold->parsed()) return run_make_goldens(gold);
    } catch (const core::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
