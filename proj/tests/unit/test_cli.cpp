#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <json.hpp>

namespace {

std::string g_cli_path;
std::filesystem::path g_work_dir;

struct CommandResult {
    int exit_code = -1;
    std::string stderr_text;
};

CommandResult run_cli(const std::string& args) {
    const std::filesystem::path err_file = g_work_dir / "stderr.txt";
    const std::string command =
        "'" + g_cli_path + "' " + args + " 2>'" + err_file.string() + "' >/dev/null";
    const int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err(err_file);
    std::stringstream buffer;
    buffer << err.rdbuf();
    result.stderr_text = buffer.str();
    return result;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

std::string path_of(const char* name) { return (g_work_dir / name).string(); }

void write_fixture_csv(const char* name, const std::vector<double>& values) {
    std::ofstream out(g_work_dir / name, std::ios::binary);
    out << "x\n";
    for (double v : values) out << v << "\n";
}

}  // namespace

TEST_CASE("generate writes a deterministic sine CSV with a time column") {
    const std::string out = path_of("sine.csv");
    const CommandResult first = run_cli(
        "generate --system sine --omega 1 --dt 0.0628 --len 400 --out '" + out + "'");
    REQUIRE(first.exit_code == 0);
    const std::string content = slurp(out);
    CHECK(count_lines(content) == 401);  // header + 400 samples
    CHECK(content.rfind("t,x", 0) == 0);

    const CommandResult second = run_cli(
        "generate --system sine --omega 1 --dt 0.0628 --len 400 --out '" + out + "'");
    REQUIRE(second.exit_code == 0);
    CHECK(slurp(out) == content);
}

TEST_CASE("generate names Lorenz channels x,y,z") {
    const std::string out = path_of("lorenz.csv");
    const CommandResult result =
        run_cli("generate --system lorenz --seed 7 --dt 0.01 --len 300 --out '" + out + "'");
    REQUIRE(result.exit_code == 0);
    CHECK(slurp(out).rfind("t,x,y,z", 0) == 0);
}

TEST_CASE("generate rejects unknown systems and flags") {
    CHECK(run_cli("generate --system unknown --dt 0.1 --len 10 --out /dev/null").exit_code == 2);
    CHECK(run_cli("generate --system sine --len 10 --out /dev/null").exit_code == 2);  // no dt
}

TEST_CASE("analyze applies the quarter-period rule on a sine") {
    const std::string series = path_of("sine_a.csv");
    REQUIRE(run_cli("generate --system sine --omega 1 --dt 0.0628 --len 4000 --out '" + series +
                    "'").exit_code == 0);
    const std::string report_path = path_of("report.json");
    REQUIRE(run_cli("analyze --in '" + series + "' --out '" + report_path + "'").exit_code == 0);

    const nlohmann::json report = nlohmann::json::parse(slurp(report_path));
    CHECK(report.at("version") == "1");
    CHECK(report.at("strategy") == "CI");
    REQUIRE(report.at("channels").size() == 1);
    const auto& channel = report.at("channels")[0];
    // omega=1 at dt=0.0628 is a 100-sample period; tau = period/4.
    CHECK(channel.at("tau").get<int>() == 25);
    CHECK(channel.at("dominant_period").get<double>() == doctest::Approx(100.0).epsilon(0.02));
    CHECK(report.at("mi_matrix").size() == 1);

    // Determinism of the serialized report.
    const std::string again_path = path_of("report2.json");
    REQUIRE(run_cli("analyze --in '" + series + "' --out '" + again_path + "'").exit_code == 0);
    CHECK(slurp(again_path) == slurp(report_path));
}

TEST_CASE("embed reproduces the hand-enumerated token fixtures") {
    write_fixture_csv("five.csv", {1, 2, 3, 4, 5});

    // m=1: trajectory is the raw series (N=5), left-zero pad of one column,
    // two tokens.
    const std::string out1 = path_of("five_tokens_m1.csv");
    REQUIRE(run_cli("embed --in '" + path_of("five.csv") +
                    "' --method td --m 1 --tau 1 --patch 4 --stride 2 --out '" + out1 +
                    "'").exit_code == 0);
    {
        std::stringstream lines(slurp(out1));
        std::string header, row0, row1;
        std::getline(lines, header);
        std::getline(lines, row0);
        std::getline(lines, row1);
        CHECK(header == "token_index,f0,f1,f2,f3");
        CHECK(row0 == "0,0,1,2,3");
        CHECK(row1 == "1,2,3,4,5");
    }

    // m=2: the trajectory itself shrinks to N=4, so a width-4 window needs
    // no padding and exactly one token remains (row 0 newest, row 1 delayed).
    const std::string out2 = path_of("five_tokens_m2.csv");
    REQUIRE(run_cli("embed --in '" + path_of("five.csv") +
                    "' --method td --m 2 --tau 1 --patch 4 --stride 2 --out '" + out2 +
                    "'").exit_code == 0);
    {
        std::stringstream lines(slurp(out2));
        std::string header, row0;
        std::getline(lines, header);
        std::getline(lines, row0);
        CHECK(header == "token_index,f0,f1,f2,f3,f4,f5,f6,f7");
        CHECK(row0 == "0,2,3,4,5,1,2,3,4");
        std::string extra;
        const bool has_more = static_cast<bool>(std::getline(lines, extra)) && !extra.empty();
        CHECK_FALSE(has_more);
    }
}

TEST_CASE("embed hd defaults to order 3 with unit step") {
    const std::string series = path_of("sine_hd.csv");
    REQUIRE(run_cli("generate --system sine --omega 1 --dt 0.1 --len 200 --out '" + series +
                    "'").exit_code == 0);
    const std::string out = path_of("hd_tokens.csv");
    REQUIRE(run_cli("embed --in '" + series + "' --method hd --patch 8 --stride 4 --out '" + out +
                    "'").exit_code == 0);
    std::stringstream lines(slurp(out));
    std::string header;
    std::getline(lines, header);
    // order 3 -> dimension 4 -> width 4*8 = 32 features
    CHECK(count_lines(header + "\n") == 1);
    std::size_t cells = 1;
    for (char c : header)
        if (c == ',') ++cells;
    CHECK(cells == 33);
}

TEST_CASE("embed id ignores --m with a warning and keeps width 3p") {
    const std::string series = path_of("sine_id.csv");
    REQUIRE(run_cli("generate --system sine --omega 1 --dt 0.1 --len 200 --out '" + series +
                    "'").exit_code == 0);
    const std::string out = path_of("id_tokens.csv");
    const CommandResult result = run_cli(
        "embed --in '" + series + "' --method id --m 7 --patch 8 --stride 8 --out '" + out + "'");
    REQUIRE(result.exit_code == 0);
    CHECK(result.stderr_text.find("--m ignored") != std::string::npos);
    std::stringstream lines(slurp(out));
    std::string header;
    std::getline(lines, header);
    std::size_t cells = 1;
    for (char c : header)
        if (c == ',') ++cells;
    CHECK(cells == 25);  // token_index + 3*8 features
}

TEST_CASE("embed reports the violated inequality for short input") {
    write_fixture_csv("short.csv", {1, 2, 3});
    const CommandResult result =
        run_cli("embed --in '" + path_of("short.csv") +
                "' --method td --m 5 --tau 2 --patch 4 --stride 2 --out '" +
                path_of("short_tokens.csv") + "'");
    CHECK(result.exit_code == 4);
    CHECK(result.stderr_text.find("T > (m-1)*tau") != std::string::npos);
}

TEST_CASE("embed per-channel output files carry channel suffixes in CI mode") {
    const std::string series = path_of("lorenz_ci.csv");
    REQUIRE(run_cli("generate --system lorenz --seed 3 --dt 0.01 --len 400 --out '" + series +
                    "'").exit_code == 0);
    REQUIRE(run_cli("embed --in '" + series +
                    "' --method td --m 2 --tau 3 --patch 8 --stride 4 --strategy ci --out '" +
                    path_of("ci_tokens.csv") + "'").exit_code == 0);
    CHECK(std::filesystem::exists(g_work_dir / "ci_tokens_ch0.csv"));
    CHECK(std::filesystem::exists(g_work_dir / "ci_tokens_ch1.csv"));
    CHECK(std::filesystem::exists(g_work_dir / "ci_tokens_ch2.csv"));

    REQUIRE(run_cli("embed --in '" + series +
                    "' --method td --m 2 --tau 3 --patch 8 --stride 4 --strategy cd --out '" +
                    path_of("cd_tokens.csv") + "'").exit_code == 0);
    std::stringstream lines(slurp(path_of("cd_tokens.csv")));
    std::string header;
    std::getline(lines, header);
    std::size_t cells = 1;
    for (char c : header)
        if (c == ',') ++cells;
    CHECK(cells == 1 + 3 * 2 * 8);  // C*m*p
}

TEST_CASE("embed --auto logs the chosen hyper-parameters to a sidecar") {
    const std::string series = path_of("sine_auto.csv");
    REQUIRE(run_cli("generate --system sine --omega 1 --dt 0.0628 --len 4000 --out '" + series +
                    "'").exit_code == 0);
    const std::string out = path_of("auto_tokens.csv");
    const CommandResult result = run_cli(
        "embed --in '" + series + "' --method td --auto --patch 8 --stride 4 --out '" + out + "'");
    REQUIRE(result.exit_code == 0);
    CHECK(result.stderr_text.find("auto: tau=25") != std::string::npos);
    const nlohmann::json sidecar = nlohmann::json::parse(slurp(out + ".auto.json"));
    CHECK(sidecar.at("auto").at("tau").get<int>() == 25);
    const int chosen_m = sidecar.at("auto").at("m").get<int>();
    CHECK(chosen_m >= 2);
    CHECK(chosen_m <= 8);
}

TEST_CASE("bench reports a zero persistence error on a constant series") {
    std::vector<double> constant(300, 4.25);
    write_fixture_csv("const.csv", constant);
    const std::string out = path_of("const_bench.csv");
    REQUIRE(run_cli("bench --in '" + path_of("const.csv") +
                    "' --method td --m 1 --tau 1 --patch 8 --stride 4 --horizon 3 --out '" + out +
                    "'").exit_code == 0);
    const std::string content = slurp(out);
    CHECK(content.find("persistence,0,0") != std::string::npos);
}

TEST_CASE("bench emits the dim-sweep table when dims are requested") {
    const std::string series = path_of("sine_bench.csv");
    REQUIRE(run_cli("generate --system sine --omega 1 --dt 0.05 --len 2000 --out '" + series +
                    "'").exit_code == 0);
    const std::string out = path_of("bench.csv");
    const std::string sweep = path_of("sweep.csv");
    REQUIRE(run_cli("bench --in '" + series +
                    "' --method td --m 2 --tau 31 --patch 8 --stride 4 --horizon 4 "
                    "--dims 4,8,16 --out '" + out + "' --sweep-out '" + sweep + "'")
                .exit_code == 0);
    const std::string sweep_content = slurp(sweep);
    CHECK(count_lines(sweep_content) == 4);  // header + 3 rows
    CHECK(sweep_content.rfind("dim,test_mse,train_mse", 0) == 0);
    std::stringstream rows(slurp(out));
    std::string header, ridge_row, persistence_row;
    std::getline(rows, header);
    std::getline(rows, ridge_row);
    std::getline(rows, persistence_row);
    CHECK(header == "method_tag,mse,mae");
    CHECK(ridge_row.rfind("td,", 0) == 0);
    CHECK(persistence_row.rfind("persistence,", 0) == 0);
}

TEST_CASE("bench supports CD features and non-default padding") {
    const std::string series = path_of("lorenz_bench.csv");
    REQUIRE(run_cli("generate --system lorenz --seed 4 --dt 0.01 --len 3000 --out '" + series +
                    "'").exit_code == 0);
    const std::string out = path_of("cd_bench.csv");
    REQUIRE(run_cli("bench --in '" + series +
                    "' --method td --m 2 --tau 11 --patch 8 --stride 4 --strategy cd "
                    "--padding right-repeat --horizon 5 --channel 1 --out '" + out +
                    "'").exit_code == 0);
    const std::string content = slurp(out);
    CHECK(content.rfind("method_tag,mse,mae", 0) == 0);
    CHECK(content.find("td,") != std::string::npos);
    CHECK(content.find("persistence,") != std::string::npos);
}

TEST_CASE("bench refuses series too short for the split") {
    write_fixture_csv("tiny.csv", {1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(run_cli("bench --in '" + path_of("tiny.csv") +
                  "' --method td --m 2 --tau 1 --patch 4 --stride 2 --horizon 3 --out '" +
                  path_of("tiny_bench.csv") + "'").exit_code == 4);
}

TEST_CASE("verify suites succeed and the injected singular case fails") {
    CHECK(run_cli("verify --suite similarity --trials 100 --seed 1").exit_code == 0);
    CHECK(run_cli("verify --suite lyapunov").exit_code == 0);
    CHECK(run_cli("verify --suite all --trials 25 --seed 2").exit_code == 0);
    CHECK(run_cli("verify --suite similarity --trials 5 --seed 1 --inject-singular").exit_code ==
          1);
}

TEST_CASE("PHASEMBED_SEED supplies the default seed") {
    const std::string env_out = path_of("env_seed.csv");
    const std::string flag_out = path_of("flag_seed.csv");
    const std::string env_cmd = "PHASEMBED_SEED=5 '" + g_cli_path +
                                "' generate --system lorenz --dt 0.01 --len 200 --out '" +
                                env_out + "' >/dev/null 2>&1";
    REQUIRE(std::system(env_cmd.c_str()) == 0);
    REQUIRE(run_cli("generate --system lorenz --seed 5 --dt 0.01 --len 200 --out '" + flag_out +
                    "'").exit_code == 0);
    CHECK(slurp(env_out) == slurp(flag_out));
}

TEST_CASE("generate exits 3 when the integrator diverges") {
    const CommandResult result = run_cli(
        "generate --system lorenz --dt 10 --len 100 --out '" + path_of("boom.csv") + "'");
    CHECK(result.exit_code == 3);
}

TEST_CASE("analyze completes on a 2000-sample Lorenz x with the LLE marked absent") {
    // 2000 samples cannot satisfy the Rosenstein precondition of 2000
    // embedded states once m >= 2 shortens the trajectory, so the report
    // carries a warning instead of an estimate.
    const std::string series = path_of("lorenz2000.csv");
    REQUIRE(run_cli("generate --system lorenz --seed 11 --dt 0.01 --len 2000 --out '" + series +
                    "'").exit_code == 0);
    const std::string report_path = path_of("lorenz2000.json");
    REQUIRE(run_cli("analyze --in '" + series + "' --out '" + report_path + "'").exit_code == 0);
    const nlohmann::json report = nlohmann::json::parse(slurp(report_path));
    const auto& x_channel = report.at("channels")[0];
    CHECK(x_channel.at("lle").is_null());
    CHECK(!x_channel.at("warnings").empty());
}

TEST_CASE("malformed CSV input is a parse error") {
    {
        std::ofstream out(g_work_dir / "ragged.csv", std::ios::binary);
        out << "t,x\n0,1\n1\n";
    }
    CHECK(run_cli("analyze --in '" + path_of("ragged.csv") + "' --out '" +
                  path_of("ragged.json") + "'").exit_code == 2);

    {
        std::ofstream out(g_work_dir / "nonuniform.csv", std::ios::binary);
        out << "t,x\n0,1\n1,2\n3,3\n";
    }
    CHECK(run_cli("analyze --in '" + path_of("nonuniform.csv") + "' --out '" +
                  path_of("nonuniform.json") + "'").exit_code == 2);
}

int main(int argc, char** argv) {
    std::vector<char*> doctest_args;
    for (int i = 0; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind("--cli=", 0) == 0)
            g_cli_path = arg.substr(6);
        else
            doctest_args.push_back(argv[i]);
    }
    if (g_cli_path.empty()) {
        std::fprintf(stderr, "usage: test_cli --cli=<path-to-phasembed-binary> [doctest args]\n");
        return 1;
    }
    g_work_dir = std::filesystem::temp_directory_path() /
                 ("phasembed_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(g_work_dir);

    doctest::Context context(static_cast<int>(doctest_args.size()), doctest_args.data());
    const int rc = context.run();

    std::error_code ec;
    std::filesystem::remove_all(g_work_dir, ec);
    return rc;
}
