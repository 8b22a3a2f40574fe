#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return TRENDLAB_CLI_PATH; }

int run_cli(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "trendlab_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> headers_of(const fs::path& file) {
    std::ifstream in(file);
    std::map<std::string, std::string> headers;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) != 0) break;
        const auto eq = line.find('=');
        if (eq != std::string::npos) headers[line.substr(2, eq - 2)] = line.substr(eq + 1);
    }
    return headers;
}

}  // namespace

TEST_CASE("cli simulate: degenerate closed form lands in series.csv") {
    const fs::path out = scratch("closed_form");
    const int rc = run_cli("simulate --noise degenerate --gamma-c 1 --n0 3 --intervals 4 "
                           "--topics 1 --theta 0.5 --seed 7 --out " + out.string());
    REQUIRE(rc == 0);
    const std::string series = slurp(out / "series.csv");
    CHECK(series == "topic,interval,count,cumulative\n"
                    "topic-000000,0,3,3\n"
                    "topic-000000,1,3,6\n"
                    "topic-000000,2,3,9\n"
                    "topic-000000,3,3,12\n"
                    "topic-000000,4,3,15\n");
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "stream.ndjson"));
    CHECK(fs::exists(out / "durations.csv"));
    CHECK(fs::exists(out / "appearances.csv"));
}

TEST_CASE("cli simulate: identical flags give byte-identical outputs") {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    const std::string flags =
        "simulate --topics 40 --intervals 30 --sigma2 0.25 --seed 11 --out ";
    REQUIRE(run_cli(flags + a.string()) == 0);
    REQUIRE(run_cli(flags + b.string()) == 0);
    for (const char* name :
         {"manifest.json", "series.csv", "durations.csv", "appearances.csv", "stream.ndjson"}) {
        CHECK(slurp(a / name) == slurp(b / name));
    }
}

TEST_CASE("cli simulate: invalid parameters are usage errors (exit 2)") {
    const fs::path out = scratch("usage");
    CHECK(run_cli("simulate --sigma2 -1 --out " + out.string()) == 2);
    CHECK(run_cli("simulate --topics 0 --out " + out.string()) == 2);
    CHECK(run_cli("simulate") == 2);                       // --out missing
    CHECK(run_cli("simulate --no-such-flag 1 --out x") == 2);
    CHECK(run_cli("analyze") == 2);                        // subcommand required
    CHECK(run_cli("") == 2);
}

TEST_CASE("cli help exits 0") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("simulate --help") == 0);
    CHECK(run_cli("analyze gamma --help") == 0);
}

TEST_CASE("cli simulate: TRENDLAB_SEED env var is the fallback seed") {
    const fs::path out = scratch("env_seed");
    const std::string cmd = "TRENDLAB_SEED=99 " + std::string(cli_path()) +
                            " simulate --topics 5 --intervals 8 --out " + out.string() +
                            " >/dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string manifest = slurp(out / "manifest.json");
    CHECK(manifest.find("\"seed\": 99") != std::string::npos);
}

TEST_CASE("cli analyze gamma: degenerate fixture fits slope -1, r2 = 1") {
    const fs::path sim = scratch("gamma_sim");
    const fs::path out = scratch("gamma_out");
    REQUIRE(run_cli("simulate --noise degenerate --topics 3 --intervals 96 --theta 0.5 "
                    "--seed 5 --out " + sim.string()) == 0);
    REQUIRE(run_cli("analyze gamma --in " + sim.string() + " --out " + out.string()) == 0);
    const auto headers = headers_of(out / "gamma.csv");
    CHECK(std::fabs(std::stod(headers.at("slope")) + 1.0) <= 1e-9);
    CHECK(std::stod(headers.at("r_squared")) >= 1.0 - 1e-9);
}

TEST_CASE("cli analyze durations: geometric fixture recovers p = 0.2") {
    const fs::path in = scratch("dur_in");
    const fs::path out = scratch("dur_out");
    {
        // counts proportional to the geometric law with p = 0.2
        std::ofstream f(in / "durations.csv");
        f << "topic,duration,censored\n";
        int topic = 0;
        for (int k = 0; k <= 40; ++k) {
            const int count = static_cast<int>(std::lround(2000.0 * std::pow(0.8, k)));
            for (int i = 0; i < count; ++i) {
                f << "t" << topic++ << ',' << k << ",0\n";
            }
        }
    }
    REQUIRE(run_cli("analyze durations --in " + in.string() + " --out " + out.string()) == 0);
    const auto headers = headers_of(out / "durations.csv");
    CHECK(std::fabs(std::stod(headers.at("p_hat")) - 0.2) <= 0.02);
    CHECK(std::stod(headers.at("tail_r_squared")) >= 0.99);
}

TEST_CASE("cli analyze sequences: the {0,1,2,5,6} fixture") {
    const fs::path in = scratch("seq_in");
    const fs::path out = scratch("seq_out");
    {
        std::ofstream f(in / "appearances.csv");
        f << "topic,interval\nA,0\nA,1\nA,2\nA,5\nA,6\n";
    }
    REQUIRE(run_cli("analyze sequences --in " + in.string() + " --out " + out.string()) == 0);
    const std::string table = slurp(out / "sequences.csv");
    CHECK(table.find("# n_sequences=2") != std::string::npos);
    CHECK(table.find("length,2,1") != std::string::npos);
    CHECK(table.find("length,3,1") != std::string::npos);
}

TEST_CASE("cli report: full pipeline, completeness, reference values") {
    const fs::path sim = scratch("report_sim");
    const fs::path an = scratch("report_an");
    REQUIRE(run_cli("simulate --topics 60 --intervals 48 --sigma2 0.25 --seed 21 --out " +
                    sim.string()) == 0);
    for (const char* sub : {"gamma", "ratios", "curvature", "durations", "sequences", "metrics"}) {
        REQUIRE(run_cli("analyze " + std::string(sub) + " --in " + sim.string() + " --out " +
                        an.string()) == 0);
    }
    REQUIRE(run_cli("report --in " + an.string()) == 0);
    const std::string summary = slurp(an / "summary.txt");
    for (const char* section :
         {"[gamma]", "[ratios]", "[curvature]", "[durations]", "[sequences]", "[metrics]"}) {
        CHECK(summary.find(section) != std::string::npos);
    }
    // the paper's reference values are quoted verbatim
    CHECK(summary.find("exponent -1") != std::string::npos);
    CHECK(summary.find("0.98") != std::string::npos);
    CHECK(summary.find("0.12") != std::string::npos);
    CHECK(summary.find("0.9112") != std::string::npos);
}

TEST_CASE("cli analyze: raw stream input is binned with an origin override") {
    const fs::path in = scratch("stream_in");
    const fs::path out = scratch("stream_out");
    {
        // two topics, enough intervals for the default (14, 2) ratio pair;
        // every interval gets topic-a tweets with rising multiplicity
        std::ofstream f(in / "stream.ndjson");
        for (int t = 0; t < 20; ++t) {
            for (int i = 0; i <= t; ++i) {
                f << R"({"topic":"a","author":"a)" << i << R"(","time":)" << 1000 + t * 1200
                  << R"(,"is_retweet":false})"
                  << "\n";
            }
            f << R"({"topic":"b","author":"b0","time":)" << 1000 + t * 1200
              << R"(,"is_retweet":false})"
              << "\n";
        }
    }
    REQUIRE(run_cli("analyze gamma --in " + in.string() + " --out " + out.string() +
                    " --origin 1000 --fit-lo 2 --fit-hi 19") == 0);
    CHECK(fs::exists(out / "gamma.csv"));
    const auto headers = headers_of(out / "gamma.csv");
    CHECK(std::stod(headers.at("slope")) < 0.0);  // decaying growth factor
}

TEST_CASE("cli report: empty analysis dir exits 1") {
    const fs::path empty = scratch("report_empty");
    CHECK(run_cli("report --in " + empty.string()) == 1);
}

TEST_CASE("cli analyze: missing input is an I/O failure (exit 1)") {
    const fs::path out = scratch("missing_out");
    CHECK(run_cli("analyze gamma --in /no/such/dir --out " + out.string()) == 1);
}
