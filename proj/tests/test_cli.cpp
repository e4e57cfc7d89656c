#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_cli;

int run_cli(const std::string& args) {
    std::string cmd = g_cli + " " + args + " >/tmp/cli_stdout.txt 2>/tmp/cli_stderr.txt";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scenario catalog lists the built-in ids") {
    REQUIRE(run_cli("list-scenarios") == 0);
    std::string out = slurp("/tmp/cli_stdout.txt");
    for (const char* id : {"fig1a", "fig1c", "fig19-coarsen-valley", "fig21-5front-p-0.4",
                           "fig22-beyond-p-1.5"})
        CHECK(out.find(id) != std::string::npos);
    CHECK(out.find("[exploratory]") != std::string::npos);
}

TEST_CASE("melnikov emitter") {
    SUBCASE("zero forcing gives all-zero columns") {
        REQUIRE(run_cli("melnikov --zero --range -1:1:0.25 --out /tmp/cli_mel.csv") == 0);
        std::ifstream in("/tmp/cli_mel.csv");
        std::string line;
        std::getline(in, line);
        CHECK(line == "phi,R,Rprime");
        int rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            CHECK(line.find(",0,0") != std::string::npos);
        }
        CHECK(rows == 9);
    }
    SUBCASE("bad range is rejected with exit 3") {
        CHECK(run_cli("melnikov --zero --range nonsense --out /tmp/x.csv") == 3);
    }
}

TEST_CASE("stationary enumeration from the command line") {
    REQUIRE(run_cli("stationary --topo exp:0.8 --eps 1e-3 --n 2 --out /tmp/cli_st.json") == 0);
    auto rep = nlohmann::json::parse(slurp("/tmp/cli_st.json"));
    CHECK(rep.size() == 7);
    for (const auto& f : rep) {
        double max_re = -1e300;
        for (const auto& e : f["eigenvalues"]) max_re = std::max(max_re, e["re"].get<double>());
        CHECK(max_re > 0.0);
    }
}

TEST_CASE("numeric failures exit with code 2") {
    CHECK(run_cli("two-front --zero --eps 0.1 --seed -3,3") == 2);
}

TEST_CASE("unknown scenario exits with code 3") {
    CHECK(run_cli("scenario not-a-scenario --outdir /tmp/cli_runs") == 3);
}

TEST_CASE("nfront writes a trajectory") {
    REQUIRE(run_cli("nfront --triple 1,0,0,0.8377580409572782 --closed-form --init 3.0 "
                    "--eps 0.1 --t-end 500 --out /tmp/cli_traj.csv") == 0);
    std::ifstream in("/tmp/cli_traj.csv");
    std::string header, line, last;
    std::getline(in, header);
    CHECK(header == "t,phi_1");
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    double t, phi;
    REQUIRE(std::sscanf(last.c_str(), "%lf,%lf", &t, &phi) == 2);
    CHECK(std::abs(phi - 15.0 / 4.0) < 1e-4);  // pinned at the stable phase
}

TEST_CASE("scenario runs are reproducible bit for bit") {
    REQUIRE(run_cli("scenario fig1c --set t_end=20 --set output_every=2 "
                    "--outdir /tmp/cli_runs --stamp a") == 0);
    REQUIRE(run_cli("scenario fig1c --set t_end=20 --set output_every=2 "
                    "--outdir /tmp/cli_runs --stamp b") == 0);
    std::string a = slurp("/tmp/cli_runs/fig1c/a/tracks.csv");
    std::string b = slurp("/tmp/cli_runs/fig1c/b/tracks.csv");
    REQUIRE(!a.empty());
    CHECK(a == b);
    CHECK(!slurp("/tmp/cli_runs/fig1c/a/meta.json").empty());
    CHECK(!slurp("/tmp/cli_runs/fig1c/a/events.csv").empty());
}

TEST_CASE("manifold command reports the intersection count") {
    REQUIRE(run_cli("manifold --alpha1 -0.151 --eps 0.1 --out /tmp/cli_man") == 0);
    std::string out = slurp("/tmp/cli_stdout.txt");
    CHECK(out.find("4 intersections") != std::string::npos);
    std::ifstream ix("/tmp/cli_man/intersections.csv");
    std::string header;
    std::getline(ix, header);
    CHECK(header == "phi_a,phi_b,u,p");
}

int main(int argc, char** argv) {
    doctest::Context ctx;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--", 0) != 0) g_cli = arg;
    }
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli>\n");
        return 1;
    }
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
