#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "lrl/cli.hpp"

using namespace lrl;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("lrl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static std::string slurp(const std::string& p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, OrbitSummary)
{
    const auto r = run({"orbit", "--r1", "2", "--r2", "2.2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("p1=(0.09860639492920568, 1.184878466079626)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("p2=(0.15365416129910575, 2.9628609776920625)"), std::string::npos);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
}

TEST_F(Cli, NoInteriorOrbitExitsThree)
{
    const auto r = run({"orbit", "--r1", "2", "--r2", "2"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("no interior 2-cycle: r2 must exceed r1"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"orbit", "--bogus", "1"}).code, 2);
    EXPECT_EQ(run({"orbit", "--r1", "abc"}).code, 2);
    EXPECT_EQ(run({"orbit", "--r1", "-1"}).code, 2);
    EXPECT_EQ(run({"orbit", "--family", "other"}).code, 2);
    EXPECT_EQ(run({"simulate", "--x0", "1"}).code, 2);
    EXPECT_EQ(run({"simulate", "--x0", "0", "--y0", "0"}).code, 2);
    EXPECT_EQ(run({"basin", "--nx", "1"}).code, 2);
    EXPECT_EQ(run({"sweep", "--steps", "1"}).code, 2);
    EXPECT_EQ(run({"sweep", "--param", "q"}).code, 2);
    EXPECT_EQ(run({"preimage", "--x", "0.5"}).code, 2);
    EXPECT_EQ(run({"certify", "--a", "0.1"}).code, 2);
    const auto r = run({"orbit", "--bogus", "1"});
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST_F(Cli, HelpExitsZero)
{
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("certify"), std::string::npos);
    EXPECT_EQ(run({"basin", "--help"}).code, 0);
}

TEST_F(Cli, NumericalFailuresExitThree)
{
    EXPECT_EQ(run({"stability", "--r1", "3", "--r2", "2"}).code, 3);
    EXPECT_EQ(run({"heteroclinic", "--r1", "3", "--r2", "2"}).code, 3);
    EXPECT_EQ(run({"heteroclinic", "--het-max-iter", "3"}).code, 3);
    EXPECT_EQ(run({"preimage", "--x", "0", "--y", "1"}).code, 3);
    EXPECT_EQ(run({"simulate", "--family", "stocking", "--s1", "2", "--x0", "1", "--y0", "0", "--n", "5000"}).code,
              3);
}

TEST_F(Cli, IoErrorExitsOne)
{
    EXPECT_EQ(run({"orbit", "--out", path("missing/dir/o.csv")}).code, 1);
}

TEST_F(Cli, SimulateWritesTrajectory)
{
    const auto out = path("traj.csv");
    const auto r = run({"simulate", "--r1", "2", "--r2", "2.2", "--x0", "2", "--y0", "0.001", "--n", "200",
                        "--out", out});
    EXPECT_EQ(r.code, 0);
    const std::string csv = slurp(out);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 202);
    EXPECT_EQ(csv.substr(0, 16), "n,x,y\n0,2,0.001\n");
}

TEST_F(Cli, ConfigFileAndOverride)
{
    const auto cfg = path("run.cfg");
    {
        std::ofstream f(cfg);
        f << "# reference run\ncommand = orbit\nr1 = 2.1\nr2 = 2.5   # shifted\na = 0.1\n\n";
    }
    const auto a = run({"--config", cfg});
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_NE(a.out.find("r1=2.1 r2=2.5 a=0.1"), std::string::npos) << a.out;

    const auto b = run({"orbit", "--config", cfg, "--r1", "2", "--a", "0", "--r2", "2.2"});
    EXPECT_EQ(b.code, 0) << b.err;
    EXPECT_NE(b.out.find("r1=2 r2=2.2 a=0"), std::string::npos) << b.out;

    const auto c = run({"stability", "--r2", "2.4", "--config", cfg});
    EXPECT_EQ(c.code, 0) << c.err;
    EXPECT_NE(c.out.find("r1=2.1 r2=2.4 a=0.1"), std::string::npos) << c.out;

    EXPECT_EQ(run({"--config", path("none.cfg")}).code, 2);
    {
        std::ofstream f(cfg);
        f << "r1 2\n";
    }
    EXPECT_EQ(run({"orbit", "--config", cfg}).code, 2);
}

TEST(ConfigText, Parsing)
{
    const auto kv = cli::parse_config_text("a=1\n  # c\nmax_iter = 7 # x\n\nout=p.csv\n");
    ASSERT_EQ(kv.size(), 3u);
    EXPECT_EQ(kv[1].first, "max-iter");
    EXPECT_EQ(kv[1].second, "7");
    EXPECT_EQ(kv[2].second, "p.csv");
    EXPECT_THROW(cli::parse_config_text("=3\n"), InvalidArgument);
}

TEST_F(Cli, SweepOutput)
{
    const auto out = path("sweep.csv");
    const auto r = run({"sweep", "--param", "delta", "--start", "0.5", "--stop", "1", "--steps", "51", "--out", out});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("jury_crossings=1"), std::string::npos) << r.out;
    const auto csv = slurp(out);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 52);

    const auto cols = run({"sweep", "--start", "0.1", "--stop", "0.2", "--steps", "2", "--columns", "s1,jury_pass"});
    EXPECT_EQ(cols.code, 0);
    EXPECT_EQ(cols.out.substr(0, 25), "delta,status,s1,jury_pass");
}

TEST_F(Cli, BasinOutputs)
{
    const auto pgm = path("b.pgm"), ppm = path("b.ppm"), csv = path("b.csv");
    const auto r = run({"basin", "--nx", "40", "--ny", "30", "--out-pgm", pgm, "--out-ppm", ppm, "--out-csv", csv,
                        "--overlay-rank", "1"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("overlay_cells="), std::string::npos);
    EXPECT_EQ(slurp(pgm).substr(0, 3), "P5\n");
    EXPECT_EQ(slurp(ppm).substr(0, 3), "P6\n");
    const auto c = slurp(csv);
    EXPECT_EQ(std::count(c.begin(), c.end(), '\n'), 1 + 40 * 30);
}

TEST_F(Cli, CertifyReports)
{
    const auto out = path("cert.txt");
    ASSERT_EQ(run({"certify", "--out", out}).code, 0);
    const auto rep = slurp(out);
    EXPECT_NE(rep.find("C1: PASS"), std::string::npos) << rep;
    EXPECT_NE(rep.find("C2: PASS"), std::string::npos);
    EXPECT_NE(rep.find("C3: PASS"), std::string::npos);
    EXPECT_NE(rep.find("persistence: PASS"), std::string::npos);

    ASSERT_EQ(run({"certify", "--r1", "3", "--r2", "2", "--out", out}).code, 0);
    const auto xw = slurp(out);
    EXPECT_NE(xw.find("regime: X_WINS_GLOBALLY"), std::string::npos) << xw;
    EXPECT_NE(xw.find("lyapunov_x_wins: PASS"), std::string::npos);

    ASSERT_EQ(run({"certify", "--r1", "2", "--r2", "3", "--out", out}).code, 0);
    EXPECT_NE(slurp(out).find("C1: FAIL"), std::string::npos);
}

TEST_F(Cli, OtherCommands)
{
    EXPECT_EQ(run({"regime"}).code, 0);
    EXPECT_EQ(run({"stability", "--r1", "2.1", "--r2", "2.5", "--a", "0.1"}).code, 0);
    EXPECT_EQ(run({"orbit", "--family", "stocking"}).code, 0);
    const auto h = run({"heteroclinic", "--dense", "8", "--out", path("h.csv")});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find("found=true"), std::string::npos);
    const auto p = run({"preimage", "--x", "0.5", "--y", "1"});
    EXPECT_EQ(p.code, 0);
    EXPECT_NE(p.out.find("count=2"), std::string::npos);
    EXPECT_EQ(run({"preimage", "--rank", "1", "--out", path("pre.csv")}).code, 0);
}

TEST_F(Cli, ByteIdenticalReruns)
{
    const std::vector<std::vector<std::string>> cmds{
        {"simulate", "--x0", "1", "--y0", "0.5", "--n", "300"},
        {"orbit"},
        {"stability"},
        {"heteroclinic", "--dense", "16"},
        {"preimage", "--rank", "2"},
        {"sweep", "--start", "0", "--stop", "1", "--steps", "21"},
        {"certify", "--seed", "7", "--points", "200"},
        {"basin", "--nx", "50", "--ny", "50", "--overlay-rank", "1"},
    };
    int k = 0;
    for (auto cmd : cmds) {
        std::string a, b;
        for (int rep = 0; rep < 2; ++rep) {
            auto args = cmd;
            const auto out = path("r" + std::to_string(k) + "_" + std::to_string(rep));
            if (cmd.front() == "basin") {
                args.insert(args.end(), {"--out-ppm", out});
            } else {
                args.insert(args.end(), {"--out", out});
            }
            const auto r = run(args);
            ASSERT_EQ(r.code, 0) << cmd.front() << ": " << r.err;
            (rep == 0 ? a : b) = slurp(out) + r.out;
        }
        EXPECT_FALSE(a.empty());
        EXPECT_EQ(a, b) << cmd.front();
        ++k;
    }
}

#ifdef LRL_CLI_PATH
TEST_F(Cli, BinaryExitCodes)
{
    auto code = [](const std::string& args) {
        const int st = std::system((std::string(LRL_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    };
    EXPECT_EQ(code("orbit --r1 2 --r2 2.2"), 0);
    EXPECT_EQ(code("orbit --r1 2 --r2 2"), 3);
    EXPECT_EQ(code("nope"), 2);
}
#endif
