// Runs the built command-line tool in scratch directories and checks exit
// codes and output files.

#include "acsais/graph_io.hpp"
#include "acsais/spectral.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace acsais;
using namespace acsais::testing;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("acsais_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult run(const std::string& args) const {
    const fs::path log = dir_ / "stdout.txt";
    const std::string cmd = std::string(ACSAIS_CLI_PATH) + " --out-dir " + dir_.string() + " " + args +
                            " > " + log.string() + " 2> " + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read(log);
    return r;
  }

  std::string read(const fs::path& p) const {
    std::ifstream in(p.is_absolute() ? p : dir_ / p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  std::string write_net(const std::string& name, const MultilayerNetwork& net) const {
    const fs::path p = dir_ / name;
    io::write_multilayer_json(p, net);
    return p.string();
  }

  fs::path dir_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_F(CliTest, MconnectExitCodes) {
  const auto yes = run("mconnect --graph " + write_net("f3.json", twelve_node_network()));
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out, "M-CONNECTED k*=3\n");
  EXPECT_TRUE(fs::exists(dir_ / "mconnect_trace.json"));
  EXPECT_TRUE(fs::exists(dir_ / "mconnect_manifest.json"));

  const MultilayerNetwork split(digraph(3, {{0, 1}, {1, 0}}), digraph(3, {{1, 2}, {2, 1}}));
  const auto no = run("mconnect --graph " + write_net("split.json", split));
  EXPECT_EQ(no.code, 2);
  EXPECT_EQ(no.out.rfind("NOT M-CONNECTED", 0), 0u);

  std::ofstream(dir_ / "bad.json") << R"({"n": 2, "layers": {"S": [[0, 9, 1]], "A": []}})";
  EXPECT_EQ(run("mconnect --graph " + (dir_ / "bad.json").string()).code, 64);
  EXPECT_EQ(run("mconnect").code, 64);
  EXPECT_EQ(run("no-such-command").code, 64);
}

TEST_F(CliTest, ThresholdCsv) {
  std::mt19937_64 rng(1);
  const auto net = random_m_connected(15, 3.0, rng);
  const auto r = run("threshold --graph " + write_net("n.json", net) + " --kappa-grid 0,1,inf");
  ASSERT_EQ(r.code, 0) << read("stderr.txt");
  const auto rows = lines(read("threshold.csv"));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "kappa_bar,tau_c,tau_c_normalized");
  const double lambda = dominant_eigenpair(net.layer_s().matrix(), Side::right).value;
  double k, tau, norm;
  char c1, c2;
  std::istringstream(rows[1]) >> k >> c1 >> tau >> c2 >> norm;
  EXPECT_EQ(k, 0.0);
  EXPECT_NEAR(tau, 1 / lambda, 1e-10 / lambda);
  EXPECT_NEAR(norm, 1.0, 1e-12);
  EXPECT_EQ(rows[3].substr(0, 4), "inf,");
  EXPECT_TRUE(fs::exists(dir_ / "plot_threshold.py"));

  EXPECT_EQ(run("threshold --graph " + (dir_ / "n.json").string() + " --kappa-grid log:1:0:5").code, 64);
}

TEST_F(CliTest, PrevalenceWithoutInfectionIsZero) {
  std::mt19937_64 rng(2);
  const auto net = random_m_connected(8, 3.0, rng);
  const auto r = run("prevalence --graph " + write_net("n.json", net) + " --tau 0 --kappa-grid 0.1,10 --no-plot");
  ASSERT_EQ(r.code, 0) << read("stderr.txt");
  const auto rows = lines(read("prevalence.csv"));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "kappa_bar,prevalence");
  for (int i = 1; i < 3; ++i) EXPECT_LT(std::stod(rows[i].substr(rows[i].find(',') + 1)), 1e-9);
  EXPECT_FALSE(fs::exists(dir_ / "plot_prevalence.py"));
}

TEST_F(CliTest, SimulateIsDeterministicInTheSeed) {
  const std::string g = write_net("f3.json", twelve_node_network());
  const std::string args = "simulate --graph " + g + " --beta 0.8 --kappa 0.5 --seed 11 --replicas 2 --t-end 5";
  ASSERT_EQ(run(args).code, 0) << read("stderr.txt");
  const std::string first = read("events_0.tsv");
  const std::string second_replica = read("events_1.tsv");
  ASSERT_EQ(run("--jobs 2 " + args).code, 0);
  EXPECT_EQ(read("events_0.tsv"), first);
  EXPECT_NE(first, second_replica);
  EXPECT_EQ(lines(first)[0], "time\tnode\tfrom\tto");
  EXPECT_TRUE(fs::exists(dir_ / "simulate_summary.json"));
  EXPECT_EQ(run("simulate --graph " + g + " --infected 99").code, 64);
}

TEST_F(CliTest, SynthesizeWritesANetworkAndLog) {
  std::mt19937_64 rng(3);
  std::ofstream(dir_ / "base.tsv") << [&] {
    std::ostringstream s;
    io::write_edge_list(s, random_strongly_connected(20, 4.0, rng));
    return s.str();
  }();
  const auto r = run("synthesize --base " + (dir_ / "base.tsv").string() +
                     " --objective undershoot --threshold 0.95 --seed 2");
  ASSERT_EQ(r.code, 0) << read("stderr.txt");
  const auto net = io::read_multilayer_json(dir_ / "synthesized.json");
  EXPECT_LT(psi(net.layer_s().matrix(), net.layer_a().matrix()), 0.95);
  EXPECT_EQ(lines(read("search_log.csv"))[0], "step,psi_sa,psi_as,lambda_ratio,accepted");

  const auto sym = run("synthesize --base " + (dir_ / "base.tsv").string() +
                       " --objective social-distancing --scale 1.5");
  EXPECT_EQ(sym.code, 64);
}

TEST_F(CliTest, SpectrumAndPsi) {
  const std::string g = write_net("f3.json", twelve_node_network());
  ASSERT_EQ(run("spectrum --graph " + g).code, 0) << read("stderr.txt");
  EXPECT_EQ(lines(read("eigvec_W_S.tsv")).size(), 13u);
  EXPECT_TRUE(fs::exists(dir_ / "eigvec_W_A.tsv"));

  const MultilayerNetwork same(complete(4), complete(4).scaled(0.5));
  const auto r = run("psi --graph " + write_net("same.json", same));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Psi(W_S,W_A) = 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("scenario monotone"), std::string::npos);
}
