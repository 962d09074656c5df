#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

const fs::path& workdir() {
  static const fs::path d = [] {
    const auto p = fs::temp_directory_path() / "pclab_cli_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

Run run(const std::string& args) {
  const auto log = workdir() / "log.txt";
  const std::string cmd = "cd '" + workdir().string() + "' && '" PCLAB_CLI "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("gue-model --no-such-flag 1").code == 2);
  CHECK(run("gue-model --bins 0").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("gue-model writes the model cdf") {
  const auto r = run("--output-dir a gue-model --beta-max 3 --bins 300");
  REQUIRE(r.code == 0);
  const std::string csv = read(workdir() / "a" / "gue_model.csv");
  CHECK(csv.rfind("beta,gue_cdf\r\n0,0\r\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 301);
  const auto meta = nlohmann::json::parse(read(workdir() / "a" / "gue_model.csv.meta.json"));
  CHECK(meta["metadata"]["config"].get<std::string>().find("bins = 300") != std::string::npos);
  CHECK(meta["metadata"].contains("config_hash"));
}

TEST_CASE("small-gap prints the threshold") {
  const auto r = run("--output-dir a small-gap");
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda_star=0.6072") != std::string::npos);
}

TEST_CASE("missing zeros is a coverage error naming zeros-ingest") {
  const auto r = run("--output-dir empty report");
  CHECK(r.code == 3);
  CHECK(r.out.find("zeros-ingest") != std::string::npos);
  CHECK(run("--output-dir empty falpha").code == 3);
}

TEST_CASE("bad zero files are validation errors naming the line") {
  std::ofstream(workdir() / "bad.txt") << "14.134725\n21.02\n20.5\n";
  const auto r = run("--output-dir b zeros-ingest bad.txt");
  CHECK(r.code == 2);
  CHECK(r.out.find("bad.txt:3") != std::string::npos);
  CHECK(run("--output-dir b zeros-ingest missing.txt").code == 4);
}

TEST_CASE("config files are applied and validated") {
  std::ofstream(workdir() / "good.cfg") << "bins = 12\nbeta_max = 2\n";
  std::ofstream(workdir() / "bad.cfg") << "bins = 12\nwho = knows\n";
  CHECK(run("--config good.cfg --output-dir c gue-model").code == 0);
  const std::string csv = read(workdir() / "c" / "gue_model.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
  const auto bad = run("--config bad.cfg gue-model");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("bad.cfg:2") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across thread counts") {
  REQUIRE(run("--output-dir z zeros-compute --height 1500").code == 0);
  REQUIRE(std::system(("cd '" + workdir().string() + "' && PCLAB_THREADS=1 '" PCLAB_CLI
                       "' --output-dir z falpha --alpha-step 0.05 > /dev/null && mv z/falpha.csv z/f1.csv")
                          .c_str()) == 0);
  REQUIRE(std::system(("cd '" + workdir().string() + "' && PCLAB_THREADS=4 '" PCLAB_CLI
                       "' --output-dir z falpha --alpha-step 0.05 > /dev/null && mv z/falpha.csv z/f4.csv")
                          .c_str()) == 0);
  CHECK(read(workdir() / "z" / "f1.csv") == read(workdir() / "z" / "f4.csv"));
  CHECK(run("--output-dir z s-of-t --t-min 20 --t-max 1000").code == 0);
  CHECK(run("--output-dir z s-of-t --t-max 2000").code == 3);
  CHECK(run("--output-dir z montgomery --x 10 --t 30 --height 1500").code == 0);
  CHECK(run("--output-dir z logderiv-check --sigma 0.5 --t 14.134725 --x 10").code == 2);
}
