#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexfield/energetics.hpp"
#include "lexfield/corpus.hpp"

extern std::string g_cli_path;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Fixture {
 public:
  Fixture() {
    REQUIRE_MESSAGE(!g_cli_path.empty(),
                    "pass the lexfield binary as argv[1] or set LEXFIELD_CLI");
    dir_ = fs::temp_directory_path() /
           ("lexfield_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);

    std::ofstream words(dir_ / "w.txt");
    words << "alpha 0 0\nbeta 1 0\ngamma 0.5 1\ndelta -0.5 0.75\n";
    words.close();

    std::ofstream config(dir_ / "c.json");
    config << R"({"dim": 2, "kappa2": 0.5, "kappa3": 0.05, "pair_sigma": 1.5})";
    config.close();

    std::ofstream corpus(dir_ / "corpus.txt");
    corpus << "alpha beta alpha beta\nbeta alpha beta alpha\n";
    corpus.close();
  }

  ~Fixture() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  RunResult run(const std::string& args, const std::string& env = "") const {
    static int counter = 0;
    const fs::path out = dir_ / ("stdout_" + std::to_string(counter) + ".log");
    const fs::path err = dir_ / ("stderr_" + std::to_string(counter) + ".log");
    ++counter;

    std::string cmd = env.empty() ? "" : env + " ";
    cmd += "'" + g_cli_path + "' " + args + " > '" + out.string() + "' 2> '" +
           err.string() + "'";
    const int status = std::system(cmd.c_str());

    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path path(const std::string& name) const { return dir_ / name; }
  std::string file(const std::string& name) const {
    return "'" + (dir_ / name).string() + "'";
  }

 private:
  fs::path dir_;
};

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  Fixture fx;

  const RunResult none = fx.run("");
  CHECK(none.exit_code == 2);
  CHECK(none.err.find("valid subcommands") != std::string::npos);

  CHECK(fx.run("frobnicate").exit_code == 2);
  CHECK(fx.run("analogy --words " + fx.file("w.txt") + " --bogus a b c").exit_code == 2);
  CHECK(fx.run("navigate --words " + fx.file("w.txt") +
               " --phrase alpha --q0 0,0 --method simplex").exit_code == 2);
  CHECK(fx.run("energy --words " + fx.file("w.txt") +
               " --phrase alpha --region -1,1 --functional hamiltonian").exit_code == 2);
}

TEST_CASE("computation errors exit with code 1") {
  Fixture fx;
  const RunResult unknown =
      fx.run("neighbors --words " + fx.file("w.txt") + " zebra");
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.err.find("zebra") != std::string::npos);

  CHECK(fx.run("lm-loss --words " + fx.file("w.txt") + " --seq 'alpha zebra'")
            .exit_code == 1);
  CHECK(fx.run("field-sample --words " + fx.file("missing.txt") +
               " --phrase alpha --region -1,1").exit_code == 1);
}

TEST_CASE("field-sample emits a row-major CSV grid") {
  Fixture fx;
  const RunResult r = fx.run("field-sample --config " + fx.file("c.json") +
                             " --words " + fx.file("w.txt") +
                             " --phrase 'alpha beta' --region -3,3 --grid 5");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 26);  // header + 5^2 points
  CHECK(lines[0] == "q1,q2,phi");
  CHECK(lines[1].rfind("-3,-3,", 0) == 0);
  CHECK(lines[2].rfind("-3,-1.5,", 0) == 0);   // last axis advances fastest
  CHECK(lines[25].rfind("3,3,", 0) == 0);
}

TEST_CASE("region pairs broadcast across axes") {
  Fixture fx;
  const std::string base = "field-sample --words " + fx.file("w.txt") +
                           " --phrase 'alpha gamma' --grid 4";
  const RunResult once = fx.run(base + " --region -2,2");
  const RunResult twice = fx.run(base + " --region -2,2 --region -2,2");
  REQUIRE(once.exit_code == 0);
  CHECK(once.out == twice.out);

  CHECK(fx.run(base + " --region -2,2 --region -2,2 --region -2,2").exit_code == 2);
  CHECK(fx.run(base + " --region -2,2,3").exit_code == 2);
}

TEST_CASE("printed numbers round-trip to the exact double") {
  Fixture fx;
  const RunResult r = fx.run("lm-loss --words " + fx.file("w.txt") +
                             " --seq 'alpha beta gamma' --window 2");
  REQUIRE(r.exit_code == 0);

  const lexfield::Vocabulary vocab =
      lexfield::load_embeddings_file(fx.path("w.txt").string());
  const double expected =
      lexfield::lm_loss(vocab, {"alpha", "beta", "gamma"}, lexfield::FieldConfig{}, 2);
  CHECK(r.out == lexfield::format_double(expected) + "\n");
}

TEST_CASE("energy agrees with the library and reports monte-carlo spread") {
  Fixture fx;
  const std::string args = "energy --words " + fx.file("w.txt") +
                           " --phrase 'alpha beta gamma' --region -5,5 "
                           "--functional binding --lambda 2 --grid 64";
  const RunResult r = fx.run(args);
  REQUIRE(r.exit_code == 0);

  const lexfield::Vocabulary vocab =
      lexfield::load_embeddings_file(fx.path("w.txt").string());
  const lexfield::Phrase p = lexfield::make_phrase(vocab, {"alpha", "beta", "gamma"});
  const auto want = lexfield::binding_energy(
      p, lexfield::Region::grid({-5.0, -5.0}, {5.0, 5.0}, 64), lexfield::FieldConfig{},
      2.0);
  CHECK(r.out == lexfield::format_double(want.value) + "\n");

  const RunResult mc = fx.run("energy --words " + fx.file("w.txt") +
                              " --phrase 'alpha beta' --region -5,5 "
                              "--functional integrate --mc 500 --seed 4");
  REQUIRE(mc.exit_code == 0);
  const auto fields = lines_of(mc.out);
  REQUIRE(fields.size() == 1);
  CHECK(fields[0].find(' ') != std::string::npos);  // value plus std_error
}

TEST_CASE("LEXFIELD_CONFIG supplies the default configuration") {
  Fixture fx;
  const std::string args = "attention-compare --words " + fx.file("w.txt") +
                           " --phrase 'alpha beta gamma' --query 0 --format csv";
  const RunResult plain = fx.run(args);
  const RunResult via_env = fx.run(args, "LEXFIELD_CONFIG=" + fx.file("c.json"));
  const RunResult via_flag = fx.run(args + " --config " + fx.file("c.json"));
  REQUIRE(plain.exit_code == 0);
  REQUIRE(via_env.exit_code == 0);
  CHECK(via_env.out == via_flag.out);
  CHECK(via_env.out != plain.out);  // the configured pair_sigma changes the weights
}

TEST_CASE("config errors name the offending key") {
  Fixture fx;
  std::ofstream bad(fx.path("bad.json"));
  bad << R"({"kapa2": 1.0})";
  bad.close();
  const RunResult r = fx.run("lm-loss --words " + fx.file("w.txt") +
                             " --seq 'alpha beta' --config " + fx.file("bad.json"));
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("kapa2") != std::string::npos);
}

TEST_CASE("--out writes the payload plus a manifest") {
  Fixture fx;
  const RunResult r = fx.run("navigate --words " + fx.file("w.txt") +
                             " --phrase 'alpha beta' --q0 0.3,0.1 --dt 1e-2 --steps 4" +
                             " --out " + fx.file("traj.csv"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());

  const std::string payload = slurp(fx.path("traj.csv"));
  const auto lines = lines_of(payload);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "t,q1,q2,phi");

  const auto manifest = nlohmann::json::parse(slurp(fx.path("traj.csv.manifest.json")));
  CHECK(manifest["command"] == "navigate");
  CHECK(manifest["version"] == "0.1.0");
  CHECK(manifest["config_hash"] == "default");
  REQUIRE(manifest["argv"].is_array());
  CHECK(manifest["argv"][0] == "navigate");
}

TEST_CASE("replaying the manifest argv reproduces the file byte for byte") {
  Fixture fx;
  const std::string args = "energy --words " + fx.file("w.txt") +
                           " --phrase 'alpha beta' --region -4,4 --functional "
                           "integrate --mc 800 --seed 21 --out " +
                           fx.file("replay.txt");
  REQUIRE(fx.run(args).exit_code == 0);
  const std::string first = slurp(fx.path("replay.txt"));
  const auto manifest =
      nlohmann::json::parse(slurp(fx.path("replay.txt.manifest.json")));

  std::string replay;
  for (const auto& arg : manifest["argv"]) {
    replay += "'" + arg.get<std::string>() + "' ";
  }
  REQUIRE(fx.run(replay).exit_code == 0);
  CHECK(slurp(fx.path("replay.txt")) == first);
}

TEST_CASE("lm-fit writes a reloadable vocabulary") {
  Fixture fx;
  const RunResult r = fx.run("lm-fit --words " + fx.file("w.txt") + " --corpus " +
                             fx.file("corpus.txt") +
                             " --steps 3 --rate 0.1 --out " + fx.file("fit.txt"));
  REQUIRE(r.exit_code == 0);
  const auto history = lines_of(r.out);
  REQUIRE(history.size() == 4);
  for (std::size_t i = 1; i < history.size(); ++i) {
    CHECK(std::strtod(history[i].c_str(), nullptr) <=
          std::strtod(history[i - 1].c_str(), nullptr) + 1e-12);
  }

  const lexfield::Vocabulary fitted =
      lexfield::load_embeddings_file(fx.path("fit.txt").string());
  CHECK(fitted.size() == 4);
  CHECK(fitted.dim() == 2);
  CHECK(fs::exists(fx.path("fit.txt.manifest.json")));
}

TEST_CASE("every subcommand is byte-for-byte deterministic") {
  Fixture fx;
  const std::string w = fx.file("w.txt");
  const std::vector<std::string> commands = {
      "field-sample --words " + w + " --phrase 'alpha beta' --region -2,2 --grid 8",
      "navigate --words " + w + " --phrase 'alpha beta gamma' --q0 0.2,0.4 --dt 1e-3 --steps 50",
      "lyapunov --words " + w + " --phrase alpha --q0 0.1,0.2 --steps 1000 --seed 12",
      "energy --words " + w + " --phrase 'alpha beta' --region -4,4 --functional hamiltonian --grid 32",
      "energy --words " + w + " --phrase 'alpha beta' --region -4,4 --functional integrate --mc 1000 --seed 9",
      "attention-compare --words " + w + " --phrase 'alpha beta gamma delta' --query 1 --format csv",
      "analogy --words " + w + " alpha beta gamma --k 3",
      "neighbors --words " + w + " beta --k 3",
      "lm-loss --words " + w + " --seq 'alpha beta gamma beta alpha' --window 3",
      "lm-fit --words " + w + " --corpus " + fx.file("corpus.txt") +
          " --steps 2 --rate 0.1 --out " + fx.file("det.txt"),
  };
  for (const std::string& cmd : commands) {
    CAPTURE(cmd);
    const RunResult first = fx.run(cmd);
    const std::string payload_first =
        cmd.find("lm-fit") == 0 ? slurp(fx.path("det.txt")) : "";
    const RunResult second = fx.run(cmd);
    REQUIRE(first.exit_code == 0);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.out == second.out);
    if (cmd.find("lm-fit") == 0) {
      CHECK(payload_first == slurp(fx.path("det.txt")));
    }
  }
}
