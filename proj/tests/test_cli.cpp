#include <doctest.h>
#include <json.hpp>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mrfcut/pnm.hpp"
#include "mrfcut/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mrfcut");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = mrfcut::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("mrfcut_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// s=1, t=6; a small network with a unique max flow of 5.
constexpr const char* kDimacs =
    "c example\n"
    "p max 6 8\n"
    "n 1 s\n"
    "n 6 t\n"
    "a 1 2 3\n"
    "a 1 3 2\n"
    "a 2 4 2\n"
    "a 3 4 1\n"
    "a 3 5 2\n"
    "a 4 6 3\n"
    "a 5 6 2\n"
    "a 2 3 1\n";

}  // namespace

TEST_CASE("mincut: baseline and mnfc agree, labels use file ids") {
  TempDir tmp;
  const auto net = tmp.file("net.max");
  write_text(net, kDimacs);

  const Outcome base = run_cli({"mincut", net, "--out", tmp.file("base.txt")});
  REQUIRE(base.code == 0);
  const json b = json::parse(base.out);
  CHECK(b["schema"] == "mrfcut.report");
  CHECK(b["cut_value"] == 5);

  const Outcome multi = run_cli({"mincut", net, "--solver", "mnfc", "--cell-size", "2",
                                 "--fallback", "1", "--out", tmp.file("mnfc.txt")});
  REQUIRE(multi.code == 0);
  const json m = json::parse(multi.out);
  CHECK(m["cut_value"] == 5);
  REQUIRE(!m["levels"].empty());
  CHECK(m["levels"][0].contains("fixed_fraction"));
  CHECK(m["levels"][0]["cells"][0].contains("a"));
  CHECK(read_text(tmp.file("base.txt")) == read_text(tmp.file("mnfc.txt")));

  const std::string labels = read_text(tmp.file("base.txt"));
  CHECK(labels.find("2 ") == 0);
  CHECK(labels.find("\n5 ") != std::string::npos);
}

TEST_CASE("mincut: trivial two-node network") {
  TempDir tmp;
  const auto net = tmp.file("t.max");
  write_text(net, "p max 2 1\nn 1 s\nn 2 t\na 1 2 7\n");
  const Outcome r = run_cli({"mincut", net, "--out", tmp.file("x.txt")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["cut_value"] == 7);
  CHECK(read_text(tmp.file("x.txt")).empty());
}

TEST_CASE("mincut: input errors exit 2") {
  TempDir tmp;
  const auto net = tmp.file("bad.max");
  write_text(net, "p max 3 1\nn 1 s\nn 3 t\na 1 9 1\n");
  const Outcome r = run_cli({"mincut", net});
  CHECK(r.code == 2);
  CHECK(r.err.find("line") != std::string::npos);
  CHECK(run_cli({"mincut", tmp.file("missing.max")}).code == 2);
  CHECK(run_cli({"mincut", net, "--solver", "magic"}).code == 2);
  CHECK(run_cli({"mincut", net, "--grid", "3by3"}).code == 2);
}

TEST_CASE("restore: constant image has zero energy") {
  TempDir tmp;
  const auto in = tmp.file("c.pgm");
  mrfcut::write_image(mrfcut::AnyImage(mrfcut::GrayImage(6, 5, 16, 9)), fs::path(in));
  for (const char* model : {"u1", "u2"}) {
    const Outcome r = run_cli({"restore", in, "--model", model, "--out", tmp.file("r.pgm")});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["energy_initial"] == 0);
    CHECK(j["energy_final"] == 0);
    CHECK(read_text(in) == read_text(tmp.file("r.pgm")));
  }
}

TEST_CASE("restore: u1 and u2 agree on two-level input; binary model needs L=2") {
  TempDir tmp;
  const auto truth = tmp.file("truth.pgm");
  const auto noisy = tmp.file("noisy.pgm");
  REQUIRE(run_cli({"synth", "--kind", "binary", "--width", "24", "--height", "20", "--out", truth})
              .code == 0);
  REQUIRE(run_cli({"noise", truth, "--p", "0.2", "--seed", "5", "--out", noisy}).code == 0);

  std::vector<json> reports;
  std::vector<std::string> images;
  for (const char* model : {"binary", "u1", "u2"}) {
    const auto out = tmp.file(std::string(model) + ".pgm");
    const Outcome r = run_cli({"restore", noisy, "--model", model, "--solver", "mnfc", "--tile",
                               "8", "--fallback", "8", "--truth", truth, "--out", out});
    REQUIRE(r.code == 0);
    reports.push_back(json::parse(r.out));
    images.push_back(read_text(out));
  }
  CHECK(reports[0]["energy_final"] == reports[1]["energy_final"]);
  CHECK(reports[1]["energy_final"] == reports[2]["energy_final"]);
  CHECK(images[0] == images[1]);
  CHECK(reports[1]["metrics"]["restored"]["error_rate"].get<double>() <
        reports[1]["metrics"]["noisy"]["error_rate"].get<double>());
  CHECK(reports[1]["parameters"]["lambda_scaled"] == 65536);

  const auto gray = tmp.file("gray.pgm");
  REQUIRE(run_cli({"synth", "--kind", "gray", "--width", "8", "--height", "8", "--levels", "8",
                   "--low", "1", "--high", "6", "--out", gray})
              .code == 0);
  CHECK(run_cli({"restore", gray, "--model", "binary", "--out", tmp.file("x.pgm")}).code == 2);
  CHECK(run_cli({"restore", gray, "--levels", "4", "--out", tmp.file("x.pgm")}).code == 2);
  CHECK(run_cli({"restore", gray, "--levels", "8", "--out", tmp.file("x.pgm")}).code == 0);
  CHECK(run_cli({"restore", gray, "--model", "u2", "--max-arcs", "100", "--out",
                 tmp.file("x.pgm")})
            .code == 4);
  CHECK(run_cli({"restore", gray, "--lambda", "0", "--out", tmp.file("x.pgm")}).code == 2);
}

TEST_CASE("noise: seeded output is reproducible") {
  TempDir tmp;
  const auto binary = tmp.file("b.pgm");
  const auto gray = tmp.file("g.pgm");
  REQUIRE(run_cli({"synth", "--kind", "binary", "--out", binary}).code == 0);
  REQUIRE(run_cli({"synth", "--kind", "gray", "--out", gray}).code == 0);
  for (const char* kind : {"bernoulli", "exponential"}) {
    const auto in = std::string(kind) == "bernoulli" ? binary : gray;
    REQUIRE(run_cli({"noise", in, "--kind", kind, "--seed", "42", "--out", tmp.file("a.pgm")})
                .code == 0);
    REQUIRE(run_cli({"noise", in, "--kind", kind, "--seed", "42", "--out", tmp.file("b.pgm")})
                .code == 0);
    REQUIRE(run_cli({"noise", in, "--kind", kind, "--seed", "43", "--out", tmp.file("c.pgm")})
                .code == 0);
    CHECK(read_text(tmp.file("a.pgm")) == read_text(tmp.file("b.pgm")));
    CHECK(read_text(tmp.file("a.pgm")) != read_text(tmp.file("c.pgm")));
  }
  CHECK(run_cli({"noise", binary, "--p", "1.5", "--out", tmp.file("d.pgm")}).code == 2);
  CHECK(run_cli({"noise", gray, "--kind", "bernoulli", "--out", tmp.file("d.pgm")}).code == 2);
}

TEST_CASE("filter: reports metrics against the truth") {
  TempDir tmp;
  const auto in = tmp.file("in.pgm");
  const auto noisy = tmp.file("n.pgm");
  REQUIRE(run_cli({"synth", "--kind", "gray", "--out", in}).code == 0);
  REQUIRE(run_cli({"noise", in, "--kind", "exponential", "--out", noisy}).code == 0);
  const Outcome r =
      run_cli({"filter", noisy, "--kind", "median", "--truth", in, "--out", tmp.file("f.pgm")});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["metrics"]["filtered"]["mae"].get<double>() < j["metrics"]["input"]["mae"].get<double>());
}

TEST_CASE("verify and bench") {
  const Outcome v = run_cli({"verify", "--suite", "small", "--seed", "3"});
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["ok"] == true);

  const Outcome b = run_cli({"bench", "--size", "32", "--solver", "mnfc", "--tile", "8",
                             "--fallback", "8", "--threads", "2"});
  REQUIRE(b.code == 0);
  const json j = json::parse(b.out);
  CHECK(j["agree"] == true);
  CHECK(j["baseline"]["cut_value"] == j["mnfc"]["cut_value"]);
  const json& cell = j["mnfc"]["levels"][0]["cells"][0];
  CHECK(cell.contains("n"));
  CHECK(cell.contains("m"));
  CHECK(cell.contains("a"));
  CHECK(j["mnfc"]["levels"][0]["cells"].size() == 16);
}

TEST_CASE("top-level usage") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
}
