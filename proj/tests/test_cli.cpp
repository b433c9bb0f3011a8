#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "hamcount/digraph.hpp"
#include "hamcount/io.hpp"
#include "hamcount/sampler.hpp"
#include "support.hpp"

using namespace hamcount;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; `redirect` picks what lands in `out`.
Run cli(const std::string& args, const std::string& redirect = "2>/dev/null") {
  const std::string cmd = std::string(HAMCOUNT_BIN) + " " + args + " " + redirect;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (!line.starts_with("#") && !line.starts_with("wall_ms=")) out += line + '\n';
  return out;
}

std::string value_of(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find('\n' + key + '=');
  if (pos == std::string::npos) return {};
  const std::size_t start = pos + key.size() + 2;
  return text.substr(start, text.find('\n', start) - start);
}

class Scratch {
 public:
  Scratch() {
    dir_ = fs::temp_directory_path() / ("hamcount_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string graph(const std::string& name, const WeightedDigraph& g) const {
    std::ostringstream ss;
    write_digraph(ss, g);
    return write(name, ss.str());
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

WeightedDigraph complete(int n) {
  std::vector<Edge> e;
  for (int t = 1; t <= n; ++t)
    for (int h = 1; h <= n; ++h)
      if (t != h) e.push_back({t, h, 1.0});
  return WeightedDigraph(n, e);
}

WeightedDigraph cycle(int n) {
  std::vector<Edge> e;
  for (int v = 1; v <= n; ++v) e.push_back({v, v % n + 1, 1.0});
  return WeightedDigraph(n, e);
}

}  // namespace

TEST_CASE("cli count") {
  Scratch s;
  const std::string k6 = s.graph("k6", complete(6));
  const Run r = cli("count " + k6 + " --epsilon 0.25 --delta 0.1 --seed 11");
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("# command=count\n"));
  const double est = std::stod(value_of(r.out, "estimate"));
  CHECK(est >= 0.75 * 120);
  CHECK(est <= 1.25 * 120 * (1 + 0.25 / 3));
  CHECK(value_of(r.out, "s") == "767");
}

TEST_CASE("cli count: malformed input names the line") {
  Scratch s;
  const Run r = cli("count " + s.write("bad", "3 2\n1 2\n2 x\n"), "2>&1 >/dev/null");
  CHECK(r.code == 2);
  CHECK(r.out.find("line 3") != std::string::npos);
  CHECK(cli("count " + s.path("missing")).code == 2);
  CHECK(cli("count").code == 1);
  CHECK(cli("count " + s.path("missing") + " --mode sideways").code == 1);
}

TEST_CASE("cli count: fixed mode without N uses the suggested budget") {
  Scratch s;
  const std::string k8 = s.graph("k8", complete(8));
  const Run r = cli("count " + k8 + " --mode fixed --epsilon 0.9 --delta 0.9 --seed 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("# note=N not given; using suggest_N") != std::string::npos);
  CHECK(r.out.find("# N=") != std::string::npos);
  CHECK(cli("count " + k8 + " --mode fixed --max-trials 10").code == 1);
}

TEST_CASE("cli count: no Hamiltonian cycle exhausts the budget") {
  Scratch s;
  const std::string two = s.write("two", "6 6\n1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n");
  const Run r = cli("count " + two + " --max-trials 50000");
  CHECK(r.code == 4);
  CHECK(value_of(r.out, "s") == "0");
  CHECK(value_of(r.out, "estimate") == "0");
}

TEST_CASE("cli sample: directed 5-cycle") {
  Scratch s;
  const Run r = cli("sample " + s.graph("c5", cycle(5)) + " --count 3 --seed 4");
  CHECK(r.code == 0);
  CHECK(data_lines(r.out).starts_with("1 2 3 4 5 1\n1 2 3 4 5 1\n1 2 3 4 5 1\ntrials="));
}

TEST_CASE("cli sample: complete digraph n=6 is uniform over 120 cycles") {
  Scratch s;
  const WeightedDigraph k6 = complete(6);
  const Run r = cli("sample " + s.graph("k6", k6) + " --count 1000 --seed 8");
  REQUIRE(r.code == 0);
  std::istringstream in(data_lines(r.out));
  std::map<std::vector<int>, std::uint64_t> counts;
  std::string line;
  int cycles = 0;
  while (std::getline(in, line) && line.find('=') == std::string::npos) {
    std::istringstream ls(line);
    std::vector<int> v;
    for (int x; ls >> x;) v.push_back(x);
    CHECK(is_valid_cycle(k6, v));
    ++counts[v];
    ++cycles;
  }
  CHECK(cycles == 1000);
  CHECK(testing::uniform_chi_square_pvalue(counts, 120) > 1e-3);
}

TEST_CASE("cli sample: exhaustion gives partial output and a nonzero exit") {
  Scratch s;
  const std::string two = s.write("two", "6 6\n1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n");
  const Run r = cli("sample " + two + " --count 2 --max-trials 100000");
  CHECK(r.code == 4);
  CHECK(value_of(r.out, "emitted") == "0");
  CHECK(value_of(r.out, "trials") == "100000");
}

TEST_CASE("cli exact") {
  Scratch s;
  Run r = cli("exact " + s.graph("k5", complete(5)));
  CHECK(r.code == 0);
  CHECK(value_of(r.out, "ham") == "24");
  CHECK(value_of(r.out, "per") == "44");
  r = cli("exact " + s.graph("c3", cycle(3)) + " --what both");
  CHECK(value_of(r.out, "ham") == "1");
  CHECK(value_of(r.out, "per") == "1");
  r = cli("exact " + s.graph("c3", cycle(3)) + " --what per");
  CHECK(value_of(r.out, "ham").empty());

  const std::string big = s.graph("k30", complete(30));
  r = cli("exact " + big, "2>&1 >/dev/null");
  CHECK(r.code == 5);
  CHECK(r.out.find("cap 22") != std::string::npos);
  r = cli("exact " + big + " --what per", "2>&1 >/dev/null");
  CHECK(r.code == 5);
  CHECK(r.out.find("cap 24") != std::string::npos);
  CHECK(cli("exact " + s.graph("k5", complete(5)) + " --what ham", "").code == 0);
  CHECK(std::system(("HAM_ORACLE_CAP=4 " + std::string(HAMCOUNT_BIN) + " exact " + s.path("k5") +
                     " >/dev/null 2>&1").c_str()) != 0);
}

TEST_CASE("cli gen, reduce, ratio") {
  Scratch s;
  const std::string out = s.path("g10");
  CHECK(cli("gen --n 10 --alpha 0.8 --seed 3 --out " + out).code == 0);
  std::ifstream in(out);
  const WeightedDigraph g = read_digraph(in);
  CHECK(g.n() == 10);
  CHECK(density(g).min_degree >= 8);

  const Run red = cli("reduce " + s.write("k4u", "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n"));
  CHECK(data_lines(red.out) == "hc=3 dhc=6 consistent\n");

  const Run rat = cli("ratio --alpha 0.85 --n 8..12 --trials 2 --seed 1");
  CHECK(rat.code == 0);
  std::istringstream rows(data_lines(rat.out));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "n,alpha,seed,per,ham,ratio,bound_exponent");
  int count = 0;
  while (std::getline(rows, line)) {
    CHECK(line.substr(line.rfind(',') + 1) == "6");
    ++count;
  }
  CHECK(count == 10);
}

TEST_CASE("cli output does not depend on the thread count") {
  Scratch s;
  const std::string g = s.graph("g", gen_dense_digraph(30, 0.8, 6));
  for (const std::string cmd : {"count " + g + " --seed 5", "count " + g + " --seed 5 --mode fixed --N 20",
                                "sample " + g + " --count 40 --seed 5", std::string("validate --n 7..8 --runs 3 --seed 5")}) {
    const Run one = cli(cmd + " --threads 1");
    REQUIRE(one.code == 0);
    for (const char* threads : {" --threads 4", " --threads 8"}) {
      const Run other = cli(cmd + threads);
      CHECK(other.code == 0);
      CHECK(data_lines(other.out) == data_lines(one.out));
      CHECK(other.out.substr(0, other.out.find("\nn=")) == one.out.substr(0, one.out.find("\nn=")));
    }
  }
}
