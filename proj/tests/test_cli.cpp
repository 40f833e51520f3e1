#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
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
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("pmcanon-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

Run run(const std::string& args) {
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = std::string("\"") + PMCANON_CLI + "\" " + args + " 2>\"" +
                          err.string() + "\"";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = read_file(err);
  return r;
}

const std::string kExample = "3 4 4\n1 0 3 2\n0 2 1 0\n0 1 1 3\n";
const std::string kA = "4 4 3\n0 0 1 2\n0 0 2 2\n0 2 0 0\n1 0 0 0\n";
const std::string kB = "4 4 3\n0 0 0 2\n0 1 2 0\n0 2 2 0\n1 0 0 0\n";
const std::string kC = "4 4 3\n0 0 0 1\n0 0 2 0\n1 2 0 0\n2 2 0 0\n";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("encode") {
    auto r = run("encode " + write_file("ex.txt", kExample).string());
    CHECK(r.code == 0);
    CHECK(r.out == "r = 78 36 23\nc = 16 9 53 35\n");
    r = run("encode " + write_file("z.txt", "2 2 3\n0 0\n0 0\n").string());
    CHECK(r.out == "r = 0 0\nc = 0 0\n");
    r = run("encode " + write_file("c.txt", kC).string());
    CHECK(r.out == "r = 1 6 45 72\nc = 5 8 18 27\n");
  }

  TEST_CASE("encode reads stdin") {
    auto p = write_file("ex2.txt", kExample);
    auto r = run("encode - < \"" + p.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out == "r = 78 36 23\nc = 16 9 53 35\n");
  }

  TEST_CASE("check") {
    auto r = run("check " + write_file("a.txt", kA).string());
    CHECK(r.code == 0);
    CHECK(r.out == "semi-canonical: yes\ncanonical: no\n");
    r = run("check " + write_file("c.txt", kC).string());
    CHECK(r.out == "semi-canonical: yes\ncanonical: yes\n");
    r = run("check " + write_file("u.txt", "2 2 2\n1 0\n0 1\n").string());
    CHECK(r.code == 0);
    CHECK(r.out == "semi-canonical: no\ncanonical: no\n");

    r = run("check --report " + write_file("c.txt", kC).string());
    CHECK(r.out.starts_with("semi-canonical: yes\ncanonical: yes\ncond1: pass "));
    CHECK(r.out.ends_with("verdict: canonical\n"));
  }

  TEST_CASE("canonize") {
    auto r = run("canonize " + write_file("a.txt", kA).string());
    CHECK(r.code == 0);
    CHECK(r.out == kC);
    r = run("canonize " + write_file("b.txt", kB).string());
    CHECK(r.out == kC);
    r = run("canonize --exhaustive " + write_file("b.txt", kB).string());
    CHECK(r.out == kC);
    const std::string zero = "2 3 2\n0 0 0\n0 0 0\n";
    r = run("canonize " + write_file("z.txt", zero).string());
    CHECK(r.out == zero);
  }

  TEST_CASE("canonize witness is 1-based and reproduces the output") {
    auto r = run("canonize --witness " + write_file("a.txt", kA).string());
    REQUIRE(r.code == 0);
    REQUIRE(r.out.starts_with(kC));
    std::istringstream tail(r.out.substr(kC.size()));
    std::string label;
    std::vector<int> rows(4), cols(4);
    tail >> label;
    CHECK(label == "rows:");
    for (auto& v : rows) tail >> v;
    tail >> label;
    CHECK(label == "cols:");
    for (auto& v : cols) tail >> v;
    // B(rows(i), cols(j)) = A(i, j)
    const int a[4][4] = {{0, 0, 1, 2}, {0, 0, 2, 2}, {0, 2, 0, 0}, {1, 0, 0, 0}};
    const int c[4][4] = {{0, 0, 0, 1}, {0, 0, 2, 0}, {1, 2, 0, 0}, {2, 2, 0, 0}};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(c[rows[i] - 1][cols[j] - 1] == a[i][j]);
  }

  TEST_CASE("enumerate count-only") {
    auto r = run("enumerate 2 2 2 --count-only");
    CHECK(r.code == 0);
    CHECK(r.out == "count=7 burnside=7 agree=true\n");
    r = run("enumerate 1 1 5 --count-only");
    CHECK(r.out == "count=5 burnside=5 agree=true\n");
    r = run("enumerate 2 2 3 --count-only");
    CHECK(r.out == "count=27 burnside=27 agree=true\n");
  }

  TEST_CASE("enumerate stream") {
    auto r = run("enumerate 1 1 2");
    CHECK(r.code == 0);
    CHECK(r.out == "1 1 2\n0\n\n1 1 2\n1\n\n# count=2\n");
    r = run("enumerate 1 2 2");
    CHECK(r.out == "1 2 2\n0 0\n\n1 2 2\n0 1\n\n1 2 2\n1 1\n\n# count=3\n");
  }

  TEST_CASE("enumerate with a structured filter") {
    auto r = run("enumerate 2 2 3 --filter hadamard");
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("# predicate=hadamard k=2\n"));
    CHECK(r.out.ends_with("# count=2\n"));

    // p is forced to 3 for sign matrices
    auto forced = run("enumerate 2 2 2 --filter hadamard");
    CHECK(forced.code == 0);
    CHECK(forced.out == r.out);
    CHECK(forced.err.find("p = 3") != std::string::npos);

    r = run("enumerate 2 2 3 --filter hadamard --count-only");
    CHECK(r.out == "count=2\n");
    r = run("enumerate 3 3 3 --filter weighing:3 --count-only");
    CHECK(r.out == "count=0\n");
  }

  TEST_CASE("classify commands") {
    auto r = run("classify-hadamard 1");
    CHECK(r.code == 0);
    CHECK(r.out == "# predicate=hadamard k=1\n1 1 3\n1\n\n1 1 3\n2\n\n# count=2\n");
    r = run("classify-hadamard 3");
    CHECK(r.out == "# predicate=hadamard k=3\n# count=0\n");
    r = run("classify-weighing 4 4");
    auto h = run("classify-hadamard 4");
    CHECK(r.out.substr(r.out.find('\n')) == h.out.substr(h.out.find('\n')));
    CHECK(r.out.starts_with("# predicate=weighing k=4\n"));
  }

  TEST_CASE("count") {
    auto r = run("count 2 2 2");
    CHECK(r.code == 0);
    CHECK(r.out == "burnside=7\n");
    r = run("count 12 12 3");
    CHECK(r.code == 0);
    CHECK(r.out.size() > 40);
  }

  TEST_CASE("exit code 2 for malformed input and usage errors") {
    CHECK(run("encode " + write_file("bad.txt", "2 2\n0 0\n").string()).code == 2);
    CHECK(run("encode " + write_file("bad2.txt", "2 2 2\n0 0\n").string()).code == 2);
    CHECK(run("encode " + (scratch() / "missing.txt").string()).code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("enumerate 2 2").code == 2);
    CHECK(run("enumerate 2 3 3 --filter hadamard").code == 2);
    CHECK(run("enumerate 2 2 3 --filter bogus").code == 2);
    CHECK(run("classify-weighing 3 4").code == 2);
    CHECK(run("").code == 2);
  }

  TEST_CASE("exit code 3 for digits out of range") {
    auto r = run("check " + write_file("range.txt", "2 2 2\n0 2\n0 0\n").string());
    CHECK(r.code == 3);
    CHECK(r.out.empty());
  }

  TEST_CASE("exit code 4 when the budget runs out") {
    auto r = run("--budget 10 enumerate 4 4 2");
    CHECK(r.code == 4);
    CHECK(run("count 13 2 2").code == 4);
    CHECK(run("canonize --exhaustive " +
              write_file("wide.txt", "1 11 2\n0 0 0 0 0 0 0 0 0 0 1\n").string())
              .code == 4);
  }

  TEST_CASE("exit code 5 when counts disagree") {
    auto r = run("enumerate 3 3 3 --count-only --check theorem");
    CHECK(r.code == 5);
    CHECK(r.out == "count=758 burnside=738 agree=false\n");
    auto s = run("enumerate 3 3 3 --check theorem");
    CHECK(s.code == 5);
    CHECK(s.out.ends_with("# count=758\n"));
  }

  TEST_CASE("manifest") {
    const auto mpath = scratch() / "manifest.json";
    auto input = write_file("a.txt", kA);
    auto r = run("--manifest \"" + mpath.string() + "\" canonize " + input.string());
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(read_file(mpath));
    CHECK(j["exit_code"] == 0);
    CHECK(j["shape"]["n"] == 4);
    CHECK(j["shape"]["m"] == 4);
    CHECK(j["shape"]["p"] == 3);
    CHECK(j["input_digest"].get<std::string>().starts_with("fnv1a64:"));
    CHECK(j["workers"] == 1);
    CHECK(j["node_budget"] == 2000000000);
    CHECK(j["result"] == "r = 1 6 45 72");
    CHECK(j.contains("elapsed_ms"));
    CHECK(j["command"].size() == 5);

    // identical except timing
    run("--manifest \"" + mpath.string() + "\" canonize " + input.string());
    auto j2 = nlohmann::json::parse(read_file(mpath));
    j.erase("elapsed_ms");
    j2.erase("elapsed_ms");
    CHECK(j == j2);

    r = run("--manifest \"" + mpath.string() + "\" --budget 10 enumerate 4 4 2 --workers 2");
    auto j3 = nlohmann::json::parse(read_file(mpath));
    CHECK(j3["exit_code"] == 4);
    CHECK(j3["workers"] == 2);
    CHECK(j3["node_budget"] == 10);
    CHECK(j3["input_digest"].is_null());
  }

  TEST_CASE("worker count does not change the stream") {
    auto one = run("enumerate 3 3 2 --workers 1");
    auto four = run("enumerate 3 3 2 --workers 4");
    CHECK(one.code == 0);
    CHECK(four.code == 0);
    CHECK(one.out == four.out);
    CHECK(one.out.ends_with("# count=36\n"));
  }
}
