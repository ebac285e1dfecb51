#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ordlab/cli.hpp"
#include "ordlab/report.hpp"

using namespace ordlab;

namespace {

struct Outcome {
  int status;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "ordlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

TEST_CASE("order row") {
  const auto r = call({"order", "--p", "7", "--u", "2"});
  CHECK(r.status == kExitOk);
  CHECK(r.out == "p,u,ord,index\n7,2,3,2\n");
}

TEST_CASE("usage and domain errors exit with 2") {
  CHECK(call({"order", "--p", "7"}).status == kExitUsage);
  CHECK(call({"order", "--p", "8", "--u", "2"}).status == kExitUsage);
  CHECK(call({"order", "--p", "7", "--u", "1"}).status == kExitUsage);
  CHECK(call({"census", "--x", "100", "--spec", "3:1", "--spec", "9:1"}).status == kExitUsage);
  CHECK(call({"expsum", "nonsense", "--p", "7"}).status == kExitUsage);
  CHECK(call({"expsum", "kernel", "--p", "7"}).status == kExitUsage);
  CHECK(call({"order", "--p", "7", "--u", "2", "--format", "xml"}).status == kExitUsage);
  CHECK(call({"order", "--p", "7", "--u", "2", "--workers", "0"}).status == kExitUsage);
  CHECK(call({}).status == kExitUsage);
  const auto bad = call({"order", "--p", "7", "--u", "2", "--format", "xml"});
  CHECK(bad.err.find("--format") != std::string::npos);
}

TEST_CASE("census row matches the library and a direct count") {
  const auto r = call({"census", "--x", "1000", "--spec", "3:1", "--spec", "2:2"});
  REQUIRE(r.status == kExitOk);
  const auto lines = split(r.out, '\n');
  CHECK(lines[0] == "x,two_x,k,specs,primes_total,R,skipped,M,e3_abs,lower_bound,ratio");
  const auto fields = split(lines[1], ',');
  CHECK(fields[0] == "1000");
  CHECK(fields[2] == "2");
  CHECK(fields[3] == "3:1;2:2");
  CHECK(fields[5] == "12");
}

TEST_CASE("csv and json carry the same values") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"census", "--x", "1000", "--spec", "3:1", "--spec", "2:2"},
           {"stats", "--p", "101", "--trials", "1000", "--seed", "3"},
           {"expsum", "rho", "--p", "1009", "--d", "2", "--a", "11"},
           {"avg-order", "--x", "100", "--u", "3"}}) {
    auto csv = call(args);
    auto json_args = args;
    json_args.insert(json_args.end(), {"--format", "json"});
    auto json = call(json_args);
    REQUIRE(csv.status == 0);
    REQUIRE(json.status == 0);
    const auto lines = split(csv.out, '\n');
    const auto header = split(lines[0], ',');
    const auto values = split(lines[1], ',');
    const auto parsed = nlohmann::json::parse(json.out);
    REQUIRE(parsed.size() == 1);
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto& v = parsed[0][header[i]];
      if (v.is_null()) {
        CHECK(values[i].empty());
      } else if (v.is_string()) {
        CHECK(v.get<std::string>() == values[i]);
      } else if (v.is_number_float()) {
        CHECK(v.get<double>() == std::stod(values[i]));
      } else {
        CHECK(v.dump() == values[i]);
      }
    }
  }
}

TEST_CASE("identical invocations are byte-identical across worker counts") {
  const std::vector<std::string> base = {"census", "--x", "20000", "--spec", "3:1", "--spec", "2:2"};
  auto one = base, four = base;
  one.insert(one.end(), {"--workers", "1"});
  four.insert(four.end(), {"--workers", "4"});
  CHECK(call(one).out == call(four).out);
  CHECK(call(base).out == call(base).out);
  const auto s1 = call({"stats", "--p", "101", "--trials", "5000", "--seed", "11", "--workers", "2"});
  const auto s2 = call({"stats", "--p", "101", "--trials", "5000", "--seed", "11", "--workers", "2"});
  CHECK(s1.out == s2.out);
}

TEST_CASE("workers flag wins over the environment") {
  ::setenv("ORDLAB_THREADS", "3", 1);
  const auto env = call({"stats", "--p", "101", "--trials", "5000", "--seed", "1"});
  const auto three = call({"stats", "--p", "101", "--trials", "5000", "--seed", "1", "--workers", "3"});
  const auto one = call({"stats", "--p", "101", "--trials", "5000", "--seed", "1", "--workers", "1"});
  ::unsetenv("ORDLAB_THREADS");
  const auto unset = call({"stats", "--p", "101", "--trials", "5000", "--seed", "1"});
  CHECK(env.out == three.out);
  CHECK(unset.out == one.out);
}

TEST_CASE("every subcommand produces a report") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"primitive-root", "--p", "1000003"},
           {"admissible", "--u", "3", "--u", "5", "--u", "15"},
           {"indicator", "--p", "7", "--spec", "2:2"},
           {"expsum", "kernel", "--p", "7", "--t", "1"},
           {"expsum", "coprime-kernel", "--p", "7", "--t", "2", "--d", "3"},
           {"expsum", "gauss", "--p", "97"},
           {"expsum", "weil", "--p", "11", "--d", "2", "--a", "1"},
           {"expsum", "resolvent", "--p", "101", "--d", "4"},
           {"expsum", "incomplete", "--p", "499", "--d", "1", "--a", "7", "--x", "249"},
           {"expsum", "rho-diff", "--p", "499", "--d", "2", "--a", "5"},
           {"expsum", "periodic", "--m", "15", "--w", "2", "--P", "3"},
           {"expsum", "coprime-periodic", "--m", "9", "--w", "2", "--P", "5", "--a", "2"},
           {"expsum", "double", "--p", "7", "--spec", "2:2"},
           {"mainterm", "--x", "10"},
           {"audit", "--x", "100", "--spec", "3:1", "--spec", "2:2"},
           {"stats", "--p", "7"},
           {"primes", "--lo", "10", "--hi", "20"},
           {"totient-avg", "--x", "1000", "--d", "1"}}) {
    const auto r = call(args);
    CHECK_MESSAGE(r.status == kExitOk, args[0], " ", r.err);
    CHECK(split(r.out, '\n').size() >= 3);
  }
  CHECK(call({"admissible", "--u", "3", "--u", "5", "--u", "15"}).out ==
        "tuple,admissible,witness,witness_sign\n3;5;15,0,1;1;-1,1\n");
  CHECK(call({"primes", "--lo", "10", "--hi", "20", "--q", "4", "--a", "1"}).out == "p\n13\n17\n");
  CHECK(call({"expsum", "double", "--p", "7", "--spec", "2:2"}).out.find(",5,") != std::string::npos);
}

TEST_CASE("output file") {
  const std::string path = "cli_output_test.csv";
  const auto r = call({"order", "--p", "7", "--u", "3", "--output", path});
  CHECK(r.status == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == "p,u,ord,index\n7,3,6,1\n");
  std::remove(path.c_str());
  CHECK(call({"order", "--p", "7", "--u", "3", "--output", "/nonexistent/dir/x.csv"}).status == kExitUsage);
}

TEST_CASE("verify exit status follows the criterion table") {
  const auto r = call({"verify", "--level", "quick"});
  const auto lines = split(r.out, '\n');
  std::size_t criteria = 0, passed = 0;
  for (const auto& line : lines) {
    if (line.rfind("criterion", 0) == 0) {
      ++criteria;
      passed += line.find(" PASS ") != std::string::npos;
    }
  }
  CHECK(criteria == 14);
  CHECK(r.out.find("summary: " + std::to_string(passed) + "/14 passed (level quick)") != std::string::npos);
  CHECK(r.status == (passed == 14 ? kExitOk : 1));
  CHECK(call({"verify", "--level", "medium"}).status == kExitUsage);
}

TEST_CASE("real formatting") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(1e20) == "1e+20");
  CHECK(cell_text(Cell{}) == "");
}
