#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "meandric/irreducible.hpp"

using meandric::tools::run_cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("meandric-cli-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string str() const { return path_.string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(CliEnumerate, SmallTables) {
  auto r = run({"enumerate", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("k=3: 5\n"), std::string::npos);
  EXPECT_NE(r.out.find("[0, 8, 12, 5]"), std::string::npos);

  r = run({"enumerate", "--n", "2", "--format", "json"});
  EXPECT_EQ(r.out,
            "{\"n\": 2, \"counts\": [{\"k\": 1, \"count\": 2}, {\"k\": 2, "
            "\"count\": 2}], \"polynomial\": [0, 2, 2]}\n");

  r = run({"enumerate", "--n", "1", "--format", "csv"});
  EXPECT_EQ(r.out, "n,k,count\n1,1,1\n");

  r = run({"enumerate", "--n", "4", "--loops", "1"});
  EXPECT_EQ(r.out, "n=4\nk=1: 42\n");
}

TEST(CliEnumerate, GuardAndGenfunRoute) {
  TempDir cache;
  auto r = run({"enumerate", "--n", "10"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("--use-genfun"), std::string::npos);

  r = run({"enumerate", "--n", "7", "--use-genfun", "--max-r", "2",
           "--cache-dir", cache.str()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto brute = run({"enumerate", "--n", "7"});
  for (const char* line : {"k=5: ", "k=6: ", "k=7: "}) {
    const auto at = brute.out.find(line);
    const auto expected = brute.out.substr(at, brute.out.find('\n', at) - at);
    EXPECT_NE(r.out.find(expected), std::string::npos) << expected;
  }
  EXPECT_EQ(r.out.find("k=4:"), std::string::npos);

  r = run({"enumerate", "--n", "7", "--use-genfun", "--max-r", "2", "--loops",
           "3", "--cache-dir", cache.str()});
  EXPECT_EQ(r.code, 2);
}

TEST(CliUsage, BadInvocations) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"enumerate"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--n", "3", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--n", "3", "--workers", "0"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--n", "3", "--workers", "auto"}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliIrreducible, CountsAndPairs) {
  auto r = run({"irreducible", "--n", "3", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3,2,0,2,1\n3,2,1,1,6\n3,2,2,0,1\n");

  r = run({"irreducible", "--n", "4", "--r", "2", "--emit-pairs"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("4;(1,3);(2,4)\n"), std::string::npos);

  r = run({"irreducible", "--n", "4"});
  EXPECT_NE(r.out.find("n=4 irreducible systems: 46\n"), std::string::npos);
  EXPECT_NE(r.out.find("compatible but empty (r,a,b): (2,0,2) (2,2,0)"),
            std::string::npos)
      << r.out;

  r = run({"irreducible", "--n", "13"});
  EXPECT_EQ(r.code, 3);
}

TEST(CliGenfun, PolynomialsAndGuards) {
  TempDir cache;
  auto r = run({"genfun", "--max-r", "2", "--format", "json", "--cache-dir",
                cache.str()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("{\"r\": 1, \"coeffs\": [2]}"), std::string::npos);
  EXPECT_NE(r.out.find("{\"r\": 2, \"coeffs\": [8,4,-12,4]}"), std::string::npos);

  r = run({"genfun", "--max-r", "0", "--cache-dir", cache.str()});
  EXPECT_NE(r.out.find("F_0 (t^1..t^4): 1, 2, 5, 14"), std::string::npos);

  EXPECT_EQ(run({"genfun", "--max-r", "7", "--cache-dir", cache.str()}).code, 3);
}

TEST(CliGenfun, OutputIndependentOfWorkers) {
  TempDir a, b;
  const auto one = run({"genfun", "--max-r", "3", "--format", "json",
                        "--workers", "1", "--cache-dir", a.str()});
  const auto four = run({"genfun", "--max-r", "3", "--format", "json",
                         "--workers", "4", "--cache-dir", b.str()});
  EXPECT_EQ(one.out, four.out);
  for (int n = 1; n <= 6; ++n) {
    const int rl = std::min(3, n - 1);
    EXPECT_EQ(slurp(meandric::cache_file_path(a.path(), n, rl)),
              slurp(meandric::cache_file_path(b.path(), n, rl)));
  }
}

TEST(CliGenfun, CacheDirFromEnvironment) {
  TempDir cache;
  ::setenv("MEANDER_CACHE_DIR", cache.str().c_str(), 1);
  const auto r = run({"genfun", "--max-r", "1"});
  ::unsetenv("MEANDER_CACHE_DIR");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(meandric::cache_file_path(cache.path(), 2, 1)));
}

TEST(CliAsympt, Constants) {
  TempDir cache;
  const auto r = run({"asympt", "--max-r", "3", "--format", "csv",
                      "--cache-dir", cache.str()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n3,4/3,0.752252778"), std::string::npos) << r.out;
  EXPECT_EQ(run({"asympt", "--max-r", "0"}).code, 2);
}

TEST(CliRender, DeterministicSvg) {
  TempDir dir;
  const auto file = (dir.path() / "fig.svg").string();
  auto r = run({"render", "--alpha", "(2,3)", "--beta", "(1,2)", "--n", "3",
                "--output", file});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("loops=1"), std::string::npos);
  const auto first = slurp(file);
  run({"render", "--alpha", "(2,3)", "--beta", "(1,2)", "--n", "3", "--output",
       file, "--workers", "3"});
  EXPECT_EQ(slurp(file), first);
  EXPECT_EQ(first.rfind("<svg", 0), 0u);

  // Upper arcs sweep one way, lower arcs the other: three of each.
  auto count = [](const std::string& s, const std::string& needle) {
    std::size_t k = 0;
    for (auto at = s.find(needle); at != std::string::npos;
         at = s.find(needle, at + 1))
      ++k;
    return k;
  };
  EXPECT_EQ(count(first, " 0 0 1 "), 3u);
  EXPECT_EQ(count(first, " 0 0 0 "), 3u);
  EXPECT_EQ(count(first, "<circle"), 6u);
}

TEST(CliRender, LoopsGetDistinctColours) {
  const auto r = run({"render", "--alpha", "", "--beta", "", "--n", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("loops=2"), std::string::npos);
  const auto first = r.out.find("stroke=\"hsl(");
  const auto second = r.out.find("stroke=\"hsl(", first + 1);
  const auto third = r.out.find("stroke=\"hsl(", second + 1);
  const auto colour = [&](std::size_t at) { return r.out.substr(at, 26); };
  // 0_2 against 0_2: arcs (0,1) and (2,3) belong to different circles.
  EXPECT_NE(colour(first), colour(second));
  EXPECT_NE(third, std::string::npos);
}

TEST(CliRender, Errors) {
  EXPECT_EQ(run({"render", "--alpha", "(1,3)(2,4)", "--beta", ""}).code, 2);
  EXPECT_EQ(run({"render", "--alpha", "(1,2)", "--beta", "(1,2,3)", "--n", "2"})
                .code,
            2);
  EXPECT_EQ(run({"render", "--alpha", "", "--beta", ""}).code, 2);
  EXPECT_EQ(run({"render", "--alpha", "(1,2)", "--beta", "",
                 "--output", "/nonexistent-dir/x.svg"})
                .code,
            1);
}

TEST(CliVerify, FreshCorruptAndMissingCache) {
  TempDir cache;
  auto r = run({"verify", "--cache-dir", cache.str()});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("verify: PASS"), std::string::npos);
  EXPECT_NE(r.out.find("PASS golden P_3"), std::string::npos);

  const auto victim = meandric::cache_file_path(cache.path(), 5, 4);
  ASSERT_TRUE(fs::exists(victim));
  std::ofstream(victim, std::ios::binary | std::ios::app) << "5,x\n";
  r = run({"verify", "--cache-dir", cache.str()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL cache integrity"), std::string::npos);
  EXPECT_NE(r.out.find(victim.string()), std::string::npos);

  fs::remove(victim);
  r = run({"verify", "--cache-dir", cache.str()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(victim));
}
