#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "kmarith.hpp"
#include "kmarith/cli/io.hpp"
#include "kmarith/cli/report.hpp"

using namespace kmarith;
using namespace kmarith::cli;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::NotFound;
}

struct CliRun {
  int status = -1;
  json doc;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("kmarith_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  CliRun run(const std::string& args) {
    std::string cmd = std::string(KMARITH_CLI) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, f)) > 0;) out.append(buf, n);
    int st = pclose(f);
    CliRun r;
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.doc = json::parse(out, nullptr, false);
    return r;
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST(Parse, GcmDocumentWithComments) {
  auto doc = parse_document("# A2\ngcm 2\n 2 -1   # first row\n-1 2\n\n");
  EXPECT_EQ(doc.kind, "gcm");
  EXPECT_EQ(doc.size, 2u);
  EXPECT_EQ(doc.matrix(), int_matrix({{2, -1}, {-1, 2}}));
}

TEST(Parse, FacetsDocument) {
  auto doc = parse_document("facets 3\n1 -1 0\n0 1 0\n-1 -1 1\n");
  EXPECT_EQ(doc.kind, "facets");
  EXPECT_EQ(doc.rows.size(), 3u);
  EXPECT_EQ(doc.rows[2], int_vector({-1, -1, 1}));
}

TEST(Parse, BigIntegersAreExact) {
  auto doc = parse_document("gram 1\n123456789012345678901234567890\n");
  EXPECT_EQ(doc.rows[0][0], Int("123456789012345678901234567890"));
}

TEST(Parse, Errors) {
  EXPECT_EQ(code_of([] { parse_document(""); }), Errc::Parse);
  EXPECT_EQ(code_of([] { parse_document("matrix 2\n1 0\n0 1\n"); }), Errc::Parse);
  EXPECT_EQ(code_of([] { parse_document("gcm 2\n2 -1\n-1 x\n"); }), Errc::Parse);
  EXPECT_EQ(code_of([] { parse_document("gcm 2\n2 -1\n"); }), Errc::Parse);
  EXPECT_EQ(code_of([] { parse_document("gcm 2\n2 -1 0\n-1 2\n"); }), Errc::Parse);
  EXPECT_EQ(code_of([] { parse_document("gcm 2\n2 -1 0\n-1 2 0\n"); }), Errc::NonSquare);
  EXPECT_EQ(code_of([] { parse_document("gcm 0\n"); }), Errc::Parse);
  EXPECT_EQ(code_of([] { parse_document("gcm 2\n2 -1\n-1 2\n0 0\n"); }), Errc::Parse);
}

TEST(Parse, IntegerList) {
  EXPECT_EQ(parse_int_list("1,2,2"), (std::vector<Int>{1, 2, 2}));
  EXPECT_EQ(parse_int_list("-3"), (std::vector<Int>{-3}));
  EXPECT_THROW(parse_int_list("1,,2"), Error);
  EXPECT_THROW(parse_int_list("1,a"), Error);
}

TEST(Report, Encodings) {
  EXPECT_EQ(to_json(Int(5)), json(5));
  EXPECT_EQ(to_json(Int("100000000000000000000000")), json("100000000000000000000000"));
  EXPECT_EQ(to_json(Rat(1, 2)), json("1/2"));
  EXPECT_EQ(to_json(int_matrix({{1, 2}, {3, 4}})), json::parse("[[1,2],[3,4]]"));
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_F(CliTest, Validate) {
  auto ok = run("validate " + write("a2.txt", "gcm 2\n2 -1\n-1 2\n"));
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(ok.doc["report"]["result"]["valid"], true);

  auto c2 = run("validate " + write("c2.txt", "gcm 2\n2 1\n-1 2\n"));
  EXPECT_EQ(c2.status, 1);
  EXPECT_EQ(c2.doc["report"]["result"]["error"]["location"], json::parse("[1,2]"));

  auto ns = run("validate " + write("ns.txt", "gcm 2\n2 -1 0\n-1 2 0\n"));
  EXPECT_EQ(ns.status, 1);
}

TEST_F(CliTest, Classify) {
  auto h2 = run("classify " + write("h2.txt", "gcm 2\n2 -3\n-3 2\n"));
  EXPECT_EQ(h2.status, 0);
  EXPECT_EQ(h2.doc["report"]["result"]["type"], "rank-two-hyperbolic");

  auto a2 = run("classify " + write("a2.txt", "gcm 2\n2 -1\n-1 2\n"));
  EXPECT_EQ(a2.doc["report"]["result"]["type"], "finite");

  auto inc = run("classify --max-iter 0 " + write("h3.txt", "gcm 3\n2 -2 0\n-2 2 -1\n0 -1 2\n"));
  EXPECT_EQ(inc.status, 2);
  EXPECT_EQ(inc.doc["report"]["result"]["type"], "inconclusive");
}

TEST_F(CliTest, Roots) {
  auto aff = run("roots --height 6 " + write("aff.txt", "gcm 2\n2 -2\n-2 2\n"));
  EXPECT_EQ(aff.status, 0);
  json im = json::array();
  for (const auto& r : aff.doc["report"]["result"]["imaginary_roots"]) im.push_back(r["coords"]);
  EXPECT_EQ(im, json::parse("[[1,1],[2,2],[3,3]]"));

  auto fin = run("roots --height 6 " + write("a2.txt", "gcm 2\n2 -1\n-1 2\n"));
  EXPECT_TRUE(fin.doc["report"]["result"]["imaginary_roots"].empty());

  auto one = run("roots --height 1 " + write("h3.txt", "gcm 3\n2 -2 0\n-2 2 -1\n0 -1 2\n"));
  EXPECT_EQ(one.doc["report"]["result"]["real_roots"].size(), 3u);
}

TEST_F(CliTest, Reflective) {
  std::string lor = write("lor.txt", "gram 3\n1 0 0\n0 1 0\n0 0 -1\n");
  auto r = run("reflective " + lor);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.doc["report"]["result"]["verdict"], "reflective");
  EXPECT_EQ(r.doc["report"]["result"]["polyhedron"]["facets"].size(), 3u);

  auto tiny = run("reflective --max-iter 0 " + lor);
  EXPECT_EQ(tiny.status, 2);
  EXPECT_EQ(tiny.doc["report"]["result"]["verdict"], "inconclusive");

  auto split = run("reflective " + write("split.txt", "gram 4\n1 0 0 0\n0 1 0 0\n0 0 -1 0\n0 0 0 -1\n"));
  EXPECT_EQ(split.status, 1);
  EXPECT_EQ(split.doc["report"]["result"]["error"]["code"], "NotHyperbolic");
}

TEST_F(CliTest, Synth) {
  std::string lor = write("lor.txt", "gram 3\n1 0 0\n0 1 0\n0 0 -1\n");
  std::string tri = write("tri.txt", "facets 3\n1 -1 0\n0 1 0\n-1 -1 1\n");
  auto s = run("synth --round-trip " + lor + " " + tri);
  EXPECT_EQ(s.status, 0);
  EXPECT_EQ(s.doc["report"]["result"]["synthesized"]["gcm"], json::parse("[[2,-1,0],[-2,2,-2],[0,-2,2]]"));
  EXPECT_EQ(s.doc["report"]["result"]["synthesized"]["round_trip"]["ok"], true);

  auto e = run("synth --enumerate " + lor + " " + tri);
  EXPECT_EQ(e.status, 0);
  bool has_one = false;
  for (const auto& l : e.doc["report"]["result"]["lambdas"]) has_one = has_one || l["lambda"] == json::parse("[1,1,1]");
  EXPECT_TRUE(has_one);

  std::string lat4 = write("lat4.txt", "gram 3\n4 0 0\n0 1 0\n0 0 -1\n");
  std::string sparse = write("sparse.txt", "facets 3\n1 0 0\n0 1 0\n-1 -2 2\n");
  auto g = run("synth " + lat4 + " " + sparse);
  EXPECT_EQ(g.status, 1);
  EXPECT_EQ(g.doc["report"]["result"]["violated"], "facets-generate-lattice");

  auto bad = run("synth --lambda 1,2,2 " + lor + " " + tri);
  EXPECT_EQ(bad.status, 1);
  EXPECT_EQ(bad.doc["report"]["result"]["violated"], "lambda-generation");
}

TEST_F(CliTest, ReportEnvelope) {
  auto r = run("classify " + write("h3.txt", "gcm 3\n2 -2 0\n-2 2 -1\n0 -1 2\n"));
  const auto& rep = r.doc["report"];
  for (const char* k : {"command", "args", "inputs", "input_digest", "result", "exit_code", "status"})
    EXPECT_TRUE(rep.contains(k)) << k;
  EXPECT_TRUE(r.doc["timing"].contains("elapsed_ms"));
  EXPECT_EQ(rep["inputs"][0]["sha256"].get<std::string>().size(), 64u);
}
