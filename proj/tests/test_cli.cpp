#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hooklab/cli.hpp"

using namespace hooklab;
using nlohmann::json;

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

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> out;
  for (const auto& line : lines(text)) out.push_back(json::parse(line));
  return out;
}

// "key=value key=value ..." after a leading label.
std::map<std::string, std::string> fields(const std::string& line) {
  std::map<std::string, std::string> out;
  std::istringstream in(line);
  for (std::string word; in >> word;) {
    const auto eq = word.find('=');
    if (eq != std::string::npos) out[word.substr(0, eq)] = word.substr(eq + 1);
  }
  return out;
}

std::string plain(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

TEST_CASE("verify han") {
  const Run r = run({"verify", "han", "--n-max", "3"});
  CHECK(r.code == kExitOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  const char* lhs[] = {"1", "1/2", "1/6"};
  for (int i = 0; i < 3; ++i) {
    const auto f = fields(rows[static_cast<std::size_t>(i)]);
    CHECK(f.at("lhs") == lhs[i]);
    CHECK(f.at("holds") == "true");
  }
}

TEST_CASE("verify yang and tbar") {
  const Run y = run({"verify", "yang", "--n-max", "1", "--json"});
  CHECK(y.code == kExitOk);
  const auto docs = json_lines(y.out);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].at("lhs") == "1");
  CHECK(docs[0].at("identity") == "yang");

  const Run t = run({"verify", "tbar", "--oracle", "const:1", "--n-max", "5", "--json"});
  CHECK(t.code == kExitOk);
  const char* inv[] = {"1", "1/2", "1/6", "1/24", "1/120"};
  const auto rows = json_lines(t.out);
  REQUIRE(rows.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(rows[static_cast<std::size_t>(i)].at("lhs") == inv[i]);

  CHECK(run({"verify", "han2", "--n-max", "3"}).code == kExitOk);
  CHECK(lines(run({"verify", "han"}).out).size() == 10);
}

TEST_CASE("verify lemma and labelprob") {
  const Run l = run({"verify", "lemma", "--family", "ordered", "--n-max", "4", "--json"});
  CHECK(l.code == kExitOk);
  for (const auto& d : json_lines(l.out)) {
    CHECK(d.at("holds") == true);
    CHECK(d.at("family") == "ordered(m=symbolic)");
  }
  const Run p = run({"verify", "labelprob", "--family", "tbar", "--oracle", "depth:2,3", "--n-max", "4"});
  CHECK(p.code == kExitOk);
  for (const auto& row : lines(p.out)) CHECK(fields(row).at("total_mass") == "1");
}

TEST_CASE("table and JSON modes agree") {
  for (const std::vector<std::string>& base :
       {std::vector<std::string>{"verify", "han", "--n-max", "5"},
        std::vector<std::string>{"verify", "tbar", "--oracle", "depth:3,1,2", "--n-max", "4"},
        std::vector<std::string>{"verify", "lemma", "--family", "binary", "--n-max", "4"},
        std::vector<std::string>{"census", "--n", "3"}}) {
    auto with_json = base;
    with_json.push_back("--json");
    const auto table = lines(run(base).out);
    const auto docs = json_lines(run(with_json).out);
    REQUIRE(table.size() == docs.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto f = fields(table[i]);
      for (const auto& [key, value] : docs[i].items()) {
        if (key == "identity" || key == "check" || key == "family" || key == "tree" || key == "hooks")
          continue;
        const std::string alias = key == "term_count"             ? "terms"
                                  : key == "completion_labelings" ? "f_hat"
                                  : key == "running_total"        ? "total"
                                                                  : key;
        REQUIRE(f.count(alias) == 1);
        CHECK(f.at(alias) == plain(value));
      }
    }
  }
}

TEST_CASE("sample") {
  const Run one = run({"sample", "--family", "binary", "--n", "1", "--count", "1", "--seed", "0"});
  CHECK(one.code == kExitOk);
  CHECK(one.out == "(:1.,.)\n");

  const Run path = run({"sample", "--family", "tbar", "--oracle", "const:1", "--n", "3", "--count", "2",
                        "--seed", "9"});
  CHECK(path.out == "(:1(:2(:3.)))\n(:1(:2(:3.)))\n");

  const std::vector<std::string> args{"sample", "--family", "binary", "--n", "4", "--count", "5", "--seed", "7"};
  const Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 5);

  const Run verbose = run({"sample", "--n", "3", "--seed", "2", "--verbose"});
  const auto v = lines(verbose.out);
  REQUIRE(v.size() == 3);
  CHECK(v[0].rfind("# label=2 parent=root", 0) == 0);
  CHECK(v[1].rfind("# label=3 ", 0) == 0);

  const Run js = run({"sample", "--family", "ordered", "--n", "5", "--count", "3", "--seed", "1", "--json"});
  CHECK(js.code == kExitOk);
  const auto docs = json_lines(js.out);
  REQUIRE(docs.size() == 3);
  CHECK(docs[2].at("index") == 2);
}

TEST_CASE("mc") {
  const Run r = run({"mc", "--n", "2", "--samples", "10000", "--seed", "3", "--json"});
  CHECK(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc.at("categories") == 2);
  CHECK(doc.at("dof") == 1);
  CHECK(doc.at("pass") == true);
  CHECK(doc.at("min_samples") == 10);
  CHECK(doc.at("seed") == 3);

  const Run table = run({"mc", "--n", "2", "--samples", "10000", "--seed", "3"});
  std::map<std::string, std::string> f;
  for (const auto& line : lines(table.out)) {
    const auto kv = fields(line);
    f.insert(kv.begin(), kv.end());
  }
  for (const auto& [key, value] : doc.items()) CHECK(f.at(key) == plain(value));

  CHECK(run({"mc", "--n", "5", "--samples", "100"}).code == kExitUsage);
  CHECK(run({"mc", "--n", "3", "--samples", "1000", "--alpha", "1.0", "--seed", "4"}).code ==
        kExitCheckFailed);

  const std::string path = "test_cli_census.csv";
  CHECK(run({"mc", "--n", "3", "--samples", "2000", "--csv", path}).code == kExitOk);
  std::ifstream csv(path);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "category,observed,expected");
  std::remove(path.c_str());
}

TEST_CASE("census") {
  const Run one = run({"census", "--n", "1"});
  CHECK(one.code == kExitOk);
  const auto rows = lines(one.out);
  REQUIRE(rows.size() == 2);
  CHECK(fields(rows[0]).at("f_hat") == "2");
  CHECK(fields(rows[0]).at("weight") == "1/2");
  CHECK(fields(rows[1]).at("total") == "1");

  const auto two = lines(run({"census", "--n", "2"}).out);
  REQUIRE(two.size() == 3);
  for (int i = 0; i < 2; ++i) {
    CHECK(fields(two[static_cast<std::size_t>(i)]).at("f_hat") == "8");
    CHECK(fields(two[static_cast<std::size_t>(i)]).at("weight") == "1/16");
  }
  CHECK(fields(two[2]).at("holds") == "true");
  CHECK(run({"census", "--n", "9"}).code == kExitUsage);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"verify", "nothing"}).code == kExitUsage);
  CHECK(run({"verify", "han", "--m", "3"}).code == kExitUsage);
  CHECK(run({"verify", "han", "--oracle", "const:2"}).code == kExitUsage);
  CHECK(run({"sample", "--n", "3", "--family", "binary", "--oracle", "const:2"}).code == kExitUsage);
  CHECK(run({"sample", "--n", "3", "--family", "tbar", "--m", "4"}).code == kExitUsage);
  CHECK(run({"sample", "--n", "5", "--family", "ordered", "--m", "2"}).code == kExitUsage);
  CHECK(run({"sample", "--n", "3", "--family", "ordered", "--m", "symbolic"}).code == kExitUsage);
  CHECK(run({"sample", "--n", "0"}).code == kExitUsage);
  CHECK(run({"sample"}).code == kExitUsage);
  CHECK(run({"sample", "--n", "x"}).code == kExitUsage);
  CHECK(run({"sample", "--n", "2", "--family", "forest"}).code == kExitUsage);
  const Run bad = run({"verify", "tbar", "--oracle", "depth:2,q"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("'q'") != std::string::npos);
  CHECK(run({"--help"}).code == kExitOk);
}
