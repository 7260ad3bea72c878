#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "torsion/cli.hpp"

using torsion::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& key) {
  return text.find(key) != std::string::npos;
}

struct TempFile {
  std::string path;
  TempFile(std::string p, const std::string& content) : path(std::move(p)) {
    std::ofstream f(path);
    f << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check-surgery exit codes and reports") {
  Result five = run({"check-surgery", "--n", "5"});
  CHECK(five.code == 0);
  CHECK(has(five.out, "rho(t0) = 1"));
  CHECK(has(five.out, "conclusion: infinite_order"));

  Result nine = run({"check-surgery", "--n", "9"});
  CHECK(nine.code == 2);
  CHECK(has(nine.out, "conclusion: inconclusive"));

  Result even = run({"check-surgery", "--n", "4"});
  CHECK(even.code == 1);
  CHECK(has(even.err, "error:"));
  CHECK(has(even.err, "odd framing"));

  Result json = run({"check-surgery", "--n", "5", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(nlohmann::json::parse(json.out).at("conclusion") == "infinite_order");
}

TEST_CASE("rho-surgery") {
  Result five = run({"rho-surgery", "--n", "5"});
  CHECK(five.code == 0);
  CHECK(has(five.out, "rho0 = 1 (mod 2)"));
  CHECK(has(five.out, "refinement: present"));
  CHECK(has(five.out, "rho(t_1) = 1/5"));

  Result even = run({"rho-surgery", "--n", "4"});
  CHECK(even.code == 0);
  CHECK(has(even.out, "refinement: absent"));

  CHECK(run({"rho-surgery", "--n", "0"}).code == 1);

  Result json = run({"rho-surgery", "--n", "5", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(nlohmann::json::parse(json.out).at("rho0") == "1");
}

TEST_CASE("analyze-presentation") {
  TempFile pres("/tmp/cli_pres.json", R"({"matrix":[[2,1],[1,2]]})");
  Result text = run({"analyze-presentation", "--file", pres.path});
  CHECK(text.code == 0);
  CHECK(has(text.out, "h1: Z/3 (order 3)"));
  CHECK(has(text.out, "nondegenerate: yes"));

  Result json = run({"analyze-presentation", "--file", pres.path, "--format", "json"});
  CHECK(json.code == 0);
  nlohmann::json j = nlohmann::json::parse(json.out);
  CHECK(j.at("h1") == nlohmann::json::parse("[[3,1,1]]"));
  CHECK(j.at("form").at("gram") == nlohmann::json::parse(R"([["1/3"]])"));

  // A bare matrix, without the wrapping object, is accepted too.
  TempFile bare("/tmp/cli_bare.json", "[[5]]");
  Result b = run({"analyze-presentation", "--file", bare.path});
  CHECK(b.code == 0);
  CHECK(has(b.out, "h1: Z/5 (order 5)"));

  Result missing = run({"analyze-presentation", "--file", "/tmp/cli_nope.json"});
  CHECK(missing.code == 1);
  CHECK(has(missing.err, "cannot open"));
}

TEST_CASE("enumerate-metabolizers") {
  Result two = run({"enumerate-metabolizers", "--form", "1,2", "--p", "3", "--n", "1"});
  CHECK(two.code == 0);
  CHECK(has(two.out, "metabolizers: 2"));

  Result none = run({"enumerate-metabolizers", "--form", "1,1", "--p", "3", "--n", "1"});
  CHECK(none.code == 0);
  CHECK(has(none.out, "metabolizers: 0"));

  Result square = run({"enumerate-metabolizers", "--form", "1", "--p", "3", "--n", "1"});
  CHECK(square.code == 0);  // conclusive obstruction
  CHECK(has(square.out, "SquareObstruction"));
  CHECK(has(square.out, "conclusion: obstructed_square"));

  TempFile form("/tmp/cli_form.json",
                R"({"type":"diagonal","terms":[{"p":3,"n":1,"unit":1},{"p":3,"n":1,"unit":2}]})");
  Result from_file = run({"enumerate-metabolizers", "--file", form.path});
  CHECK(from_file.code == 0);
  CHECK(has(from_file.out, "metabolizers: 2"));

  CHECK(run({"enumerate-metabolizers", "--form", "1,2"}).code == 1);  // no --p/--n
  CHECK(run({"enumerate-metabolizers"}).code == 1);
  CHECK(run({"enumerate-metabolizers", "--form", "1,2", "--p", "3", "--n", "1",
             "--file", form.path})
            .code == 1);

  Result json = run({"enumerate-metabolizers", "--form", "1,2", "--p", "3", "--n",
                     "1", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(nlohmann::json::parse(json.out).at("count") == 2);
}

TEST_CASE("verify-proposition") {
  Result four = run({"verify-proposition", "--p", "3", "--n", "1", "--m", "2",
                     "--form", "sum4-unit1"});
  CHECK(four.code == 0);
  CHECK(has(four.out, "metabolizers checked: 8"));
  CHECK(has(four.out, "proposition holds: yes"));

  // Default form is the 2m-fold sum of the unit-1 form.
  Result vacuous = run({"verify-proposition", "--p", "3", "--n", "1", "--m", "1"});
  CHECK(vacuous.code == 0);
  CHECK(has(vacuous.out, "metabolizers checked: 0"));

  CHECK(run({"verify-proposition", "--p", "3", "--n", "1", "--m", "2", "--form",
             "1,2"})
            .code == 1);  // rank mismatch
  CHECK(run({"verify-proposition", "--p", "3", "--n", "1", "--m", "1", "--form",
             "sum0-unit1"})
            .code == 1);
  CHECK(run({"verify-proposition", "--p", "3", "--n", "1", "--m", "33", "--form",
             "sum66-unit1"})
            .code == 1);  // summand cap
  CHECK(run({"verify-proposition", "--p", "5", "--n", "1", "--m", "1"}).code == 1);

  Result json = run({"verify-proposition", "--p", "3", "--n", "1", "--m", "1",
                     "--form", "1,2", "--format", "json"});
  CHECK(json.code == 0);
  nlohmann::json j = nlohmann::json::parse(json.out);
  CHECK(j.at("holds") == true);
  CHECK(j.at("records").size() == 2);

  // Parallel runs emit byte-identical reports.
  Result parallel = run({"verify-proposition", "--p", "3", "--n", "1", "--m", "1",
                         "--form", "1,2", "--format", "json", "--jobs", "4"});
  CHECK(parallel.out == json.out);
}

TEST_CASE("check-independence") {
  TempFile family("/tmp/cli_family.json",
                  R"({"manifolds":[{"surgery":3},{"surgery":7}]})");
  Result ok = run({"check-independence", "--file", family.path});
  CHECK(ok.code == 0);
  CHECK(has(ok.out, "assign p = 3 (n = 1) to surgery(3)"));
  CHECK(has(ok.out, "conclusion: independent"));

  TempFile bad("/tmp/cli_badfam.json", R"({"manifolds":[{"h1":[[3,2,1]]}]})");
  Result fail = run({"check-independence", "--file", bad.path});
  CHECK(fail.code == 2);
  CHECK(has(fail.out, "conclusion: inconclusive"));
  CHECK(has(fail.out, "[FAIL] odd exponent"));

  Result json = run({"check-independence", "--file", family.path, "--format", "json"});
  CHECK(json.code == 0);
  CHECK(nlohmann::json::parse(json.out).at("verdict").at("conclusion") ==
        "independent");
}

TEST_CASE("check-knots") {
  TempFile knots("/tmp/cli_knots.json",
                 R"({"knots":[{"determinant":3,"cyclic":true},
                              {"determinant":7,"cyclic":true},
                              {"determinant":11,"cyclic":true}]})");
  Result fam = run({"check-knots", "--file", knots.path});
  CHECK(fam.code == 0);
  CHECK(has(fam.out, "conclusion: independent"));

  TempFile five("/tmp/cli_det5.json",
                R"({"knots":[{"determinant":5,"cyclic":true}]})");
  Result inconclusive = run({"check-knots", "--file", five.path});
  CHECK(inconclusive.code == 2);
  CHECK(has(inconclusive.out, "[FAIL] prime 3 mod 4"));

  TempFile pair("/tmp/cli_pair.json",
                R"({"knots":[{"name":"K","determinant":3,"cyclic":true},
                             {"name":"J","determinant":49,"cyclic":true}]})");
  Result nonzero = run({"check-knots", "--file", pair.path, "--m", "2"});
  CHECK(nonzero.code == 0);
  CHECK(has(nonzero.out, "conclusion: nonzero"));

  CHECK(run({"check-knots", "--file", knots.path, "--m", "2"}).code == 1);
  CHECK(run({"check-knots", "--file", pair.path, "--m", "0"}).code == 1);

  Result json = run({"check-knots", "--file", pair.path, "--m", "2", "--format",
                     "json"});
  CHECK(json.code == 0);
  CHECK(nlohmann::json::parse(json.out).at("conclusion") == "nonzero");
}

TEST_CASE("validate-dtable") {
  TempFile good("/tmp/cli_dgood.json",
                R"({"name":"S3_3","surgery":3,
                    "d_table":{"0":"1/2","1":"11/6","2":"11/6"}})");
  Result ok = run({"validate-dtable", "--file", good.path});
  CHECK(ok.code == 0);
  CHECK(has(ok.out, "all axioms satisfied"));

  TempFile bad("/tmp/cli_dbad.json",
               R"({"name":"S3_3","surgery":3,
                   "d_table":{"0":"1/2","1":"11/6","2":"5/6"}})");
  Result fail = run({"validate-dtable", "--file", bad.path});
  CHECK(fail.code == 2);
  CHECK(has(fail.out, "violations"));

  TempFile none("/tmp/cli_dnone.json", R"({"surgery":3})");
  CHECK(run({"validate-dtable", "--file", none.path}).code == 1);

  Result json = run({"validate-dtable", "--file", good.path, "--format", "json"});
  CHECK(json.code == 0);
  CHECK(nlohmann::json::parse(json.out).at("ok") == true);
}

TEST_CASE("argument errors and help") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"check-surgery"}).code == 1);               // missing --n
  CHECK(run({"check-surgery", "--n", "5", "--bogus"}).code == 1);
  CHECK(run({"check-surgery", "--n", "x"}).code == 1);
  CHECK(run({"check-surgery", "--n", "5", "--format", "yaml"}).code == 1);
  CHECK(run({"check-surgery", "--n", "5", "--jobs", "0"}).code == 1);

  Result help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(has(help.out, "check-surgery"));
  Result sub_help = run({"check-surgery", "--help"});
  CHECK(sub_help.code == 0);
  CHECK(has(sub_help.out, "--n"));
}

TEST_CASE("json output is byte-stable") {
  std::vector<std::string> args{"enumerate-metabolizers", "--form", "sum4-unit1",
                                "--p", "3", "--n", "1", "--format", "json"};
  Result first = run(args);
  Result second = run(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(nlohmann::json::parse(first.out).at("count") == 8);
}

}  // TEST_SUITE
