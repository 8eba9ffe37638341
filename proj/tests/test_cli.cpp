#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "inpk/cli.hpp"
#include "inpk/proof_json.hpp"
#include "inpk/syntax.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = inpk::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("inpk-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("parse")
{
    auto r = run({"parse", "@p"});
    CHECK(r.code == 0);
    CHECK(r.out == "(p -> p) -> p\n");
    auto bad = run({"parse", "p ->"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("parse error") != std::string::npos);
    CHECK(run({"parse", "p $ q"}).code == 2);
}

TEST_CASE("taut")
{
    auto r = run({"taut", "--n", "1", "--k", "0", "!p | p"});
    CHECK(r.code == 1);
    CHECK(r.out == "counterexample: p=F1\n");
    auto ok = run({"taut", "--n", "1", "--k", "0", "!!p | !p"});
    CHECK(ok.code == 0);
    CHECK(ok.out == "valid\n");
    auto js = run({"--json", "taut", "--n", "0", "--k", "1", "!(!p & p)"});
    CHECK(js.code == 1);
    auto doc = nlohmann::json::parse(js.out);
    CHECK(doc["valid"] == false);
    CHECK(doc["counterexample"]["p"] == "T1");
}

TEST_CASE("eval")
{
    auto r = run({"eval", "--n", "2", "--k", "1", "--val", "p=T1,q=F0", "!p -> q"});
    CHECK(r.code == 0);
    CHECK(r.out == "F0\n");
    CHECK(run({"eval", "--n", "0", "--k", "0", "--val", "p=T0", "q"}).code == 2);
    CHECK(run({"eval", "--n", "0", "--k", "0", "--val", "p=T3", "p"}).code == 2);
}

TEST_CASE("entails")
{
    auto r = run({"entails", "--n", "1", "--k", "1", "--hyp", "!p -> !q", "--hyp", "q", "--hyp", "p^*", "--hyp",
                  "q^o", "p"});
    CHECK(r.code == 0);
    CHECK(r.out == "valid\n");
    auto neg = run({"entails", "--n", "1", "--k", "1", "--hyp", "!p -> !q", "--hyp", "q", "p"});
    CHECK(neg.code == 1);
    CHECK(neg.out.rfind("counterexample: ", 0) == 0);
}

TEST_CASE("table")
{
    auto r = run({"table", "--n", "1", "--k", "0", "--connective", "star"});
    CHECK(r.code == 0);
    CHECK(r.out.find("F1   | F0") != std::string::npos);
    auto im = run({"table", "--n", "0", "--k", "0", "--connective", "imp"});
    CHECK(im.out == "imp | F0 T0\n----+------\nF0  | T0 T0\nT0  | F0 T0\n");
    CHECK(run({"table", "--n", "0", "--k", "0", "--connective", "nand"}).code == 2);
}

TEST_CASE("compare")
{
    auto r = run({"compare", "1", "0", "0", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("incomparable\n", 0) == 0);
    CHECK(r.out.find("witness: ") != std::string::npos);
    // Strictness shows as a witness valid in the larger logic only.
    CHECK(run({"compare", "1", "0", "0", "0"}).out ==
          "below\nwitness: !((!p -> !p) -> !p) -> p  (valid in (0,0), refuted in (1,0))\n");
    CHECK(run({"compare", "2", "3", "2", "3"}).out == "equal\n");
    auto above = run({"compare", "0", "0", "1", "0"});
    CHECK(above.out.rfind("above\n", 0) == 0);
}

TEST_CASE("capacity and usage errors")
{
    auto r = run({"taut", "--n", "17", "--k", "0", "p"});
    CHECK(r.code == 2);
    CHECK(r.err.find("capacity") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"taut", "--n", "1"}).code == 2);
    CHECK(run({"check", "/nonexistent/proof.json"}).code == 2);
}

TEST_CASE("prove then check")
{
    TempDir dir;
    std::string path = dir.file("pp.json");
    auto pr = run({"prove", "--n", "0", "--k", "0", "p -> p", "-o", path});
    CHECK(pr.code == 0);
    auto ck = run({"check", path});
    CHECK(ck.code == 0);
    CHECK(ck.out == "accepted\n");

    std::string path2 = dir.file("mep.json");
    CHECK(run({"prove", "--n", "1", "--k", "1", "!!p | !p", "-o", path2}).code == 0);
    CHECK(run({"check", path2}).out == "accepted\n");
    auto doc = nlohmann::json::parse(slurp(path2));
    CHECK(doc["logic"]["n"] == 1);
    CHECK(doc["hypotheses"].empty());
}

TEST_CASE("prove to stdout and trace")
{
    auto r = run({"prove", "--n", "0", "--k", "1", "~p | p", "--trace"});
    CHECK(r.code == 0);
    auto proof = inpk::load_proof(r.out);
    CHECK(inpk::check(proof).accepted);
    CHECK(r.err.find("eliminate p class 0 lines ") != std::string::npos);
}

TEST_CASE("prove refuses non-tautologies")
{
    auto r = run({"prove", "--n", "1", "--k", "0", "!p | p"});
    CHECK(r.code == 1);
    CHECK(r.out.find("counterexample: p=F1") != std::string::npos);
}

TEST_CASE("check rejects a tampered proof")
{
    TempDir dir;
    std::string path = dir.file("pp.json");
    REQUIRE(run({"prove", "--n", "0", "--k", "0", "p -> p", "-o", path}).code == 0);
    auto doc = nlohmann::ordered_json::parse(slurp(path));
    doc["lines"].back()["formula"] = "q -> q";
    std::ofstream(path) << doc.dump(2);
    auto r = run({"check", path});
    CHECK(r.code == 1);
    CHECK(r.out.rfind("rejected line ", 0) == 0);

    std::ofstream(path) << "{";
    CHECK(run({"check", path}).code == 2);
}

TEST_CASE("dt")
{
    TempDir dir;
    std::string in = dir.file("mp.json");
    std::ofstream(in) << R"({"logic":{"n":1,"k":1},"hypotheses":["p","p -> q"],"lines":[
        {"formula":"p","just":{"kind":"hyp","index":1}},
        {"formula":"p -> q","just":{"kind":"hyp","index":2}},
        {"formula":"q","just":{"kind":"mp","major":2,"minor":1}}]})";
    std::string out = dir.file("dt.json");
    auto r = run({"dt", in, "--discharge", "2", "-o", out});
    CHECK(r.code == 0);
    auto proof = inpk::load_proof(slurp(out));
    CHECK(inpk::check(proof).accepted);
    CHECK(proof.hypotheses.size() == 1);
    CHECK(inpk::render(proof.conclusion()) == "(p -> q) -> q");
    CHECK(run({"check", out}).code == 0);

    CHECK(run({"dt", in, "--discharge", "3"}).code == 2);
    CHECK(run({"dt", in, "--discharge", "0"}).code == 2);
}

TEST_CASE("output is deterministic")
{
    auto a = run({"prove", "--n", "1", "--k", "0", "p -> (q -> p)"});
    auto b = run({"prove", "--n", "1", "--k", "0", "p -> (q -> p)"});
    CHECK(a.out == b.out);
}
