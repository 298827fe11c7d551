#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"

#include "idem/cli.hpp"
#include "idem/idempotent.hpp"
#include "idem/matrix_io.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = idem::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
    std::ifstream f(std::string(IDEM_GOLDEN_DIR) + "/" + name);
    REQUIRE(f);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

const char* kExampleA = "Z 4 4\n6 -2 -3 7\n15 -5 -9 21\n21 -7 15 -35\n9 -3 6 -14\n";

std::vector<idem::Matrix> parse_all(const std::string& text) {
    std::istringstream in(text);
    idem::MatrixReader reader(in);
    std::vector<idem::Matrix> ms;
    while (auto m = reader.next()) ms.push_back(*m);
    return ms;
}

} // namespace

TEST_CASE("check") {
    auto r = run({"check"}, kExampleA);
    CHECK(r.code == 0);
    CHECK(r.out == "idempotent rank=2\n");

    r = run({"check", "--json"}, R"({"ring":"Fp:2","rows":2,"cols":2,"entries":[[1,1],[0,0]]})");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out) == json{{"idempotent", true}, {"rank", 1}});

    r = run({"check"}, "Z 2 2\n1 1\n0 1\n");
    CHECK(r.code == 1);
    CHECK(r.out == "not idempotent\n");

    r = run({"check"}, "Z 1 1\n1\nZ 1 1\n0\n");
    CHECK(r.code == 0);
    CHECK(r.out == "idempotent rank=1\nidempotent rank=0\n");

    r = run({"check", "--ring", "Q"}, kExampleA);
    CHECK(r.code == 1);
    CHECK(r.err.find("RingMismatch") != std::string::npos);
}

TEST_CASE("count") {
    CHECK(run({"count", "--n", "2", "--r", "1", "--q", "2"}).out == "6\n");
    CHECK(run({"count", "--n", "3", "--q", "2"}).out == "58\n");
    CHECK(run({"count", "--n", "3", "--r", "1", "--q", "2"}).out == "28\n");
    auto j = json::parse(run({"count", "--n", "2", "--q", "3", "--json"}).out);
    CHECK(j["count"] == "14");
    CHECK(j["r"].is_null());
    CHECK(run({"count", "--n", "2", "--r", "3", "--q", "2"}).code == 2);
}

TEST_CASE("enumerate") {
    auto r = run({"enumerate", "--n", "2", "--p", "2"});
    CHECK(r.code == 0);
    auto ms = parse_all(r.out);
    CHECK(ms.size() == 8);
    for (const auto& m : ms) CHECK(idem::is_idempotent(m));
    auto lines = run({"enumerate", "--n", "2", "--p", "3", "--json"}).out;
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 14);
    CHECK(run({"enumerate", "--n", "2", "--p", "4"}).code == 2);
}

TEST_CASE("hasse golden output") {
    auto r = run({"hasse", "--n", "2", "--p", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == golden("hasse_n2_p2.dot"));
    std::regex edge("->");
    auto edges = std::distance(std::sregex_iterator(r.out.begin(), r.out.end(), edge), std::sregex_iterator());
    CHECK(edges == 12);

    auto j = json::parse(run({"hasse", "--n", "3", "--p", "2", "--format", "json"}).out);
    std::size_t nodes = 0;
    for (const auto& layer : j["layers"]) nodes += layer.size();
    CHECK(nodes == 58);
    CHECK(j["covers"].size() == 224);
}

TEST_CASE("dim golden output") {
    auto r = run({"dim", "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == golden("dim_n2.json"));
    auto j = json::parse(r.out);
    CHECK(j["dimension"] == 2);
    CHECK(j["leading_monomials"].size() == 5);

    auto tight = run({"dim", "--n", "3", "--budget", "1"});
    CHECK(tight.code == 1);
    CHECK(tight.err.find("BudgetExceeded") != std::string::npos);
    CHECK(json::parse(run({"dim", "--n", "2", "--slice", "1"}).out)["dimension"] == 2);
}

TEST_CASE("snf and factor") {
    auto r = run({"snf"}, "Z 2 2\n2 4\n6 8\n");
    CHECK(r.code == 0);
    auto ms = parse_all(r.out);
    REQUIRE(ms.size() == 3);
    CHECK(ms[1] == idem::Matrix::from_ints(idem::RingDescriptor::integers(), 2, 2, {2, 0, 0, 4}));
    CHECK(ms[0] * idem::Matrix::from_ints(idem::RingDescriptor::integers(), 2, 2, {2, 4, 6, 8}) * ms[2] == ms[1]);

    auto f = json::parse(run({"factor"}, kExampleA).out);
    CHECK(f["ell"] == 2);
    auto s = idem::matrix_from_json(f["S"]), t = idem::matrix_from_json(f["T"]);
    CHECK(s * t == parse_all(kExampleA)[0]);
    CHECK(run({"factor"}, "Z 2 2\n1 1\n0 1\n").code == 1);
}

TEST_CASE("pipeline closure: build and kron output passes check") {
    auto built = run({"build", "--ring", "Z", "--pairs", "3,-1,-3,7", "--bezout", "2,5,-5,-2"});
    CHECK(built.code == 0);
    CHECK(parse_all(built.out)[0] == parse_all(kExampleA)[0]);
    CHECK(run({"check"}, built.out).out == "idempotent rank=2\n");

    auto blocks = run({"build"}, "Z 2 2\n3 -1\n0 0\nZ 2 2\n0 0\n-3 7\nZ 2 2\n2 1\n5 3\nZ 2 2\n7 -5\n3 -2\n");
    CHECK(blocks.out == built.out);

    auto px = run({"build", "--ring", "Qx", "--pairs", "x+1,x^4+x^3+x^2+x+1,x^2+x+1,x^2+1"});
    CHECK(px.code == 0);
    CHECK(run({"check"}, px.out).code == 0);

    auto k = run({"kron"}, "Q 2 2\n1 0\n0 0\nQ 2 2\n1 1\n0 0\n");
    CHECK(k.code == 0);
    CHECK(run({"check"}, k.out).out == "idempotent rank=1\n");
    CHECK(run({"kron"}, "Q 1 1\n2\nQ 1 1\n1\n").code == 1);
    CHECK(run({"build", "--ring", "Z", "--pairs", "2,4,1,0"}).code == 1);
}

TEST_CASE("usage and parse errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"count", "--n", "x", "--q", "2"}).code == 2);
    CHECK(run({"check"}, "").code == 2);
    CHECK(run({"check", "-i", "/nonexistent/file"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    auto r = run({"check"}, "Z 2 2\n1 0\n0 x\n");
    CHECK(r.code == 2);
    CHECK(r.err.rfind("parse error: line 3, column 3", 0) == 0);
    r = run({"check"}, "Z 2 2\n1 0\n");
    CHECK(r.code == 2);
    CHECK(r.err.rfind("parse error:", 0) == 0);
    CHECK(run({"check", "--json"}, "{not json").code == 2);
}

TEST_CASE("determinism and thread-count invariance") {
    auto a = run({"hasse", "--n", "3", "--p", "2", "--threads", "1"});
    auto b = run({"hasse", "--n", "3", "--p", "2", "--threads", "4"});
    auto c = run({"hasse", "--n", "3", "--p", "2", "--threads", "4"});
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
    CHECK(run({"enumerate", "--n", "2", "--p", "3", "--threads", "3"}).out ==
          run({"enumerate", "--n", "2", "--p", "3"}).out);

    setenv(idem::cli::kThreadsEnv, "3", 1);
    CHECK(run({"hasse", "--n", "3", "--p", "2"}).out == a.out);
    setenv(idem::cli::kThreadsEnv, "zero", 1);
    CHECK(run({"hasse", "--n", "2", "--p", "2"}).code == 2);
    unsetenv(idem::cli::kThreadsEnv);
}

TEST_CASE("output file") {
    std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/idem_cli_test.txt";
    CHECK(run({"count", "--n", "2", "--q", "2", "-o", path}).out.empty());
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    CHECK(line == "8");
    std::remove(path.c_str());
}
