#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "branescope/cli.hpp"
#include "branescope/json_io.hpp"
#include "support/fixtures.hpp"

using branescope::io::Json;

namespace {

struct RunResult {
    int code = 0;
    std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = branescope::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json parsed(const RunResult& r) {
    REQUIRE(!r.out.empty());
    CHECK(r.out.back() == '\n');
    return Json::parse(r.out);
}

class TempFile {
public:
    TempFile(const std::string& name, const std::string& content)
        : path_(std::filesystem::temp_directory_path() / ("branescope_test_" + name)) {
        std::ofstream f(path_);
        f << content;
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

std::string p2() { return fixtures::data_path("p2.json"); }

} // namespace

TEST_SUITE("cli") {

    TEST_CASE("polytope check reports reflexivity and the dual vertices") {
        auto r = run({"polytope", "check", p2()});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["reflexive"] == true);
        CHECK(j["dual_vertices"] == Json::parse("[[-1,-1],[0,1],[1,0]]"));

        TempFile big("big.json",
                     R"({"name":"big","dim":2,"vertices":[[-2,-2],[4,-2],[-2,4]]})");
        auto s = run({"polytope", "check", big.str()});
        REQUIRE(s.code == 0);
        Json k = parsed(s);
        CHECK(k["reflexive"] == false);
        CHECK_FALSE(k.contains("dual_vertices"));
    }

    TEST_CASE("polytope dual emits a loadable document") {
        auto r = run({"polytope", "dual", fixtures::data_path("octahedron.json")});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["name"] == "octahedron_dual");
        CHECK(j["dim"] == 3);
        CHECK(j["vertices"].size() == 8);
        CHECK(j["vertices"][0] == Json::parse("[-1,-1,-1]"));

        TempFile round("dual.json", r.out);
        auto back = run({"polytope", "check", round.str()});
        REQUIRE(back.code == 0);
        CHECK(parsed(back)["reflexive"] == true);
        CHECK(parsed(back)["dual_vertices"].size() == 6);
    }

    TEST_CASE("polytope points respects dilation") {
        auto r = run({"polytope", "points", p2()});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["name"] == "p2");
        CHECK(j["dilate"] == 1);
        CHECK(j["count"] == 10);
        CHECK(j["points"].size() == 10);
        CHECK(j["points"][0] == Json::parse("[-1,-1]"));

        auto d = run({"polytope", "points", p2(), "--dilate", "2"});
        REQUIRE(d.code == 0);
        Json k = parsed(d);
        CHECK(k["dilate"] == 2);
        CHECK(k["count"] == 28);
        CHECK(k["points"][0] == Json::parse("[-2,-2]"));
    }

    TEST_CASE("toric fan report") {
        auto r = run({"toric", "fan", p2()});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["dim"] == 2);
        CHECK(j["rays"] == Json::parse("[[-1,-1],[0,1],[1,0]]"));
        CHECK(j["max_cones"] == Json::parse("[[1,2],[0,2],[0,1]]"));
        CHECK(j["cone_vertices"] == Json::parse("[[-1,-1],[-1,2],[2,-1]]"));
        CHECK(j["simplicial"] == true);

        auto o = run({"toric", "fan", fixtures::data_path("octahedron.json")});
        REQUIRE(o.code == 0);
        CHECK(parsed(o)["simplicial"] == false);
    }

    TEST_CASE("toric divisor cohomology") {
        auto r = run({"toric", "divisor-cohomology", p2(), "--divisor", "0,0,3"});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["divisor"] == Json::parse("[0,0,3]"));
        CHECK(j["h"] == Json::parse("[10,0,0]"));
        CHECK(j["characters"] == 10);

        auto s = run({"toric", "divisor-cohomology", p2(), "--divisor", "0,0,-5"});
        Json k = parsed(s);
        CHECK(k["h"] == Json::parse("[0,0,6]"));
        CHECK(k["characters"] == 6);
    }

    TEST_CASE("brane ext output in both formats") {
        auto r = run({"branes", "ext", p2(), "--a", "0", "--b", "0"});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["a"] == Json::parse("[0,0,0]"));
        CHECK(j["b"] == Json::parse("[0,0,0]"));
        CHECK(j["dims"] == Json::parse(R"({"0":1,"1":1})"));

        auto s = run({"branes", "ext", p2(), "--a", "1", "--b", "0"});
        Json k = parsed(s);
        CHECK(k["a"] == Json::parse("[1,1,1]"));
        CHECK(k["dims"] == Json::parse(R"({"0":0,"1":9})"));

        auto c = run({"branes", "ext", p2(), "--a", "0", "--b", "0", "--format", "csv"});
        REQUIRE(c.code == 0);
        CHECK(c.out == "k,dim\n0,1\n1,1\n");
    }

    TEST_CASE("spanning report keys switch in reverse mode") {
        std::vector<std::string> fwd{"branes",  "spanning", p2(),       "--brane", "0,0,0",
                                     "--depth", "5",        "--window", "3"};
        auto r = run(fwd);
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["r"] == 0);
        CHECK(j["i0"] == 0);
        CHECK(j["window_length"] == 6);
        CHECK(j["reverse"] == false);
        CHECK(j["brane"] == Json::parse("[0,0,0]"));
        REQUIRE(j["samples"].size() == 6);
        CHECK(j["samples"][0]["i"] == -5);
        CHECK(j["samples"][0]["dims"] == Json::parse("[45,0]"));
        CHECK(j["samples"][5]["dims"] == Json::parse("[1,1]"));

        auto rev = fwd;
        rev.push_back("--reverse");
        auto s = run(rev);
        REQUIRE(s.code == 0);
        Json k = parsed(s);
        CHECK_FALSE(k.contains("r"));
        CHECK(k["l"] == 1);
        CHECK(k["n0"] == 0);
        CHECK(k["reverse"] == true);
    }

    TEST_CASE("rectangle output in both formats") {
        auto r = run({"branes", "rectangle", p2(), "--brane", "0,0,0", "--b", "1"});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["brane"] == Json::parse("[0,0,0]"));
        CHECK(j["b"] == 1);
        CHECK(j["r"] == 0);
        CHECK(j["s"] == 0);
        CHECK(j["entries"] == Json::parse(R"([{"p":0,"q":0,"value":0},{"p":0,"q":1,"value":9}])"));

        auto c = run({"branes", "rectangle", p2(), "--brane", "0,0,0", "--b", "1", "--format",
                      "csv"});
        REQUIRE(c.code == 0);
        CHECK(c.out == "p,q,value\n0,0,0\n0,1,9\n");
    }

    TEST_CASE("triangle defaults to the structure sheaf brane") {
        auto r = run({"branes", "triangle", p2(), "--a", "0", "--other", "1,1,1"});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["s_set"] == Json::parse("[0,1]"));
        CHECK(j["k1"] == 0);
        CHECK(j["k2"] == 1);
        REQUIRE(j["clauses"].size() == 2);
        CHECK(j["clauses"][0]["clause"] == 1);
        CHECK(j["clauses"][0]["status"] == "verified");
        CHECK(j["clauses"][1]["clause"] == 2);
        CHECK(j["clauses"][1]["j"] == 0);
        CHECK(j["clauses"][1]["status"] == "verified");
        CHECK(j["clauses"][1]["lhs"] == 10);
        CHECK(j["clauses"][1]["rhs"] == 9);
    }

    TEST_CASE("localization weights") {
        auto r = run({"equivariant", "localize", p2()});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        REQUIRE(j.is_array());
        REQUIRE(j.size() == 3);
        for (const auto& e : j) CHECK(e["fixed_point"] == e["form"]); // anticanonical weights
        CHECK(j[0]["fixed_point"] == Json::parse("[-1,-1]"));

        auto p = run({"equivariant", "localize", p2(), "--paper-mode"});
        Json k = parsed(p);
        REQUIRE(k.size() == 3);
        for (const auto& e : k) CHECK(e["form"] == Json::parse("[-1,-1]"));

        auto y = run({"equivariant", "localize", p2(), "--paper-mode", "--restrict-y"});
        CHECK(parsed(y) == k);

        auto d = run({"equivariant", "localize", p2(), "--divisor", "0,0,1"});
        Json m = parsed(d);
        CHECK(m[0]["form"] == Json::parse("[-1,0]"));
        CHECK(m[1]["form"] == Json::parse("[-1,1]"));
        CHECK(m[2]["form"] == Json::parse("[0,0]"));
    }

    TEST_CASE("character pullback form") {
        auto r = run({"equivariant", "xi", "--m", "2,3"});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["m"] == Json::parse("[2,3]"));
        CHECK(j["form"] == Json::parse("[2,3]"));
    }

    TEST_CASE("yang-mills value with the probe cross-check") {
        auto r = run({"gauge", "ym", "--poly", fixtures::data_path("fermat_cubic.json"),
                      "--trials", "200", "--seed", "17"});
        REQUIRE(r.code == 0);
        Json j = parsed(r);
        CHECK(j["degree"] == 3);
        CHECK(j["probe"] == 3);
        CHECK(j["probe_checked"] == true);
        double v = j["value"].get<double>();
        CHECK(std::abs(v - 118.43525281307230342) < 1e-10);

        auto q = run({"gauge", "ym", "--poly", fixtures::data_path("fermat_quartic.json")});
        Json k = parsed(q);
        CHECK(k["degree"] == 4);
        CHECK(k["probe"] == -1);
        CHECK(k["probe_checked"] == false);
    }

    TEST_CASE("output is byte-identical across reruns and thread counts") {
        std::vector<std::string> cmd{"branes",  "spanning", p2(),       "--brane", "0,0,0",
                                     "--depth", "5",        "--window", "3"};
        auto a = run(cmd);
        auto b = run(cmd);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);

#ifdef _OPENMP
        int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        auto serial = run(cmd);
        omp_set_num_threads(saved);
        CHECK(serial.out == a.out);
#endif

        auto s1 = run({"branes", "ext", p2(), "--a", "0", "--b", "1", "--seed", "1"});
        auto s2 = run({"branes", "ext", p2(), "--a", "0", "--b", "1", "--seed", "2"});
        CHECK(s1.out == s2.out); // dimensions do not depend on the seed
    }

    TEST_CASE("seed flag wins over the environment variable") {
        setenv("BRANESCOPE_SEED", "notanumber", 1);
        auto bad = run({"branes", "ext", p2(), "--a", "0", "--b", "0"});
        CHECK(bad.code == 1);
        auto good = run({"branes", "ext", p2(), "--a", "0", "--b", "0", "--seed", "5"});
        CHECK(good.code == 0);
        setenv("BRANESCOPE_SEED", "123", 1);
        auto env = run({"branes", "ext", p2(), "--a", "0", "--b", "0"});
        CHECK(env.code == 0);
        unsetenv("BRANESCOPE_SEED");
    }

    TEST_CASE("usage problems exit with code 1") {
        CHECK(run({}).code == 1);
        CHECK(run({"polytope"}).code == 1);
        CHECK(run({"gauge"}).code == 1);
        CHECK(run({"polytope", "check", p2(), "--nope"}).code == 1);
        CHECK(run({"polytope", "points", p2(), "--dilate", "0"}).code == 1);
        CHECK(run({"branes", "ext", p2(), "--a", "0", "--b", "0", "--format", "xml"}).code == 1);
        CHECK(run({"branes", "spanning", p2(), "--brane", "0,0,0", "--depth", "5", "--window",
                   "3", "--format", "csv"})
                  .code == 1);

        auto help = run({"--help"});
        CHECK(help.code == 0);
        CHECK(help.out.find("Usage") != std::string::npos);

        auto missing = run({"polytope", "check", "/nonexistent/poly.json"});
        CHECK(missing.code == 1);
        CHECK(missing.err.find("usage error") != std::string::npos);

        TempFile mangled("mangled.json", "{ not json");
        auto bad = run({"polytope", "check", mangled.str()});
        CHECK(bad.code == 1);
        CHECK(bad.err.find("malformed JSON") != std::string::npos);

        auto short_div = run({"toric", "divisor-cohomology", p2(), "--divisor", "1,2"});
        CHECK(short_div.code == 1);
        CHECK(short_div.err.find("usage error") != std::string::npos);
    }

    TEST_CASE("domain problems exit with code 2") {
        auto oct = run({"toric", "divisor-cohomology", fixtures::data_path("octahedron.json"),
                        "--divisor", "1,1,1,1,1,1,1,1"});
        CHECK(oct.code == 2);
        CHECK(oct.err.find("domain error") != std::string::npos);

        auto weil = run({"branes", "spanning", fixtures::data_path("p112.json"), "--brane",
                         "0,0,1", "--depth", "4", "--window", "3"});
        CHECK(weil.code == 2);

        TempFile big("nonreflexive.json",
                     R"({"name":"big","dim":2,"vertices":[[-2,-2],[4,-2],[-2,4]]})");
        CHECK(run({"polytope", "dual", big.str()}).code == 2);

        auto empty = run({"branes", "triangle", fixtures::data_path("cube.json"), "--a", "0",
                          "--brane", "0,0,0,0,-1,1"});
        CHECK(empty.code == 2);
    }

    TEST_CASE("compute problems exit with code 3") {
        TempFile zero("zero.json",
                      R"({"vars":3,"degree":3,"terms":[{"exps":[3,0,0],"coeff":[0,1]}]})");
        auto r = run({"gauge", "ym", "--poly", zero.str()});
        CHECK(r.code == 3);
        CHECK(r.err.find("compute error") != std::string::npos);

        auto scan = run({"branes", "spanning", p2(), "--brane", "-4,-4,-4", "--depth", "5",
                         "--window", "3"});
        CHECK(scan.code == 3);
        CHECK(scan.err.find("compute error") != std::string::npos);
    }
}
