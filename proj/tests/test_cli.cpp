#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "grdlab/stencil.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

const char* binary_path() {
    const char* bin = std::getenv("GRDLAB_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "GRDLAB_BIN must point at the CLI binary");
    return bin;
}

RunResult run(const std::string& args) {
    std::string cmd = std::string(binary_path()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string tmp_path(const std::string& name) {
    return "/tmp/grdlab_test_" + name;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("stencil") {
    auto r = run("stencil --order 3 --nodes 0,1,2,4");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "order: 3\nnodes: 0 1 2 4\ncoefficients: -3/4 2 -3/2 1/4\n");

    auto r1 = run("stencil --order 1 --nodes 0,1");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.find("coefficients: -1 1") != std::string::npos);

    CHECK(run("stencil --order 2 --nodes 0,1").exit_code == 2);
    CHECK(run("stencil --order 1 --nodes 0,0").exit_code == 2);
    CHECK(run("stencil --order 1 --nodes 0,abc").exit_code == 2);

    auto csv = run("stencil --order 3 --nodes 0,1,2,4 --format csv");
    CHECK(csv.out == "node,coefficient\n0,-3/4\n1,2\n2,-3/2\n4,1/4\n");

    auto js = run("stencil --order 3 --nodes 0,1,2,4 --format json");
    auto parsed = grdlab::Stencil::from_json_text(js.out);
    CHECK(parsed == grdlab::mz_difference(3).stencil);
}

TEST_CASE("mz") {
    auto r = run("mz 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("raw nodes: 0 1 2 4 8\n") != std::string::npos);
    CHECK(r.out.find("raw coefficients: 21 -64 56 -14 1\n") != std::string::npos);
    CHECK(r.out.find("lambda: 1/56\n") != std::string::npos);

    CHECK(run("mz 2").out.find("lambda: 1\n") != std::string::npos);
    CHECK(run("mz 5").out.find("lambda: 1/2688\n") != std::string::npos);
    CHECK(run("mz 0").exit_code == 2);
}

TEST_CASE("derive grouped trace bytes are frozen and deterministic") {
    auto r = run("derive 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "n = 3\n"
          "input:\n"
          "0 1 2 3*\n"
          "  1 2 3* 4\n"
          "\n"
          "final: {0, 1, 2, 4}\n");

    auto again = run("derive 3");
    CHECK(again.out == r.out);

    auto seven = run("derive 7");
    CHECK(seven.out == run("derive 7").out);
    CHECK(seven.out.find("final: {0, 1, 2, 4, 8, 16, 32, 64}\n") != std::string::npos);

    CHECK(run("derive 1").exit_code == 2);
    CHECK(run("derive 64").exit_code == 2);

    auto prim = run("derive 3 --trace primitive");
    CHECK(prim.out.find("[2] eliminate [0] [1] remove 3 -> {0, 1, 2, 4}") != std::string::npos);
}

TEST_CASE("verify and replay a written certificate") {
    const std::string cert = tmp_path("n5.json");
    auto d = run("derive 5 --out " + cert);
    REQUIRE(d.exit_code == 0);

    auto v = run("verify " + cert);
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("ok:") == 0);

    auto rep = run("replay " + cert + " --format json");
    CHECK(rep.exit_code == 0);
    auto j = nlohmann::json::parse(rep.out);
    REQUIRE(j["ok"].get<bool>());
    auto final_stencil = grdlab::Stencil::from_json_text(j["final"].dump());
    CHECK(final_stencil == grdlab::mz_difference(5).stencil);

    SUBCASE("tampering is caught with the offending step") {
        std::ifstream in(cert);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        auto pos = text.find("\"removed\": 5");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 12, "\"removed\": 4");
        const std::string bad = tmp_path("n5_tampered.json");
        std::ofstream(bad) << text;

        auto bv = run("verify " + bad);
        CHECK(bv.exit_code == 1);
        CHECK(bv.out.find("rejected at step") != std::string::npos);
    }

    SUBCASE("malformed files exit 2") {
        const std::string junk = tmp_path("junk.json");
        std::ofstream(junk) << "this is not a certificate";
        CHECK(run("verify " + junk).exit_code == 2);
        CHECK(run("replay " + junk).exit_code == 2);
        CHECK(run("verify /nonexistent/cert.json").exit_code == 2);
    }
}

TEST_CASE("estimate") {
    auto profile =
        run("estimate --fn poly:x^5 --x 1 --order 4 --method mz --mode exact --format json");
    CHECK(profile.exit_code == 0);
    {
        auto j = nlohmann::json::parse(profile.out);
        REQUIRE(j["ok"].get<bool>());
        const double expect[] = {5, 20, 60, 120};
        for (int k = 0; k < 4; ++k) {
            CHECK(j["entries"][k]["converged"].get<bool>());
            CHECK(std::fabs(j["entries"][k]["value"].get<double>() - expect[k]) < 1e-6);
        }
    }

    auto shifts = run("estimate --fn group23 --x 0 --order 3 --method shifts --mode exact");
    CHECK(shifts.exit_code == 1);
    CHECK(shifts.out.find("order 3: not-converged") != std::string::npos);
    CHECK(shifts.out.find("D[3,1]: not-converged") != std::string::npos);

    auto sym = run("estimate --fn sgn --x 0 --order 2 --stencil symmetric --mode exact");
    CHECK(sym.exit_code == 0);
    CHECK(sym.out.find("verdict: converged") != std::string::npos);
    CHECK(sym.out.find("limit (exact): 0") != std::string::npos);

    SUBCASE("auto mode picks exact for total functions, float otherwise") {
        auto poly = run("estimate --fn poly:x^5 --x 1 --order 4 --method mz");
        CHECK(poly.exit_code == 0);
        CHECK(poly.out.find("order 4: converged") != std::string::npos);

        auto g = run("estimate --fn group23 --x 0 --order 3 --method shifts");
        CHECK(g.exit_code == 1);
        CHECK(g.out.find("D[3,1]: not-converged") != std::string::npos);

        auto sg = run("estimate --fn sgn --x 0 --order 2 --stencil symmetric");
        CHECK(sg.exit_code == 0);
        CHECK(sg.out.find("mode: exact") != std::string::npos);

        auto x3 = run("estimate --fn x3sin --x 0 --order 2 --stencil mz");
        CHECK(x3.exit_code == 0);
        CHECK(x3.out.find("mode: float") != std::string::npos);
    }

    CHECK(run("estimate --fn nope --x 0 --order 2 --method mz").exit_code == 2);
    CHECK(run("estimate --fn sgn --x 0 --order 2").exit_code == 2);

    auto csv = run("estimate --fn poly:x^2 --x 0 --order 2 --stencil forward --mode exact "
                   "--count 6 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("h,quotient,gap\n", 0) == 0);

    SUBCASE("a stencil record written by `stencil` feeds back into `estimate`") {
        const std::string path = tmp_path("stencil34.json");
        auto dump = run("stencil --order 3 --nodes 0,1,2,4 --format json");
        REQUIRE(dump.exit_code == 0);
        std::ofstream(path) << dump.out;
        auto r = run("estimate --fn poly:x^3 --x 0 --order 3 --stencil " + path +
                     " --mode exact --count 6");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("limit (exact): 6") != std::string::npos);
        CHECK(run("estimate --fn poly:x^3 --x 0 --order 3 --stencil /nope.json").exit_code == 2);
    }
}

TEST_CASE("compare") {
    auto r = run("compare --order 11 --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["mz"]["distinct_points"] == 12);
    CHECK(j["mz"]["max_point"] == "1024");
    CHECK(j["mz"]["limits"] == 1);
    CHECK(j["shifts"]["distinct_points"] == 21);
    CHECK(j["shifts"]["max_point"] == "20");
    CHECK(j["shifts"]["limits"] == 10);
    CHECK(j["shifts"]["abs_sum"] == "2048");

    CHECK(run("compare --order 11 --format json").out == r.out);
    CHECK(run("compare --order 1").exit_code == 2);

    auto text = run("compare --order 2");
    CHECK(text.exit_code == 0);
    CHECK(text.out.find("order: 2") != std::string::npos);
}

TEST_CASE("float reports are byte-identical across runs") {
    const std::string cmd =
        "estimate --fn exp --x 0 --order 2 --stencil forward --count 12 --tol 0.001 "
        "--format json";
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("usage errors") {
    CHECK(run("").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("estimate --fn sgn").exit_code == 2);
}

} // TEST_SUITE
