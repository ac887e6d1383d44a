#include <doctest.h>

#include "thetalab/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

using namespace thetalab;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

TEST_CASE("qexp examples") {
    auto r = run({"qexp", "--object", "lambda", "--order", "40"});
    CHECK(r.code == 0);
    CHECK(starts_with(r.out, "2*q^(1/4) - 4*q^(5/4) + 10*q^(9/4)"));

    r = run({"qexp", "--object", "phi5", "--order", "40"});
    CHECK(r.code == 0);
    CHECK(starts_with(r.out, "q^(1/5) - q^(6/5) + q^(11/5) - q^(21/5)"));

    r = run({"qexp", "--object", "theta-null", "--N", "4", "--k", "2", "--order", "40"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 + 2*q^(2) + 2*q^(8) + 2*q^(18) + 2*q^(32) + O(q^(40))\n");

    r = run({"qexp", "--object", "lambda", "--order", "40", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["series"]["ram"] == 4);
    CHECK(j["series"]["field"] == "Q");
    CHECK(j["series"]["terms"][0] == nlohmann::json::array({1, "2/1"}));
    CHECK(j["series"]["terms"][1] == nlohmann::json::array({5, "-4/1"}));
}

TEST_CASE("qexp usage errors") {
    CHECK(run({"qexp", "--object", "theta-null", "--N", "4"}).code == 2);  // no --k
    CHECK(run({"qexp", "--object", "nonsense"}).code == 2);
    CHECK(run({"qexp", "--object", "lambda", "--order", "10"}).code == 2);  // below 8 * level
}

TEST_CASE("verify examples") {
    auto r = run({"verify", "--suite", "identities", "--N", "8", "--order", "80", "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    int passing = 0;
    for (const auto& rec : j) {
        CHECK(rec["schema"] == 1);
        if (rec["status"] == "pass") ++passing;
    }
    CHECK(passing >= 6);

    r = run({"verify", "--suite", "rep", "--N", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS N=6 (A0 B0)^3 = A0^2") != std::string::npos);
    CHECK(r.out.find("PASS N=6 A0^4 = I") != std::string::npos);
    CHECK(r.out.find("PASS N=6 kernel word = I") != std::string::npos);

    r = run({"verify", "--suite", "all", "--N", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("overall: PASS") != std::string::npos);
}

TEST_CASE("verify exit codes") {
    // an unreachable tolerance makes numeric records fail
    CHECK(run({"verify", "--suite", "translation", "--N", "5", "--tol", "1e-30"}).code == 1);
    CHECK(run({"verify", "--N", "4", "--order", "20"}).code == 2);
    CHECK(run({"verify", "--N", "4", "--tau-im", "0.3"}).code == 2);
    CHECK(run({"verify", "--suite", "weierstrass", "--N", "6"}).code == 2);
    CHECK(run({"verify", "--suite", "rep", "--N", "5"}).code == 2);
    CHECK(run({"verify", "--suite", "nope"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("invariants") {
    auto r = run({"invariants", "--family", "gammaN2N", "--N", "4", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["index"] == 96);
    CHECK(j["genus"] == 3);

    j = nlohmann::json::parse(run({"invariants", "--family", "gammaN2N", "--N", "6", "--format", "json"}).out);
    CHECK(j["index"] == 288);
    CHECK(j["genus"] == 13);

    j = nlohmann::json::parse(run({"invariants", "--family", "gamma", "--N", "8", "--format", "json"}).out);
    CHECK(j["genus"] == 5);

    CHECK(run({"invariants", "--family", "gamma", "--N", "13"}).code == 2);
    CHECK(run({"invariants", "--family", "gammaN2N", "--N", "5"}).code == 2);
}

TEST_CASE("json report does not depend on worker count") {
    const std::vector<std::string> args = {"verify", "--suite", "all", "--N", "6", "--format", "json",
                                           "--tau-re", "0.3", "--tau-im", "1.1", "--seed", "7"};
    setenv("THETA_LAB_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    auto serial = run(args);
    setenv("THETA_LAB_THREADS", "8", 1);
    CHECK(worker_count() == 8);
    auto parallel = run(args);
    auto again = run(args);
    unsetenv("THETA_LAB_THREADS");
    CHECK(serial.code == parallel.code);
    CHECK(serial.out == parallel.out);
    CHECK(parallel.out == again.out);
    CHECK(!serial.out.empty());
}

TEST_CASE("suites_for") {
    auto odd = suites_for(5);
    CHECK(std::find(odd.begin(), odd.end(), "rep") == odd.end());
    CHECK(std::find(odd.begin(), odd.end(), "quadrics") != odd.end());
    auto four = suites_for(4);
    CHECK(std::find(four.begin(), four.end(), "weierstrass") != four.end());
    auto six = suites_for(6);
    CHECK(std::find(six.begin(), six.end(), "weierstrass") == six.end());
    CHECK(std::find(six.begin(), six.end(), "structures") != six.end());
}
