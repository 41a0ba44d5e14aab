#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

std::string binary() {
    const char* env = std::getenv("EXSET_BIN");
    REQUIRE(env != nullptr);
    return env;
}

std::string fixtures() {
    const char* env = std::getenv("EXSET_FIXTURES");
    REQUIRE(env != nullptr);
    return env;
}

RunResult run(const std::string& args) {
    std::string cmd = binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

TEST_CASE("classify-element reports the three kinds") {
    std::string scene = fixtures() + "/scene_elements.json";
    RunResult uni = run("classify-element " + scene + " unipotent");
    CHECK(uni.exit_code == 0);
    CHECK(uni.output.find("parabolic") != std::string::npos);

    RunResult lox = run("classify-element " + scene + " loxo");
    CHECK(lox.exit_code == 0);
    CHECK(lox.output.find("loxodromic") != std::string::npos);

    RunResult ell = run("classify-element " + scene + " elliptic");
    CHECK(ell.exit_code == 0);
    CHECK(ell.output.find("elliptic") != std::string::npos);
}

TEST_CASE("exit codes: parse failure and missing label") {
    RunResult missing = run("classify-element " + fixtures() + "/scene_elements.json nosuch");
    CHECK(missing.exit_code == 3);

    RunResult bad = run("classify-element /dev/null unipotent");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("power-limit prints the limit and flags non-convergence") {
    std::string scene = fixtures() + "/scene_elements.json";
    RunResult uni = run("--format machine power-limit " + scene + " unipotent");
    CHECK(uni.exit_code == 0);
    // E13 up to scale: entry [0][2] is 1
    CHECK(uni.output.find("\"rank\": 1") != std::string::npos);

    RunResult lox = run("power-limit " + scene + " loxo");
    CHECK(lox.exit_code == 0);

    RunResult rot = run("power-limit " + scene + " rot");
    CHECK(rot.exit_code == 4);

    RunResult j2 = run("power-limit " + scene + " jordan2");
    CHECK(j2.exit_code == 0);
}

TEST_CASE("curve-invariants on the cuspidal cubic") {
    RunResult res = run("curve-invariants " + fixtures() + "/scene_elements.json cubic");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("cusp") != std::string::npos);
    CHECK(res.output.find("genus: 0") != std::string::npos);
    CHECK(res.output.find("class: 3") != std::string::npos);
}

TEST_CASE("invariance-check exit codes") {
    RunResult ok = run("invariance-check " + fixtures() + "/scene_cubic.json s2 cubic");
    CHECK(ok.exit_code == 0);
    RunResult bad = run("invariance-check " + fixtures() + "/scene_perturbed.json s2 bad");
    CHECK(bad.exit_code == 6);
}

TEST_CASE("dual-curve runs on conics and cuspidal cubics") {
    RunResult conic = run("dual-curve " + fixtures() + "/scene_elements.json conic");
    CHECK(conic.exit_code == 0);
    RunResult cubic = run("dual-curve " + fixtures() + "/scene_elements.json cubic");
    CHECK(cubic.exit_code == 0);
}

TEST_CASE("report: compliant scenes exit 0") {
    for (const char* scene : {"scene_cubic.json", "scene_veronese.json", "scene_pencil.json"}) {
        RunResult res = run("report " + fixtures() + "/" + scene);
        CHECK(res.exit_code == 0);
        CHECK(res.output.find("compliant") != std::string::npos);
    }
}

TEST_CASE("report: non-invariant scene exits 6 with a witness") {
    RunResult res = run("report " + fixtures() + "/scene_perturbed.json");
    CHECK(res.exit_code == 6);
    CHECK(res.output.find("NOT invariant") != std::string::npos);
}

TEST_CASE("report: four non-concurrent lines exit 5") {
    RunResult res = run("report " + fixtures() + "/scene_fourlines.json");
    CHECK(res.exit_code == 5);
    CHECK(res.output.find("VIOLATION") != std::string::npos);
}

TEST_CASE("machine output is deterministic") {
    std::string cmd = "--format machine report " + fixtures() + "/scene_cubic.json";
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"schema\": \"1\"") != std::string::npos);
}
