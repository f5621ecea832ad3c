#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

namespace {

using Json = nlohmann::ordered_json;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;

    std::vector<std::string> out_lines() const {
        std::vector<std::string> lines;
        std::istringstream in(out);
        for (std::string line; std::getline(in, line);) lines.push_back(line);
        return lines;
    }
    // Envelope is the last stdout line; records precede it.
    Json envelope() const {
        const auto lines = out_lines();
        REQUIRE_FALSE(lines.empty());
        return Json::parse(lines.back());
    }
    std::vector<Json> records() const {
        const auto lines = out_lines();
        std::vector<Json> recs;
        for (std::size_t k = 0; k + 1 < lines.size(); ++k)
            recs.push_back(Json::parse(lines[k]));
        return recs;
    }
};

std::string slurp(const char* path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    const std::string cmd =
        std::string(LOSVERIFY_PATH) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp("cli_stdout.txt");
    res.err = slurp("cli_stderr.txt");
    return res;
}

}  // namespace

TEST_CASE("seq csv emits the table rows") {
    const RunResult r = run_cli("seq --n 10 --format csv");
    CHECK(r.exit_code == 0);
    const auto lines = r.out_lines();
    REQUIRE(std::ssize(lines) == 11);
    CHECK(lines[0] == "i,a,b,c");
    CHECK(lines[10].rfind("10,24,", 0) == 0);
}

TEST_CASE("seq json carries full tables") {
    const RunResult r = run_cli("seq --n 10");
    CHECK(r.exit_code == 0);
    const Json env = r.envelope();
    CHECK(env["command"] == "seq");
    CHECK(env["verdict"] == "verified");
    CHECK(env["payload"]["a"].back() == 24);
    CHECK(env["payload"]["c"][0] == 2);
    CHECK(env["payload"]["b"][3] == 2);
}

TEST_CASE("certify reproduces the golden head entries") {
    const RunResult r = run_cli("certify --n 24 --emit-xstar");
    CHECK(r.exit_code == 0);
    const Json env = r.envelope();
    CHECK(env["verdict"] == "verified");
    CHECK(env["payload"]["method"] == "both_agree");
    CHECK(env["payload"]["positive"] == true);
    const Json& xs = env["payload"]["xstar"];
    CHECK(xs[0] == "123587941503427/187646731272000");
    CHECK(xs[1] == "3536905093973/27799515744000");
    CHECK(xs[2] == "44159/1016064");
    CHECK(xs[3] == "9439261073843/750586925088000");
    CHECK(xs[4] == "47/4050");
}

TEST_CASE("certify reduced mode reports mechanisms") {
    const RunResult r = run_cli("certify --n 200 --mode reduced");
    CHECK(r.exit_code == 0);
    const Json env = r.envelope();
    CHECK(env["verdict"] == "verified");
    CHECK(env["payload"]["mode"] == "reduced");
    CHECK(env["payload"]["mechanisms"]["exact"].get<int>() > 0);
    CHECK(env["payload"]["mechanisms"]["tail_bound"].get<int>() > 0);
    CHECK(env["payload"]["mechanisms"]["empty_tail"].get<int>() > 0);
    CHECK(env["payload"]["mechanisms"]["exact_fallback"] == 0);
}

TEST_CASE("sweep streams one record per dimension and is reproducible") {
    const RunResult a = run_cli("sweep --from 1 --to 30");
    CHECK(a.exit_code == 0);
    const auto recs = a.records();
    REQUIRE(std::ssize(recs) == 30);
    for (std::int64_t n = 1; n <= 30; ++n) {
        CHECK(recs[static_cast<std::size_t>(n - 1)]["n"] == n);
        CHECK(recs[static_cast<std::size_t>(n - 1)]["positive"] == true);
    }
    CHECK(a.envelope()["payload"]["count"] == 30);
    CHECK(a.envelope()["payload"]["violations"] == 0);

    const RunResult b = run_cli("sweep --from 1 --to 30");
    const auto la = a.out_lines(), lb = b.out_lines();
    REQUIRE(la.size() == lb.size());
    // Identical payload bytes; only the envelope's elapsed field may move.
    for (std::size_t k = 0; k + 1 < la.size(); ++k) CHECK(la[k] == lb[k]);
    CHECK(a.envelope()["payload"] == b.envelope()["payload"]);
}

TEST_CASE("sweep is byte-identical across thread counts") {
    const RunResult serial = run_cli("sweep --from 1 --to 40 --mode reduced");
    const RunResult parallel = run_cli("sweep --from 1 --to 40 --mode reduced --threads 3");
    CHECK(serial.exit_code == 0);
    CHECK(parallel.exit_code == 0);
    const auto ls = serial.out_lines(), lp = parallel.out_lines();
    REQUIRE(ls.size() == lp.size());
    for (std::size_t k = 0; k + 1 < ls.size(); ++k) CHECK(ls[k] == lp[k]);
    CHECK(serial.envelope()["payload"] == parallel.envelope()["payload"]);
}

TEST_CASE("duality verifies the exact identities") {
    const RunResult r = run_cli("duality --n 20");
    CHECK(r.exit_code == 0);
    const Json env = r.envelope();
    CHECK(env["verdict"] == "verified");
    CHECK(env["payload"]["strong_duality"] == true);
    CHECK(env["payload"]["residuals_zero"] == true);
    CHECK(env["payload"]["primal"] == env["payload"]["dual"]);
    CHECK(env["payload"]["nonzero_residuals"].empty());
}

TEST_CASE("lemmas stream reports every block") {
    const RunResult r = run_cli("lemmas --jmax 20");
    CHECK(r.exit_code == 0);
    const auto recs = r.records();
    REQUIRE(std::ssize(recs) == 20);
    CHECK(recs[0]["j"] == 1);
    CHECK(recs[0]["kind"] == "direct");
    CHECK(recs[0]["margin"] == "3/8");
    for (const Json& rec : recs) CHECK(rec["ok"] == true);
    CHECK(r.envelope()["payload"]["failures"] == 0);
}

TEST_CASE("brute respects the guard with a usage exit") {
    const RunResult r = run_cli("brute --n 9");
    CHECK(r.exit_code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(r.envelope()["verdict"] == "error");
}

TEST_CASE("brute confirms the small-dimension maximum") {
    const RunResult r = run_cli("brute --n 4");
    CHECK(r.exit_code == 0);
    const Json env = r.envelope();
    CHECK(env["verdict"] == "verified");
    CHECK(env["payload"]["vertex_count"] == 7);
    CHECK(env["payload"]["best_value"] == "23/12");
    CHECK(env["payload"]["unique"] == true);
    CHECK(env["payload"]["best_is_alpha"] == true);
}

TEST_CASE("brute-enum streams vertices as fraction vectors") {
    const RunResult r = run_cli("brute-enum --n 3");
    CHECK(r.exit_code == 0);
    const auto recs = r.records();
    REQUIRE(std::ssize(recs) == 4);
    CHECK(recs[0]["x"] == Json::array({"1/1", "2/1", "4/1"}));
    CHECK(recs[0]["basis_count"].get<int>() >= 1);
    CHECK(r.envelope()["payload"]["vertex_count"] == 4);
}

TEST_CASE("probe runs are reproducible") {
    const std::string args = "probe --n 24 --radius 1/10 --samples 500 --seed 42";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    const Json env = a.envelope();
    CHECK(env["verdict"] == "verified");
    CHECK(env["payload"]["exceeded"] == false);
    CHECK(env["payload"]["accepted"] == 500);
    CHECK(env["payload"] == b.envelope()["payload"]);
}

TEST_CASE("vertex reports the conjectured point's tight structure") {
    const RunResult r = run_cli("vertex --n 50");
    CHECK(r.exit_code == 0);
    const Json env = r.envelope();
    CHECK(env["verdict"] == "verified");
    CHECK(env["payload"]["is_vertex"] == true);
    CHECK(env["payload"]["tight_count"].get<int>() >= 50);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("certify --n 5 --bogus").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("certify --n 0").exit_code == 2);
    CHECK(run_cli("nonsense --n 3").exit_code == 2);
}
