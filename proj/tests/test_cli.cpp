// End-to-end tests of the schmidt-scope binary: exit codes, report JSON,
// file formats, generation determinism.

#include "scope/io.hpp"
#include "scope/states.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

using namespace scope;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path test_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "schmidt_scope_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_raw(std::string cmd, const std::string& stdin_path = "") {
    static int counter = 0;
    const fs::path out = test_dir() / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = test_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;

    if (!stdin_path.empty()) cmd += " < " + stdin_path;
    cmd += " > " + out.string() + " 2> " + err.string();

    CliResult res;
    const int status = std::system(cmd.c_str());
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = read_text_file(out.string());
    res.err = read_text_file(err.string());
    return res;
}

CliResult run_cli(const std::string& args, const std::string& stdin_path = "") {
    return run_raw(std::string(SCOPE_CLI_PATH) + " " + args, stdin_path);
}

std::string write_file(const std::string& name, const std::string& content) {
    const fs::path p = test_dir() / name;
    write_text_file(p.string(), content);
    return p.string();
}

std::string write_state(const std::string& name, const BipartiteState& s) {
    return write_file(name, state_to_json(s.rho(), s.na(), s.nb()).dump(2) + "\n");
}

}  // namespace

TEST_CASE("schmidt command reports the bell spectrum") {
    const std::string path = write_state("bell.json", max_entangled(2));
    const CliResult res = run_cli("schmidt " + path);
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    REQUIRE(doc["spectrum"].size() == 4);
    for (const auto& v : doc["spectrum"]) CHECK(v.get<double>() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(doc["rank"] == 4);
    CHECK(doc["purity"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(doc["sum_mu_sq"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(doc["sym_polys"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(doc["input"]["path"] == path);
}

TEST_CASE("schmidt command on a product state") {
    const std::string path =
        write_state("product.json", product_state(random_density(2, 1), random_density(2, 2)));
    const CliResult res = run_cli("schmidt " + path);
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc["spectrum"][0].get<double>() <= 1.0 + 1e-9);
    CHECK(doc["rank"] == 1);
}

TEST_CASE("malformed files exit 2 naming the offending field") {
    const std::string bad = write_file("bad.json", "{\"kind\": \"state\", \"na\": 2}");
    const CliResult res = run_cli("schmidt " + bad);
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("nb") != std::string::npos);

    const std::string garbage = write_file("garbage.json", "not json at all");
    CHECK(run_cli("schmidt " + garbage).exit_code == 2);
}

TEST_CASE("validation failures exit 3 listing the violated invariants") {
    json j = state_to_json(Matrix(0.5 * Matrix::Identity(4, 4)), 2, 2);
    const std::string path = write_file("halftrace.json", j.dump());
    const CliResult res = run_cli("schmidt " + path);
    CHECK(res.exit_code == 3);
    CHECK(res.err.find("TraceNotOne") != std::string::npos);

    // --no-validate accepts the same file
    CHECK(run_cli("schmidt --no-validate " + path).exit_code == 0);
}

TEST_CASE("check command exit codes reflect detection") {
    const std::string bell = write_state("bell2.json", max_entangled(2));
    const CliResult detected = run_cli("check --criteria rc " + bell);
    CHECK(detected.exit_code == 1);
    const json doc = json::parse(detected.out);
    CHECK(doc["summary"] == "EntanglementDetected");
    CHECK(doc["criteria"][0]["criterion_id"] == "rc");
    CHECK(doc["criteria"][0]["lhs"].get<double>() == doctest::Approx(2.0).epsilon(1e-10));

    const std::string mixed = write_state(
        "mixed.json", validate_density(Matrix(0.25 * Matrix::Identity(4, 4)), 2, 2));
    const CliResult inconclusive = run_cli("check --criteria rc,zhang " + mixed);
    CHECK(inconclusive.exit_code == 0);
    CHECK(json::parse(inconclusive.out)["summary"] == "Inconclusive");
}

TEST_CASE("check supports the full criteria list syntax") {
    const std::string bell = write_state("bell3.json", max_entangled(2));
    const std::string la = write_file("la.json", matrix_to_json_parts(Matrix::Identity(2, 2)).dump());
    const std::string lb = write_file("lb.json", matrix_to_json_parts(Matrix::Identity(2, 2)).dump());

    const CliResult res = run_cli("check --criteria rc,sympoly:l=4,sympoly:l=2:rank,theta:1.5707963,zhang,filter:" +
                                  la + "," + lb + " " + bell);
    REQUIRE(res.exit_code == 1);
    const json doc = json::parse(res.out);
    REQUIRE(doc["criteria"].size() == 6);
    CHECK(doc["criteria"][1]["params"]["l"] == 4.0);
    CHECK(doc["criteria"][2]["params"]["use_rank"] == 1.0);
    CHECK(doc["criteria"][3]["params"]["theta"].get<double>() == doctest::Approx(1.5707963));
    CHECK(doc["criteria"][5]["criterion_id"] == "filter");

    // the summary flag is consistent with the per-criterion records
    bool any = false;
    for (const auto& c : doc["criteria"]) any = any || c["verdict"] == "EntanglementDetected";
    CHECK((doc["summary"] == "EntanglementDetected") == any);
}

TEST_CASE("check runs on asymmetric 2x3 states through the pipeline") {
    const std::string path = (test_dir() / "r23.json").string();
    REQUIRE(run_cli("gen random --na 2 --nb 3 --seed 5 -o " + path).exit_code == 0);
    const CliResult res = run_cli("check --criteria rc,zhang,sympoly:l=1 " + path);
    REQUIRE((res.exit_code == 0 || res.exit_code == 1));
    const json doc = json::parse(res.out);
    CHECK(doc["spectrum"].size() == 4);  // d = min(4, 9)
    bool any = false;
    for (const auto& c : doc["criteria"]) any = any || c["verdict"] == "EntanglementDetected";
    CHECK((doc["summary"] == "EntanglementDetected") == any);
    CHECK((res.exit_code == 1) == any);
}

TEST_CASE("unknown criterion exits 2 listing valid names") {
    const std::string bell = write_state("bell4.json", max_entangled(2));
    const CliResult res = run_cli("check --criteria ppt " + bell);
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("rc") != std::string::npos);
    CHECK(res.err.find("zhang") != std::string::npos);
}

TEST_CASE("werner pipeline: gen then check") {
    const CliResult above = run_cli("gen werner --p 0.7 -o " + (test_dir() / "w07.json").string());
    REQUIRE(above.exit_code == 0);
    CHECK(run_cli("check --criteria rc " + (test_dir() / "w07.json").string()).exit_code == 1);

    // below the p = 1/3 detection threshold of this family
    run_cli("gen werner --p 0.25 -o " + (test_dir() / "w025.json").string());
    CHECK(run_cli("check --criteria rc " + (test_dir() / "w025.json").string()).exit_code == 0);
}

TEST_CASE("gen output is byte-identical under a fixed seed") {
    const CliResult a = run_cli("gen random --na 2 --nb 3 --seed 7");
    const CliResult b = run_cli("gen random --na 2 --nb 3 --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());

    const CliResult c = run_cli("gen random --na 2 --nb 3 --seed 8");
    CHECK(a.out != c.out);
}

TEST_CASE("gen pipes into check through stdin") {
    const std::string bell_path = (test_dir() / "piped_bell.json").string();
    REQUIRE(run_cli("gen bell -o " + bell_path).exit_code == 0);
    const CliResult res = run_cli("check --criteria rc -", bell_path);
    CHECK(res.exit_code == 1);
}

TEST_CASE("gen parameter errors exit 2") {
    CHECK(run_cli("gen werner --p 1.5").exit_code == 2);
    CHECK(run_cli("gen nosuchkind").exit_code == 2);
    CHECK(run_cli("gen werner").exit_code == 2);  // missing --p
}

TEST_CASE("channel --choi writes the canonical state") {
    const std::string ch = (test_dir() / "idchan.json").string();
    REQUIRE(run_cli("gen channel-depolarizing --n 2 --p 0 -o " + ch).exit_code == 0);
    const std::string out = (test_dir() / "choi.json").string();
    REQUIRE(run_cli("channel " + ch + " --choi " + out).exit_code == 0);

    const json doc = json::parse(read_text_file(out));
    CHECK(doc["kind"] == "state");
    const ParsedState parsed = state_from_json(doc);
    CHECK(scope::test::max_abs_diff(parsed.m, max_entangled(2).rho()) < 1e-12);
}

TEST_CASE("channel --eb-check exit semantics") {
    const std::string id_ch = (test_dir() / "id2.json").string();
    REQUIRE(run_cli("gen channel-depolarizing --n 2 --p 0 -o " + id_ch).exit_code == 0);
    const CliResult not_eb = run_cli("channel " + id_ch + " --eb-check 4");
    CHECK(not_eb.exit_code == 1);
    const json doc = json::parse(not_eb.out);
    CHECK(doc["summary"] == "NotEB");
    CHECK(doc["criteria"][0]["lhs"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    const std::string depol = (test_dir() / "depol.json").string();
    REQUIRE(run_cli("gen channel-depolarizing --n 2 --p 1 -o " + depol).exit_code == 0);
    const CliResult inc = run_cli("channel " + depol + " --eb-check 1");
    CHECK(inc.exit_code == 0);
    CHECK(json::parse(inc.out)["summary"] == "Inconclusive");
}

TEST_CASE("incomplete kraus sets exit 3 with the measured deviation") {
    json bad;
    bad["kind"] = "channel";
    bad["in_dim"] = 2;
    bad["out_dim"] = 2;
    bad["kraus"] = json::array({matrix_to_json_parts(Matrix(0.5 * Matrix::Identity(2, 2)))});
    const std::string path = write_file("badchan.json", bad.dump());
    const CliResult res = run_cli("channel " + path + " --eb-check 1");
    CHECK(res.exit_code == 3);
    CHECK(res.err.find("0.75") != std::string::npos);
}

TEST_CASE("batch mode orders reports by filename and aggregates detection") {
    const fs::path dir = test_dir() / "batch";
    fs::create_directories(dir);
    write_text_file((dir / "b_bell.json").string(),
                    state_to_json(max_entangled(2).rho(), 2, 2).dump());
    write_text_file((dir / "a_mixed.json").string(),
                    state_to_json(Matrix(0.25 * Matrix::Identity(4, 4)), 2, 2).dump());

    const CliResult res = run_cli("check --criteria rc --batch " + dir.string());
    CHECK(res.exit_code == 1);
    const json docs = json::parse(res.out);
    REQUIRE(docs.is_array());
    REQUIRE(docs.size() == 2);
    // lexicographic by filename regardless of evaluation outcome
    CHECK(docs[0]["input"]["path"].get<std::string>().find("a_mixed") != std::string::npos);
    CHECK(docs[0]["summary"] == "Inconclusive");
    CHECK(docs[1]["summary"] == "EntanglementDetected");
}

TEST_CASE("SCHMIDT_SCOPE_TOL env var moves the decision band, flag wins") {
    const std::string bell = write_state("bell5.json", max_entangled(2));
    // an absurdly large tolerance suppresses the bell detection
    const CliResult env = run_raw("env SCHMIDT_SCOPE_TOL=5 " + std::string(SCOPE_CLI_PATH) +
                                  " check --criteria rc " + bell);
    CHECK(env.exit_code == 0);
    CHECK(json::parse(env.out)["summary"] == "Inconclusive");

    // the --tol flag overrides the env var
    const CliResult flag = run_raw("env SCHMIDT_SCOPE_TOL=5 " + std::string(SCOPE_CLI_PATH) +
                                   " check --criteria rc --tol 1e-9 " + bell);
    CHECK(flag.exit_code == 1);
}

TEST_CASE("help exits zero") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("check --help").exit_code == 0);
}

TEST_CASE("missing subcommand exits 2") { CHECK(run_cli("").exit_code == 2); }
