#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "hwp/experiment.hpp"
#include "oracles.hpp"

using hwp::Command;
using hwp::CycloNumber;
using hwp::ExperimentConfig;

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("hwp_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& contents) const {
        auto p = path / name;
        std::ofstream(p) << contents;
        return p.string();
    }
};

std::vector<CycloNumber> seq(std::initializer_list<long> pattern, size_t n) {
    std::vector<long> p(pattern);
    std::vector<CycloNumber> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = p[i % p.size()];
    return out;
}

std::string values_csv(std::initializer_list<long> pattern, size_t n) {
    std::vector<long> p(pattern);
    std::string s = "n,value\n";
    for (size_t i = 1; i <= n; ++i) s += std::to_string(i) + "," + std::to_string(p[(i - 1) % p.size()]) + "\n";
    return s;
}

const nlohmann::json* find_check(const nlohmann::json& report, const std::string& name) {
    for (auto& c : report["checks"])
        if (c["name"] == name) return &c;
    return nullptr;
}

int cli(const std::string& args) {
    std::string cmd = std::string(HWP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("detect_period examples") {
    CHECK(hwp::detect_period(seq({1, -1}, 20)) == std::optional<size_t>(2));
    CHECK(hwp::detect_period(seq({7}, 16)) == std::optional<size_t>(1));
    CHECK(hwp::detect_period(seq({1, 0}, 30)) == std::optional<size_t>(2));
    CHECK(!hwp::detect_period(seq({1, 2, 3, 4, 5, 6, 7}, 20)).has_value());  // fewer than 3 periods
    CHECK(hwp::detect_period(seq({1, 2, 3, 4, 5, 6, 7}, 21)) == std::optional<size_t>(7));
    std::vector<CycloNumber> ramp(40);
    for (size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<long>(i);
    CHECK(!hwp::detect_period(ramp).has_value());
    CHECK_THROWS_AS(hwp::detect_period(seq({1}, 15)), hwp::DomainError);
}

TEST_CASE("detect_period is minimal") {
    oracle::Gen g(113);
    for (int rep = 0; rep < 200; ++rep) {
        size_t p = static_cast<size_t>(g.integer(1, 12));
        std::vector<CycloNumber> period(p);
        for (auto& x : period) x = g.integer(-1, 1);
        size_t n = std::max<size_t>(16, static_cast<size_t>(g.integer(static_cast<long>(3 * p), 80)));
        std::vector<CycloNumber> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = period[i % p];
        auto found = hwp::detect_period(v);
        REQUIRE(found.has_value());
        CHECK(p % *found == 0);
        for (size_t q = 1; q < *found; ++q) {
            bool is_period = true;
            for (size_t i = 0; i + q < n && is_period; ++i) is_period = v[i] == v[i + q];
            CHECK(!is_period);
        }
    }
}

TEST_CASE("theta-demo") {
    ExperimentConfig c;
    c.command = Command::ThetaDemo;
    c.psi_modulus = 12;
    c.nmax = 2000;
    auto r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitPass);
    CHECK(r.report["detected_period"] == 12);
    CHECK(r.report["pass"] == true);
    CHECK(r.report["command"] == "theta-demo");

    c.weight3half = true;
    c.psi_modulus = 2;
    c.i = 1;
    r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitPass);
    CHECK(r.report["detected_period"] == 2);

    c.i = 0;
    c.nmax = 10001;
    r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitPass);
    CHECK(r.report["detected_period"].is_null());
    CHECK(find_check(r.report, "aperiodic_on_sample") != nullptr);
}

TEST_CASE("identity-check from a block file") {
    TempDir dir;
    ExperimentConfig c;
    c.command = Command::IdentityCheck;
    c.k = 1;
    c.d = 1;
    c.l = 3;
    c.nmax = 2000;
    c.input_path = dir.file("constant.csv", values_csv({1}, 2000));
    auto r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitPass);
    REQUIRE(r.report["records"].size() == 1);
    auto& rec = r.report["records"][0];
    CHECK(rec["check"] == "master_identity");
    CHECK(rec["residual_exact_zero"] == true);
    CHECK(rec["witness_index"].is_null());
    CHECK(rec["nmax"] == 2000);

    // a short file is extended by the period
    c.input_path = dir.file("short.csv", values_csv({1, -1, 0}, 12));
    r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitPass);
    CHECK(r.report["notes"].size() >= 1);

    // composite period
    c.l = 6;
    c.k = 2;
    c.input_path = dir.file("six.csv", values_csv({1, 2, 3, 4, 5, 6}, 600));
    c.nmax = 600;
    r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitPass);
}

TEST_CASE("periodicity violation exits with code 2") {
    TempDir dir;
    std::string text = values_csv({1}, 100);
    text.replace(text.find("\n50,1\n"), 6, "\n50,2\n");
    ExperimentConfig c;
    c.command = Command::IdentityCheck;
    c.l = 3;
    c.nmax = 100;
    c.input_path = dir.file("broken.csv", text);
    c.output_path = (dir.path / "report.json").string();
    auto r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitPeriodicity);
    CHECK(r.report["witness_index"] == 50);
    std::ifstream in(c.output_path);
    auto saved = nlohmann::json::parse(in);
    CHECK(saved["witness_index"] == 50);
    CHECK(saved["pass"] == false);
}

TEST_CASE("malformed input exits with code 3") {
    TempDir dir;
    ExperimentConfig c;
    c.command = Command::IdentityCheck;
    c.l = 1;
    c.nmax = 20;
    c.input_path = dir.file("bad.csv", "n,value\n1,1\n2,oops\n");
    auto r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitParse);
    CHECK(r.report["error"]["kind"] == "parse");
    CHECK(r.report["error"]["line"] == 3);
}

TEST_CASE("usage errors exit with code 4") {
    ExperimentConfig c;
    c.nmax = 8;
    CHECK(hwp::run(c).exit_code == hwp::kExitUsage);
    c.nmax = 100;
    c.d = 4;
    CHECK(hwp::run(c).exit_code == hwp::kExitUsage);
    c.d = 1;
    c.psi_modulus = 5;
    c.psi_index = 9;
    CHECK(hwp::run(c).exit_code == hwp::kExitUsage);
}

TEST_CASE("remark-check") {
    ExperimentConfig c;
    c.command = Command::RemarkCheck;
    c.psi_modulus = 2;
    c.psi_index = 0;
    c.k = 1;
    c.l = 2;
    c.i = 1;
    c.nmax = 300;
    auto r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitPass);
    CHECK(r.report["records"][0]["residual_exact_zero"] == true);
    bool flagged = false;
    for (auto& n : r.report["notes"]) flagged = flagged || n == "i = k (flagged)";
    CHECK(flagged);
}

TEST_CASE("lift and analytic-check") {
    ExperimentConfig c;
    c.command = Command::Lift;
    c.psi_modulus = 5;
    c.k = 2;
    c.nmax = 500;
    auto r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitPass);
    CHECK(find_check(r.report, "lift_factorization") != nullptr);

    c.command = Command::AnalyticCheck;
    for (unsigned k : {1u, 2u, 3u, 4u}) {
        c.k = k;
        c.psi_modulus = 7;
        r = hwp::run(c);
        CHECK_MESSAGE(r.exit_code == hwp::kExitPass, r.report.dump());
        CHECK(find_check(r.report, "trivial_zeros") != nullptr);
    }
}

TEST_CASE("lemma-check") {
    TempDir dir;
    ExperimentConfig c;
    c.command = Command::LemmaCheck;
    c.C = 1;
    c.lambda = 0;
    c.input_path = dir.file("zeta.csv", values_csv({1}, 1000));
    auto r = hwp::run(c);
    CHECK(r.exit_code == hwp::kExitPass);
    double sigma0 = r.report["certificate"]["sigma0"];
    CHECK(sigma0 > 1.72);
    CHECK(sigma0 < 1.8);
    CHECK(r.report["scan"]["suspected_zeros"].empty());
}

TEST_CASE("csv output") {
    TempDir dir;
    ExperimentConfig c;
    c.command = Command::ThetaDemo;
    c.psi_modulus = 5;
    c.nmax = 2000;
    c.format = hwp::Format::Csv;
    c.exact = true;
    c.output_path = (dir.path / "theta.csv").string();
    CHECK(hwp::run(c).exit_code == hwp::kExitPass);
    std::ifstream in(c.output_path);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("# qexpansion", 0) == 0);
}

TEST_CASE("command-line exit codes") {
    TempDir dir;
    CHECK(cli("theta-demo --psi-modulus 12 --d 1 --nmax 2000") == 0);
    std::string constant = dir.file("constant.csv", values_csv({1}, 2000));
    CHECK(cli("identity-check --k 1 --d 1 --l 3 --block-file " + constant + " --nmax 2000") == 0);
    std::string zeta = dir.file("zeta.csv", values_csv({1}, 1000));
    CHECK(cli("lemma-check --coeff-file " + zeta + " --C 1 --lambda 0") == 0);

    std::string broken = dir.file("broken.csv", values_csv({1, 2, 3, 1}, 40));
    CHECK(cli("identity-check --l 3 --block-file " + broken + " --nmax 40") == 2);
    std::string bad = dir.file("bad.csv", "n,value\n1,x\n");
    CHECK(cli("identity-check --l 1 --block-file " + bad + " --nmax 20") == 3);
    CHECK(cli("identity-check --nmax 20") == 4);
    CHECK(cli("theta-demo --nmax 3") == 4);
    CHECK(cli("") == 4);
    CHECK(cli("no-such-command") == 4);
    CHECK(cli("characters --psi-modulus 8") == 0);
    CHECK(cli("--help") == 0);
}
