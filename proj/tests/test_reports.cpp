#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "smoothwave/manifest.hpp"
#include "smoothwave/records.hpp"
#include "smoothwave/registry.hpp"
#include "smoothwave/smooth_core.hpp"
#include "smoothwave/verify.hpp"

using namespace smoothwave;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CaptureOut {
    CaptureOut() : old_(std::cout.rdbuf(buf_.rdbuf())) {}
    ~CaptureOut() { std::cout.rdbuf(old_); }
    std::string text() const { return buf_.str(); }

private:
    std::ostringstream buf_;
    std::streambuf* old_;
};

int run_cli(std::initializer_list<std::string> args) {
    return smoothwave::cli::run(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("records and csv") {
    VerificationRecord r = make_record({{"x", 10.0}, {"y", 2.0}}, 3.0, 6.0, true);
    CHECK(r.ratio == doctest::Approx(0.5));
    VerificationRecord z = make_record({{"x", 1.0}}, 1.0, 0.0, false);
    CHECK(std::isnan(z.ratio));

    std::string csv = records_to_csv({r});
    CHECK(csv == "x,y,lhs,rhs,ratio,hypothesis_ok\n10,2,3,6,0.5,1\n");

    // heterogeneous keys fall back to the union header
    VerificationRecord other = make_record({{"q", 7.0}}, 1.0, 2.0, false);
    std::string mixed = records_to_csv({r, other});
    CHECK(mixed.find("q,x,y,lhs") == 0);

    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("registry defaults, bootstrap, append") {
    CalibrationRegistry reg = CalibrationRegistry::builtin_defaults();
    for (const auto& id : calibration_ids()) {
        CHECK(reg.has(id));
        CHECK(reg.constant(id) > 0.0);
    }
    CHECK_THROWS(reg.constant("no-such-id"));

    std::string path = "test_registry.json";
    std::filesystem::remove(path);
    CalibrationRegistry boot = CalibrationRegistry::load_or_bootstrap(path);
    CHECK(std::filesystem::exists(path));
    CHECK(boot.constant("major-arc-model") == reg.constant("major-arc-model"));

    boot.append("major-arc-model", {9.9, "wider grid", "2026-08-08"});
    boot.save(path);
    CalibrationRegistry re = CalibrationRegistry::load(path);
    CHECK(re.constant("major-arc-model") == 9.9);             // latest entry wins
    CHECK(re.entries().at("major-arc-model").size() == 2);    // append-only history
    std::filesystem::remove(path);
}

TEST_CASE("manifest json") {
    RunManifest m;
    m.command = "psi";
    m.parameters = {{"x", "100"}, {"y", "5"}};
    m.seed = 7;
    m.artifacts = {"out.csv"};
    m.wall_time_s = 0.25;
    m.tool_version = "0.1.0";
    auto j = nlohmann::json::parse(manifest_to_json(m));
    CHECK(j["command"] == "psi");
    CHECK(j["parameters"]["x"] == "100");
    CHECK(j["seed"] == 7);
    CHECK(j["artifacts"][0] == "out.csv");
    CHECK(j["tool_version"] == "0.1.0");
}

TEST_CASE("sieve oracle negative control") {
    SmoothSet good = sieve_smooth(500, 7);
    CHECK(verify_sieve_against_oracle(good));

    SmoothSet tampered = good;
    tampered.psi -= 1;  // off-by-one injection
    CHECK_FALSE(verify_sieve_against_oracle(tampered));

    SmoothSet flipped = good;
    flipped.indicator[0] ^= (1ull << 13);  // 13 = prime > 7 marked smooth
    CHECK_FALSE(verify_sieve_against_oracle(flipped));
}

TEST_CASE("cli basics and exit codes") {
    {
        CaptureOut cap;
        CHECK(run_cli({"psi", "--x", "100", "--y", "5"}) == 0);
        CHECK(cap.text() == "34\n");
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"alpha", "--x", "4", "--y", "2"}) == 0);
        auto j = nlohmann::json::parse(cap.text());
        CHECK(j["value"].get<double>() == doctest::Approx(0.5849625007).epsilon(1e-9));
        CHECK(std::abs(j["residual"].get<double>()) < 1e-10);
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"rho", "--u", "2"}) == 0);
        auto j = nlohmann::json::parse(cap.text());
        CHECK(j["value"].get<double>() == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-7));
    }
    CHECK(run_cli({"not-a-command"}) == 2);
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"psi", "--y", "5"}) == 2);                  // missing required --x
    CHECK(run_cli({"psi", "--x", "100", "--y", "1"}) == 1);    // domain error: y < 2
    CHECK(run_cli({"moment", "--x", "50", "--y", "5", "--p", "1.0"}) == 1);
}

TEST_CASE("cli smbm reuse and manifest sidecar") {
    std::filesystem::create_directories("cli_tmp");
    {
        CaptureOut cap;
        CHECK(run_cli({"sieve", "--x", "300", "--y", "7", "--out", "cli_tmp/set.smbm"}) == 0);
    }
    CHECK(std::filesystem::exists("cli_tmp/set.smbm"));
    CHECK(std::filesystem::exists("cli_tmp/set.smbm.manifest.json"));
    auto man = nlohmann::json::parse(slurp("cli_tmp/set.smbm.manifest.json"));
    CHECK(man["command"] == "sieve");
    CHECK(man["artifacts"][0] == "cli_tmp/set.smbm");

    CaptureOut cap;
    CHECK(run_cli({"psi", "--x", "300", "--in", "cli_tmp/set.smbm"}) == 0);
    CHECK(cap.text() == std::to_string(sieve_smooth(300, 7).psi) + "\n");
    std::filesystem::remove_all("cli_tmp");
}

TEST_CASE("cli determinism: identical runs give identical bytes") {
    std::filesystem::create_directories("cli_tmp2");
    for (const char* out : {"cli_tmp2/a.csv", "cli_tmp2/b.csv"}) {
        CaptureOut cap;
        CHECK(run_cli({"scan", "--x", "512", "--y", "16", "--grid", "2048", "--out", out}) == 0);
    }
    CHECK(slurp("cli_tmp2/a.csv") == slurp("cli_tmp2/b.csv"));
    CHECK(!slurp("cli_tmp2/a.csv").empty());

    {
        CaptureOut cap;
        CHECK(run_cli({"expsum", "--x", "64", "--y", "8", "--grid", "256",
                       "--out", "cli_tmp2/g1.csv"}) == 0);
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"expsum", "--x", "64", "--y", "8", "--grid", "256",
                       "--out", "cli_tmp2/g2.csv"}) == 0);
    }
    std::string g1 = slurp("cli_tmp2/g1.csv");
    CHECK(g1 == slurp("cli_tmp2/g2.csv"));
    CHECK(g1.substr(0, 12) == "a,re,im,abs\n");
    std::filesystem::remove_all("cli_tmp2");
}

TEST_CASE("cli single-shot commands") {
    {
        CaptureOut cap;
        CHECK(run_cli({"expsum", "--x", "10", "--y", "2", "--theta", "0.5"}) == 0);
        auto j = nlohmann::json::parse(cap.text());
        CHECK(j["re"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"varc", "--x", "4", "--y", "4", "--q", "2", "--delta", "0",
                       "--mode", "both"}) == 0);
        auto j = nlohmann::json::parse(cap.text());
        CHECK(std::abs(j["definition"]["re"].get<double>()) < 1e-12);
        CHECK(j["mode_gap"].get<double>() < 1e-12);
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"abc", "--x", "10", "--y", "2"}) == 0);
        auto j = nlohmann::json::parse(cap.text());
        CHECK(j["exact"] == 3);
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"moment", "--x", "10", "--y", "2", "--p", "4"}) == 0);
        auto j = nlohmann::json::parse(cap.text());
        CHECK(j["value"].get<double>() == doctest::Approx(28.0).epsilon(1e-9));
        CHECK(j["exact"] == true);
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"roth", "--x", "1000", "--y", "50", "--beta", "1"}) == 0);
        auto j = nlohmann::json::parse(cap.text());
        CHECK(j["ap_count"].get<uint64_t>() > 0);
        CHECK(j["ap_count"] == j["ap_count_mod_n"]);
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"largevalues", "--x", "256", "--y", "8", "--delta", "0.9"}) == 0);
        auto j = nlohmann::json::parse(cap.text());
        CHECK(j["R"].get<uint64_t>() >= 1);
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"largevalues", "--x", "256", "--y", "8", "--delta", "0.9",
                       "--out", "lv_rows.csv"}) == 0);
        std::string csv = slurp("lv_rows.csv");
        CHECK(csv.find("bound_id,delta,grid_n,x,y,lhs,rhs,ratio,hypothesis_ok") == 0);
        std::filesystem::remove("lv_rows.csv");
        std::filesystem::remove("lv_rows.csv.manifest.json");
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"roth", "--x", "1000", "--y", "50", "--beta", "1",
                       "--format", "csv"}) == 0);
        CHECK(cap.text().find("x,y,beta,b_size,ap_count") == 0);
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"bounds", "--x", "1000", "--y", "25", "--q", "2", "--delta", "0.001"}) == 0);
        CHECK(cap.text().find("bound_id") != std::string::npos);
    }
}

TEST_CASE("cli psi-est, weights file, csv format") {
    {
        CaptureOut cap;
        CHECK(run_cli({"psi-est", "--x", "10000", "--y", "100"}) == 0);
        auto j = nlohmann::json::parse(cap.text());
        double ratio = j["value"].get<double>() / double(sieve_smooth(10'000, 100).psi);
        CHECK(ratio > 2.0 / 3.0);
        CHECK(ratio < 3.0 / 2.0);
    }
    {
        // weights file: a_1 = 1, a_2 = -1, a_4 = i, rest zero; p = 2 moment
        // is sum |a_n|^2 over smooth n = 3.
        std::ofstream w("test_weights.txt");
        w << "0\n1\n-1\n0\n0 1\n";
        w.close();
        CaptureOut cap;
        CHECK(run_cli({"moment", "--x", "10", "--y", "2", "--p", "2",
                       "--weights", "test_weights.txt"}) == 0);
        auto j = nlohmann::json::parse(cap.text());
        CHECK(j["value"].get<double>() == doctest::Approx(3.0).epsilon(1e-9));
        std::filesystem::remove("test_weights.txt");
    }
    {
        CaptureOut cap;
        CHECK(run_cli({"abc", "--x", "10", "--y", "2", "--format", "csv"}) == 0);
        CHECK(cap.text() == "x,y,exact,predicted,ratio,method\n10,2,3," +
                                format_double(64.0 / 20.0) + "," + format_double(3.0 / 3.2) +
                                ",convolution\n");
    }
}

TEST_CASE("registry env override") {
    setenv("SMOOTHWAVE_CALIB", "/tmp/custom_registry.json", 1);
    CHECK(CalibrationRegistry::default_path() == "/tmp/custom_registry.json");
    unsetenv("SMOOTHWAVE_CALIB");
    CHECK(CalibrationRegistry::default_path() == "calibration/registry.json");
}

TEST_CASE("cli verify fast end-to-end") {
    std::filesystem::create_directories("verify_cli_tmp");
    CalibrationRegistry::builtin_defaults().save("verify_cli_tmp/registry.json");
    setenv("SMOOTHWAVE_CALIB", "verify_cli_tmp/registry.json", 1);
    {
        CaptureOut cap;
        CHECK(run_cli({"verify", "--suite", "fast", "--out-dir", "verify_cli_tmp/out"}) == 0);
        CHECK(cap.text().find("all suites passed") != std::string::npos);
    }
    size_t csvs = 0;
    for (const auto& e : std::filesystem::directory_iterator("verify_cli_tmp/out"))
        if (e.path().extension() == ".csv") ++csvs;
    CHECK(csvs >= 12);
    CHECK(std::filesystem::exists("verify_cli_tmp/out/manifest.json"));

    // A sabotaged registry constant must drive the exit code to 1.
    CalibrationRegistry bad = CalibrationRegistry::builtin_defaults();
    bad.append("local-ratio", {1e-9, "sabotage", "2026-08-08"});
    bad.save("verify_cli_tmp/registry.json");
    {
        CaptureOut cap;
        CHECK(run_cli({"verify", "--suite", "fast", "--out-dir", "verify_cli_tmp/out2"}) == 1);
        CHECK(cap.text().find("FAIL local-ratio") != std::string::npos);
    }
    unsetenv("SMOOTHWAVE_CALIB");
    std::filesystem::remove_all("verify_cli_tmp");
}

TEST_CASE("verify runner failure propagation") {
    // An absurd registry (tiny constants) must fail some calibrated suite.
    CalibrationRegistry broken = CalibrationRegistry::builtin_defaults();
    broken.append("local-ratio", {1e-9, "negative control", "2026-08-08"});
    auto results = run_verify(SuiteMode::Fast, broken, "verify_tmp_neg", 0);
    bool any_fail = false;
    for (const auto& r : results)
        if (r.id == "local-ratio" && !r.pass) any_fail = true;
    CHECK(any_fail);
    std::filesystem::remove_all("verify_tmp_neg");

    // Incomplete registry is rejected up front.
    CalibrationRegistry incomplete;
    auto gate = run_verify(SuiteMode::Fast, incomplete, "verify_tmp_gate", 0);
    CHECK(gate.size() == 1);
    CHECK_FALSE(gate.front().pass);
    std::filesystem::remove_all("verify_tmp_gate");
}
