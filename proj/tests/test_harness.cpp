#include "xxzb/config.hpp"
#include "xxzb/report.hpp"
#include "xxzb/suites.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace xxzb;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("xxzb_harness_" + name);
    fs::remove_all(p);
    return p;
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "xxzb");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("grid parsing") {
    const auto g = parse_grid("0:2:0.25");
    CHECK(g.points().size() == 9);
    CHECK(g.points().back() == doctest::Approx(2.0));
    CHECK(parse_grid("1:1:0.5").points().size() == 1);
    CHECK_THROWS_AS(parse_grid("0:2"), ConfigError);
    CHECK_THROWS_AS(parse_grid("0:2:0.3"), ConfigError);
    CHECK_THROWS_AS(parse_grid("2:0:0.5"), ConfigError);
    CHECK_THROWS_AS(parse_grid("0:2:0"), ConfigError);
}

TEST_CASE("config text") {
    const auto kv = parse_config_text("# run\nnu = 3.0\n  p_plus = 0.7   # inline\n\nseed=9\n");
    CHECK(kv.size() == 3);
    RunConfig cfg;
    apply_config_entries(cfg, kv);
    CHECK(cfg.nu == 3.0);
    CHECK(cfg.p_plus.value() == 0.7);
    CHECK(cfg.seed == 9);
    CHECK_THROWS_AS(parse_config_text("nu = 3\nnu = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("just words\n"), ConfigError);
    RunConfig bad;
    CHECK_THROWS_AS(apply_config_entries(bad, {{"colour", "red"}}), ConfigError);
    CHECK_THROWS_AS(apply_config_entries(bad, {{"nu", "three"}}), ConfigError);
}

TEST_CASE("config validation") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.p_plus = 0.8;
    cfg.p_minus = 1.3;
    CHECK_NOTHROW(cfg.validate());
    cfg.xi_re = 0.1;
    cfg.xi_im = 0.0;
    cfg.kappa_re = 0.5;
    cfg.kappa_im = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    RunConfig half;
    half.p_plus = 0.8;
    CHECK_THROWS_AS(half.validate(), ConfigError);
    RunConfig tol;
    tol.bae_tol = 0.0;
    CHECK_THROWS_AS(tol.validate(), ConfigError);
}

TEST_CASE("report JSON schema") {
    Report r;
    r.suite = "demo";
    r.config = {{"nu", "3.7"}};
    r.gate("small", 1, 1e-14, 1e-12).runtime_s = 0.5;
    r.gate("nan", 2, std::nan(""), 1e-12);
    r.diagnostic("note", 0, 3.0, "detail \"quoted\"");
    CHECK(!r.passed());
    CHECK(r.criterion_passed(1));
    CHECK(!r.criterion_passed(2));
    CHECK(!r.has_criterion(5));

    const auto j = nlohmann::json::parse(r.to_json(false));
    CHECK(j.at("suite") == "demo");
    CHECK(j.at("config").at("nu") == 3.7);
    REQUIRE(j.at("checks").size() == 3);
    CHECK(j.at("checks")[0].at("status") == "pass");
    CHECK(!j.at("checks")[0].contains("runtime_s"));
    CHECK(j.at("checks")[1].at("status") == "fail");
    CHECK(j.at("checks")[1].at("measured").is_string());
    CHECK(j.at("checks")[2].at("status") == "diagnostic");
    CHECK(j.at("summary").at("pass") == 1);
    CHECK(j.at("summary").at("fail") == 1);
    CHECK(j.at("summary").at("status") == "fail");
    CHECK(nlohmann::json::parse(r.to_json(true)).at("checks")[0].contains("runtime_s"));
}

TEST_CASE("CLI exit codes") {
    const fs::path out = scratch("exit");
    CHECK(cli({"verify-algebra", "--out", out.string()}) == 0);
    CHECK(fs::exists(out / "verify-algebra_report.json"));
    CHECK(cli({"verify-algebra", "--fault", "corrupt_r", "--out", out.string()}) == 1);
    CHECK(cli({"spectrum", "--n-sites", "2", "--m-roots", "3", "--out", out.string()}) == 2);
    CHECK(cli({"density", "--p-plus", "-0.7", "--p-minus", "1.3", "--out", out.string()}) == 2);
    CHECK(cli({"charge", "--p-plus", "0.8", "--p-minus", "1.3", "--xi-re", "0.1", "--xi-im", "0", "--kappa-re",
               "0.5", "--kappa-im", "0", "--out", out.string()}) == 2);
    CHECK(cli({"no-such-suite"}) == 2);
    CHECK(cli({"charge", "--config", (out / "missing.cfg").string()}) == 2);

    const fs::path cfg = out / "bad.cfg";
    std::ofstream(cfg) << "nu = 3.7\nwidth = 4\n";
    CHECK(cli({"charge", "--config", cfg.string(), "--out", out.string()}) == 2);
}

TEST_CASE("flags override the config file") {
    const fs::path out = scratch("override");
    fs::create_directories(out);
    const fs::path cfg = out / "run.cfg";
    std::ofstream(cfg) << "nu = 5\nseed = 4\n";
    REQUIRE(cli({"map-params", "--config", cfg.string(), "--nu", "3", "--out", out.string()}) == 0);
    const auto j = nlohmann::json::parse(slurp(out / "map-params_report.json"));
    CHECK(j.at("config").at("nu") == 3.0);
    CHECK(j.at("config").at("seed") == 4);
}

TEST_CASE("reruns are byte-identical") {
    for (const std::string suite : {"charge", "map-params"}) {
        const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
        REQUIRE(cli({suite, "--out", a.string()}) == 0);
        REQUIRE(cli({suite, "--out", b.string()}) == 0);
        std::size_t n = 0;
        for (const auto& e : fs::directory_iterator(a)) {
            ++n;
            CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
        }
        CHECK(n >= 2);
    }
}
