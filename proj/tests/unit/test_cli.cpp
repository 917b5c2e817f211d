#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fracsch_tools/commands.hpp"
#include "fracsch_tools/config.hpp"
#include "fracsch_tools/csv.hpp"

using namespace fracsch;
using namespace fracsch::tools;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("fracsch_unit_cli_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int rc = cli_main(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return rc;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("defaults") {
    const RunConfig cfg = parse_config({"solve"});
    CHECK(cfg.command == "solve");
    CHECK(cfg.alpha == 0.5);
    CHECK(cfg.p == 2.0);
    CHECK(cfg.T == 1.0);
    CHECK(cfg.N == 1024);
    CHECK(cfg.M == 64);
    CHECK(cfg.seed == 1);
    CHECK(cfg.op == "dirichlet_laplacian_1d");
}

TEST_CASE("leaf subcommand paths") {
    CHECK(parse_config({"verify", "ialpha"}).command == "verify.ialpha");
    CHECK(parse_config({"mlf", "eval"}).command == "mlf.eval");
    CHECK(commands().size() == 16);
}

TEST_CASE("alpha outside (0,1) is rejected") {
    for (const char* a : {"1.0", "0", "-0.2"}) {
        CAPTURE(a);
        try {
            validate(parse_config({"solve", "--alpha", a}));
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.key() == "alpha");
            CHECK(std::string(e.what()).find("alpha must lie in (0,1)") != std::string::npos);
        }
    }
}

TEST_CASE("semilinear requires alpha p > 1") {
    try {
        validate(parse_config({"semilinear", "--alpha", "0.4", "--p", "2"}));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("alpha*p must exceed 1") != std::string::npos);
    }
    CHECK_NOTHROW(validate(parse_config({"semilinear", "--alpha", "0.6", "--p", "2"})));
}

TEST_CASE("effective_config round trip through --config") {
    const auto dir = scratch("roundtrip");
    std::filesystem::create_directories(dir);
    const RunConfig a = parse_config({"solve", "--alpha", "0.3", "--N", "64", "--M", "5", "--seed", "9", "--T", "2.5"});
    const auto ini = dir / "run.ini";
    std::ofstream(ini) << effective_config(a);
    const RunConfig b = parse_config({"--config", ini.string(), "solve"});
    CHECK(a == b);
    // Flags override file values.
    CHECK(parse_config({"--config", ini.string(), "solve", "--N", "32"}).N == 32);
    std::filesystem::remove_all(dir);
}

TEST_CASE("operator option") {
    RunConfig cfg = parse_config({"solve", "--M", "3"});
    CHECK(make_operator(cfg).eigenvalues().size() == 3);
    cfg = parse_config({"solve", "--operator", "1,4,9", "--M", "3"});
    CHECK(make_operator(cfg).eigenvalues() == std::vector<double>{1.0, 4.0, 9.0});
    CHECK_THROWS_AS(parse_config({"solve", "--operator", "1,4,9"}), ValidationError);
    CHECK_THROWS_AS(parse_list("operator", "1,x"), ValidationError);
}

TEST_CASE("criterion selection") {
    CHECK(criterion_ids(parse_config({"accept"})).size() == 15);
    CHECK(criterion_ids(parse_config({"accept", "--only", "2,5"})) == std::vector<int>{2, 5});
    CHECK_THROWS_AS(criterion_ids(parse_config({"accept", "--only", "16"})), ValidationError);
}

TEST_CASE("exit codes") {
    std::string out, err;
    CHECK(run({"solve", "--alpha", "1.0"}, &out, &err) == exit_usage);
    CHECK(err.find("alpha") != std::string::npos);
    CHECK(run({"nosuchcommand"}) == exit_usage);
    const auto dir = scratch("exit");
    CHECK(run({"verify", "ialpha", "--alpha", "0.5", "--output", dir.string()}) == exit_ok);
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify ialpha writes one report row") {
    const auto dir = scratch("ialpha");
    std::string out;
    REQUIRE(run({"verify", "ialpha", "--alpha", "0.5", "--output", dir.string()}, &out) == exit_ok);
    const auto rows = read_csv(dir / "verify_ialpha.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "name");
    CHECK(rows[1][0] == "ialpha");
    CHECK(out.find("PASS ialpha") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("solve output is deterministic") {
    const auto a = scratch("det_a"), b = scratch("det_b");
    const std::vector<std::string> base = {"solve", "--N", "64", "--M", "6", "--alpha", "0.7", "--seed", "3"};
    auto with_out = [&](const std::filesystem::path& d) {
        auto v = base;
        v.insert(v.end(), {"--output", d.string()});
        return v;
    };
    REQUIRE(run(with_out(a)) == exit_ok);
    REQUIRE(run(with_out(b)) == exit_ok);
    std::size_t compared = 0;
    for (const auto& e : std::filesystem::directory_iterator(a)) {
        if (e.path().extension() != ".csv") continue;
        CAPTURE(e.path().filename().string());
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
        ++compared;
    }
    CHECK(compared > 0);
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST_CASE("format_double is shortest round trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

}  // TEST_SUITE
