#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using Json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string cli_path() {
    const char* p = std::getenv("SCHRODLS_CLI");
    return p ? p : "";
}

RunResult run(const std::string& args, bool merge_stderr = true) {
    RunResult res;
    const std::string cmd = cli_path() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("schrodls_cli_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(std::move(cells));
    }
    return rows;
}

const std::string kNs3x3Mtx =
    "%%MatrixMarket matrix coordinate real general\n"
    "3 3 5\n"
    "1 1 1\n1 2 1\n2 2 1\n2 3 1\n3 3 1\n";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("binary is configured") { REQUIRE_FALSE(cli_path().empty()); }

TEST_CASE("solve identity") {
    const auto mtx = temp_file("ident.mtx");
    const auto rhs = temp_file("ones.txt");
    write_file(mtx,
               "%%MatrixMarket matrix coordinate real general\n"
               "2 2 2\n1 1 1\n2 2 1\n");
    write_file(rhs, "1\n1\n");
    const RunResult r =
        run("solve --matrix " + mtx.string() + " --rhs " + rhs.string());
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    CHECK(j["residual"].get<double>() <= 1e-10);
    CHECK(j["x_re"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j["params"]["kernel"] == "fourier-odd");
    std::filesystem::remove(mtx);
    std::filesystem::remove(rhs);
}

TEST_CASE("solve the reference fixture with pinned parameters") {
    const auto mtx = temp_file("ns3x3.mtx");
    const auto rhs = temp_file("ns3x3_b.txt");
    write_file(mtx, kNs3x3Mtx);
    write_file(rhs, "1\n1\n1\n");
    const RunResult r = run("solve --matrix " + mtx.string() + " --rhs " + rhs.string() +
                            " --T 15 --R 15 --np 9 --Q 8");
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    CHECK(j["oracle_gap"].get<double>() <= 1e-9);
    CHECK(j["params"]["dilated"].get<bool>());
    CHECK(j["params"]["T"].get<double>() == doctest::Approx(15.0));
    std::filesystem::remove(mtx);
    std::filesystem::remove(rhs);
}

TEST_CASE("malformed matrix exits 2 with a line number") {
    const auto mtx = temp_file("broken.mtx");
    const auto rhs = temp_file("b.txt");
    write_file(mtx,
               "%%MatrixMarket matrix coordinate real general\n"
               "2 2 2\n1 1 1\nnot-a-number 2 1\n");
    write_file(rhs, "1\n1\n");
    const RunResult r =
        run("solve --matrix " + mtx.string() + " --rhs " + rhs.string());
    CHECK(r.exit_code == 2);
    const Json j = Json::parse(r.output);
    CHECK(j["error"]["line"].get<long>() == 4);
    std::filesystem::remove(mtx);
    std::filesystem::remove(rhs);
}

TEST_CASE("demo ns3x3 reproduces the reference errors") {
    const RunResult r = run("demo ns3x3");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][0] == "level_or_T");
    const double e10 = std::stod(rows[1][1]);
    const double e15 = std::stod(rows[2][1]);
    CHECK(e10 >= 4.3e-5);
    CHECK(e10 <= 6.4e-5);
    CHECK(e15 <= 1e-9);
}

TEST_CASE("demo rejects unknown names") {
    CHECK(run("demo nonsense").exit_code == 2);
}

TEST_CASE("sweep over T is monotone on the fixture") {
    const RunResult r = run("sweep --fixture ns3x3 --T-values 5,10,15 --R 15 --np 9 --Q 8");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 4);
    const double g5 = std::stod(rows[1][4]);
    const double g10 = std::stod(rows[2][4]);
    const double g15 = std::stod(rows[3][4]);
    CHECK(g5 > g10);
    CHECK(g10 > g15);
}

TEST_CASE("sweep over n_p saturates at the truncation floor") {
    const RunResult r = run("sweep --fixture ns3x3 --T-values 10 --np-values 7,8,9 --R 15 --Q 8");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 4);
    const double g7 = std::stod(rows[1][4]);
    const double g9 = std::stod(rows[3][4]);
    // once the grid resolves the kernel the error is pinned by T-truncation
    CHECK(g9 <= g7 * 1.05);
    CHECK(g9 >= 1e-6);
    CHECK(g9 <= 1e-4);
}

TEST_CASE("sweep over Q drops the quadrature error") {
    const RunResult r = run("sweep --fixture ns3x3 --T-values 10 --Q-values 1,2,4 --R 15 --np 9");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 4);
    const double q1 = std::stod(rows[1][4]);
    const double q4 = std::stod(rows[3][4]);
    CHECK(q4 <= q1 * (1.0 + 1e-9));
}

TEST_CASE("estimate") {
    SUBCASE("closed forms") {
        const RunResult r = run("estimate --kappa 10 --norm 1 --xi 1 --eps 1e-2");
        REQUIRE(r.exit_code == 0);
        const Json j = Json::parse(r.output);
        CHECK(j["block_queries"].get<double>() > 0.0);
        CHECK(j["state_queries"].get<double>() > 0.0);
        CHECK_FALSE(j["best_case"].get<bool>());
    }
    SUBCASE("best-case flag when xi ||A|| >= kappa/2") {
        const Json j = Json::parse(run("estimate --kappa 10 --norm 1 --xi 5 --eps 1e-2").output);
        CHECK(j["best_case"].get<bool>());
    }
    SUBCASE("eps = 1 is rejected") {
        CHECK(run("estimate --kappa 10 --norm 1 --xi 1 --eps 1").exit_code == 2);
    }
}

TEST_CASE("determinism: identical invocations give byte-identical output") {
    const RunResult a = run("demo ns3x3");
    const RunResult b = run("demo ns3x3");
    CHECK(a.output == b.output);
    const RunResult s1 = run("sweep --fixture random-hermitian --seed 7 --T-values 5 --Q 4");
    const RunResult s2 = run("sweep --fixture random-hermitian --seed 7 --T-values 5 --Q 4");
    REQUIRE(s1.exit_code == 0);
    CHECK(s1.output == s2.output);
}

TEST_CASE("config file overrides flags") {
    const auto cfg = temp_file("cfg.json");
    const auto mtx = temp_file("cfg.mtx");
    const auto rhs = temp_file("cfg_b.txt");
    write_file(mtx, kNs3x3Mtx);
    write_file(rhs, "1\n1\n1\n");
    write_file(cfg, "{\"T\": 15, \"R\": 15, \"np\": 9}");
    const RunResult r = run("solve --matrix " + mtx.string() + " --rhs " + rhs.string() +
                            " --T 5 --config " + cfg.string());
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    CHECK(j["params"]["T"].get<double>() == doctest::Approx(15.0));
    std::filesystem::remove(cfg);
    std::filesystem::remove(mtx);
    std::filesystem::remove(rhs);
}

TEST_SUITE_END();
