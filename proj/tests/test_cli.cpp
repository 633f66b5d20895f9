#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

using Catch::Matchers::ContainsSubstring;

namespace {

struct Run {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Parsed CSV body (header dropped).
std::vector<std::vector<double>> numbers(const std::string& csv)
{
    std::vector<std::vector<double>> rows;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(row);
    }
    return rows;
}

void check_table(const std::string& csv, const std::vector<std::vector<double>>& expected)
{
    const auto rows = numbers(csv);
    REQUIRE(rows.size() == expected.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == expected[i].size());
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            CHECK_THAT(rows[i][j], Catch::Matchers::WithinAbs(expected[i][j], 1e-13));
        }
    }
}

Run run(const std::string& args)
{
    static int counter = 0;
    const std::string tag = "cli_test_" + std::to_string(counter++);
    const std::string out_path = tag + ".out";
    const std::string err_path = tag + ".err";
    const std::string command = std::string(UALP_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(command.c_str());
    Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out_path), slurp(err_path)};
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return r;
}

}  // namespace

TEST_CASE("eval subcommand", "[cli][eval]")
{
    const auto a = run("eval --m-prime 1 --n 0 --x 0.6");
    CHECK(a.exit_code == 0);
    CHECK(a.out.rfind("x,value\n", 0) == 0);
    CHECK_THAT(a.out, ContainsSubstring("0.6,0.8"));

    const auto b = run("eval --m-prime 0 --n 1 --x 0.5");
    CHECK(b.exit_code == 0);
    CHECK(b.out == "x,value\n0.5,0.5\n");

    const auto range = run("eval --m-prime 0 --n 2 --x-range -1 1 5");
    CHECK(range.exit_code == 0);
    CHECK(range.out.rfind("x,value\n-1,", 0) == 0);
    check_table(range.out, {{-1, 1}, {-0.5, -0.125}, {0, -0.5}, {0.5, -0.125}, {1, 1}});

    const auto bad = run("eval --m-prime 1 --n 0 --x 1.5");
    CHECK(bad.exit_code == 2);
    CHECK_THAT(bad.err, ContainsSubstring("[-1, 1]"));
    CHECK(bad.err.find('\n') == bad.err.size() - 1);

    CHECK(run("eval --m-prime 1").exit_code == 2);
    CHECK(run("eval --m-prime -1 --n 0 --x 0").exit_code == 2);
    CHECK(run("eval --m-prime 1 --n 0").exit_code == 2);
    CHECK(run("eval --m-prime 1 --n 0 --x abc").exit_code == 2);
}

TEST_CASE("tabulate subcommand", "[cli][tabulate]")
{
    const auto t = run("tabulate --m-prime 0 --n-max 2 --x-count 3");
    CHECK(t.exit_code == 0);
    CHECK(t.out.rfind("x,n0,n1,n2\n-1,", 0) == 0);
    CHECK(t.out.find("\n1,") != std::string::npos);
    check_table(t.out, {{-1, 1, -1, 1}, {0, 1, 0, -0.5}, {1, 1, 1, 1}});
    CHECK(run("tabulate --m-prime 0 --n-max 2 --x-count 3").out == t.out);

    const auto fractional = run("tabulate --m-prime 1.5 --n-max 3 --x-count 7");
    CHECK(fractional.exit_code == 0);
    std::size_t lines = 0;
    for (char c : fractional.out) lines += (c == '\n');
    CHECK(lines == 8);

    CHECK(run("tabulate --m-prime 0 --n-max -1 --x-count 3").exit_code == 2);
    CHECK(run("tabulate --m-prime 0 --n-max 2 --x-count 1").exit_code == 2);
    CHECK(run("tabulate --m-prime 0 --n-max 2 --x-count 3 --output /nonexistent-dir/out.csv").exit_code == 3);
}

TEST_CASE("verify subcommand", "[cli][verify]")
{
    SECTION("default grid passes and writes a JSON report")
    {
        const auto v = run("verify --identity orthogonality --grid default --abs-tol 1e-9 --rel-tol 1e-9");
        CHECK(v.exit_code == 0);
        const auto j = nlohmann::json::parse(v.out);
        CHECK(j["identity_name"] == "orthogonality");
        CHECK(j["summary"]["total"] == 108);
        CHECK(j["summary"]["failed"] == 0);
        CHECK(j["timestamp"].is_string());
        CHECK(j["tolerance_config"]["abs_tol"] == 1e-9);
    }
    SECTION("divergent point gives exit 1 and an annotated record")
    {
        const auto v = run("verify --identity bessel-integral --grid includes-divergent-point --no-timestamp");
        CHECK(v.exit_code == 1);
        const auto j = nlohmann::json::parse(v.out);
        CHECK(j["summary"]["failed"] == 1);
        CHECK(j["records"][1]["passed"] == false);
        CHECK_THAT(j["records"][1]["note"].get<std::string>(), ContainsSubstring("diverges"));
    }
    SECTION("CSV output to a file")
    {
        const auto v = run("verify --identity power-exp --format csv --output power_exp.csv --no-timestamp");
        CHECK(v.exit_code == 0);
        const std::string csv = slurp("power_exp.csv");
        CHECK(csv.rfind("identity_name,parameters,", 0) == 0);
        std::filesystem::remove("power_exp.csv");
    }
    SECTION("grid file")
    {
        {
            std::ofstream grid("grid.json");
            grid << R"([{"m_prime": 0.5, "n_l": 1, "n_k": 2, "t": 0.3}, {"m_prime": 1.25, "n_l": 0, "n_k": 0, "t": 0.7}])";
        }
        const auto v = run("verify --identity main-integral --grid grid.json --no-timestamp");
        CHECK(v.exit_code == 0);
        CHECK(nlohmann::json::parse(v.out)["summary"]["total"] == 2);
        {
            std::ofstream grid("grid.json");
            grid << R"([{"m_prime": 0.5}])";
        }
        CHECK(run("verify --identity main-integral --grid grid.json").exit_code == 2);
        std::filesystem::remove("grid.json");
    }
    SECTION("reproducible bytes with --no-timestamp")
    {
        const auto a = run("verify --identity norm --no-timestamp");
        const auto b = run("verify --identity norm --no-timestamp");
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
    }
    SECTION("usage errors")
    {
        CHECK(run("verify --identity unknown-thing").exit_code == 2);
        CHECK(run("verify --identity norm --grid no-such-grid").exit_code == 2);
        CHECK(run("verify --identity norm --format xml").exit_code == 2);
        CHECK(run("verify").exit_code == 2);
        CHECK(run("").exit_code == 2);
        CHECK(run("frobnicate").exit_code == 2);
        CHECK(run("verify --identity norm --output /nonexistent-dir/r.json").exit_code == 3);
    }
    CHECK(run("--help").exit_code == 0);
}
