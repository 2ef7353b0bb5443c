#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

namespace {

std::string cli_path() {
    const char* p = std::getenv("MPBVP_CLI");
    return p ? std::string(p) : std::string();
}

std::string tmp_dir() {
    const char* p = std::getenv("MPBVP_TEST_TMPDIR");
    return p ? std::string(p) : std::string(".");
}

bool cli_available() {
    if (!cli_path().empty()) return true;
    MESSAGE("MPBVP_CLI is not set; skipping CLI test");
    return false;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: ", path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string capture = tmp_dir() + "/cli_capture.txt";
    const std::string cmd = "\"" + cli_path() + "\" " + args + " > \"" + capture + "\" 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(capture);
    return r;
}

std::string write_problem(const std::string& name, const std::string& json) {
    const std::string path = tmp_dir() + "/" + name;
    std::ofstream out(path, std::ios::binary);
    out << json;
    return path;
}

std::string dirichlet_problem() {
    return write_problem("cli_dirichlet.json",
                         R"({"alpha_minus": [], "eta_minus": [],
                             "alpha_plus": [], "eta_plus": []})");
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path,
                                               std::string* header = nullptr) {
    std::istringstream in(slurp(path));
    std::string line;
    REQUIRE(std::getline(in, line));
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

TEST_CASE("spectrum subcommand writes the documented CSV") {
    if (!cli_available()) return;
    const std::string problem = dirichlet_problem();
    const std::string out = tmp_dir() + "/cli_spectrum.csv";
    const auto r = run_cli("spectrum --problem \"" + problem +
                           "\" --a 1 --b 1 --kmax 2 --out \"" + out + "\"");
    CHECK(r.code == 0);

    std::string header;
    const auto rows = read_csv_rows(out, &header);
    CHECK(header == "k,nu,lambda,s,delta,residual");
    REQUIRE(rows.size() == 4);
    // first record: k = 1, and for a = b = 1 the level is (pi/2)^2
    CHECK(rows[0][0] == 1.0);
    CHECK(rows[0][2] == doctest::Approx(2.4674011002723395).epsilon(1e-10));
    for (const auto& row : rows) CHECK(std::fabs(row[5]) < 1e-11);
}

TEST_CASE("spectrum output is byte-identical across runs") {
    if (!cli_available()) return;
    const std::string problem = write_problem("cli_multi.json",
                                              R"({"alpha_minus": [0.3, 0.2],
                                                  "eta_minus": [-0.5, 0.25],
                                                  "alpha_plus": [0.5],
                                                  "eta_plus": [0.0]})");
    const std::string out1 = tmp_dir() + "/cli_det1.csv";
    const std::string out2 = tmp_dir() + "/cli_det2.csv";
    const std::string tail = "\" --a 2.5 --b 0.7 --kmax 3 --out \"";
    CHECK(run_cli("spectrum --problem \"" + problem + tail + out1 + "\"").code == 0);
    CHECK(run_cli("spectrum --problem \"" + problem + tail + out2 + "\"").code == 0);
    const std::string bytes = slurp(out1);
    CHECK(bytes == slurp(out2));
    CHECK(bytes.find('\r') == std::string::npos);
}

TEST_CASE("invalid problem files exit with the validation code") {
    if (!cli_available()) return;
    const std::string problem = write_problem("cli_heavy.json",
                                              R"({"alpha_minus": [0.7, 0.5],
                                                  "eta_minus": [-0.5, 0.5],
                                                  "alpha_plus": [], "eta_plus": []})");
    const auto r = run_cli("spectrum --problem \"" + problem + "\" --a 1 --b 1 --out \"" +
                           tmp_dir() + "/cli_never.csv\"");
    CHECK(r.code == 2);
    CHECK(r.out.find("error:") != std::string::npos);
}

TEST_CASE("fucik subcommand validates the grid and draws the plot") {
    if (!cli_available()) return;
    const std::string problem = dirichlet_problem();
    const std::string out = tmp_dir() + "/cli_fucik.csv";
    const std::string svg = tmp_dir() + "/cli_fucik.svg";

    CHECK(run_cli("fucik --problem \"" + problem + "\" --grid 2 --out \"" + out + "\"").code ==
          2);

    const auto r = run_cli("fucik --problem \"" + problem +
                           "\" --kmax 2 --grid 15 --svg \"" + svg + "\" --out \"" + out +
                           "\"");
    CHECK(r.code == 0);
    std::string header;
    const auto rows = read_csv_rows(out, &header);
    CHECK(header == "k,nu,theta,lambda,a,b");
    CHECK(rows.size() == 60);
    const std::string plot = slurp(svg);
    CHECK(plot.rfind("<svg", 0) == 0);
    CHECK(plot.find("polyline") != std::string::npos);
}

TEST_CASE("classify emits the certificate JSON with the forcing witness") {
    if (!cli_available()) return;
    const std::string problem = dirichlet_problem();
    const auto r =
        run_cli("classify --problem \"" + problem + "\" --a 4 --b 1 --lambda 1");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "split");
    CHECK(j["k"] == 1);
    CHECK(j["degree"] == 0);
    CHECK(j["b_sign"] == 1);
    REQUIRE(j.contains("forcing"));
    CHECK(j["forcing"]["x0"].get<double>() > 0.0);
    CHECK(j["forcing"]["x0"].get<double>() < 1.0);

    const auto gap =
        run_cli("classify --problem \"" + problem + "\" --a 4 --b 1 --lambda 5");
    CHECK(gap.code == 0);
    const auto g = nlohmann::json::parse(gap.out);
    CHECK(g["kind"] == "gap");
    CHECK(g["degree"] == -1);
    CHECK_FALSE(g.contains("forcing"));
}

TEST_CASE("solve in the jumping linear mode writes solutions and a summary") {
    if (!cli_available()) return;
    const std::string problem = dirichlet_problem();
    const std::string prefix = tmp_dir() + "/cli_solve";
    const auto r = run_cli("solve --problem \"" + problem +
                           "\" --a 1 --b 1 --lambda 0 --h one --out \"" + prefix + "\"");
    CHECK(r.code == 0);

    const auto summary = nlohmann::json::parse(slurp(prefix + "_summary.json"));
    CHECK(summary["mode"] == "halflinear");
    REQUIRE(summary["count"] == 1);
    CHECK(summary["message"] == "ok");
    const auto& sol = summary["solutions"][0];
    CHECK(sol["amplitude"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(sol["nodal"] == "1,+");

    const auto rows = read_csv_rows(sol["csv"].get<std::string>());
    REQUIRE(rows.size() > 100);
    double mid_u = 1e9;
    for (const auto& row : rows)
        if (std::fabs(row[0]) < 1e-12) mid_u = row[1];
    CHECK(mid_u == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("solve rejects mixing the two equation modes") {
    if (!cli_available()) return;
    const std::string problem = dirichlet_problem();
    const auto r = run_cli("solve --problem \"" + problem +
                           "\" --a 1 --b 1 --lambda 1 --f linear:1 --out \"" + tmp_dir() +
                           "/cli_mix\"");
    CHECK(r.code == 2);
    const auto r2 = run_cli("solve --problem \"" + problem + "\" --a 1 --out \"" +
                            tmp_dir() + "/cli_partial\"");
    CHECK(r2.code == 2);
}

TEST_CASE("solve finds the requested nodal class by continuation") {
    if (!cli_available()) return;
    const std::string problem = dirichlet_problem();
    const std::string prefix = tmp_dir() + "/cli_nodal";
    const auto r = run_cli("solve --problem \"" + problem +
                           "\" --nodal 1,+ --f rational_bump:10,1 --out \"" + prefix + "\"");
    CHECK(r.code == 0);
    const auto summary = nlohmann::json::parse(slurp(prefix + "_summary.json"));
    CHECK(summary["mode"] == "nodal");
    REQUIRE(summary["count"] == 1);
    CHECK(summary["solutions"][0]["nodal"] == "1,+");
    CHECK(summary["solutions"][0]["amplitude"].get<double>() > 0.1);
}

TEST_CASE("branch subcommand traces the bifurcation curve") {
    if (!cli_available()) return;
    const std::string problem = dirichlet_problem();
    const std::string out = tmp_dir() + "/cli_branch.csv";
    const auto r = run_cli("branch --problem \"" + problem +
                           "\" --f rational_bump:10,1 --nodal 1,+ --steps 25 --out \"" +
                           out + "\"");
    CHECK(r.code == 0);
    std::string header;
    const auto rows = read_csv_rows(out, &header);
    CHECK(header == "lambda,amplitude,c,d");
    REQUIRE(rows.size() >= 2);
    // amplitude grows away from the bifurcation point
    CHECK(rows.back()[1] > rows.front()[1]);
}

TEST_CASE("verify-examples runs the golden checks") {
    if (!cli_available()) return;
    const auto r = run_cli("verify-examples");
    CHECK(r.code == 0);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("bad flags and missing requireds exit with the validation code") {
    if (!cli_available()) return;
    CHECK(run_cli("spectrum --nope").code == 2);
    CHECK(run_cli("spectrum").code == 2);
    CHECK(run_cli("--help").code == 0);
}
