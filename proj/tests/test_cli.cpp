#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "support.hpp"
#include "ufc/io.hpp"

using nlohmann::json;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

// Runs the installed binary (path from the UFC_CLI env var set by the test
// harness) and captures stdout; stderr goes to the caller's unless merged.
CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
    const char* bin = std::getenv("UFC_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "UFC_CLI must point at the ufc binary");
    std::string cmd = std::string(bin) + " " + args +
                      (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    CmdResult res;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, n);
    int rc = pclose(p);
    res.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

// The worked example, materialised once per process for the subprocess runs.
const std::string& example_path() {
    static std::string path = [] {
        std::string p = "cli_example.db";
        std::ofstream f(p);
        f << testsupport::kExampleText;
        return p;
    }();
    return path;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("cli: usage errors exit 1") {
    CHECK(run_cli("").code == 1);
    CHECK(run_cli("frobnicate").code == 1);
    CHECK(run_cli("run " + example_path() + " --algo fast").code == 1); // thresholds missing
    CHECK(run_cli("run " + example_path() +
                  " --algo nope --min-util 1 --min-fre 1")
              .code == 1);
    CHECK(run_cli("run " + example_path() +
                  " --algo fast --min-util abc --min-fre 1")
              .code == 1);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("cli: parse failures exit 2") {
    CHECK(run_cli("run missing_file.db --algo fast --min-util 1 --min-fre 1").code ==
          2);
    std::ofstream("cli_broken.db") << "@ITEM 1 5\n9:1\n";
    CmdResult r = run_cli(
        "run cli_broken.db --algo fast --min-util 1 --min-fre 1", true);
    CHECK(r.code == 2);
    CHECK(r.out.find("cli_broken.db:2") != std::string::npos);
    std::remove("cli_broken.db");
}

TEST_CASE("cli run: JSON report for each algorithm") {
    for (const std::string algo : {"oracle", "gen", "fast"}) {
        CAPTURE(algo);
        CmdResult r = run_cli("run " + example_path() + " --algo " + algo +
                              " --min-util 15 --min-fre 3");
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j["command"] == "run");
        CHECK(j["algo"] == algo);
        CHECK(j["transactions"] == 5);
        CHECK(j["thresholds"]["min_util_resolved"] == "15");
        CHECK(j["thresholds"]["min_fre_resolved"] == 3);
        CHECK(j["thresholds"]["money_scale"] == 1);
        CHECK(j["stats"]["class_counts"]["hfhui"] == 4);
        CHECK(j["stats"]["class_counts"]["hflui"] == 6);
        CHECK(j["stats"]["class_counts"]["lfhui"] == 2);
    }
}

TEST_CASE("cli run: algorithm-specific counters") {
    json gen = json::parse(run_cli("run " + example_path() +
                                   " --algo gen --min-util 15 --min-fre 3")
                               .out);
    CHECK(gen["stats"]["scan_count"] == 4);
    CHECK(gen["stats"]["levels"] == 3);
    CHECK(gen["stats"]["level_candidates"] == json::array({7, 21, 8}));
    CHECK(gen["stats"]["candidate_count"] == 20);

    json fast = json::parse(run_cli("run " + example_path() +
                                    " --algo fast --min-util 15 --min-fre 3")
                                .out);
    CHECK(fast["stats"]["scan_count"] == 2);
    CHECK(fast["stats"]["peak_depth"].get<int>() >= 1);
    CHECK(fast["stats"]["fulist_count"].get<std::uint64_t>() > 0);
}

TEST_CASE("cli run: percentage thresholds resolve against the dataset") {
    // 20% of $74 -> $15, 50% of 5 transactions -> 3: same cell as (15, 3)
    CmdResult r = run_cli("run " + example_path() +
                          " --algo fast --min-util 20% --min-fre 50%");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["thresholds"]["min_util"] == "20%");
    CHECK(j["thresholds"]["min_util_resolved"] == "15");
    CHECK(j["thresholds"]["min_fre_resolved"] == 3);
    CHECK(j["stats"]["class_counts"]["hfhui"] == 4);
}

TEST_CASE("cli run: --emit-patterns lists the patterns with display utilities") {
    CmdResult r = run_cli("run " + example_path() +
                          " --algo fast --min-util 15 --min-fre 3 --emit-patterns");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.contains("patterns"));
    REQUIRE(j["patterns"]["hfhui"].size() == 4);
    const json& first = j["patterns"]["hfhui"][0];
    CHECK(first["items"] == json::array({1}));
    CHECK(first["utility"] == "15");
    CHECK(first["support"] == 3);
    CHECK(j["patterns"]["lfhui"].size() == 2);
}

TEST_CASE("cli run: --out writes the report to a file") {
    CmdResult r = run_cli("run " + example_path() +
                          " --algo fast --min-util 15 --min-fre 3 --out cli_out.json");
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    json j = json::parse(slurp("cli_out.json"));
    CHECK(j["stats"]["class_counts"]["hfhui"] == 4);
    std::remove("cli_out.json");
}

TEST_CASE("cli run: gen hits the cooperative timeout and exits 4") {
    CmdResult r = run_cli("run " + example_path() +
                          " --algo gen --min-util 0 --min-fre 0 --timeout 0");
    CHECK(r.code == 4);
}

TEST_CASE("cli run: oracle refusal exits 5") {
    {
        std::vector<std::vector<std::pair<ufc::ItemId, std::int32_t>>> txs(1);
        std::vector<std::pair<ufc::ItemId, ufc::Money>> utils;
        for (ufc::ItemId i = 1; i <= 21; ++i) {
            txs[0].emplace_back(i, 1);
            utils.emplace_back(i, 1);
        }
        ufc::write_native_file(testsupport::make_db(txs, utils), "cli_wide.db");
    }
    CHECK(run_cli("run cli_wide.db --algo oracle --min-util 1 --min-fre 1").code == 5);
    // a raised limit turns the refusal into a (cheap, everything-LFLUI) run
    CHECK(run_cli("run cli_wide.db --algo oracle --min-util 999 --min-fre 9 "
                  "--oracle-limit 21")
              .code == 0);
    std::remove("cli_wide.db");
}

TEST_CASE("cli compare: agreement exits 0, injected diff exits 3") {
    CmdResult ok = run_cli("compare " + example_path() +
                           " --min-util 15 --min-fre 3");
    REQUIRE(ok.code == 0);
    json j = json::parse(ok.out);
    CHECK(j["equal"] == true);
    CHECK(j["runs"]["gen"]["status"] == "ok");
    CHECK(j["runs"]["fast"]["status"] == "ok");
    CHECK(j["runs"]["oracle"]["status"] == "ok");
    CHECK(j["diffs"]["gen_vs_fast"]["hfhui"]["only_left"].empty());

    CmdResult bad = run_cli("compare " + example_path() +
                            " --min-util 15 --min-fre 3 --inject-diff");
    CHECK(bad.code == 3);
    json jb = json::parse(bad.out);
    CHECK(jb["equal"] == false);
    CHECK(jb["diffs"]["gen_vs_fast"]["hfhui"]["only_right"].size() == 1);
}

TEST_CASE("cli sweep: one CSV row per cell, fre outer, util inner") {
    CmdResult r = run_cli("sweep " + example_path() +
                          " --algo fast --fre-list 3,4 --util-list 15,30");
    REQUIRE(r.code == 0);
    auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] ==
          "min_fre,min_util,algo,status,wall_ms,peak_memory_bytes,scan_count,"
          "structures,hfhui,hflui,lfhui");
    CHECK(lines[1].rfind("3,15,fast,ok,", 0) == 0);
    CHECK(lines[2].rfind("3,30,fast,ok,", 0) == 0);
    CHECK(lines[3].rfind("4,15,fast,ok,", 0) == 0);
    CHECK(lines[4].rfind("4,30,fast,ok,", 0) == 0);
    // the (15,3) cell agrees with `run`
    auto fields = [](const std::string& line) {
        std::vector<std::string> out;
        std::istringstream in(line);
        std::string f;
        while (std::getline(in, f, ',')) out.push_back(f);
        return out;
    };
    auto row = fields(lines[1]);
    REQUIRE(row.size() == 11);
    CHECK(row[8] == "4");
    CHECK(row[9] == "6");
    CHECK(row[10] == "2");
    // sequential and parallel sweeps agree on everything but timings
    CmdResult par = run_cli("sweep " + example_path() +
                            " --algo fast --fre-list 3,4 --util-list 15,30 --parallel");
    REQUIRE(par.code == 0);
    auto plines = split_lines(par.out);
    REQUIRE(plines.size() == 5);
    for (std::size_t i = 1; i < plines.size(); ++i) {
        auto a = fields(lines[i]);
        auto b = fields(plines[i]);
        REQUIRE(b.size() == 11);
        for (std::size_t k : {0u, 1u, 2u, 3u, 6u, 7u, 8u, 9u, 10u}) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("cli scale: per-slice rows for both algorithms") {
    CmdResult r = run_cli("scale " + example_path() +
                          " --min-util 15 --min-fre 3 --slices 2,5");
    REQUIRE(r.code == 0);
    auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] ==
          "slice,algo,status,wall_ms,peak_memory_bytes,scan_count,structures,"
          "hfhui,hflui,lfhui");
    CHECK(lines[1].rfind("2,gen,ok,", 0) == 0);
    CHECK(lines[2].rfind("2,fast,ok,", 0) == 0);
    CHECK(lines[3].rfind("5,gen,ok,", 0) == 0);
    CHECK(lines[4].rfind("5,fast,ok,", 0) == 0);
    // full-prefix row reproduces the (4,6,2) cell
    CHECK(lines[4].find(",4,6,2") != std::string::npos);
}

TEST_CASE("cli scale: slice validation exits 1") {
    std::string base = "scale " + example_path() + " --min-util 1 --min-fre 1 ";
    CHECK(run_cli(base + "--slices 0").code == 1);
    CHECK(run_cli(base + "--slices 6").code == 1);
    CHECK(run_cli(base + "--slices 4,2").code == 1);
    CHECK(run_cli(base + "--slices 2,x").code == 1);
}

TEST_CASE("cli gen: deterministic dataset files") {
    std::string args = "gen --transactions 50 --items 12 --avg-len 4 --seed 11 --out ";
    REQUIRE(run_cli(args + "cli_gen_a.db").code == 0);
    REQUIRE(run_cli(args + "cli_gen_b.db").code == 0);
    std::string a = slurp("cli_gen_a.db");
    CHECK(!a.empty());
    CHECK(a == slurp("cli_gen_b.db"));
    // the emitted file parses back and is mineable
    CmdResult r = run_cli("run cli_gen_a.db --algo fast --min-util 5% --min-fre 5%");
    CHECK(r.code == 0);
    std::remove("cli_gen_a.db");
    std::remove("cli_gen_b.db");
}

TEST_CASE("cli: SPMF import equals the native dataset") {
    {
        std::ofstream table("cli_spmf_table.db");
        table << "@ITEM 1 5\n@ITEM 2 3\n@ITEM 3 2\n@ITEM 4 1\n"
                 "@ITEM 5 4\n@ITEM 6 2\n@ITEM 7 1\n";
        std::ofstream spmf("cli_spmf.txt");
        spmf << "1 2 3:13:5 6 2\n"
                "1 2 6:23:10 9 4\n"
                "2 4 5:16:6 2 8\n"
                "3 4 6 7:10:4 1 2 3\n"
                "2 3 6 7:12:3 4 4 1\n";
    }
    CmdResult r = run_cli(
        "run cli_spmf.txt --spmf-table cli_spmf_table.db --algo fast "
        "--min-util 15 --min-fre 3");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["stats"]["class_counts"]["hfhui"] == 4);
    CHECK(j["stats"]["class_counts"]["hflui"] == 6);
    CHECK(j["stats"]["class_counts"]["lfhui"] == 2);

    // corrupt TU field -> import error, exit 2
    std::ofstream("cli_spmf.txt") << "1 2:99:5 6\n";
    CHECK(run_cli("run cli_spmf.txt --spmf-table cli_spmf_table.db --algo fast "
                  "--min-util 1 --min-fre 1")
              .code == 2);
    std::remove("cli_spmf.txt");
    std::remove("cli_spmf_table.db");
}
