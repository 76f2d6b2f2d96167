// ufc — bench/driver CLI for the itemset classifiers.
//
//   ufc run <dataset> --algo fast --min-util 15 --min-fre 3 [--emit-patterns]
//   ufc compare <dataset> --min-util 0.2% --min-fre 0.2%
//   ufc sweep <dataset> --algo gen --util-list 10,20,40 --fre-list 3,6
//   ufc scale <dataset> --slices 20000,40000,60000,80000 [--algo both]
//   ufc gen --transactions 100000 --items 1000 --avg-len 10 --seed 7 --out d.db
//
// Exit codes: 0 ok, 1 usage, 2 parse/import, 3 diff found, 4 timeout,
// 5 oracle refusal.

#include <CLI11.hpp>

#include <atomic>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include "ufc/bench.hpp"
#include "ufc/core.hpp"
#include "ufc/fulist.hpp"
#include "ufc/io.hpp"
#include "ufc/json_report.hpp"
#include "ufc/levelwise.hpp"
#include "ufc/oracle.hpp"

using namespace ufc;

namespace {

constexpr int kOk = 0, kUsage = 1, kParse = 2, kDiff = 3, kTimeout = 4, kRefusal = 5;

struct CommonArgs {
    std::string dataset;
    std::string spmf_table; // dataset is SPMF format, table from this native header
    std::string util_s = "0";
    std::string fre_s = "0";
    std::string out;
    double timeout_s = 10000.0; // per algorithm run
    bool emit_patterns = false;
    std::size_t oracle_limit = 20;
};

Database load_dataset(const CommonArgs& a) {
    if (!a.spmf_table.empty()) {
        Database table = parse_native_file(a.spmf_table);
        return import_spmf_file(a.dataset, table);
    }
    return parse_native_file(a.dataset);
}

Thresholds resolve(const CommonArgs& a, const Database& db) {
    return {ThresholdSpec::parse(a.util_s).resolve_util(db),
            ThresholdSpec::parse(a.fre_s).resolve_fre(db)};
}

void write_output(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) throw Error(out + ": cannot open for writing");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
    f.flush();
    if (!f) throw Error(out + ": write failed");
}

ClassificationReport run_algo(const std::string& algo, const Database& db,
                              const Thresholds& th, const Deadline& dl,
                              std::size_t oracle_limit,
                              std::vector<VisitRecord>* visit_log = nullptr) {
    if (algo == "gen") {
        GenOptions o;
        o.deadline = dl;
        return run_gen(db, th, o);
    }
    if (algo == "fast") {
        FastOptions o;
        o.deadline = dl;
        o.visit_log = visit_log;
        return run_fast(db, th, o);
    }
    WallTimer timer;
    ClassificationReport r = classify_all(db, th, oracle_limit, dl);
    r.stats.wall_ms = timer.elapsed_ms();
    return r;
}

std::uint64_t structures_of(const std::string& algo, const RunStats& s) {
    if (algo == "gen") return s.candidate_count;
    if (algo == "fast") return s.fulist_count;
    return s.visited;
}

// ---- run --------------------------------------------------------------

int cmd_run(const CommonArgs& a, const std::string& algo) {
    Database db = load_dataset(a);
    Thresholds th = resolve(a, db);
    Deadline dl = Deadline::after_seconds(a.timeout_s);

    PeakRssSampler sampler;
    ClassificationReport report;
    try {
        report = run_algo(algo, db, th, dl, a.oracle_limit);
    } catch (const TimeoutError& e) {
        std::cerr << "ufc run: " << e.what() << "\n";
        return kTimeout;
    } catch (const UniverseTooLargeError& e) {
        std::cerr << "ufc run: " << e.what() << "\n";
        return kRefusal;
    }
    report.stats.peak_memory_bytes = sampler.stop();

    ordered_json j;
    j["command"] = "run";
    j["dataset"] = a.dataset;
    if (!a.spmf_table.empty()) j["utility_table"] = a.spmf_table;
    j["algo"] = algo;
    j["transactions"] = db.size();
    j["thresholds"] = thresholds_json(a.util_s, a.fre_s, th, db.money_scale());
    j["stats"] = stats_json(report.stats, algo, report);
    if (a.emit_patterns) j["patterns"] = patterns_json(report, db.money_scale());
    write_output(a.out, j.dump(2));
    return kOk;
}

// ---- compare ----------------------------------------------------------

ordered_json diff_side(const std::vector<ClassifiedPattern>& only, Money scale) {
    ordered_json arr = ordered_json::array();
    for (const ClassifiedPattern& p : only) arr.push_back(pattern_json(p, scale));
    return arr;
}

// patterns in `a` but not `b` (identity = items+utility+support), per class
std::vector<ClassifiedPattern> missing_from(const std::vector<ClassifiedPattern>& a,
                                            const std::vector<ClassifiedPattern>& b) {
    std::vector<ClassifiedPattern> out;
    for (const ClassifiedPattern& p : a) {
        bool found = false;
        for (const ClassifiedPattern& q : b)
            if (p.items == q.items && p.utility == q.utility && p.support == q.support) {
                found = true;
                break;
            }
        if (!found) out.push_back(p);
    }
    return out;
}

struct DiffResult {
    ordered_json json;
    bool empty = true;
};

DiffResult diff_reports(const ClassificationReport& left,
                        const ClassificationReport& right, Money scale) {
    DiffResult d;
    for (PatternClass c :
         {PatternClass::HFHUI, PatternClass::HFLUI, PatternClass::LFHUI}) {
        auto only_left = missing_from(left.of(c), right.of(c));
        auto only_right = missing_from(right.of(c), left.of(c));
        std::string key = to_string(c);
        for (char& ch : key) ch = static_cast<char>(std::tolower(ch));
        d.json[key] = {{"only_left", diff_side(only_left, scale)},
                       {"only_right", diff_side(only_right, scale)}};
        if (!only_left.empty() || !only_right.empty()) d.empty = false;
    }
    return d;
}

int cmd_compare(const CommonArgs& a, bool inject_diff) {
    Database db = load_dataset(a);
    Thresholds th = resolve(a, db);

    struct Run {
        std::string name;
        std::string status = "ok";
        ClassificationReport report;
    };
    std::vector<Run> runs;
    PeakRssSampler sampler;
    for (const std::string& name : {std::string("gen"), std::string("fast"),
                                    std::string("oracle")}) {
        Run r;
        r.name = name;
        try {
            r.report = run_algo(name, db, th, Deadline::after_seconds(a.timeout_s),
                                a.oracle_limit);
        } catch (const TimeoutError&) {
            r.status = "timeout";
        } catch (const UniverseTooLargeError&) {
            r.status = "refused";
        }
        runs.push_back(std::move(r));
    }
    std::uint64_t peak = sampler.stop();

    if (inject_diff) {
        // test hook: corrupt one report so the diff machinery has to fire
        Run& fast = runs[1];
        if (fast.status == "ok")
            fast.report.add({{std::numeric_limits<ItemId>::max()}, 1, 1,
                             PatternClass::HFHUI});
    }

    ordered_json j;
    j["command"] = "compare";
    j["dataset"] = a.dataset;
    j["thresholds"] = thresholds_json(a.util_s, a.fre_s, th, db.money_scale());
    ordered_json jruns;
    for (Run& r : runs) {
        ordered_json one;
        one["status"] = r.status;
        if (r.status == "ok") one["stats"] = stats_json(r.report.stats, r.name, r.report);
        jruns[r.name] = std::move(one);
    }
    j["runs"] = std::move(jruns);
    j["peak_memory_bytes"] = peak;

    bool any_diff = false, any_timeout = false;
    ordered_json jdiffs;
    for (std::size_t x = 0; x < runs.size(); ++x)
        for (std::size_t y = x + 1; y < runs.size(); ++y) {
            std::string key = runs[x].name + "_vs_" + runs[y].name;
            if (runs[x].status != "ok" || runs[y].status != "ok") continue;
            DiffResult d = diff_reports(runs[x].report, runs[y].report, db.money_scale());
            if (!d.empty) any_diff = true;
            jdiffs[key] = std::move(d.json);
        }
    for (const Run& r : runs) any_timeout |= r.status == "timeout";
    j["diffs"] = std::move(jdiffs);
    j["equal"] = !any_diff && !any_timeout;
    write_output(a.out, j.dump(2));

    if (any_diff) return kDiff;
    if (any_timeout) return kTimeout;
    return kOk;
}

// ---- sweep ------------------------------------------------------------

std::string csv_escape_ms(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

int cmd_sweep(const CommonArgs& a, const std::string& algo,
              const std::vector<std::string>& fre_list,
              const std::vector<std::string>& util_list, bool parallel) {
    Database db = load_dataset(a);

    struct Cell {
        Thresholds th;
        std::string status = "ok";
        RunStats stats;
        std::array<std::size_t, 3> counts{};
    };
    std::vector<Cell> cells;
    for (const std::string& fs : fre_list)
        for (const std::string& us : util_list) {
            Cell c;
            c.th = {ThresholdSpec::parse(us).resolve_util(db),
                    ThresholdSpec::parse(fs).resolve_fre(db)};
            cells.push_back(c);
        }

    auto run_cell = [&](Cell& c) {
        PeakRssSampler sampler;
        try {
            ClassificationReport r = run_algo(
                algo, db, c.th, Deadline::after_seconds(a.timeout_s), a.oracle_limit);
            c.stats = r.stats;
            c.counts = r.class_counts();
        } catch (const TimeoutError&) {
            c.status = "timeout";
        } catch (const UniverseTooLargeError&) {
            c.status = "refused";
        }
        c.stats.peak_memory_bytes = sampler.stop();
    };

    if (parallel) {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        unsigned n = std::max(1u, std::thread::hardware_concurrency());
        for (unsigned w = 0; w < n; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size();
                     i = next.fetch_add(1))
                    run_cell(cells[i]);
            });
        for (auto& t : pool) t.join();
    } else {
        for (Cell& c : cells) run_cell(c);
    }

    std::ostringstream csv;
    csv << "min_fre,min_util,algo,status,wall_ms,peak_memory_bytes,scan_count,"
           "structures,hfhui,hflui,lfhui\n";
    for (const Cell& c : cells) {
        csv << c.th.min_fre << ',' << format_money(c.th.min_util, db.money_scale())
            << ',' << algo << ',' << c.status << ',';
        if (c.status == "ok")
            csv << csv_escape_ms(c.stats.wall_ms) << ',' << c.stats.peak_memory_bytes
                << ',' << c.stats.scan_count << ',' << structures_of(algo, c.stats)
                << ',' << c.counts[0] << ',' << c.counts[1] << ',' << c.counts[2];
        else
            csv << ",,,,,,";
        csv << '\n';
    }
    write_output(a.out, csv.str());
    return kOk;
}

// ---- scale ------------------------------------------------------------

struct CellResult {
    std::string status = "error";
    double wall_ms = 0;
    int scan_count = 0;
    std::uint64_t structures = 0;
    std::size_t h = 0, f = 0, l = 0;
    std::uint64_t peak_memory_bytes = 0;
};

// One (slice, algo) measurement in a forked child so ru_maxrss isolates the
// cell's own peak. The child reports through a pipe; the parent enforces a
// hard kill well past the cooperative deadline.
CellResult run_scale_cell(const Database& db, std::size_t slice,
                          const std::string& algo, const CommonArgs& a) {
    CellResult res;
    int fds[2];
    if (pipe(fds) != 0) return res;

    pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        return res;
    }
    if (pid == 0) {
        close(fds[0]);
        std::string line;
        try {
            Database sliced = db.prefix(slice);
            // percentages resolve against the slice, not the full file
            Thresholds th = resolve(a, sliced);
            ClassificationReport r = run_algo(
                algo, sliced, th, Deadline::after_seconds(a.timeout_s), a.oracle_limit);
            auto counts = r.class_counts();
            std::ostringstream os;
            os << "ok " << r.stats.wall_ms << ' ' << r.stats.scan_count << ' '
               << structures_of(algo, r.stats) << ' ' << counts[0] << ' ' << counts[1]
               << ' ' << counts[2];
            line = os.str();
        } catch (const TimeoutError&) {
            line = "timeout";
        } catch (const std::exception& e) {
            line = std::string("error ") + e.what();
        }
        ssize_t ignored = write(fds[1], line.data(), line.size());
        (void)ignored;
        close(fds[1]);
        _exit(0);
    }

    close(fds[1]);
    std::string payload;
    char buf[512];
    // cooperative timeout + 30s of grace before the hard kill
    int hard_ms = static_cast<int>((a.timeout_s + 30.0) * 1000.0);
    bool killed = false;
    for (;;) {
        struct pollfd p;
        p.fd = fds[0];
        p.events = POLLIN;
        p.revents = 0;
        int pr = poll(&p, 1, hard_ms);
        if (pr <= 0) { // hard deadline (or poll error): stop the child
            kill(pid, SIGKILL);
            killed = true;
            break;
        }
        ssize_t n = read(fds[0], buf, sizeof buf);
        if (n <= 0) break;
        payload.append(buf, static_cast<std::size_t>(n));
    }
    close(fds[0]);

    struct rusage ru {};
    int status = 0;
    wait4(pid, &status, 0, &ru);
    res.peak_memory_bytes = static_cast<std::uint64_t>(ru.ru_maxrss) * 1024;

    std::istringstream is(payload);
    std::string tag;
    is >> tag;
    if (killed || tag == "timeout")
        res.status = "timeout";
    else if (tag == "ok") {
        res.status = "ok";
        is >> res.wall_ms >> res.scan_count >> res.structures >> res.h >> res.f >>
            res.l;
    }
    return res;
}

int cmd_scale(const CommonArgs& a, const std::string& algo_sel,
              const std::vector<std::size_t>& slices) {
    Database db = load_dataset(a);
    if (slices.empty()) {
        std::cerr << "ufc scale: --slices must name at least one slice\n";
        return kUsage;
    }
    for (std::size_t i = 0; i < slices.size(); ++i) {
        if (slices[i] < 1 || slices[i] > db.size()) {
            std::cerr << "ufc scale: slice " << slices[i] << " out of range [1, "
                      << db.size() << "]\n";
            return kUsage;
        }
        if (i > 0 && slices[i] <= slices[i - 1]) {
            std::cerr << "ufc scale: slices must be strictly ascending\n";
            return kUsage;
        }
    }

    std::vector<std::string> algos;
    if (algo_sel == "both")
        algos = {"gen", "fast"};
    else
        algos = {algo_sel};

    std::ostringstream csv;
    csv << "slice,algo,status,wall_ms,peak_memory_bytes,scan_count,structures,"
           "hfhui,hflui,lfhui\n";
    for (std::size_t slice : slices)
        for (const std::string& algo : algos) {
            CellResult r = run_scale_cell(db, slice, algo, a);
            csv << slice << ',' << algo << ',' << r.status << ',';
            if (r.status == "ok")
                csv << csv_escape_ms(r.wall_ms) << ',' << r.peak_memory_bytes << ','
                    << r.scan_count << ',' << r.structures << ',' << r.h << ',' << r.f
                    << ',' << r.l;
            else
                csv << ',' << r.peak_memory_bytes << ",,,,,";
            csv << '\n';
        }
    write_output(a.out, csv.str());
    return kOk;
}

// ---- gen --------------------------------------------------------------

int cmd_generate(const GeneratorConfig& cfg, const std::string& out) {
    Database db = generate(cfg);
    if (out.empty()) {
        std::ostringstream os;
        write_native(db, os);
        std::cout << os.str();
    } else {
        write_native_file(db, out);
    }
    return kOk;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"itemset frequency/utility classifier bench"};
    app.require_subcommand(1);

    CommonArgs a;
    std::string algo = "fast";
    bool inject_diff = false;
    bool parallel = false;
    std::string fre_list_s, util_list_s, slices_s;

    auto add_common = [&](CLI::App* c, bool with_thresholds) {
        c->add_option("dataset", a.dataset, "dataset file (native format)")->required();
        c->add_option("--spmf-table", a.spmf_table,
                      "treat dataset as SPMF transactions; utilities from this "
                      "native header file");
        if (with_thresholds) {
            c->add_option("--min-util", a.util_s,
                          "utility threshold, absolute or % of total utility")
                ->required();
            c->add_option("--min-fre", a.fre_s,
                          "frequency threshold, absolute or % of |D|")
                ->required();
        }
        c->add_option("--out", a.out, "write the report here instead of stdout");
        c->add_option("--timeout", a.timeout_s, "per-run time budget in seconds")
            ->capture_default_str();
        c->add_option("--oracle-limit", a.oracle_limit,
                      "oracle refuses item universes larger than this")
            ->capture_default_str();
    };

    CLI::App* run = app.add_subcommand("run", "run one algorithm, emit a JSON report");
    add_common(run, true);
    run->add_option("--algo", algo, "gen | fast | oracle")
        ->required()
        ->check(CLI::IsMember({"gen", "fast", "oracle"}));
    run->add_flag("--emit-patterns", a.emit_patterns,
                  "include per-class pattern lists in the report");

    CLI::App* cmp = app.add_subcommand(
        "compare", "run gen, fast and (if feasible) the oracle; diff the outputs");
    add_common(cmp, true);
    cmp->add_flag("--inject-diff", inject_diff)->group(""); // test hook

    CLI::App* sweep =
        app.add_subcommand("sweep", "threshold grid, one CSV row per cell");
    add_common(sweep, false);
    sweep->add_option("--algo", algo, "gen | fast | oracle")
        ->check(CLI::IsMember({"gen", "fast", "oracle"}))
        ->capture_default_str();
    sweep->add_option("--fre-list", fre_list_s, "comma-separated min_fre values")
        ->required();
    sweep->add_option("--util-list", util_list_s, "comma-separated min_util values")
        ->required();
    sweep->add_flag("--parallel", parallel,
                    "run cells on a thread pool (wall times become noisy)");

    CLI::App* scale = app.add_subcommand(
        "scale", "rerun on ascending transaction prefixes, one CSV row per cell");
    add_common(scale, true);
    std::string scale_algo = "both";
    scale->add_option("--algo", scale_algo, "gen | fast | both")
        ->check(CLI::IsMember({"gen", "fast", "both"}))
        ->capture_default_str();
    scale->add_option("--slices", slices_s, "comma-separated ascending prefix sizes")
        ->required();

    CLI::App* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    GeneratorConfig cfg;
    cfg.transactions = 1000;
    cfg.items = 100;
    cfg.avg_length = 8;
    std::string gen_out;
    gen->add_option("--transactions", cfg.transactions)->capture_default_str();
    gen->add_option("--items", cfg.items)->capture_default_str();
    gen->add_option("--avg-len", cfg.avg_length)->capture_default_str();
    gen->add_option("--max-qty", cfg.max_quantity)->capture_default_str();
    gen->add_option("--util-min", cfg.util_min)->capture_default_str();
    gen->add_option("--util-max", cfg.util_max)->capture_default_str();
    gen->add_option("--zipf", cfg.zipf_s)->capture_default_str();
    gen->add_option("--seed", cfg.seed)->capture_default_str();
    gen->add_option("--out", gen_out, "dataset file to write (stdout by default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand(run)) return cmd_run(a, algo);
        if (app.got_subcommand(cmp)) return cmd_compare(a, inject_diff);
        if (app.got_subcommand(sweep)) {
            auto fre = split_list(fre_list_s);
            auto util = split_list(util_list_s);
            if (fre.empty() || util.empty()) {
                std::cerr << "ufc sweep: threshold lists must be non-empty\n";
                return kUsage;
            }
            return cmd_sweep(a, algo, fre, util, parallel);
        }
        if (app.got_subcommand(scale)) {
            std::vector<std::size_t> slices;
            for (const std::string& s : split_list(slices_s)) {
                std::int64_t v = 0;
                try {
                    v = std::stoll(s);
                } catch (...) {
                    std::cerr << "ufc scale: bad slice '" << s << "'\n";
                    return kUsage;
                }
                if (v < 0) {
                    std::cerr << "ufc scale: bad slice '" << s << "'\n";
                    return kUsage;
                }
                slices.push_back(static_cast<std::size_t>(v));
            }
            return cmd_scale(a, scale_algo, slices);
        }
        if (app.got_subcommand(gen)) return cmd_generate(cfg, gen_out);
    } catch (const ParseError& e) {
        std::cerr << "ufc: " << e.what() << "\n";
        return kParse;
    } catch (const ImportError& e) {
        std::cerr << "ufc: " << e.what() << "\n";
        return kParse;
    } catch (const ConfigError& e) {
        std::cerr << "ufc: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "ufc: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
