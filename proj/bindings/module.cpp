#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ufc/bench.hpp"
#include "ufc/fulist.hpp"
#include "ufc/io.hpp"
#include "ufc/json_report.hpp"
#include "ufc/levelwise.hpp"
#include "ufc/oracle.hpp"

namespace py = pybind11;
using namespace ufc;

namespace {

// Same report shape as the CLI's `run` subcommand, minus the file fields.
// The python wrapper json.loads this; keeping one serialisation path means
// the module and the CLI can never drift apart.
std::string mine_json(const Database& db, const std::string& min_util,
                      const std::string& min_fre, const std::string& algo,
                      double timeout_s, std::size_t oracle_limit) {
    Thresholds th{ThresholdSpec::parse(min_util).resolve_util(db),
                  ThresholdSpec::parse(min_fre).resolve_fre(db)};
    Deadline dl = timeout_s > 0 ? Deadline::after_seconds(timeout_s) : Deadline{};

    ClassificationReport report;
    if (algo == "gen") {
        GenOptions o;
        o.deadline = dl;
        report = run_gen(db, th, o);
    } else if (algo == "fast") {
        FastOptions o;
        o.deadline = dl;
        report = run_fast(db, th, o);
    } else if (algo == "oracle") {
        report = classify_all(db, th, oracle_limit, dl);
    } else {
        throw py::value_error("algo must be 'gen', 'fast' or 'oracle', got '" +
                              algo + "'");
    }

    ordered_json j;
    j["algo"] = algo;
    j["transactions"] = db.size();
    j["thresholds"] = thresholds_json(min_util, min_fre, th, db.money_scale());
    j["stats"] = stats_json(report.stats, algo, report);
    j["patterns"] = patterns_json(report, db.money_scale());
    return j.dump();
}

} // namespace

PYBIND11_MODULE(_ufcminer, m) {
    m.doc() = "quantitative transaction mining core (HFHUI / HFLUI / LFHUI)";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ufc::ImportError>(m, "DataImportError", PyExc_ValueError);
    py::register_exception<TimeoutError>(m, "MiningTimeout", PyExc_RuntimeError);
    py::register_exception<UniverseTooLargeError>(m, "UniverseTooLarge",
                                                  PyExc_ValueError);

    py::class_<Database>(m, "Database")
        .def_property_readonly("transaction_count", &Database::size)
        .def_property_readonly("money_scale", &Database::money_scale)
        .def_property_readonly("item_universe",
                               [](const Database& d) { return d.item_universe(); })
        .def_property_readonly("total_utility",
                               [](const Database& d) {
                                   return format_money(d.total_utility(),
                                                       d.money_scale());
                               },
                               "sum of all transaction utilities, display units")
        .def("prefix", &Database::prefix, py::arg("n"),
             "database restricted to the first n transactions")
        .def("to_native",
             [](const Database& d) {
                 std::ostringstream os;
                 write_native(d, os);
                 return os.str();
             })
        .def("save",
             [](const Database& d, const std::string& path) {
                 write_native_file(d, path);
             },
             py::arg("path"))
        .def("__len__", &Database::size)
        .def("__eq__",
             [](const Database& a, const Database& b) { return a == b; },
             py::is_operator())
        .def("__repr__", [](const Database& d) {
            std::ostringstream os;
            os << "<Database " << d.size() << " transactions, "
               << d.item_universe().size() << " items, total $"
               << format_money(d.total_utility(), d.money_scale()) << ">";
            return os.str();
        });

    m.def("parse_native",
          [](const std::string& text) {
              std::istringstream in(text);
              return parse_native(in);
          },
          py::arg("text"), "parse a dataset from native-format text");
    m.def("load_native", &parse_native_file, py::arg("path"));
    m.def("import_spmf",
          [](const std::string& text, const Database& table) {
              std::istringstream in(text);
              return import_spmf(in, table.utilities(), table.money_scale());
          },
          py::arg("text"), py::arg("table"),
          "import SPMF-style 'items : TU : utilities' lines; quantities are "
          "recovered against `table`'s external utilities");
    m.def("generate",
          [](std::int64_t transactions, std::int32_t items,
             std::int32_t avg_length, std::int32_t max_quantity, Money util_min,
             Money util_max, double zipf_s, std::uint64_t seed) {
              GeneratorConfig cfg;
              cfg.transactions = transactions;
              cfg.items = items;
              cfg.avg_length = avg_length;
              cfg.max_quantity = max_quantity;
              cfg.util_min = util_min;
              cfg.util_max = util_max;
              cfg.zipf_s = zipf_s;
              cfg.seed = seed;
              return generate(cfg);
          },
          py::arg("transactions"), py::arg("items"), py::arg("avg_length"),
          py::arg("max_quantity") = 5, py::arg("util_min") = 1,
          py::arg("util_max") = 10, py::arg("zipf_s") = 1.2, py::arg("seed") = 1,
          "seeded synthetic dataset with Zipf item popularity");
    m.def("_mine_json", &mine_json, py::arg("db"), py::arg("min_util"),
          py::arg("min_fre"), py::arg("algo") = "fast", py::arg("timeout") = 0.0,
          py::arg("oracle_limit") = 20);
}
