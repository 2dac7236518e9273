// Command-line front end: catalog listing, identity checks, derivation-type
// space computations, and the full verification suite with JSON reports.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 internal consistency error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "malcev/catalog.hpp"
#include "malcev/derivations.hpp"
#include "malcev/report.hpp"
#include "malcev/verify.hpp"

namespace {

using malcev::Json;

malcev::NaryAlgebra resolve_algebra(const std::string& arg) {
    if (auto named = malcev::make_catalog_algebra(arg)) return *named;
    if (arg.find('.') != std::string::npos || arg.find('/') != std::string::npos)
        return malcev::load_algebra(arg);
    throw std::invalid_argument("unknown algebra '" + arg +
                                "' (not a catalog name; paths must contain '.' or '/')");
}

void write_output(const std::string& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    out << body;
}

std::string format_report(const Json& report, const std::string& format,
                          const std::optional<std::string>& csv) {
    if (format == "json") return report.dump(2) + "\n";
    if (format == "text") {
        std::ostringstream os;
        malcev::render_text(report, os);
        return os.str();
    }
    if (format == "csv") {
        if (!csv)
            throw std::invalid_argument("--format csv is only available for the dims-only "
                                        "commands (list, space without --emit-basis)");
        return *csv;
    }
    throw std::invalid_argument("unknown format '" + format + "'");
}

int run_list(const std::string& format, const std::string& out_path) {
    Json report;
    report["version"] = malcev::kToolVersion;
    report["command"] = "list";
    Json algebras = Json::array();
    std::ostringstream csv;
    csv << "name,arity,dim\n";
    std::ostringstream text;
    for (const auto& entry : malcev::catalog_entries()) {
        algebras.push_back(Json{{"name", entry.name},
                                {"arity", entry.arity},
                                {"dim", entry.dim},
                                {"summary", entry.summary}});
        csv << entry.name << "," << entry.arity << "," << entry.dim << "\n";
        text << entry.name << " arity=" << entry.arity << " dim=" << entry.dim << "  "
             << entry.summary << "\n";
    }
    report["algebras"] = algebras;
    if (format == "text")
        write_output(text.str(), out_path);
    else
        write_output(format_report(report, format, csv.str()), out_path);
    return 0;
}

int run_check(const std::string& identity, const std::string& algebra_arg,
              const std::string& format, const std::string& out_path) {
    const malcev::NaryAlgebra a = resolve_algebra(algebra_arg);
    malcev::IdentityReport rep;
    if (identity == "anticomm")
        rep = malcev::check_anticommutative(a);
    else if (identity == "malcev")
        rep = malcev::check_malcev_binary(a);
    else if (identity == "nary-malcev")
        rep = malcev::check_nary_malcev(a);
    else if (identity == "filippov")
        rep = malcev::check_filippov(a);
    else
        throw std::invalid_argument(
            "unknown identity '" + identity +
            "' (expected anticomm, malcev, nary-malcev, or filippov)");
    Json report;
    report["version"] = malcev::kToolVersion;
    report["command"] = "check";
    report["algebra"] = a.name();
    report["parameters"] = Json{{"identity", identity}};
    report["result"] = malcev::identity_report_json(rep);
    write_output(format_report(report, format, std::nullopt), out_path);
    return rep.holds ? 0 : 1;
}

int run_space(const std::string& kind, const std::string& algebra_arg,
              const std::string& delta_arg, bool emit_basis, const std::string& format,
              const std::string& out_path) {
    const malcev::NaryAlgebra a = resolve_algebra(algebra_arg);
    if (kind == "delta" && delta_arg.empty())
        throw std::invalid_argument("space kind 'delta' requires --delta p/q");
    if (kind != "delta" && !delta_arg.empty())
        throw std::invalid_argument("--delta is only meaningful for kind 'delta'");

    Json report;
    report["version"] = malcev::kToolVersion;
    report["command"] = "space";
    report["algebra"] = a.name();
    Json params;
    params["kind"] = kind;
    if (!delta_arg.empty()) params["delta"] = malcev::Rational::parse(delta_arg).str();
    params["emit_basis"] = emit_basis;
    report["parameters"] = params;

    std::size_t dim = 0;
    std::string delta_csv;
    if (kind == "der") {
        const malcev::TupleSpace ts = malcev::derivation_space(a);
        report["result"] = malcev::tuple_space_json(ts, emit_basis);
        dim = ts.dim();
    } else if (kind == "delta") {
        const malcev::Rational delta = malcev::Rational::parse(delta_arg);
        delta_csv = delta.str();
        const malcev::TupleSpace ts = malcev::delta_derivation_space(a, delta);
        report["result"] = malcev::tuple_space_json(ts, emit_basis);
        dim = ts.dim();
    } else if (kind == "qder") {
        const malcev::TupleSpace ts = malcev::quasiderivation_space(a);
        report["result"] = malcev::tuple_space_json(ts, emit_basis);
        dim = ts.dim();
    } else if (kind == "nary") {
        const malcev::TupleSpace ts = malcev::nary_derivation_space(a);
        report["result"] = malcev::tuple_space_json(ts, emit_basis);
        dim = ts.dim();
    } else if (kind == "trivial") {
        const malcev::TupleSpace ts = malcev::trivial_tuple_space(a);
        report["result"] = malcev::tuple_space_json(ts, emit_basis);
        dim = ts.dim();
    } else if (kind == "gder") {
        const malcev::MapSpace ms = malcev::generalized_derivation_space(a);
        report["result"] = malcev::map_space_json(ms, emit_basis);
        dim = ms.dim();
    } else if (kind == "centroid") {
        const malcev::MapSpace ms = malcev::centroid(a);
        report["result"] = malcev::map_space_json(ms, emit_basis);
        dim = ms.dim();
    } else {
        throw std::invalid_argument(
            "unknown space kind '" + kind +
            "' (expected der, delta, qder, gder, nary, centroid, or trivial)");
    }

    std::optional<std::string> csv;
    if (!emit_basis) {
        std::ostringstream os;
        os << "algebra,kind,delta,dim\n"
           << a.name() << "," << kind << "," << delta_csv << "," << dim << "\n";
        csv = os.str();
    }
    write_output(format_report(report, format, csv), out_path);
    return 0;
}

int run_verify(std::uint64_t seed, std::size_t trials, bool format_explicit,
               const std::string& format, const std::string& out_path) {
    const malcev::PaperSuiteResult res = malcev::run_paper_suite(seed, trials);
    std::size_t must_passed = 0, must_total = 0;
    for (const auto& item : res.items) {
        std::cout << (item.must ? (item.pass ? "PASS " : "FAIL ") : "INFO ") << item.id << ": "
                  << item.detail << "\n";
        if (item.must) {
            ++must_total;
            if (item.pass) ++must_passed;
        }
    }
    std::cout << "verify-paper: " << must_passed << "/" << must_total
              << " MUST criteria passed\n";
    // the report file is JSON unless text is asked for explicitly
    if (!out_path.empty())
        write_output(
            format_report(res.report, format_explicit ? format : "json", std::nullopt),
            out_path);
    else if (format_explicit && format == "json")
        write_output(format_report(res.report, format, std::nullopt), "");
    return res.all_must_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation of (n+1)-ary derivation structure for n-ary algebras"};
    app.require_subcommand(1);

    std::string algebra_arg, delta_arg, format = "text", out_path, identity, kind;
    std::uint64_t seed = 42;
    std::size_t trials = 8;
    bool emit_basis = false;

    CLI::App* list_cmd = app.add_subcommand("list", "list the catalog algebras");
    list_cmd->add_option("--format", format, "output format: text|json|csv");
    list_cmd->add_option("--out", out_path, "write the report to a file");

    CLI::App* check_cmd = app.add_subcommand("check", "verify a defining identity exactly");
    check_cmd->add_option("identity", identity, "anticomm|malcev|nary-malcev|filippov")
        ->required();
    check_cmd->add_option("--algebra", algebra_arg, "catalog name or JSON file path")
        ->required();
    check_cmd->add_option("--format", format, "output format: text|json");
    check_cmd->add_option("--out", out_path, "write the report to a file");

    CLI::App* space_cmd =
        app.add_subcommand("space", "compute a derivation-type solution space");
    space_cmd->add_option("kind", kind, "der|delta|qder|gder|nary|centroid|trivial")
        ->required();
    space_cmd->add_option("--algebra", algebra_arg, "catalog name or JSON file path")
        ->required();
    space_cmd->add_option("--delta", delta_arg, "exact rational delta, e.g. -1 or 1/2");
    space_cmd->add_flag("--emit-basis", emit_basis, "serialize the canonical basis");
    space_cmd->add_option("--format", format, "output format: text|json|csv");
    space_cmd->add_option("--out", out_path, "write the report to a file");

    CLI::App* verify_cmd =
        app.add_subcommand("verify-paper", "run every verification criterion and report");
    verify_cmd->add_option("--seed", seed, "seed for the rank estimates");
    verify_cmd->add_option("--trials", trials, "trials for the rank estimates");
    CLI::Option* verify_format =
        verify_cmd->add_option("--format", format, "report format: text|json");
    verify_cmd->add_option("--out", out_path, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto start = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (list_cmd->parsed())
            rc = run_list(format, out_path);
        else if (check_cmd->parsed())
            rc = run_check(identity, algebra_arg, format, out_path);
        else if (space_cmd->parsed())
            rc = run_space(kind, algebra_arg, delta_arg, emit_basis, format, out_path);
        else if (verify_cmd->parsed())
            rc = run_verify(seed, trials, verify_format->count() > 0, format, out_path);
    } catch (const malcev::ConsistencyError& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    std::cerr << "# elapsed_seconds=" << elapsed.count() << "\n";
    return rc;
}
