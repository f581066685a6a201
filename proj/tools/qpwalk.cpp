// qpwalk: counts, series coefficients, asymptotic reports and self-checks
// for quarter-plane walks.
//
// stdout carries data, stderr diagnostics. Exit codes: 0 ok, 1 failed
// invariant, 2 invalid arguments, 3 unresolved sign of h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <qpwalk/qpwalk.hpp>

namespace
{

constexpr std::size_t kmax_guard = 2000;
constexpr std::size_t order_guard = 500;

enum exit_code : int { ok = 0, invariant_failed = 1, bad_arguments = 2, sign_ambiguity = 3 };

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string &msg)
{
    if (!cond) {
        throw usage_error(msg);
    }
}

std::string csv_or_json(const std::string &format, const std::string &csv, const nlohmann::json &json)
{
    return format == "csv" ? csv : json.dump(2) + "\n";
}

// The whole payload is built before anything is written.
int emit(const std::string &payload, const std::string &out_path)
{
    if (out_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return ok;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot open " << out_path << " for writing\n";
        return bad_arguments;
    }
    out << payload;
    return out ? ok : invariant_failed;
}

struct count_args {
    std::string walk = "main";
    std::size_t kmax = 10;
    std::string format = "csv";
    std::string out;
};

std::string run_count(const count_args &a)
{
    require(a.kmax <= kmax_guard, "--kmax must be <= " + std::to_string(kmax_guard));
    const auto rule = qpwalk::builtin_rule(a.walk);
    const auto table = qpwalk::dp_counts(rule, a.kmax);
    return a.format == "csv" ? qpwalk::to_csv(table) : qpwalk::to_json(table).dump(2) + "\n";
}

struct coeffs_args {
    std::string walk = "main";
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t order = 40;
    std::size_t margin = 1;
    std::string format = "json";
    std::string out;
};

std::string run_coeffs(const coeffs_args &a)
{
    require(a.order <= order_guard, "--order must be <= " + std::to_string(order_guard));
    require(a.order >= 1, "--order must be >= 1");
    qpwalk::series q;
    nlohmann::json json;
    if (a.walk == "main") {
        qpwalk::compensation_solution sol(a.order, a.i, a.j, a.margin);
        q = sol.q(a.i, a.j);
        json = {{"walk", "main"},
                {"order", a.order},
                {"i", a.i},
                {"j", a.j},
                {"q", qpwalk::q_list_json(q)},
                {"c", qpwalk::q_list_json(sol.c())},
                {"identities_ok", qpwalk::check_boundary_identities(a.order)}};
    } else if (a.walk == "rational_gf") {
        q = qpwalk::q_rational(a.i, a.j, a.order);
        json = {{"walk", a.walk}, {"order", a.order}, {"i", a.i}, {"j", a.j}, {"q", qpwalk::q_list_json(q)}};
    } else if (a.walk == "big_step") {
        q = qpwalk::q_bigstep(a.i, a.j, a.order);
        json = {{"walk", a.walk}, {"order", a.order}, {"i", a.i}, {"j", a.j}, {"q", qpwalk::q_list_json(q)}};
    } else {
        throw qpwalk::error(qpwalk::errc::unknown_rule, "unknown walk '" + a.walk + "'");
    }
    if (!qpwalk::all_canonical(q)) {
        throw qpwalk::error(qpwalk::errc::valuation_violation, "non-canonical coefficient in output");
    }
    std::string csv = "i,j,k,coeff\n";
    for (std::size_t k = 0; k <= q.order(); ++k) {
        csv += std::to_string(a.i) + "," + std::to_string(a.j) + "," + std::to_string(k) + ","
               + qpwalk::to_compact_string(q[k]) + "\n";
    }
    return csv_or_json(a.format, csv, json);
}

struct table_args {
    std::size_t kmin = 10;
    std::size_t kmax = 100;
    std::size_t step = 10;
    double tol = 1e-10;
    std::optional<double> c00;
    std::optional<double> rho;
    std::string format = "csv";
    std::string out;
};

void check_table_range(const table_args &a)
{
    require(a.tol > 0.0, "--tol must be positive");
    require(a.step >= 1, "--step must be >= 1");
    require(a.kmin <= a.kmax, "--kmin must not exceed --kmax");
    require(a.kmax <= kmax_guard, "--kmax must be <= " + std::to_string(kmax_guard));
}

std::vector<qpwalk::table_row> build_table(const table_args &a, double c00, double rho)
{
    const auto counts = qpwalk::dp_counts(qpwalk::builtin_rule("main"), a.kmax);
    return qpwalk::growth_table(counts, a.kmin, a.kmax, a.step, c00, rho);
}

std::string run_asymptotics(const table_args &a)
{
    check_table_range(a);
    const auto rho = qpwalk::find_rho(a.tol);
    auto report = qpwalk::growth_constants(rho);
    report.table = build_table(a, report.c00, rho.mid());
    return csv_or_json(a.format, qpwalk::report_csv(report), qpwalk::to_json(report));
}

std::string run_table(const table_args &a)
{
    check_table_range(a);
    double c00 = 0.0;
    double rho = 0.0;
    if (a.c00 && a.rho) {
        c00 = *a.c00;
        rho = *a.rho;
    } else {
        const auto bracket = qpwalk::find_rho(a.tol);
        c00 = a.c00 ? *a.c00 : qpwalk::growth_constants(bracket).c00;
        rho = a.rho ? *a.rho : bracket.mid();
    }
    require(c00 > 0.0 && rho > 0.0 && rho <= qpwalk::max_z, "--c00 must be positive and --rho in (0, 1/sqrt(8)]");
    const auto rows = build_table(a, c00, rho);
    return csv_or_json(a.format, qpwalk::table_csv(rows), qpwalk::to_json(rows));
}

struct verify_args {
    std::string suite = "all";
};

int run_verify(const verify_args &a)
{
    qpwalk::verify_options opt;
#ifdef QPWALK_MUTATE_DP
    opt.mutate_dp = true;
#endif
    const auto results = qpwalk::run_verify(a.suite, opt);
    bool passed = true;
    for (const auto &s : results) {
        for (const auto &c : s.checks) {
            if (!c.passed) {
                passed = false;
                std::cerr << "FAIL " << s.suite << ": " << c.name;
                if (!c.detail.empty()) {
                    std::cerr << " (" << c.detail << ")";
                }
                std::cerr << "\n";
            }
        }
    }
    std::cout << qpwalk::to_json(results).dump(2) << "\n";
    return passed ? ok : invariant_failed;
}

int classify(const qpwalk::error &e)
{
    switch (e.code()) {
        case qpwalk::errc::sign_ambiguity:
            return sign_ambiguity;
        case qpwalk::errc::unknown_rule:
        case qpwalk::errc::invalid_argument:
        case qpwalk::errc::out_of_range:
        case qpwalk::errc::domain_error:
            return bad_arguments;
        default:
            return invariant_failed;
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact and asymptotic enumeration of quarter-plane walks"};
    app.require_subcommand(1);

    const std::vector<std::string> walks{"main", "rational_gf", "big_step"};
    const std::vector<std::string> formats{"csv", "json"};

    count_args count;
    auto *count_cmd = app.add_subcommand("count", "Exact counts q(i,j,k) for k <= kmax by dynamic programming");
    count_cmd->add_option("--walk", count.walk, "Walk model")->check(CLI::IsMember(walks))->capture_default_str();
    count_cmd->add_option("--kmax", count.kmax, "Largest walk length")->capture_default_str();
    count_cmd->add_option("--format", count.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    count_cmd->add_option("--out", count.out, "Write to this file instead of stdout");

    coeffs_args coeffs;
    auto *coeffs_cmd = app.add_subcommand("coeffs", "Series coefficients of Q_{i,j}(z) up to a given order");
    coeffs_cmd->add_option("--walk", coeffs.walk, "Walk model")->check(CLI::IsMember(walks))->capture_default_str();
    coeffs_cmd->add_option("--i", coeffs.i, "Abscissa")->capture_default_str();
    coeffs_cmd->add_option("--j", coeffs.j, "Ordinate")->capture_default_str();
    coeffs_cmd->add_option("--order", coeffs.order, "Truncation order")->capture_default_str();
    coeffs_cmd->add_option("--margin", coeffs.margin, "Extra ladder rungs (main walk)")->capture_default_str();
    coeffs_cmd->add_option("--format", coeffs.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    coeffs_cmd->add_option("--out", coeffs.out, "Write to this file instead of stdout");

    table_args asym;
    asym.format = "json";
    auto *asym_cmd = app.add_subcommand("asymptotics", "Radius bracket, growth constants and ratio table");
    asym_cmd->add_option("--tol", asym.tol, "Width of the radius bracket")->capture_default_str();
    asym_cmd->add_option("--kmin", asym.kmin, "First length of the embedded table")->capture_default_str();
    asym_cmd->add_option("--kmax", asym.kmax, "Last length of the embedded table")->capture_default_str();
    asym_cmd->add_option("--step", asym.step, "Length increment")->capture_default_str();
    asym_cmd->add_option("--format", asym.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    asym_cmd->add_option("--out", asym.out, "Write to this file instead of stdout");

    table_args table;
    auto *table_cmd = app.add_subcommand("table", "Exact q(0,0,k) against C00 rho^-k");
    table_cmd->add_option("--kmin", table.kmin, "First length")->capture_default_str();
    table_cmd->add_option("--kmax", table.kmax, "Last length")->capture_default_str();
    table_cmd->add_option("--step", table.step, "Length increment")->capture_default_str();
    table_cmd->add_option("--tol", table.tol, "Width of the radius bracket")->capture_default_str();
    table_cmd->add_option("--c00", table.c00, "Use this C00 instead of the computed one");
    table_cmd->add_option("--rho", table.rho, "Use this radius instead of the computed one");
    table_cmd->add_option("--format", table.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    table_cmd->add_option("--out", table.out, "Write to this file instead of stdout");

    verify_args verify;
    std::vector<std::string> suites;
    for (auto name : qpwalk::suite_names()) {
        suites.emplace_back(name);
    }
    auto *verify_cmd = app.add_subcommand("verify", "Run self-verification suites");
    verify_cmd->add_option("--suite", verify.suite, "Suite to run")->check(CLI::IsMember(suites))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return bad_arguments;
    }

    try {
        if (*count_cmd) {
            return emit(run_count(count), count.out);
        }
        if (*coeffs_cmd) {
            return emit(run_coeffs(coeffs), coeffs.out);
        }
        if (*asym_cmd) {
            return emit(run_asymptotics(asym), asym.out);
        }
        if (*table_cmd) {
            return emit(run_table(table), table.out);
        }
        return run_verify(verify);
    } catch (const usage_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_arguments;
    } catch (const qpwalk::error &e) {
        std::cerr << "error: " << qpwalk::to_string(e.code()) << ": " << e.what() << "\n";
        return classify(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return invariant_failed;
    }
}
