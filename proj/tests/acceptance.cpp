// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <qpwalk/qpwalk.hpp>

namespace
{

using qpwalk::rational;
using qpwalk::series;

// Pinned limits and tolerances.
constexpr double runtime_c1 = 1.0;
constexpr double runtime_c2 = 30.0;
constexpr double runtime_c6 = 1.0;
constexpr double runtime_c8 = 10.0;
constexpr double rho_width_tol = 1e-10;
constexpr double rho_published_lo = 0.34499975;
constexpr double rho_published_hi = 0.34499976;
constexpr double c00_published = 0.0531;
constexpr double c00_tol = 5e-4;
constexpr double ratio_tol = 1e-3;
constexpr int c00_published_digits = 3;
constexpr double fd_step = 1e-6;
constexpr double fd_rel_tol = 1e-6;
constexpr double ladder_bound_slack = 1e-12;

struct outcome {
    bool passed = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char *title, double limit_s, const std::function<outcome()> &body)
{
    const auto t0 = std::chrono::steady_clock::now();
    outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = o.passed;
    if (limit_s > 0.0 && secs >= limit_s) {
        ok = false;
        o.detail += " (runtime limit " + qpwalk::format15(limit_s) + " s exceeded)";
    }
    std::printf("%s %2d  %-44s %8.3f s  %s\n", ok ? "PASS" : "FAIL", id, title, secs, o.detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

std::string fmt(const char *f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double round_significant(double x, int digits)
{
    const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
    return std::round(x * scale) / scale;
}

const qpwalk::count_table &main_counts()
{
    static const auto table = qpwalk::dp_counts(qpwalk::builtin_rule("main"), 100);
    return table;
}

} // namespace

int main()
{
    criterion(1, "excursion counts k <= 10 (DP and series)", runtime_c1, [] {
        const long expected[] = {1, 0, 2, 2, 10, 16, 64, 126, 454, 1004, 3404};
        const auto table = qpwalk::dp_counts(qpwalk::builtin_rule("main"), 10);
        const auto q00 = qpwalk::q_series(0, 0, 10);
        for (long k = 0; k <= 10; ++k) {
            if (table.at(0, 0, k) != expected[k] || q00[static_cast<std::size_t>(k)] != expected[k]) {
                return outcome{false, "mismatch at k = " + std::to_string(k)};
            }
        }
        return outcome{true, "1,0,2,2,10,16,64,126,454,1004,3404"};
    });

    criterion(2, "series equal DP for i,j <= 6 to order 30", runtime_c2, [] {
        const auto table = qpwalk::dp_counts(qpwalk::builtin_rule("main"), 30);
        qpwalk::compensation_solution sol(30, 6, 6);
        for (std::size_t i = 0; i <= 6; ++i) {
            for (std::size_t j = 0; j <= 6; ++j) {
                const auto q = sol.q(i, j);
                for (std::size_t k = 0; k <= 30; ++k) {
                    if (q[k] != rational(table.at(static_cast<long>(i), static_cast<long>(j), static_cast<long>(k)))) {
                        return outcome{false, "mismatch at (" + std::to_string(i) + "," + std::to_string(j) + ","
                                                  + std::to_string(k) + ")"};
                    }
                }
            }
        }
        return outcome{true, "49 series x 31 coefficients"};
    });

    criterion(3, "kernel functional equation, i,j,k <= 10", 0.0, [] {
        const auto table = qpwalk::dp_counts(qpwalk::builtin_rule("main"), 10);
        return outcome{qpwalk::check_functional_equation(table, 10, 10, 10), ""};
    });

    criterion(4, "boundary identities to order 60", 0.0,
              [] { return outcome{qpwalk::check_boundary_identities(60), "zero truncations"}; });

    criterion(5, "ladder valuations (2k+1, 2k+2), k <= 12", 0.0, [] {
        const auto ladder = qpwalk::build_ladder(12, 30);
        for (std::size_t k = 0; k <= 12; ++k) {
            const auto va = ladder.alphas[k].valuation();
            const auto vb = ladder.betas[k].valuation();
            if (va != 2 * k + 1 || vb != 2 * k + 2 || ladder.alphas[k][*va] != 1 || ladder.betas[k][*vb] != 1) {
                return outcome{false, "rung " + std::to_string(k)};
            }
        }
        return outcome{true, "order 30, unit leading coefficients"};
    });

    criterion(6, "radius bracket", runtime_c6, [] {
        const auto b = qpwalk::find_rho(rho_width_tol);
        const bool ok = b.width() <= rho_width_tol && b.hi >= rho_published_lo && b.lo <= rho_published_hi;
        return outcome{ok, "[" + fmt("%.12f", b.lo) + ", " + fmt("%.12f", b.hi) + "] width " + fmt("%.2e", b.width())
                               + ", p <= " + std::to_string(b.tail_depth)};
    });

    criterion(7, "C00 = 0.0531 +- 5e-4", 0.0, [] {
        const auto r = qpwalk::growth_constants(qpwalk::find_rho(rho_width_tol));
        return outcome{std::abs(r.c00 - c00_published) <= c00_tol,
                       "C00 = " + fmt("%.10f", r.c00) + " +- " + fmt("%.1e", r.c00_err)};
    });

    criterion(8, "ratio table k = 10, 20, 50, 100", runtime_c8, [] {
        const auto rho = qpwalk::find_rho(rho_width_tol);
        const double c00 = qpwalk::growth_constants(rho).c00;
        const double c00_printed = round_significant(c00, c00_published_digits);
        const auto &table = main_counts();
        const std::size_t ks[] = {10, 20, 50, 100};
        const double published[] = {0.653, 0.840, 0.969, 0.995};
        bool ok = true;
        std::string detail = "C00 -> " + fmt("%.4g", c00_printed) + ":";
        std::string full = " | full C00:";
        for (std::size_t n = 0; n < 4; ++n) {
            const auto row = qpwalk::growth_table(table, ks[n], ks[n], 1, c00_printed, rho.mid()).front();
            const auto row_full = qpwalk::growth_table(table, ks[n], ks[n], 1, c00, rho.mid()).front();
            ok = ok && std::abs(row.ratio - published[n]) <= ratio_tol;
            detail += " " + fmt("%.5f", row.ratio);
            full += " " + fmt("%.5f", row_full.ratio);
        }
        // 8.814e44 to four significant digits, as printed (leading digits, not rounded)
        const auto exact100 = table.at(0, 0, 100).str();
        const bool exact_ok = exact100.size() == 45 && exact100.substr(0, 4) == "8814" && table.at(0, 0, 10) == 3404;
        detail += full + " | q(0,0,100) = " + exact100.substr(0, 1) + "." + exact100.substr(1, 5) + "e"
                  + std::to_string(exact100.size() - 1);
        return outcome{ok && exact_ok, detail};
    });

    criterion(9, "h' against finite differences; tail bounds", 0.0, [] {
        double worst = 0.0;
        for (double z : {0.26, 0.30, 0.34}) {
            const double fd = (qpwalk::h_eval(z + fd_step, 80).value - qpwalk::h_eval(z - fd_step, 80).value) / (2 * fd_step);
            worst = std::max(worst, std::abs(qpwalk::h_prime(z, 80).value - fd) / std::abs(fd));
        }
        bool bounds = true;
        for (int n = 0; n <= 10; ++n) {
            const double z = qpwalk::derivative_z_lo + (qpwalk::derivative_z_hi - qpwalk::derivative_z_lo) * n / 10.0;
            const auto lad = qpwalk::eval_ladder(z, 21, true);
            for (std::size_t k = 0; k <= 20; ++k) {
                bounds = bounds && std::abs(qpwalk::df_dt(lad.gammas[k], z)) <= 4.0 * std::sqrt(2.0) / 9.0;
                bounds = bounds
                         && std::abs(lad.gprimes[k + 1]) <= 100.0 / std::pow(std::sqrt(2.0), static_cast<double>(k + 1));
            }
        }
        return outcome{worst <= fd_rel_tol && bounds, "max relative error " + fmt("%.2e", worst)
                                                         + (bounds ? ", bounds hold on 11 z" : ", bound violated")};
    });

    criterion(10, "numeric ladder bounds and decrease, 50 z", 0.0, [] {
        for (int n = 1; n <= 50; ++n) {
            const double z = qpwalk::max_z * n / 50.0;
            const auto lad = qpwalk::eval_ladder(z, 52, false);
            for (std::size_t k = 0; k <= 25; ++k) {
                if (lad.gammas[2 * k] > std::pow(2.0, -(2.0 * k + 1.0) / 2.0) + ladder_bound_slack
                    || lad.gammas[2 * k + 1] > std::pow(2.0, -(2.0 * k + 2.0) / 2.0) + ladder_bound_slack
                    || !(lad.gammas[k + 1] < lad.gammas[k]) || !(lad.gammas[k + 1] > 0.0)) {
                    return outcome{false, "z = " + fmt("%.6f", z) + ", k = " + std::to_string(k)};
                }
            }
        }
        return outcome{true, "depth 25"};
    });

    criterion(11, "rational walk equals DP; rank-1 product", 0.0, [] {
        const auto sol = qpwalk::solve_rational(25);
        const auto table = qpwalk::dp_counts(qpwalk::builtin_rule("rational_gf"), 25);
        std::vector<std::vector<series>> q(6, std::vector<series>(6));
        for (long i = 0; i <= 5; ++i) {
            for (long j = 0; j <= 5; ++j) {
                q[i][j] = qpwalk::q_rational(sol, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                for (long k = 0; k <= 25; ++k) {
                    if (q[i][j][static_cast<std::size_t>(k)] != rational(table.at(i, j, k))) {
                        return outcome{false, "DP mismatch at (" + std::to_string(i) + "," + std::to_string(j) + ","
                                                  + std::to_string(k) + ")"};
                    }
                }
            }
        }
        for (std::size_t i = 0; i <= 5; ++i) {
            for (std::size_t j = 0; j <= 5; ++j) {
                if (!(q[i][j] * q[0][0] == q[i][0] * q[0][j])) {
                    return outcome{false, "factorization fails at (" + std::to_string(i) + "," + std::to_string(j) + ")"};
                }
            }
        }
        return outcome{true, "i,j <= 5, k <= 25"};
    });

    criterion(12, "big-step walk: DP, c_k valuations, cubic", 0.0, [] {
        const auto ladder = qpwalk::build_bigstep(20, 20);
        const auto table = qpwalk::dp_counts(qpwalk::builtin_rule("big_step"), 20);
        for (long i = 0; i <= 5; ++i) {
            for (long j = 0; j <= 5; ++j) {
                const auto q = qpwalk::q_bigstep(ladder, static_cast<std::size_t>(i), static_cast<std::size_t>(j), 20);
                for (long k = 0; k <= 20; ++k) {
                    if (q[static_cast<std::size_t>(k)] != rational(table.at(i, j, k))) {
                        return outcome{false, "DP mismatch at (" + std::to_string(i) + "," + std::to_string(j) + ","
                                                  + std::to_string(k) + ")"};
                    }
                }
            }
        }
        for (std::size_t k = 0; k <= 20; ++k) {
            if (ladder.cs[k].valuation() != k) {
                return outcome{false, "valuation of c_" + std::to_string(k)};
            }
        }
        std::string vals;
        std::size_t previous = 0;
        for (std::size_t k = 1; k <= 8; ++k) {
            const auto v = qpwalk::fixed_point_cubic_residual(ladder.alphas[k]).valuation();
            if (!v || *v <= previous) {
                return outcome{false, "cubic residual valuation does not grow at K = " + std::to_string(k)};
            }
            previous = *v;
            vals += (k > 1 ? "," : "") + std::to_string(*v);
        }
        return outcome{true, "residual valuations K=1..8: " + vals};
    });

    criterion(13, "truncation bound sufficient (depth vs +3)", 0.0, [] {
        for (std::size_t p : {10U, 20U}) {
            const auto ladder = qpwalk::build_ladder(12, p);
            for (std::size_t i = 0; i <= 2; ++i) {
                for (std::size_t j = 0; j <= 2; ++j) {
                    const auto n = qpwalk::truncation_bound(i, j, p);
                    if (!(qpwalk::xhat_series(ladder, i, j, p, n) == qpwalk::xhat_series(ladder, i, j, p, n + 3))) {
                        return outcome{false, "(" + std::to_string(i) + "," + std::to_string(j) + ") p = " + std::to_string(p)};
                    }
                }
            }
        }
        return outcome{true, "(i,j) in {0,1,2}^2, p in {10,20}"};
    });

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
