#ifndef QPWALK_VERIFY_HPP
#define QPWALK_VERIFY_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include <qpwalk/asymptotics.hpp>
#include <qpwalk/compensation.hpp>
#include <qpwalk/series.hpp>
#include <qpwalk/variants.hpp>
#include <qpwalk/walk_dp.hpp>

// Self-verification suites: each one re-runs a family of invariants and
// reports a pass/fail line per check.

namespace qpwalk
{

struct check_result {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct suite_result {
    std::string suite;
    std::vector<check_result> checks;

    [[nodiscard]] bool passed() const
    {
        for (const auto &c : checks) {
            if (!c.passed) {
                return false;
            }
        }
        return true;
    }
};

struct verify_options {
    // Drop one interior step of the main walk before running the DP, to make
    // sure the suites notice a broken oracle.
    bool mutate_dp = false;
};

namespace detail
{

inline step_rule main_rule_for(const verify_options &opt)
{
    auto rule = builtin_rule("main");
    return opt.mutate_dp ? rule.without_step(region::interior, 0) : rule;
}

inline void run_check(suite_result &out, std::string name, const std::function<bool(std::string &)> &body)
{
    check_result r;
    r.name = std::move(name);
    try {
        r.passed = body(r.detail);
    } catch (const std::exception &e) {
        r.passed = false;
        r.detail = e.what();
    }
    out.checks.push_back(std::move(r));
}

inline series random_series(std::mt19937_64 &rng, std::size_t order, bool unit_constant)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    std::vector<rational> coeffs;
    for (std::size_t n = 0; n <= order; ++n) {
        coeffs.emplace_back(num(rng), den(rng));
    }
    if (unit_constant) {
        coeffs[0] = 1;
    }
    return series(std::move(coeffs));
}

} // namespace detail

inline suite_result verify_series()
{
    suite_result out{"series", {}};
    std::mt19937_64 rng(20240611);
    detail::run_check(out, "div(mul(a,b),b) == a", [&](std::string &) {
        for (int trial = 0; trial < 25; ++trial) {
            auto a = detail::random_series(rng, 8, false);
            auto b = detail::random_series(rng, 8, true);
            if (!(div(a * b, b) == a)) {
                return false;
            }
        }
        return true;
    });
    detail::run_check(out, "sqrt_one_plus(s)^2 == s", [&](std::string &) {
        for (int trial = 0; trial < 25; ++trial) {
            auto s = detail::random_series(rng, 8, true);
            auto r = sqrt_one_plus(s);
            if (!(r * r - s).is_zero() || r[0] != 1) {
                return false;
            }
        }
        return true;
    });
    detail::run_check(out, "compose(s, z) == s", [&](std::string &) {
        for (int trial = 0; trial < 10; ++trial) {
            auto s = detail::random_series(rng, 8, false);
            if (!(compose(s, series::variable(8)) == s)) {
                return false;
            }
        }
        return true;
    });
    detail::run_check(out, "coefficients stay canonical", [&](std::string &) {
        for (int trial = 0; trial < 10; ++trial) {
            auto a = detail::random_series(rng, 8, false);
            auto b = detail::random_series(rng, 8, true);
            if (!all_canonical(a * b) || !all_canonical(div(a, b)) || !all_canonical(sqrt_one_plus(b))) {
                return false;
            }
        }
        return true;
    });
    return out;
}

inline suite_result verify_ladder()
{
    suite_result out{"ladder", {}};
    const auto ladder = build_ladder(12, 30);
    detail::run_check(out, "valuations (2k+1, 2k+2) with unit leading coefficients, k <= 12, order 30",
                      [&](std::string &detail) {
                          for (std::size_t k = 0; k <= 12; ++k) {
                              const auto va = ladder.alphas[k].valuation();
                              const auto vb = ladder.betas[k].valuation();
                              // Rungs whose leading term lies beyond the order are zero truncations.
                              const bool a_ok = 2 * k + 1 > 30 ? !va : (va == 2 * k + 1 && ladder.alphas[k][*va] == 1);
                              const bool b_ok = 2 * k + 2 > 30 ? !vb : (vb == 2 * k + 2 && ladder.betas[k][*vb] == 1);
                              if (!a_ok || !b_ok) {
                                  detail = "rung " + std::to_string(k);
                                  return false;
                              }
                          }
                          return true;
                      });
    detail::run_check(out, "kernel residuals vanish for consecutive pairs", [&](std::string &detail) {
        for (std::size_t k = 0; k <= 12; ++k) {
            if (!kernel_residual(ladder.alphas[k], ladder.betas[k]).is_zero()) {
                detail = "(alpha_k, beta_k), k = " + std::to_string(k);
                return false;
            }
            if (k < 12 && !kernel_residual(ladder.alphas[k + 1], ladder.betas[k]).is_zero()) {
                detail = "(alpha_{k+1}, beta_k), k = " + std::to_string(k);
                return false;
            }
        }
        return true;
    });
    detail::run_check(out, "coefficient recurrences match closed forms", [&](std::string &) {
        const auto coeffs = coefficient_recurrence(ladder);
        const auto one = series::constant(rational(1), ladder.order);
        for (std::size_t k = 0; k <= ladder.depth(); ++k) {
            if (!(coeffs.cs[k] == (one - ladder.alphas[k]) * (one - ladder.betas[k]))) {
                return false;
            }
            if (k > 0 && !(coeffs.ds[k] == -((one - ladder.alphas[k]) * (one - ladder.betas[k - 1])))) {
                return false;
            }
        }
        return true;
    });
    return out;
}

inline suite_result verify_oracle(const verify_options &opt = {})
{
    suite_result out{"oracle", {}};
    const auto table = dp_counts(detail::main_rule_for(opt), 31);
    detail::run_check(out, "q_{0,0,k}, k <= 10, equals 1,0,2,2,10,16,64,126,454,1004,3404", [&](std::string &) {
        const long expected[] = {1, 0, 2, 2, 10, 16, 64, 126, 454, 1004, 3404};
        const auto q00 = q_series(0, 0, 10);
        for (long k = 0; k <= 10; ++k) {
            if (table.at(0, 0, k) != expected[k] || q00[static_cast<std::size_t>(k)] != expected[k]) {
                return false;
            }
        }
        return true;
    });
    detail::run_check(out, "compensation series equal DP counts, i,j <= 6, k <= 30", [&](std::string &detail) {
        compensation_solution sol(30, 6, 6);
        for (std::size_t i = 0; i <= 6; ++i) {
            for (std::size_t j = 0; j <= 6; ++j) {
                const auto q = sol.q(i, j);
                for (std::size_t k = 0; k <= 30; ++k) {
                    if (q[k] != rational(table.at(static_cast<long>(i), static_cast<long>(j), static_cast<long>(k)))) {
                        detail = "mismatch at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
                        return false;
                    }
                }
            }
        }
        return true;
    });
    detail::run_check(out, "functional equation, i,j,k <= 10",
                      [&](std::string &) { return check_functional_equation(table, 10, 10, 10); });
    detail::run_check(out, "backward recursions", [&](std::string &) { return check_main_recursions(table); });
    return out;
}

inline suite_result verify_identities()
{
    suite_result out{"identities", {}};
    detail::run_check(out, "boundary identities to order 30", [](std::string &) { return check_boundary_identities(30); });
    detail::run_check(out, "boundary identities to order 60", [](std::string &) { return check_boundary_identities(60); });
    detail::run_check(out, "Q(1,1) and Q(1,0) are the total and axis counts, k <= 25", [](std::string &) {
        const auto sv = special_values(25);
        const auto table = dp_counts(builtin_rule("main"), 25);
        for (std::size_t k = 0; k <= 25; ++k) {
            const auto m = marginals(table, k);
            if (sv.q11[k] != rational(m.total) || sv.q10[k] != rational(m.axis)) {
                return false;
            }
        }
        return true;
    });
    return out;
}

inline suite_result verify_variants()
{
    suite_result out{"variants", {}};
    detail::run_check(out, "rational walk equals DP, i,j <= 5, k <= 25", [](std::string &) {
        const auto sol = solve_rational(25);
        const auto table = dp_counts(builtin_rule("rational_gf"), 25);
        for (long i = 0; i <= 5; ++i) {
            for (long j = 0; j <= 5; ++j) {
                const auto q = q_rational(sol, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                for (long k = 0; k <= 25; ++k) {
                    if (q[static_cast<std::size_t>(k)] != rational(table.at(i, j, k))) {
                        return false;
                    }
                }
            }
        }
        return true;
    });
    detail::run_check(out, "big-step walk equals DP, i,j <= 5, k <= 20", [](std::string &) {
        const auto ladder = build_bigstep(20, 20);
        const auto table = dp_counts(builtin_rule("big_step"), 20);
        for (long i = 0; i <= 5; ++i) {
            for (long j = 0; j <= 5; ++j) {
                const auto q = q_bigstep(ladder, static_cast<std::size_t>(i), static_cast<std::size_t>(j), 20);
                for (long k = 0; k <= 20; ++k) {
                    if (q[static_cast<std::size_t>(k)] != rational(table.at(i, j, k))) {
                        return false;
                    }
                }
            }
        }
        return true;
    });
    return out;
}

inline suite_result verify_numeric()
{
    suite_result out{"numeric", {}};
    rho_bracket rho;
    detail::run_check(out, "rho bracket of width <= 1e-10 meets [0.34499975, 0.34499976]", [&](std::string &detail) {
        rho = find_rho(1e-10);
        detail = "[" + format15(rho.lo) + ", " + format15(rho.hi) + "]";
        return rho.width() <= 1e-10 && rho.hi >= 0.34499975 && rho.lo <= 0.34499976;
    });
    detail::run_check(out, "C00 = 0.0531 +- 5e-4", [&](std::string &detail) {
        const auto r = growth_constants(rho);
        detail = format15(r.c00);
        return std::abs(r.c00 - 0.0531) <= 5e-4;
    });
    detail::run_check(out, "h' matches central differences at z = 0.26, 0.30, 0.34", [](std::string &) {
        for (double z : {0.26, 0.30, 0.34}) {
            const double step = 1e-6;
            const double fd = (h_eval(z + step, 80).value - h_eval(z - step, 80).value) / (2 * step);
            if (std::abs(h_prime(z, 80).value - fd) > 1e-6 * std::abs(fd)) {
                return false;
            }
        }
        return true;
    });
    detail::run_check(out, "ladder bounds and strict decrease for 50 values of z", [](std::string &) {
        for (int n = 1; n <= 50; ++n) {
            const double z = max_z * n / 50.0;
            const auto lad = eval_ladder(z, 51, false);
            for (std::size_t k = 0; k <= 25; ++k) {
                if (lad.gammas[2 * k] > std::pow(2.0, -(2.0 * k + 1.0) / 2.0) + 1e-12) {
                    return false;
                }
                if (!(lad.gammas[k + 1] < lad.gammas[k]) || !(lad.gammas[k + 1] > 0.0)) {
                    return false;
                }
            }
        }
        return true;
    });
    return out;
}

inline const std::vector<std::string_view> &suite_names()
{
    static const std::vector<std::string_view> names{"series", "ladder", "oracle", "identities", "variants", "numeric", "all"};
    return names;
}

inline std::vector<suite_result> run_verify(std::string_view suite, const verify_options &opt = {})
{
    std::vector<suite_result> results;
    const bool all = suite == "all";
    bool known = all;
    if (all || suite == "series") {
        results.push_back(verify_series());
        known = true;
    }
    if (all || suite == "ladder") {
        results.push_back(verify_ladder());
        known = true;
    }
    if (all || suite == "oracle") {
        results.push_back(verify_oracle(opt));
        known = true;
    }
    if (all || suite == "identities") {
        results.push_back(verify_identities());
        known = true;
    }
    if (all || suite == "variants") {
        results.push_back(verify_variants());
        known = true;
    }
    if (all || suite == "numeric") {
        results.push_back(verify_numeric());
        known = true;
    }
    if (!known) {
        throw error(errc::invalid_argument, "unknown suite '" + std::string(suite) + "'");
    }
    return results;
}

inline nlohmann::json to_json(const std::vector<suite_result> &results)
{
    nlohmann::json suites = nlohmann::json::array();
    bool passed = true;
    for (const auto &s : results) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto &c : s.checks) {
            checks.push_back({{"name", c.name}, {"passed", c.passed}});
        }
        suites.push_back({{"suite", s.suite}, {"passed", s.passed()}, {"checks", std::move(checks)}});
        passed = passed && s.passed();
    }
    return {{"passed", passed}, {"suites", std::move(suites)}};
}

} // namespace qpwalk

#endif // QPWALK_VERIFY_HPP
