#ifndef QPWALK_ASYMPTOTICS_HPP
#define QPWALK_ASYMPTOTICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include <qpwalk/error.hpp>
#include <qpwalk/rational.hpp>
#include <qpwalk/walk_dp.hpp>

// Real-z evaluation of the main walk's ladder and of
//   h(z) = 1 - 2z + z xhat_{0,0}(z) = 1 + 2z (-1 - alpha_0 + sum_k (-1)^k T_k),
// with T_k = gamma_k gamma_{k+1} where gamma = (alpha_0, beta_0, alpha_1, ...).
// The smallest positive root rho of h is the dominant singularity of every q_{i,j}.

namespace qpwalk
{

inline const double max_z = 1.0 / std::sqrt(8.0);
inline constexpr double derivative_z_lo = 0.25;
inline constexpr double derivative_z_hi = 0.35;

namespace detail
{

inline double inv_sqrt2_pow(double e)
{
    return std::pow(2.0, -0.5 * e);
}

inline void require_domain(double z)
{
    if (!(z > 0.0) || z > max_z) {
        throw error(errc::domain_error, "z must lie in (0, 1/sqrt(8)]");
    }
}

inline void require_derivative_domain(double z)
{
    if (!(z >= derivative_z_lo && z <= derivative_z_hi)) {
        throw error(errc::derivative_domain_error, "derivatives are only controlled for z in [1/4, 0.35]");
    }
}

inline double discriminant_root(double z, double t)
{
    return std::sqrt(std::max(0.0, 1.0 - 4.0 * z * z * (1.0 + t * t)));
}

} // namespace detail

/// f(t) = 2 z t / (1 + sqrt(1 - 4 z^2 (1+t^2))).
inline double f_numeric(double t, double z)
{
    return 2.0 * z * t / (1.0 + detail::discriminant_root(z, t));
}

/// d f / d t = 2z / D + 8 z^3 t^2 / (S D^2), with S = sqrt(1 - 4z^2(1+t^2)), D = 1 + S.
inline double df_dt(double t, double z)
{
    const double s = detail::discriminant_root(z, t);
    const double d = 1.0 + s;
    return 2.0 * z / d + 8.0 * z * z * z * t * t / (s * d * d);
}

/// d f / d z = f / (z S).
inline double df_dz(double t, double z)
{
    return f_numeric(t, z) / (z * detail::discriminant_root(z, t));
}

/// alpha_0(z) = (1 - sqrt(1 - 8z^2)) / (4z) = 2z / (1 + sqrt(1 - 8z^2)).
inline double alpha0_numeric(double z)
{
    return 2.0 * z / (1.0 + std::sqrt(std::max(0.0, 1.0 - 8.0 * z * z)));
}

inline double alpha0_derivative(double z)
{
    const double w = std::sqrt(1.0 - 8.0 * z * z);
    return (2.0 * (1.0 + w) + 16.0 * z * z / w) / ((1.0 + w) * (1.0 + w));
}

struct numeric_ladder {
    double z = 0.0;
    std::vector<double> gammas;  // alpha_0, beta_0, alpha_1, beta_1, ...
    std::vector<double> gprimes; // d gamma_k / dz, empty unless requested

    [[nodiscard]] double alpha(std::size_t k) const
    {
        return gammas.at(2 * k);
    }

    [[nodiscard]] double beta(std::size_t k) const
    {
        return gammas.at(2 * k + 1);
    }
};

/// gamma_0 .. gamma_K, and optionally their z-derivatives through
///   gamma'_{k+1} = gamma'_k df/dt(gamma_k) + df/dz(gamma_k).
inline numeric_ladder eval_ladder(double z, std::size_t count, bool with_derivatives)
{
    detail::require_domain(z);
    if (with_derivatives) {
        detail::require_derivative_domain(z);
    }
    numeric_ladder out;
    out.z = z;
    out.gammas.reserve(count + 1);
    out.gammas.push_back(alpha0_numeric(z));
    for (std::size_t k = 0; k < count; ++k) {
        out.gammas.push_back(f_numeric(out.gammas.back(), z));
    }
    if (with_derivatives) {
        out.gprimes.reserve(count + 1);
        out.gprimes.push_back(alpha0_derivative(z));
        for (std::size_t k = 0; k < count; ++k) {
            const double g = out.gammas[k];
            out.gprimes.push_back(out.gprimes.back() * df_dt(g, z) + df_dz(g, z));
        }
    }
    return out;
}

struct bounded_value {
    double value = 0.0;
    double error_bound = 0.0;
};

/// Partial sum of h through T_p. The alternating tail is below 1/sqrt(2)^(2p+3),
/// hence |h - value| <= 2z / sqrt(2)^(2p+3).
inline bounded_value h_eval(double z, std::size_t p)
{
    detail::require_domain(z);
    const auto lad = eval_ladder(z, p + 1, false);
    double lambda = 0.0;
    for (std::size_t k = 0; k <= p; ++k) {
        const double term = lad.gammas[k] * lad.gammas[k + 1];
        lambda += (k % 2 == 0) ? term : -term;
    }
    return {1.0 + 2.0 * z * (-1.0 - lad.gammas[0] + lambda),
            2.0 * z * detail::inv_sqrt2_pow(2.0 * static_cast<double>(p) + 3.0)};
}

/// h' = 2(-1 - alpha_0 + Lambda) + 2z(-alpha_0' + sum_k (-1)^k T_k'), T_k' by the product rule.
/// Bound: tail of Lambda plus 2z * sum_{k>p} 200/sqrt(2)^(k+2).
inline bounded_value h_prime(double z, std::size_t p)
{
    detail::require_derivative_domain(z);
    const auto lad = eval_ladder(z, p + 1, true);
    double lambda = 0.0;
    double lambda_prime = 0.0;
    for (std::size_t k = 0; k <= p; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        lambda += sign * lad.gammas[k] * lad.gammas[k + 1];
        lambda_prime += sign * (lad.gprimes[k] * lad.gammas[k + 1] + lad.gammas[k] * lad.gprimes[k + 1]);
    }
    const double value = 2.0 * (-1.0 - lad.gammas[0] + lambda) + 2.0 * z * (-lad.gprimes[0] + lambda_prime);
    const double q = 1.0 / std::sqrt(2.0);
    const double tail_prime = 200.0 * detail::inv_sqrt2_pow(static_cast<double>(p) + 3.0) / (1.0 - q);
    const double tail = detail::inv_sqrt2_pow(2.0 * static_cast<double>(p) + 3.0);
    return {value, 2.0 * tail + 2.0 * z * tail_prime};
}

// Allowance for double rounding in the partial sums (a few hundred ulps of O(1) terms).
inline constexpr double h_rounding_allowance = 1e-13;

/// +1 / -1 when value +- (error_bound + rounding) has a definite sign, 0 otherwise.
inline int certified_sign(const bounded_value &h)
{
    const double slack = h.error_bound + h_rounding_allowance;
    if (h.value - slack > 0.0) {
        return 1;
    }
    if (h.value + slack < 0.0) {
        return -1;
    }
    return 0;
}

struct rho_bracket {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t tail_depth = 0; // largest p needed to certify a sign

    [[nodiscard]] double mid() const noexcept
    {
        return 0.5 * (lo + hi);
    }

    [[nodiscard]] double width() const noexcept
    {
        return hi - lo;
    }
};

struct rho_options {
    std::size_t p_start = 8;
    std::size_t p_max = 60;
    double endpoint_margin = 1e-9;
};

namespace detail
{

// Raises p until the sign of h(z) is certified; nullopt if p_max is not enough.
inline std::optional<int> sign_of_h(double z, const rho_options &opt, std::size_t &depth_used)
{
    for (std::size_t p = opt.p_start; p <= opt.p_max; p += 4) {
        const int s = certified_sign(h_eval(z, p));
        if (s != 0) {
            depth_used = std::max(depth_used, p);
            return s;
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Bisection for the root of h in (1/3, 1/sqrt(8)) driven only by certified signs.
inline rho_bracket find_rho(double width_tol, const rho_options &opt = {})
{
    if (!(width_tol > 0.0)) {
        throw error(errc::invalid_argument, "width tolerance must be positive");
    }
    rho_bracket b;
    b.lo = 1.0 / 3.0 + opt.endpoint_margin;
    b.hi = max_z - opt.endpoint_margin;
    const auto slo = detail::sign_of_h(b.lo, opt, b.tail_depth);
    const auto shi = detail::sign_of_h(b.hi, opt, b.tail_depth);
    if (slo != 1 || shi != -1) {
        throw error(errc::sign_ambiguity, "could not certify h > 0 at the left end and h < 0 at the right end");
    }
    while (b.width() > width_tol) {
        const double m = b.mid();
        if (m <= b.lo || m >= b.hi) {
            break; // no representable midpoint left
        }
        const auto s = detail::sign_of_h(m, opt, b.tail_depth);
        if (s) {
            (*s > 0 ? b.lo : b.hi) = m;
            continue;
        }
        // h(m) is too close to zero to sign; the root is within a hair of m,
        // so certify two probes a quarter tolerance either side.
        const double delta = 0.25 * width_tol;
        const auto left = detail::sign_of_h(m - delta, opt, b.tail_depth);
        const auto right = detail::sign_of_h(m + delta, opt, b.tail_depth);
        if (left == 1 && right == -1) {
            b.lo = m - delta;
            b.hi = m + delta;
            break;
        }
        throw error(errc::sign_ambiguity, "sign of h not certified near z = " + std::to_string(m));
    }
    return b;
}

/// xhat_{i,j}(z) = x_{i,j}(z) + x_{j,i}(z) summed numerically. Terms stop once
/// the a-priori bound (alpha_k <= 2^-(2k+1)/2, beta_k <= 2^-(k+1)) on the next
/// term falls below `cutoff`; the geometric remainder (ratio <= 1/2) goes into
/// the error bound.
inline bounded_value xhat_numeric(double z, std::size_t i, std::size_t j, double cutoff = 1e-14)
{
    detail::require_domain(z);
    const auto term_bound = [](std::size_t a, std::size_t b, std::size_t k) {
        const double ba = std::pow(2.0, -(2.0 * static_cast<double>(k) + 1.0) / 2.0);
        const double bb = std::pow(2.0, -(static_cast<double>(k) + 1.0));
        return std::pow(bb, static_cast<double>(b)) * (a == 0 ? ba : 2.0 * std::pow(ba, static_cast<double>(a)));
    };
    const auto cut = [&](std::size_t a, std::size_t b) {
        std::size_t k = 0;
        while (term_bound(a, b, k) >= cutoff) {
            ++k;
        }
        return k;
    };
    const std::size_t kij = cut(i, j);
    const std::size_t kji = cut(j, i);
    const auto lad = eval_ladder(z, 2 * std::max(kij, kji) + 2, false);
    const auto x = [&](std::size_t a, std::size_t b, std::size_t kcut) {
        double sum = 0.0;
        for (std::size_t k = 0; k < kcut; ++k) {
            const double ak = lad.alpha(k);
            const double ak1 = lad.alpha(k + 1);
            const double bk = lad.beta(k);
            const double d = (1.0 - ak) * std::pow(ak, static_cast<double>(a))
                             - (1.0 - ak1) * std::pow(ak1, static_cast<double>(a));
            sum += (1.0 - bk) * std::pow(bk, static_cast<double>(b)) * d;
        }
        return sum;
    };
    return {x(i, j, kij) + x(j, i, kji), 2.0 * term_bound(i, j, kij) + 2.0 * term_bound(j, i, kji)};
}

struct table_row {
    std::size_t k = 0;
    big_int exact;
    double approx = 0.0;
    double ratio = 0.0; // approx / exact
};

struct asymptotic_report {
    rho_bracket rho;
    bounded_value h_prime_rho;
    double c00 = 0.0;
    double c00_err = 0.0;
    std::map<std::pair<std::size_t, std::size_t>, bounded_value> cij;
    double total_const = 0.0;
    double axis_const = 0.0;
    std::vector<table_row> table;
};

struct constants_options {
    std::size_t derivative_depth = 80;
    std::size_t imax = 2;
    std::size_t jmax = 2;
};

/// C_{0,0} = (3 rho - 1) / (-rho^2 h'(rho)), C_{i,j} = xhat_{i,j}(rho) / (-rho h'(rho)),
/// total ~ 1/(-rho h'(rho)), axis ~ (1 - alpha_0(rho)) / (-rho h'(rho)), all at the bracket midpoint.
inline asymptotic_report growth_constants(const rho_bracket &rho, const constants_options &opt = {})
{
    asymptotic_report r;
    r.rho = rho;
    const double z = rho.mid();
    r.h_prime_rho = h_prime(z, opt.derivative_depth);
    const auto c00_at = [&](double x, double hp) { return (3.0 * x - 1.0) / (-x * x * hp); };
    const double hp = r.h_prime_rho.value;
    r.c00 = c00_at(z, hp);
    const double spread = std::max(std::abs(c00_at(rho.lo, h_prime(rho.lo, opt.derivative_depth).value) - r.c00),
                                   std::abs(c00_at(rho.hi, h_prime(rho.hi, opt.derivative_depth).value) - r.c00));
    r.c00_err = spread + std::abs(r.c00) * r.h_prime_rho.error_bound / std::abs(hp);
    const double denom = -z * hp;
    for (std::size_t i = 0; i <= opt.imax; ++i) {
        for (std::size_t j = 0; j <= opt.jmax; ++j) {
            if (i + j == 0) {
                continue;
            }
            const auto x = xhat_numeric(z, i, j);
            const double value = x.value / denom;
            const double err = x.error_bound / std::abs(denom) + std::abs(value) * r.h_prime_rho.error_bound / std::abs(hp);
            r.cij[{i, j}] = {value, err};
        }
    }
    r.total_const = 1.0 / denom;
    r.axis_const = (1.0 - alpha0_numeric(z)) / denom;
    return r;
}

/// Rows (k, exact q_{0,0,k}, c00 rho^-k, ratio) for k = kmin, kmin+step, ..., <= kmax.
inline std::vector<table_row> growth_table(const count_table &counts, std::size_t kmin, std::size_t kmax,
                                           std::size_t step, double c00, double rho)
{
    if (step == 0 || kmin > kmax) {
        throw error(errc::invalid_argument, "table needs step >= 1 and kmin <= kmax");
    }
    if (kmax > counts.kmax()) {
        throw error(errc::out_of_range, "exact counts not available up to kmax");
    }
    std::vector<table_row> rows;
    for (std::size_t k = kmin; k <= kmax; k += step) {
        table_row row;
        row.k = k;
        row.exact = counts.at(0, 0, static_cast<long>(k));
        row.approx = c00 * std::pow(rho, -static_cast<double>(k));
        row.ratio = row.exact == 0 ? 0.0 : row.approx / row.exact.convert_to<double>();
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Rounds to 15 significant digits.
inline double round15(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

inline nlohmann::json to_json(const std::vector<table_row> &rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &row : rows) {
        arr.push_back(
            {{"k", row.k}, {"exact", row.exact.str()}, {"approx", round15(row.approx)}, {"ratio", round15(row.ratio)}});
    }
    return arr;
}

inline nlohmann::json to_json(const asymptotic_report &r)
{
    nlohmann::json cij = nlohmann::json::object();
    for (const auto &[key, v] : r.cij) {
        cij[std::to_string(key.first) + "," + std::to_string(key.second)] = {{"value", round15(v.value)},
                                                                            {"err", round15(v.error_bound)}};
    }
    return {{"rho_lo", round15(r.rho.lo)},
            {"rho_hi", round15(r.rho.hi)},
            {"h_prime", round15(r.h_prime_rho.value)},
            {"h_prime_err", round15(r.h_prime_rho.error_bound)},
            {"C00", round15(r.c00)},
            {"C00_err", round15(r.c00_err)},
            {"total_const", round15(r.total_const)},
            {"axis_const", round15(r.axis_const)},
            {"Cij", std::move(cij)},
            {"table", to_json(r.table)}};
}

inline std::string format15(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

inline std::string table_csv(const std::vector<table_row> &rows)
{
    std::string out = "k,exact,approx,ratio\n";
    for (const auto &row : rows) {
        out += std::to_string(row.k) + "," + row.exact.str() + "," + format15(row.approx) + "," + format15(row.ratio) + "\n";
    }
    return out;
}

inline std::string report_csv(const asymptotic_report &r)
{
    std::string out = "rho_lo,rho_hi,h_prime,h_prime_err,C00,C00_err,total_const,axis_const\n";
    out += format15(r.rho.lo) + "," + format15(r.rho.hi) + "," + format15(r.h_prime_rho.value) + ","
           + format15(r.h_prime_rho.error_bound) + "," + format15(r.c00) + "," + format15(r.c00_err) + ","
           + format15(r.total_const) + "," + format15(r.axis_const) + "\n";
    return out;
}

} // namespace qpwalk

#endif // QPWALK_ASYMPTOTICS_HPP
