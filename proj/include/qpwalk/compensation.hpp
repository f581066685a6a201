#ifndef QPWALK_COMPENSATION_HPP
#define QPWALK_COMPENSATION_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include <qpwalk/error.hpp>
#include <qpwalk/rational.hpp>
#include <qpwalk/series.hpp>

// Compensation-approach solution of the main walk: interior steps
// {(-1,1),(-1,-1),(1,-1)}, horizontal boundary {(-1,1),(-1,0),(1,0)},
// vertical boundary {(0,1),(0,-1),(1,-1)}, origin {(0,1),(1,0)}.
//
// Product terms a^i b^j solve the interior equations iff
//   z (a^2 + b^2 + a^2 b^2) = a b.
// Starting from the pair that also solves the horizontal boundary, each
// compensation step moves to the conjugate root along one coordinate:
//   beta_k = f(alpha_k),  alpha_{k+1} = f(beta_k).

namespace qpwalk
{

namespace detail
{

inline series one(std::size_t order)
{
    return series::constant(rational(1), order);
}

inline void require_positive_valuation(const series &t)
{
    if (t[0] != 0) {
        throw error(errc::non_positive_valuation, "argument must vanish at z = 0");
    }
}

} // namespace detail

/// alpha_0 = (1 - sqrt(1 - 8 z^2)) / (4 z) and beta_0 = alpha_0^2 / (1 + alpha_0^2).
inline std::pair<series, series> initial_pair(std::size_t order)
{
    if (order < 1) {
        throw error(errc::invalid_argument, "initial pair needs order >= 1");
    }
    // One extra order is consumed by the division by z.
    const std::size_t work = order + 1;
    const auto disc = detail::one(work) - series::monomial(rational(8), 2, work);
    const auto numer = detail::one(work) - sqrt_one_plus(disc);
    auto alpha = exact_shift_div_z(numer, 1) * rational(1, 4);
    const auto alpha_sq = alpha * alpha;
    auto beta = div(alpha_sq, detail::one(order) + alpha_sq);
    return {std::move(alpha), std::move(beta)};
}

/// Branch f(t) = t (1 - sqrt(1 - 4 z^2 (1+t^2))) / (2 z (1+t^2)), the root of
/// z (1+t^2) f^2 - t f + z t^2 = 0 that is a power series.
///
/// Evaluated as f(t) = 2 z t / (1 + sqrt(1 - 4 z^2 (1+t^2))), with no division by z.
inline series f_apply(const series &t, std::size_t order)
{
    detail::require_positive_valuation(t);
    const std::size_t ord = std::min(order, t.order());
    const auto tt = t.truncate(ord);
    const auto u = shift_mul_z(rational(4) * (detail::one(ord) + tt * tt), 2).truncate(ord);
    const auto denom = detail::one(ord) + sqrt_one_plus(detail::one(ord) - u);
    const auto r = div(series::monomial(rational(2), 1, ord), denom);
    return tt * r;
}

/// The sequences alpha_0, beta_0, ..., alpha_K, beta_K as exact series.
struct ab_ladder {
    std::vector<series> alphas;
    std::vector<series> betas;
    std::size_t order = 0;

    [[nodiscard]] std::size_t depth() const noexcept
    {
        return alphas.empty() ? 0 : alphas.size() - 1;
    }
};

inline ab_ladder build_ladder(std::size_t depth, std::size_t order)
{
    auto [alpha, beta] = initial_pair(order);
    ab_ladder ladder;
    ladder.order = order;
    ladder.alphas.reserve(depth + 1);
    ladder.betas.reserve(depth + 1);
    ladder.alphas.push_back(std::move(alpha));
    ladder.betas.push_back(std::move(beta));
    for (std::size_t k = 0; k < depth; ++k) {
        ladder.alphas.push_back(f_apply(ladder.betas.back(), order));
        ladder.betas.push_back(f_apply(ladder.alphas.back(), order));
    }
    return ladder;
}

/// z (a^2 + b^2 + a^2 b^2) - a b, zero exactly on the kernel curve.
inline series kernel_residual(const series &a, const series &b)
{
    const auto a2 = a * a;
    const auto b2 = b * b;
    return shift_mul_z(a2 + b2 + a2 * b2, 1) - a * b;
}

/// Number of ladder rungs that determine coefficients 0..p of q_{i,j}:
/// 1 + floor(max{p - (i'+2j'), p - (2i'+j')} / 4) with i' = max(i,1),
/// j' = max(j,1), clamped at 0.
inline std::size_t truncation_bound(std::size_t i, std::size_t j, std::size_t p)
{
    const long ii = std::max<long>(static_cast<long>(i), 1);
    const long jj = std::max<long>(static_cast<long>(j), 1);
    const long pp = static_cast<long>(p);
    const long m = std::max(pp - (ii + 2 * jj), pp - (2 * ii + jj));
    // floor division for negative m
    const long q = m >= 0 ? m / 4 : -((-m + 3) / 4);
    return static_cast<std::size_t>(std::max<long>(1 + q, 0));
}

namespace detail
{

// x_{i,j} summed over rungs 0..depth-1. For j = 0 the alpha-differences are
// telescoped into E_i, leaving terms of valuation >= 4k + 3.
inline series x_series(const ab_ladder &ladder, std::size_t i, std::size_t j, std::size_t p, std::size_t depth)
{
    const auto one = detail::one(p);
    const auto alpha = [&](std::size_t k) { return ladder.alphas[k].truncate(p); };
    const auto beta = [&](std::size_t k) { return ladder.betas[k].truncate(p); };
    const auto diff = [&](std::size_t k) {
        return (one - alpha(k)) * pow(alpha(k), i) - (one - alpha(k + 1)) * pow(alpha(k + 1), i);
    };
    series x(p);
    if (j == 0) {
        x = i == 0 ? -alpha(0) : (one - alpha(0)) * pow(alpha(0), i);
        for (std::size_t k = 0; k < depth; ++k) {
            x -= beta(k) * diff(k);
        }
    } else {
        for (std::size_t k = 0; k < depth; ++k) {
            x += (one - beta(k)) * pow(beta(k), j) * diff(k);
        }
    }
    return x;
}

} // namespace detail

/// xhat_{i,j} = x_{i,j} + x_{j,i} to order p, using `depth` rungs.
inline series xhat_series(const ab_ladder &ladder, std::size_t i, std::size_t j, std::size_t p, std::size_t depth)
{
    if (ladder.depth() < depth) {
        throw error(errc::insufficient_depth, "ladder has " + std::to_string(ladder.depth()) + " rungs, "
                                                  + std::to_string(depth) + " requested");
    }
    if (p > ladder.order) {
        throw error(errc::insufficient_depth, "ladder order below requested order");
    }
    return detail::x_series(ladder, i, j, p, depth) + detail::x_series(ladder, j, i, p, depth);
}

/// xhat_{i,j} with the minimal sufficient number of rungs.
inline series xhat_series(const ab_ladder &ladder, std::size_t i, std::size_t j, std::size_t p)
{
    return xhat_series(ladder, i, j, p, truncation_bound(i, j, p));
}

/// Default ladder depth for coefficients 0..p of all q_{i,j} with i <= imax, j <= jmax.
inline std::size_t ladder_depth_for(std::size_t imax, std::size_t jmax, std::size_t p, std::size_t margin = 1)
{
    std::size_t depth = 1;
    for (std::size_t i = 0; i <= imax; ++i) {
        for (std::size_t j = 0; j <= jmax; ++j) {
            depth = std::max(depth, truncation_bound(i, j, p));
        }
    }
    return depth + margin;
}

/// Generating functions q_{i,j}(z) of the main walk as truncated series.
///
/// q_{0,0} = (1 + xhat_{0,0}) c, q_{i,j} = c xhat_{i,j} for i + j > 0, with
/// c = 1 / (1 - 2z + z xhat_{0,0}). Builds one ladder and caches xhat.
class compensation_solution
{
public:
    explicit compensation_solution(std::size_t p, std::size_t imax = 2, std::size_t jmax = 2, std::size_t margin = 1)
        : m_order(p)
    {
        m_ladder = build_ladder(ladder_depth_for(std::max<std::size_t>(imax, 2), std::max<std::size_t>(jmax, 2), p, margin),
                                std::max<std::size_t>(p, 1));
        const auto &x00 = xhat(0, 0);
        const auto denom = detail::one(p) - series::monomial(rational(2), 1, p) + shift_mul_z(x00, 1).truncate(p);
        m_c = div(detail::one(p), denom);
        m_q00 = m_c * (detail::one(p) + x00);
    }

    [[nodiscard]] std::size_t order() const noexcept
    {
        return m_order;
    }

    [[nodiscard]] const ab_ladder &ladder() const noexcept
    {
        return m_ladder;
    }

    const series &xhat(std::size_t i, std::size_t j)
    {
        const auto key = std::minmax(i, j);
        auto it = m_xhat.find(key);
        if (it == m_xhat.end()) {
            const std::size_t depth = truncation_bound(i, j, m_order);
            if (depth > m_ladder.depth()) {
                extend_ladder(depth);
            }
            it = m_xhat.emplace(key, xhat_series(m_ladder, i, j, m_order, depth)).first;
        }
        return it->second;
    }

    [[nodiscard]] const series &c() const noexcept
    {
        return m_c;
    }

    series q(std::size_t i, std::size_t j)
    {
        if (i == 0 && j == 0) {
            return m_q00;
        }
        return m_c * xhat(i, j);
    }

    [[nodiscard]] const std::map<std::pair<std::size_t, std::size_t>, series> &xhat_cache() const noexcept
    {
        return m_xhat;
    }

private:
    void extend_ladder(std::size_t depth)
    {
        while (m_ladder.depth() < depth) {
            m_ladder.alphas.push_back(f_apply(m_ladder.betas.back(), m_ladder.order));
            m_ladder.betas.push_back(f_apply(m_ladder.alphas.back(), m_ladder.order));
        }
    }

    std::size_t m_order;
    ab_ladder m_ladder;
    std::map<std::pair<std::size_t, std::size_t>, series> m_xhat;
    series m_c;
    series m_q00;
};

/// Coefficients 0..p of q_{i,j}.
inline series q_series(std::size_t i, std::size_t j, std::size_t p)
{
    if (p == 0) {
        return series::constant(rational(i == 0 && j == 0 ? 1 : 0), 0);
    }
    compensation_solution sol(p, i, j);
    return sol.q(i, j);
}

/// Residuals of the two boundary identities, z-cleared and then divided by z exactly:
///   xhat_{1,0}/z - [xhat_{0,1} + xhat_{2,1} + xhat_{2,0} + xhat_{0,0}] - 1,
///   (1/z - 1) xhat_{0,0} + 2 - [xhat_{1,0} + xhat_{0,1} + xhat_{1,1}].
/// Inputs are known to order p+1; residuals to order p.
struct boundary_inputs {
    series x00, x10, x01, x11, x20, x21;
};

inline std::pair<series, series> boundary_residuals(const boundary_inputs &x)
{
    if (x.x10[0] != 0 || x.x00[0] != 0) {
        throw error(errc::valuation_violation, "xhat_{1,0} and xhat_{0,0} must vanish at z = 0");
    }
    const auto p = x.x00.order() - 1;
    const auto one = detail::one(p);
    const auto x10_over_z = exact_shift_div_z(x.x10, 1);
    const auto x00_over_z = exact_shift_div_z(x.x00, 1);
    auto first = x10_over_z - (x.x01 + x.x21 + x.x20 + x.x00).truncate(p) - one;
    auto second = x00_over_z - x.x00.truncate(p) + rational(2) * one - (x.x10 + x.x01 + x.x11).truncate(p);
    return {std::move(first), std::move(second)};
}

inline boundary_inputs boundary_inputs_for(std::size_t p)
{
    compensation_solution sol(p + 1, 2, 2);
    return {sol.xhat(0, 0), sol.xhat(1, 0), sol.xhat(0, 1), sol.xhat(1, 1), sol.xhat(2, 0), sol.xhat(2, 1)};
}

inline bool boundary_identities_hold(const boundary_inputs &x)
{
    const auto [first, second] = boundary_residuals(x);
    return first.is_zero() && second.is_zero();
}

inline bool check_boundary_identities(std::size_t p)
{
    if (p < 1) {
        throw error(errc::invalid_argument, "boundary identities need p >= 1");
    }
    return boundary_identities_hold(boundary_inputs_for(p));
}

struct special_value_series {
    series q00; // Q(0,0;z) = c (1 + xhat_{0,0})
    series q10; // Q(1,0;z) = Q(0,1;z) = c (1 - alpha_0)
    series q11; // Q(1,1;z) = c
};

inline special_value_series special_values(std::size_t p)
{
    if (p == 0) {
        const auto one = detail::one(0);
        return {one, one, one};
    }
    compensation_solution sol(p);
    const auto &alpha0 = sol.ladder().alphas.front();
    return {sol.q(0, 0), sol.c() * (detail::one(p) - alpha0.truncate(p)), sol.c()};
}

/// Compensation coefficients from the recurrences
///   d_{k+1} = -(1-alpha_{k+1})/(1-alpha_k) c_k,  c_{k+1} = -(1-beta_{k+1})/(1-beta_k) d_{k+1},
/// started at c_0 = (1-alpha_0)(1-beta_0). ds[0] is unused and left zero.
struct compensation_coefficients {
    std::vector<series> cs;
    std::vector<series> ds;
};

inline compensation_coefficients coefficient_recurrence(const ab_ladder &ladder)
{
    const auto one = detail::one(ladder.order);
    compensation_coefficients out;
    out.cs.push_back((one - ladder.alphas[0]) * (one - ladder.betas[0]));
    out.ds.emplace_back(ladder.order);
    for (std::size_t k = 0; k < ladder.depth(); ++k) {
        auto d = -div(one - ladder.alphas[k + 1], one - ladder.alphas[k]) * out.cs.back();
        auto c = -div(one - ladder.betas[k + 1], one - ladder.betas[k]) * d;
        out.ds.push_back(std::move(d));
        out.cs.push_back(std::move(c));
    }
    return out;
}

/// Coefficients of x^0..x^n of weight / (1 - pole_inv x), i.e. weight * pole_inv^m.
/// Each such term puts a pole of Q(x,0;z) at x = 1/pole_inv.
inline std::vector<series> pole_expansion(const series &pole_inv, const series &weight, std::size_t n)
{
    std::vector<series> out;
    out.reserve(n + 1);
    out.push_back(weight);
    for (std::size_t m = 1; m <= n; ++m) {
        out.push_back(out.back() * pole_inv);
    }
    return out;
}

inline nlohmann::json q_list_json(const series &s)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &c : s.coeffs()) {
        arr.push_back(to_compact_string(c));
    }
    return arr;
}

/// {"order": p, "q": {"i,j": [...]}, "c": [...], "identities_ok": bool}
inline nlohmann::json solution_json(compensation_solution &sol, std::size_t imax, std::size_t jmax, bool identities_ok)
{
    nlohmann::json q = nlohmann::json::object();
    for (std::size_t i = 0; i <= imax; ++i) {
        for (std::size_t j = 0; j <= jmax; ++j) {
            q[std::to_string(i) + "," + std::to_string(j)] = q_list_json(sol.q(i, j));
        }
    }
    return {{"order", sol.order()}, {"q", std::move(q)}, {"c", q_list_json(sol.c())}, {"identities_ok", identities_ok}};
}

} // namespace qpwalk

#endif // QPWALK_COMPENSATION_HPP
