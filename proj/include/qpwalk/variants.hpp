#ifndef QPWALK_VARIANTS_HPP
#define QPWALK_VARIANTS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <qpwalk/error.hpp>
#include <qpwalk/rational.hpp>
#include <qpwalk/series.hpp>

// Two walks sharing the interior step set {(-1,0),(-1,-1),(0,-1),(1,-1),(1,0)}.
//
// rational_gf: horizontal {(-1,0),(1,0)}, vertical {(0,1),(0,-1),(1,-1),(1,0)},
//   origin {(0,1),(1,0)}. A single product c_0 alpha_0^i beta_0^j solves it.
// big_step: horizontal {(-1,0),(1,0)} plus the jump (i,0) -> (0,i), vertical
//   {(0,-1),(1,-1),(1,0)}, origin {(1,0)}. Compensation only acts on the
//   vertical boundary, giving q_{i,j} = sum_k c_k alpha_k^i beta_k^j.

namespace qpwalk
{

struct rational_solution {
    series beta0;
    series alpha0;
    series c0;
    std::size_t order = 0;
};

/// beta_0 is the power-series root of beta = z (1 + beta^2 + beta^2 (1+beta)^2),
/// alpha_0 = beta_0 (1 + beta_0), c_0 = beta_0 / z.
inline rational_solution solve_rational(std::size_t order)
{
    if (order < 1) {
        throw error(errc::invalid_argument, "order must be >= 1");
    }
    // Fixed-point iteration, one coefficient per pass, one spare order for the shift.
    const std::size_t work = order + 1;
    const auto one = series::constant(rational(1), work);
    series beta(work);
    for (std::size_t pass = 0; pass < work; ++pass) {
        const auto b2 = beta * beta;
        const auto b1 = one + beta;
        beta = shift_mul_z(one + b2 + b2 * b1 * b1, 1).truncate(work);
    }
    rational_solution sol;
    sol.order = order;
    sol.c0 = exact_shift_div_z(beta, 1);
    sol.beta0 = beta.truncate(order);
    sol.alpha0 = sol.beta0 * (series::constant(rational(1), order) + sol.beta0);
    return sol;
}

/// beta/z - 1 - beta^2 - beta^2 (1+beta)^2, z-cleared.
inline series rational_beta_residual(const series &beta)
{
    const auto one = series::constant(rational(1), beta.order());
    const auto b2 = beta * beta;
    const auto b1 = one + beta;
    return beta - shift_mul_z(one + b2 + b2 * b1 * b1, 1).truncate(beta.order());
}

/// 1 / [1 - z (alpha_0 + alpha_0 beta_0 + beta_0)], the boundary form of c_0.
inline series rational_c0_boundary_form(const rational_solution &sol)
{
    const auto one = series::constant(rational(1), sol.order);
    const auto s = sol.alpha0 + sol.alpha0 * sol.beta0 + sol.beta0;
    return div(one, one - shift_mul_z(s, 1).truncate(sol.order));
}

inline series q_rational(const rational_solution &sol, std::size_t i, std::size_t j)
{
    return sol.c0 * pow(sol.alpha0, i) * pow(sol.beta0, j);
}

inline series q_rational(std::size_t i, std::size_t j, std::size_t order)
{
    if (order == 0) {
        return series::constant(rational(i == 0 && j == 0 ? 1 : 0), 0);
    }
    return q_rational(solve_rational(order), i, j);
}

namespace detail
{

inline void require_g_argument(const series &t)
{
    if (t[0] != 0) {
        throw error(errc::bad_valuation, "g needs an argument vanishing at z = 0");
    }
}

} // namespace detail

/// g(t) = (1 - tz - sqrt((1-tz)^2 - 4 z^2 (1+t)^2)) / (2 z (1+t)), evaluated as
/// 2 z (1+t) / (1 - tz + sqrt(...)).
inline series g_apply(const series &t, std::size_t order)
{
    detail::require_g_argument(t);
    const std::size_t ord = std::min(order, t.order());
    const auto tt = t.truncate(ord);
    const auto one = series::constant(rational(1), ord);
    const auto one_plus_t = one + tt;
    const auto a = one - shift_mul_z(tt, 1).truncate(ord);
    const auto b = shift_mul_z(rational(4) * one_plus_t * one_plus_t, 2).truncate(ord);
    const auto root = sqrt_one_plus(a * a - b);
    return div(shift_mul_z(rational(2) * one_plus_t, 1).truncate(ord), a + root);
}

/// The other root, with + before the square root. Its numerator does not
/// vanish at z = 0, so the exact division by z raises NonVanishingLowOrder:
/// this branch is not a power series.
inline series g_rejected_branch(const series &t, std::size_t order)
{
    detail::require_g_argument(t);
    const std::size_t ord = std::min(order, t.order()) + 1;
    const auto tt = t.truncate(ord);
    const auto one = series::constant(rational(1), ord);
    const auto one_plus_t = one + tt;
    const auto a = one - shift_mul_z(tt, 1).truncate(ord);
    const auto b = shift_mul_z(rational(4) * one_plus_t * one_plus_t, 2).truncate(ord);
    const auto numer = a + sqrt_one_plus(a * a - b);
    return div(exact_shift_div_z(numer, 1), rational(2) * one_plus_t.truncate(ord - 1));
}

/// z (1+t) g^2 - (1 - t z) g + z (1+t).
inline series g_quadratic_residual(const series &t, const series &g)
{
    const std::size_t ord = std::min(t.order(), g.order());
    const auto one = series::constant(rational(1), ord);
    const auto tt = t.truncate(ord);
    const auto gg = g.truncate(ord);
    const auto one_plus_t = one + tt;
    const auto a = one - shift_mul_z(tt, 1).truncate(ord);
    return shift_mul_z(one_plus_t * gg * gg + one_plus_t, 1).truncate(ord) - a * gg;
}

/// z beta^3 + 2 z beta^2 + (z - 1) beta + z: the fixed point beta_* of g is its power-series root.
inline series fixed_point_cubic_residual(const series &beta)
{
    const std::size_t ord = beta.order();
    const auto b2 = beta * beta;
    const auto b3 = b2 * beta;
    return shift_mul_z(b3 + rational(2) * b2 + beta + series::constant(rational(1), ord), 1).truncate(ord) - beta;
}

struct bigstep_ladder {
    std::vector<series> alphas;
    std::vector<series> betas;
    std::vector<series> cs;
    std::size_t order = 0;

    [[nodiscard]] std::size_t depth() const noexcept
    {
        return alphas.empty() ? 0 : alphas.size() - 1;
    }
};

/// Rungs 0..depth of the one-sided compensation ladder:
///   beta_0 = 0, alpha_k = g(beta_k), beta_{k+1} = alpha_k,
///   c_{k+1} = c_k alpha_{k+1} / (1 + beta_{k+1}),
/// with c_0 fixed by the origin equation:
///   1/c_0 = sum_k [beta_2...beta_{k+1} / ((1+beta_1)...(1+beta_k))] [1 - z(beta_k + beta_{k+1} + beta_k beta_{k+1})].
inline bigstep_ladder build_bigstep(std::size_t depth, std::size_t order)
{
    if (depth < 1 || order < 1) {
        throw error(errc::invalid_argument, "big-step ladder needs depth >= 1 and order >= 1");
    }
    const auto one = series::constant(rational(1), order);
    // Summand k of 1/c_0 has valuation >= k, so k = 0..order suffices; it
    // touches beta up to index order + 1.
    const std::size_t rungs = std::max(depth, order + 1);
    std::vector<series> betas{series(order)};
    std::vector<series> alphas;
    for (std::size_t k = 0; k <= rungs; ++k) {
        alphas.push_back(g_apply(betas.back(), order));
        if (k < rungs) {
            betas.push_back(alphas.back());
        }
    }

    series inv_c0(order);
    auto ratio = one; // c_k / c_0
    for (std::size_t k = 0; k <= order; ++k) {
        if (k > 0) {
            ratio = div(ratio * betas[k + 1], one + betas[k]);
        }
        const auto &bk = betas[k];
        const auto &bk1 = betas[k + 1];
        inv_c0 += ratio * (one - shift_mul_z(bk + bk1 + bk * bk1, 1).truncate(order));
    }
    if (inv_c0[0] != 1) {
        throw error(errc::valuation_violation, "1/c_0 must have constant term 1");
    }

    bigstep_ladder ladder;
    ladder.order = order;
    ladder.alphas.assign(alphas.begin(), alphas.begin() + static_cast<std::ptrdiff_t>(depth) + 1);
    ladder.betas.assign(betas.begin(), betas.begin() + static_cast<std::ptrdiff_t>(depth) + 1);
    ladder.cs.push_back(div(one, inv_c0));
    for (std::size_t k = 0; k < depth; ++k) {
        ladder.cs.push_back(div(ladder.cs.back() * ladder.alphas[k + 1], one + ladder.betas[k + 1]));
    }
    return ladder;
}

inline series q_bigstep(const bigstep_ladder &ladder, std::size_t i, std::size_t j, std::size_t order)
{
    if (ladder.depth() < order) {
        throw error(errc::insufficient_depth, "big-step ladder needs depth >= order");
    }
    if (order > ladder.order) {
        throw error(errc::insufficient_depth, "ladder order below requested order");
    }
    series q(order);
    // Term k has valuation >= k; beta_0 = 0 kills the k = 0 term when j >= 1.
    for (std::size_t k = 0; k <= order; ++k) {
        q += ladder.cs[k].truncate(order) * pow(ladder.alphas[k].truncate(order), i)
             * pow(ladder.betas[k].truncate(order), j);
    }
    return q;
}

inline series q_bigstep(std::size_t i, std::size_t j, std::size_t order)
{
    if (order == 0) {
        return series::constant(rational(i == 0 && j == 0 ? 1 : 0), 0);
    }
    return q_bigstep(build_bigstep(order, order), i, j, order);
}

enum class variant_walk { rational_gf, big_step };

/// Residual of the defining recursion at (i,j), z-cleared:
///   q_{i,j} - [i=j=0] - z * (sum of predecessor generating functions).
/// `q` must return the zero series (of the working order) for negative indices.
inline series variant_recursion_residual(variant_walk walk, const std::function<series(long, long)> &q, long i, long j)
{
    series sum;
    if (i > 0 && j > 0) {
        sum = q(i - 1, j) + q(i - 1, j + 1) + q(i, j + 1) + q(i + 1, j) + q(i + 1, j + 1);
    } else if (i > 0) {
        sum = q(i - 1, 0) + q(i - 1, 1) + q(i, 1) + q(i + 1, 0) + q(i + 1, 1);
    } else if (j > 0) {
        sum = walk == variant_walk::rational_gf ? q(0, j - 1) + q(0, j + 1) + q(1, j) + q(1, j + 1)
                                                : q(j, 0) + q(0, j + 1) + q(1, j) + q(1, j + 1);
    } else {
        sum = q(0, 1) + q(1, 1) + q(1, 0);
    }
    const series self = q(i, j);
    auto residual = self - shift_mul_z(sum, 1).truncate(self.order());
    if (i == 0 && j == 0) {
        residual[0] -= 1;
    }
    return residual;
}

} // namespace qpwalk

#endif // QPWALK_VARIANTS_HPP
