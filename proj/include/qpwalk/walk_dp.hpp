#ifndef QPWALK_WALK_DP_HPP
#define QPWALK_WALK_DP_HPP

#include <cstddef>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include <qpwalk/error.hpp>
#include <qpwalk/rational.hpp>

namespace qpwalk
{

struct step {
    int dx;
    int dy;

    friend bool operator==(const step &, const step &) = default;
};

enum class region { interior, horizontal, vertical, origin };

inline region region_of(std::size_t i, std::size_t j) noexcept
{
    if (i == 0 && j == 0) {
        return region::origin;
    }
    if (j == 0) {
        return region::horizontal;
    }
    if (i == 0) {
        return region::vertical;
    }
    return region::interior;
}

/// Region-dependent step sets of a quarter-plane walk.
///
/// The horizontal boundary may additionally carry the non-local jump
/// (i,0) -> (0,i). Every small step is checked at construction to keep the
/// walk inside the quarter plane from any point of its region.
class step_rule
{
public:
    step_rule(std::string name, std::vector<step> interior, std::vector<step> horizontal, std::vector<step> vertical,
              std::vector<step> origin, bool horizontal_big_step = false)
        : m_name(std::move(name)), m_interior(std::move(interior)), m_horizontal(std::move(horizontal)),
          m_vertical(std::move(vertical)), m_origin(std::move(origin)), m_big_step(horizontal_big_step)
    {
        check(m_interior, region::interior);
        check(m_horizontal, region::horizontal);
        check(m_vertical, region::vertical);
        check(m_origin, region::origin);
    }

    [[nodiscard]] const std::string &name() const noexcept
    {
        return m_name;
    }

    [[nodiscard]] const std::vector<step> &steps(region r) const noexcept
    {
        switch (r) {
            case region::interior:
                return m_interior;
            case region::horizontal:
                return m_horizontal;
            case region::vertical:
                return m_vertical;
            case region::origin:
                break;
        }
        return m_origin;
    }

    [[nodiscard]] bool has_big_step() const noexcept
    {
        return m_big_step;
    }

    /// Copy with one small step removed; used by mutation tests.
    [[nodiscard]] step_rule without_step(region r, std::size_t index) const
    {
        auto copy = *this;
        auto &set = copy.mutable_steps(r);
        if (index >= set.size()) {
            throw error(errc::out_of_range, "no step with that index in the region");
        }
        set.erase(set.begin() + static_cast<std::ptrdiff_t>(index));
        copy.m_name += "-mutated";
        return copy;
    }

private:
    std::vector<step> &mutable_steps(region r)
    {
        switch (r) {
            case region::interior:
                return m_interior;
            case region::horizontal:
                return m_horizontal;
            case region::vertical:
                return m_vertical;
            case region::origin:
                break;
        }
        return m_origin;
    }

    static void check(const std::vector<step> &set, region r)
    {
        // Lowest coordinates a point of the region can have.
        const int i0 = (r == region::interior || r == region::horizontal) ? 1 : 0;
        const int j0 = (r == region::interior || r == region::vertical) ? 1 : 0;
        for (const auto &s : set) {
            if (std::abs(s.dx) > 1 || std::abs(s.dy) > 1 || (s.dx == 0 && s.dy == 0)) {
                throw error(errc::invalid_rule, "step is not a small step");
            }
            if (i0 + s.dx < 0 || j0 + s.dy < 0) {
                throw error(errc::invalid_rule, "step leaves the quarter plane");
            }
        }
    }

    std::string m_name;
    std::vector<step> m_interior;
    std::vector<step> m_horizontal;
    std::vector<step> m_vertical;
    std::vector<step> m_origin;
    bool m_big_step;
};

inline step_rule builtin_rule(std::string_view name)
{
    if (name == "main") {
        return step_rule("main", {{-1, 1}, {-1, -1}, {1, -1}}, {{-1, 1}, {-1, 0}, {1, 0}}, {{0, 1}, {0, -1}, {1, -1}},
                         {{0, 1}, {1, 0}});
    }
    if (name == "rational_gf") {
        return step_rule("rational_gf", {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}}, {{-1, 0}, {1, 0}},
                         {{0, 1}, {0, -1}, {1, -1}, {1, 0}}, {{0, 1}, {1, 0}});
    }
    if (name == "big_step") {
        return step_rule("big_step", {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}}, {{-1, 0}, {1, 0}},
                         {{0, -1}, {1, -1}, {1, 0}}, {{1, 0}}, true);
    }
    throw error(errc::unknown_rule, "unknown walk '" + std::string(name) + "'");
}

/// Exact counts q(i,j,k) of walks of length k from (0,0) to (i,j).
///
/// Layer k is a dense (k+1) x (k+1) grid: no walk of length k reaches a
/// coordinate above k. Immutable once built.
class count_table
{
public:
    count_table(std::string rule_name, std::vector<std::vector<big_int>> layers)
        : m_rule(std::move(rule_name)), m_layers(std::move(layers))
    {
    }

    [[nodiscard]] const std::string &rule_name() const noexcept
    {
        return m_rule;
    }

    [[nodiscard]] std::size_t kmax() const noexcept
    {
        return m_layers.size() - 1;
    }

    /// q(i,j,k); zero outside the reachable grid. Negative coordinates allowed.
    [[nodiscard]] const big_int &at(long i, long j, long k) const
    {
        static const big_int zero{0};
        if (k < 0 || static_cast<std::size_t>(k) > kmax()) {
            if (k >= 0) {
                throw error(errc::out_of_range, "length " + std::to_string(k) + " beyond table kmax");
            }
            return zero;
        }
        if (i < 0 || j < 0 || i > k || j > k) {
            return zero;
        }
        const auto side = static_cast<std::size_t>(k) + 1;
        return m_layers[static_cast<std::size_t>(k)][static_cast<std::size_t>(i) * side + static_cast<std::size_t>(j)];
    }

    [[nodiscard]] const std::vector<big_int> &layer(std::size_t k) const
    {
        return m_layers.at(k);
    }

private:
    std::string m_rule;
    std::vector<std::vector<big_int>> m_layers;
};

/// Forward evolution: every count at length k is pushed along each step of its region.
inline count_table dp_counts(const step_rule &rule, std::size_t kmax)
{
    std::vector<std::vector<big_int>> layers;
    layers.reserve(kmax + 1);
    layers.emplace_back(1, big_int(1));
    for (std::size_t k = 0; k < kmax; ++k) {
        const std::size_t side = k + 1;
        const std::size_t next_side = k + 2;
        std::vector<big_int> next(next_side * next_side);
        const auto &cur = layers.back();
        for (std::size_t i = 0; i < side; ++i) {
            for (std::size_t j = 0; j < side; ++j) {
                const auto &count = cur[i * side + j];
                if (count == 0) {
                    continue;
                }
                const region r = region_of(i, j);
                for (const auto &s : rule.steps(r)) {
                    const auto ni = static_cast<std::size_t>(static_cast<long>(i) + s.dx);
                    const auto nj = static_cast<std::size_t>(static_cast<long>(j) + s.dy);
                    next[ni * next_side + nj] += count;
                }
                if (r == region::horizontal && rule.has_big_step()) {
                    next[0 * next_side + i] += count;
                }
            }
        }
        layers.push_back(std::move(next));
    }
    return count_table(rule.name(), std::move(layers));
}

struct marginal_counts {
    big_int total;
    big_int axis;
};

/// Walks of length k in total, and those ending on the horizontal axis.
inline marginal_counts marginals(const count_table &table, std::size_t k)
{
    if (k > table.kmax()) {
        throw error(errc::out_of_range, "length " + std::to_string(k) + " beyond table kmax");
    }
    marginal_counts m{0, 0};
    const std::size_t side = k + 1;
    const auto &layer = table.layer(k);
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            m.total += layer[i * side + j];
        }
        m.axis += layer[i * side];
    }
    return m;
}

/// Coefficientwise check of the kernel functional equation of the main walk,
/// multiplied through by z:
///   (z + z x^2 + z y^2 - x y) Q = z[1+x^2-x^2y-y] Q(x,0) + z[1+y^2-xy^2-x] Q(0,y)
///                                 + z[x+y-1] Q(0,0) - x y.
inline bool check_functional_equation(const count_table &table, std::size_t imax, std::size_t jmax, std::size_t kmax)
{
    if (table.rule_name() != "main") {
        throw error(errc::wrong_rule, "functional equation is specific to the main walk");
    }
    if (kmax > table.kmax()) {
        throw error(errc::out_of_range, "table too short for the requested check");
    }
    const auto q = [&](long i, long j, long k) -> const big_int & { return table.at(i, j, k); };
    const auto axis_x = [&](long i, long k) -> big_int { return k >= 0 ? q(i, 0, k) : big_int(0); };
    for (long k = 0; k <= static_cast<long>(kmax); ++k) {
        for (long i = 0; i <= static_cast<long>(imax); ++i) {
            for (long j = 0; j <= static_cast<long>(jmax); ++j) {
                big_int lhs = q(i, j, k - 1) + q(i - 2, j, k - 1) + q(i, j - 2, k - 1) - q(i - 1, j - 1, k);
                big_int rhs = 0;
                // z [1 + x^2 - x^2 y - y] Q(x,0)
                if (j == 0) {
                    rhs += axis_x(i, k - 1) + axis_x(i - 2, k - 1);
                } else if (j == 1) {
                    rhs -= axis_x(i, k - 1) + axis_x(i - 2, k - 1);
                }
                // z [1 + y^2 - x y^2 - x] Q(0,y)
                if (i == 0) {
                    rhs += q(0, j, k - 1) + q(0, j - 2, k - 1);
                } else if (i == 1) {
                    rhs -= q(0, j, k - 1) + q(0, j - 2, k - 1);
                }
                // z [x + y - 1] Q(0,0)
                if ((i == 1 && j == 0) || (i == 0 && j == 1)) {
                    rhs += q(0, 0, k - 1);
                } else if (i == 0 && j == 0) {
                    rhs -= q(0, 0, k - 1);
                }
                // -x y
                if (i == 1 && j == 1 && k == 0) {
                    rhs -= 1;
                }
                if (lhs != rhs) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Backward recursions of the main walk, checked for every k < kmax.
inline bool check_main_recursions(const count_table &table)
{
    const auto q = [&](long i, long j, long k) -> const big_int & { return table.at(i, j, k); };
    for (long k = 0; k < static_cast<long>(table.kmax()); ++k) {
        for (long i = 0; i <= k + 1; ++i) {
            for (long j = 0; j <= k + 1; ++j) {
                big_int expected;
                if (i >= 1 && j >= 1) {
                    expected = q(i - 1, j + 1, k) + q(i + 1, j - 1, k) + q(i + 1, j + 1, k);
                } else if (i >= 1) {
                    expected = q(i - 1, 1, k) + q(i + 1, 1, k) + q(i - 1, 0, k) + q(i + 1, 0, k);
                } else if (j >= 1) {
                    expected = q(1, j - 1, k) + q(1, j + 1, k) + q(0, j - 1, k) + q(0, j + 1, k);
                } else {
                    expected = q(0, 1, k) + q(1, 1, k) + q(1, 0, k);
                }
                if (expected != q(i, j, k + 1)) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// "i,j,k,count" rows for every nonzero count, ordered by k, then i, then j.
inline std::string to_csv(const count_table &table)
{
    std::ostringstream os;
    os << "i,j,k,count\n";
    for (std::size_t k = 0; k <= table.kmax(); ++k) {
        const std::size_t side = k + 1;
        const auto &layer = table.layer(k);
        for (std::size_t i = 0; i < side; ++i) {
            for (std::size_t j = 0; j < side; ++j) {
                const auto &c = layer[i * side + j];
                if (c != 0) {
                    os << i << ',' << j << ',' << k << ',' << c.str() << '\n';
                }
            }
        }
    }
    return os.str();
}

inline nlohmann::json to_json(const count_table &table)
{
    nlohmann::json counts = nlohmann::json::array();
    for (std::size_t k = 0; k <= table.kmax(); ++k) {
        const std::size_t side = k + 1;
        const auto &layer = table.layer(k);
        for (std::size_t i = 0; i < side; ++i) {
            for (std::size_t j = 0; j < side; ++j) {
                const auto &c = layer[i * side + j];
                if (c != 0) {
                    counts.push_back({{"i", i}, {"j", j}, {"k", k}, {"count", c.str()}});
                }
            }
        }
    }
    return {{"walk", table.rule_name()}, {"kmax", table.kmax()}, {"bound", table.kmax() + 1}, {"counts", std::move(counts)}};
}

} // namespace qpwalk

#endif // QPWALK_WALK_DP_HPP
