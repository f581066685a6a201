#ifndef QPWALK_SERIES_HPP
#define QPWALK_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include <qpwalk/error.hpp>
#include <qpwalk/rational.hpp>

namespace qpwalk
{

/// Truncated formal power series in one variable z.
///
/// Holds the coefficients of z^0 .. z^order; the series is known modulo
/// z^(order+1). Binary operations on operands of different orders truncate
/// to the smaller one, so "known modulo z^(p+1)" is tracked explicitly rather
/// than assumed.
template <typename Coeff>
class trunc_series
{
public:
    using coeff_type = Coeff;

    /// The zero series known to the given order.
    explicit trunc_series(std::size_t order = 0) : m_coeffs(order + 1, Coeff(0)) {}

    /// Takes ownership of a non-empty coefficient list; order = size - 1.
    explicit trunc_series(std::vector<Coeff> coeffs) : m_coeffs(std::move(coeffs))
    {
        if (m_coeffs.empty()) {
            throw error(errc::invalid_argument, "a truncated series needs at least one coefficient");
        }
    }

    trunc_series(std::initializer_list<Coeff> coeffs) : trunc_series(std::vector<Coeff>(coeffs)) {}

    static trunc_series constant(const Coeff &c, std::size_t order)
    {
        trunc_series r(order);
        r.m_coeffs[0] = c;
        return r;
    }

    /// c * z^power, zero if power exceeds the order.
    static trunc_series monomial(const Coeff &c, std::size_t power, std::size_t order)
    {
        trunc_series r(order);
        if (power <= order) {
            r.m_coeffs[power] = c;
        }
        return r;
    }

    /// The series z itself.
    static trunc_series variable(std::size_t order)
    {
        return monomial(Coeff(1), 1, order);
    }

    [[nodiscard]] std::size_t order() const noexcept
    {
        return m_coeffs.size() - 1;
    }

    [[nodiscard]] const Coeff &operator[](std::size_t n) const
    {
        return m_coeffs.at(n);
    }

    Coeff &operator[](std::size_t n)
    {
        return m_coeffs.at(n);
    }

    [[nodiscard]] const std::vector<Coeff> &coeffs() const noexcept
    {
        return m_coeffs;
    }

    /// Index of the first nonzero coefficient; nullopt stands for +infinity.
    [[nodiscard]] std::optional<std::size_t> valuation() const
    {
        for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
            if (m_coeffs[n] != 0) {
                return n;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] bool is_zero() const
    {
        return !valuation().has_value();
    }

    [[nodiscard]] trunc_series truncate(std::size_t order) const
    {
        const std::size_t keep = std::min(order, this->order());
        return trunc_series(std::vector<Coeff>(m_coeffs.begin(), m_coeffs.begin() + static_cast<std::ptrdiff_t>(keep) + 1));
    }

    trunc_series &operator+=(const trunc_series &other)
    {
        shrink_to(other.order());
        for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
            m_coeffs[n] += other.m_coeffs[n];
        }
        return *this;
    }

    trunc_series &operator-=(const trunc_series &other)
    {
        shrink_to(other.order());
        for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
            m_coeffs[n] -= other.m_coeffs[n];
        }
        return *this;
    }

    trunc_series &operator*=(const Coeff &c)
    {
        for (auto &x : m_coeffs) {
            x *= c;
        }
        return *this;
    }

    trunc_series &operator*=(const trunc_series &other)
    {
        *this = *this * other;
        return *this;
    }

    friend trunc_series operator+(trunc_series a, const trunc_series &b)
    {
        a += b;
        return a;
    }

    friend trunc_series operator-(trunc_series a, const trunc_series &b)
    {
        a -= b;
        return a;
    }

    friend trunc_series operator-(trunc_series a)
    {
        for (auto &x : a.m_coeffs) {
            x = -x;
        }
        return a;
    }

    friend trunc_series operator*(trunc_series a, const Coeff &c)
    {
        a *= c;
        return a;
    }

    friend trunc_series operator*(const Coeff &c, trunc_series a)
    {
        a *= c;
        return a;
    }

    // Truncated Cauchy product; skips leading zeros of both operands.
    friend trunc_series operator*(const trunc_series &a, const trunc_series &b)
    {
        const std::size_t order = std::min(a.order(), b.order());
        trunc_series r(order);
        const auto va = a.valuation();
        const auto vb = b.valuation();
        if (!va || !vb) {
            return r;
        }
        Coeff term;
        for (std::size_t i = *va; i <= order; ++i) {
            if (a.m_coeffs[i] == 0) {
                continue;
            }
            for (std::size_t j = *vb; i + j <= order; ++j) {
                if (b.m_coeffs[j] == 0) {
                    continue;
                }
                term = a.m_coeffs[i];
                term *= b.m_coeffs[j];
                r.m_coeffs[i + j] += term;
            }
        }
        return r;
    }

    // Equality of the known parts: both operands compared to the shared order.
    friend bool operator==(const trunc_series &a, const trunc_series &b)
    {
        const std::size_t order = std::min(a.order(), b.order());
        for (std::size_t n = 0; n <= order; ++n) {
            if (a.m_coeffs[n] != b.m_coeffs[n]) {
                return false;
            }
        }
        return true;
    }

    friend std::ostream &operator<<(std::ostream &os, const trunc_series &s)
    {
        bool first = true;
        for (std::size_t n = 0; n <= s.order(); ++n) {
            if (s.m_coeffs[n] == 0) {
                continue;
            }
            if (!first) {
                os << " + ";
            }
            first = false;
            os << s.m_coeffs[n];
            if (n > 0) {
                os << "*z^" << n;
            }
        }
        if (first) {
            os << "0";
        }
        return os << " + O(z^" << s.order() + 1 << ")";
    }

private:
    void shrink_to(std::size_t order)
    {
        if (order < this->order()) {
            m_coeffs.resize(order + 1);
        }
    }

    std::vector<Coeff> m_coeffs;
};

using series = trunc_series<rational>;

/// a / b; requires an invertible constant term in b.
template <typename Coeff>
trunc_series<Coeff> div(const trunc_series<Coeff> &a, const trunc_series<Coeff> &b)
{
    if (b[0] == 0) {
        throw error(errc::zero_constant_term, "divisor has zero constant term");
    }
    const std::size_t order = std::min(a.order(), b.order());
    trunc_series<Coeff> r(order);
    Coeff acc;
    Coeff term;
    for (std::size_t n = 0; n <= order; ++n) {
        acc = a[n];
        for (std::size_t m = 1; m <= n; ++m) {
            if (b[m] == 0 || r[n - m] == 0) {
                continue;
            }
            term = b[m];
            term *= r[n - m];
            acc -= term;
        }
        acc /= b[0];
        r[n] = acc;
    }
    return r;
}

/// Divides by z^m when the m lowest coefficients vanish; the order drops by m.
template <typename Coeff>
trunc_series<Coeff> exact_shift_div_z(const trunc_series<Coeff> &a, std::size_t m)
{
    if (m > a.order()) {
        throw error(errc::invalid_argument, "shift exceeds the known order");
    }
    for (std::size_t n = 0; n < m; ++n) {
        if (a[n] != 0) {
            throw error(errc::non_vanishing_low_order, "coefficient of z^" + std::to_string(n) + " is nonzero");
        }
    }
    return trunc_series<Coeff>(std::vector<Coeff>(a.coeffs().begin() + static_cast<std::ptrdiff_t>(m), a.coeffs().end()));
}

/// Multiplies by z^m; the result is known to order a.order() + m.
template <typename Coeff>
trunc_series<Coeff> shift_mul_z(const trunc_series<Coeff> &a, std::size_t m)
{
    std::vector<Coeff> coeffs(m, Coeff(0));
    coeffs.insert(coeffs.end(), a.coeffs().begin(), a.coeffs().end());
    return trunc_series<Coeff>(std::move(coeffs));
}

/// Square root on the branch with constant term 1.
template <typename Coeff>
trunc_series<Coeff> sqrt_one_plus(const trunc_series<Coeff> &s)
{
    if (s[0] != 1) {
        throw error(errc::bad_constant_term, "square root needs constant term 1");
    }
    // r^2 = s coefficientwise: 2 r_n = s_n - sum_{m=1}^{n-1} r_m r_{n-m}.
    trunc_series<Coeff> r(s.order());
    r[0] = Coeff(1);
    Coeff acc;
    Coeff term;
    for (std::size_t n = 1; n <= s.order(); ++n) {
        acc = s[n];
        for (std::size_t m = 1; m < n; ++m) {
            if (r[m] == 0 || r[n - m] == 0) {
                continue;
            }
            term = r[m];
            term *= r[n - m];
            acc -= term;
        }
        acc /= Coeff(2);
        r[n] = acc;
    }
    return r;
}

/// outer(inner); needs inner to vanish at z = 0.
template <typename Coeff>
trunc_series<Coeff> compose(const trunc_series<Coeff> &outer, const trunc_series<Coeff> &inner)
{
    if (inner[0] != 0) {
        throw error(errc::non_positive_valuation, "inner series of a composition must vanish at z = 0");
    }
    const std::size_t order = std::min(outer.order(), inner.order());
    const auto in = inner.truncate(order);
    trunc_series<Coeff> acc = trunc_series<Coeff>::constant(outer[order], order);
    for (std::size_t m = order; m-- > 0;) {
        acc = acc * in;
        acc[0] += outer[m];
    }
    return acc;
}

template <typename Coeff>
trunc_series<Coeff> derivative(const trunc_series<Coeff> &s)
{
    if (s.order() < 1) {
        throw error(errc::invalid_argument, "derivative needs order >= 1");
    }
    trunc_series<Coeff> r(s.order() - 1);
    for (std::size_t n = 0; n < s.order(); ++n) {
        r[n] = s[n + 1] * Coeff(static_cast<long>(n + 1));
    }
    return r;
}

template <typename Coeff>
trunc_series<Coeff> pow(const trunc_series<Coeff> &s, std::size_t exponent)
{
    auto result = trunc_series<Coeff>::constant(Coeff(1), s.order());
    auto base = s;
    while (exponent > 0) {
        if ((exponent & 1U) != 0) {
            result = result * base;
        }
        exponent >>= 1U;
        if (exponent > 0) {
            base = base * base;
        }
    }
    return result;
}

/// Horner evaluation of the truncated polynomial at a real point.
inline double evaluate(const series &s, double z)
{
    double acc = 0.0;
    for (std::size_t n = s.order() + 1; n-- > 0;) {
        acc = acc * z + to_double(s[n]);
    }
    return acc;
}

inline bool all_canonical(const series &s)
{
    return std::all_of(s.coeffs().begin(), s.coeffs().end(), [](const rational &q) { return is_canonical(q); });
}

inline nlohmann::json to_json(const series &s)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto &c : s.coeffs()) {
        coeffs.push_back(to_fraction_string(c));
    }
    return {{"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

inline series series_from_json(const nlohmann::json &j)
{
    const auto order = j.at("order").get<std::size_t>();
    const auto &coeffs = j.at("coeffs");
    if (coeffs.size() != order + 1) {
        throw error(errc::invalid_argument, "coefficient count does not match order");
    }
    std::vector<rational> values;
    values.reserve(coeffs.size());
    for (const auto &c : coeffs) {
        values.push_back(parse_rational(c.get<std::string>()));
    }
    return series(std::move(values));
}

} // namespace qpwalk

#endif // QPWALK_SERIES_HPP
