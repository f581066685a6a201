#ifndef QPWALK_RATIONAL_HPP
#define QPWALK_RATIONAL_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include <qpwalk/error.hpp>

namespace qpwalk
{

// Arbitrary-precision integers and rationals. GMP keeps rationals canonical
// (reduced, positive denominator) after every arithmetic operation.
using big_int = boost::multiprecision::mpz_int;
using rational = boost::multiprecision::mpq_rational;

inline bool is_canonical(const rational &q)
{
    const big_int num = boost::multiprecision::numerator(q);
    const big_int den = boost::multiprecision::denominator(q);
    return den >= 1 && gcd(abs(num), den) == 1;
}

// "numerator/denominator", always with an explicit denominator.
inline std::string to_fraction_string(const rational &q)
{
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

// Integer form when the denominator is 1, fraction form otherwise.
inline std::string to_compact_string(const rational &q)
{
    if (boost::multiprecision::denominator(q) == 1) {
        return boost::multiprecision::numerator(q).str();
    }
    return to_fraction_string(q);
}

inline rational parse_rational(std::string_view text)
{
    try {
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) {
            return rational(big_int(std::string(text)));
        }
        const big_int num(std::string(text.substr(0, slash)));
        const big_int den(std::string(text.substr(slash + 1)));
        if (den == 0) {
            throw error(errc::invalid_argument, "zero denominator in '" + std::string(text) + "'");
        }
        return rational(num) / rational(den);
    } catch (const std::runtime_error &e) {
        if (dynamic_cast<const error *>(&e) != nullptr) {
            throw;
        }
        throw error(errc::invalid_argument, "cannot parse rational '" + std::string(text) + "'");
    }
}

inline double to_double(const rational &q)
{
    return q.convert_to<double>();
}

} // namespace qpwalk

#endif // QPWALK_RATIONAL_HPP
