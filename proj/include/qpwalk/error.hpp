#ifndef QPWALK_ERROR_HPP
#define QPWALK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpwalk
{

enum class errc {
    zero_constant_term,
    non_vanishing_low_order,
    bad_constant_term,
    non_positive_valuation,
    bad_valuation,
    unknown_rule,
    invalid_rule,
    out_of_range,
    wrong_rule,
    insufficient_depth,
    valuation_violation,
    domain_error,
    derivative_domain_error,
    sign_ambiguity,
    invalid_argument,
};

inline constexpr std::string_view to_string(errc code) noexcept
{
    switch (code) {
        case errc::zero_constant_term:
            return "ZeroConstantTerm";
        case errc::non_vanishing_low_order:
            return "NonVanishingLowOrder";
        case errc::bad_constant_term:
            return "BadConstantTerm";
        case errc::non_positive_valuation:
            return "NonPositiveValuation";
        case errc::bad_valuation:
            return "BadValuation";
        case errc::unknown_rule:
            return "UnknownRule";
        case errc::invalid_rule:
            return "InvalidRule";
        case errc::out_of_range:
            return "OutOfRange";
        case errc::wrong_rule:
            return "WrongRule";
        case errc::insufficient_depth:
            return "InsufficientDepth";
        case errc::valuation_violation:
            return "ValuationViolation";
        case errc::domain_error:
            return "DomainError";
        case errc::derivative_domain_error:
            return "DerivativeDomainError";
        case errc::sign_ambiguity:
            return "SignAmbiguity";
        case errc::invalid_argument:
            return "InvalidArgument";
    }
    return "Unknown";
}

// Library exception; code() identifies the failure.
class error : public std::runtime_error
{
public:
    error(errc code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), m_code(code)
    {
    }

    [[nodiscard]] errc code() const noexcept
    {
        return m_code;
    }

private:
    errc m_code;
};

} // namespace qpwalk

#endif // QPWALK_ERROR_HPP
