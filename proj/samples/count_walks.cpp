// Excursion counts q(0,0,k) of the main walk, once by dynamic programming and
// once from the compensation series.

#include <iostream>

#include <qpwalk/qpwalk.hpp>

int main()
{
    constexpr std::size_t order = 20;
    const auto table = qpwalk::dp_counts(qpwalk::builtin_rule("main"), order);
    const auto q00 = qpwalk::q_series(0, 0, order);
    for (std::size_t k = 0; k <= order; ++k) {
        std::cout << k << "  " << table.at(0, 0, static_cast<long>(k)) << "  " << q00[k] << "\n";
    }
}
