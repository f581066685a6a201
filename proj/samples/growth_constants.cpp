#include <cstdio>

#include <qpwalk/qpwalk.hpp>

int main()
{
    const auto rho = qpwalk::find_rho(1e-10);
    const auto report = qpwalk::growth_constants(rho);
    std::printf("rho in [%.12f, %.12f]\n", rho.lo, rho.hi);
    std::printf("h'(rho) = %.10f +- %.1e\n", report.h_prime_rho.value, report.h_prime_rho.error_bound);
    std::printf("C00     = %.10f +- %.1e\n", report.c00, report.c00_err);
    std::printf("q(0,0,k) ~ %.6f rho^-k\n", report.c00);
}
