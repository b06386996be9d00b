#ifndef LATSUM_SHELL_SUM_HPP
#define LATSUM_SHELL_SUM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "latsum/errors.hpp"

namespace latsum
{

struct ShellSumResult {
    std::complex<double> value;
    int radius;
    double err_estimate;
};

/// Sum of term(m, n) over 0 < max(|m|,|n|) (or >= 0 with the origin) by square shells.
/**
 * Partial sums over the square max(|m|,|n|) <= M of a summand that decays
 * at least like |w|^-4 after central cancellation have a tail with an
 * asymptotic expansion a_2 M^-2 + a_3 M^-3 + ... (Euler-Maclaurin along the
 * shell edges and across shells). M is doubled from start_radius and the
 * partial sums are fed through a Richardson table eliminating those powers
 * in order. Terminates once two successive diagonal entries differ by less
 * than tol.
 */
template <typename Term>
ShellSumResult shell_sum(Term &&term, double tol, bool include_origin = false,
                         int start_radius = 32, int max_radius = 1 << 16)
{
    using cplx = std::complex<double>;
    constexpr int max_order = 8;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    cplx total = include_origin ? cplx(term(0, 0)) : cplx(0.0);
    cplx carry = 0.0; // Kahan compensation
    auto add = [&](cplx v) {
        const cplx y = v - carry;
        const cplx t = total + y;
        carry = (t - total) - y;
        total = t;
    };
    auto shell = [&](int j) {
        cplx s = 0.0;
        for (int m = -j; m <= j; ++m) {
            s += term(m, j);
            s += term(m, -j);
        }
        for (int n = -j + 1; n <= j - 1; ++n) {
            s += term(j, n);
            s += term(-j, n);
        }
        return s;
    };

    std::vector<std::vector<cplx>> table;
    int done = 0;
    double last_err = std::numeric_limits<double>::infinity();
    for (int radius = start_radius; radius <= max_radius; radius *= 2) {
        for (int j = done + 1; j <= radius; ++j) {
            add(shell(j));
        }
        done = radius;
        std::vector<cplx> row{total};
        const int level = static_cast<int>(table.size());
        for (int j = 1; j <= std::min(level, max_order); ++j) {
            const double factor = std::ldexp(1.0, j + 1) - 1.0;
            row.push_back(row[j - 1] + (row[j - 1] - table.back()[j - 1]) / factor);
        }
        if (level >= 2) {
            const cplx now = row.back();
            const cplx before = table.back().back();
            const double err = std::abs(now - before);
            const double floor = 256.0 * eps * std::max(1.0, std::abs(now));
            if (err < tol || err < floor) {
                return {now, radius, std::max(err, floor)};
            }
            // Once roundoff dominates the table stops improving.
            if (level >= 4 && err > last_err && last_err < 1e3 * floor) {
                return {before, radius / 2, last_err};
            }
            last_err = err;
        }
        table.push_back(std::move(row));
    }
    throw ConvergenceError("shell sum did not reach tolerance " + std::to_string(tol)
                           + " within radius " + std::to_string(max_radius));
}

} // namespace latsum

#endif
