#ifndef LATSUM_VERIFY_HPP
#define LATSUM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace latsum::verify
{

struct Check {
    std::string name;
    double residual;
    double tolerance;

    bool pass() const { return residual <= tolerance; }
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;

    bool passed() const;
    double max_residual() const;
    std::vector<const Check *> failures() const;
};

/// The 16 tabulated S2 and T2 values, each through both the series and the closed form.
SuiteReport constants(double tolerance = 1e-10);

/// Modular relations at seeded random x in [0.25, 4], every side by series.
SuiteReport functional(int samples = 50, std::uint64_t seed = 7, double tolerance = 1e-10);

/// The two right-hand sides of the half-line T2 difference relation at n points spread over [0.25, 4].
SuiteReport half_line_forms(int samples = 20, double tolerance = 1e-10);

/// Divisor-sum identities.
SuiteReport nasim(double tolerance = 1e-12);

/// Natanzon relation against its direct sum plus the Weierstrass consistency identities.
SuiteReport natanzon();

/// Legendre relation, singular values and the alpha table.
SuiteReport elliptic_layer();

} // namespace latsum::verify

#endif
