#ifndef LATSUM_LATTICE_SUMS_HPP
#define LATSUM_LATTICE_SUMS_HPP

#include <array>
#include <cstdint>
#include <string>

#include "latsum/lattice.hpp"

namespace latsum::lattice
{

inline constexpr double default_tol = 1e-12;
inline constexpr double min_tol = 1e-15;

/// S2 by the Rayleigh csc^2 series (Eisenstein order).
SumResult s2_series(const LatticeTau &lat, double tol = default_tol);

/// S2 by the Lambert q-series m q^m / (1 - q^m).
SumResult s2_qseries(const LatticeTau &lat, double tol = default_tol);

/// T2 as S2 plus the cos/sin^3 row correction.
SumResult t2_series(const LatticeTau &lat, double tol = default_tol);

/// Absolutely convergent S4 by direct square-shell summation with extrapolation.
SumResult s4(const LatticeTau &lat, double tol = default_tol);

/// Weight-p analogue sum' w^-p for even p >= 4 (S4, S6, ...).
SumResult eisenstein_weight_sum(const LatticeTau &lat, int weight, double tol = default_tol);

double s2_closed(const VerticalLinePoint &p);
double t2_closed(const VerticalLinePoint &p);

/// Series evaluation on a canonical line, including the formal sign(x) continuation.
/**
 * For Im tau < 0.3 on the imaginary axis or for S2 on the half lines the value
 * is obtained from the reciprocal point via the modular relations, which keeps
 * the series in its fast regime; the method tag is then functional_eq.
 */
SumResult s2_on_line(const VerticalLinePoint &p, double tol = default_tol);
SumResult t2_on_line(const VerticalLinePoint &p, double tol = default_tol);

/// Residuals of the modular relations at x > 0, every side evaluated by series.
struct FunctionalResiduals {
    double s2_imag;           // S2(ix) + S2(i/x) = 2 pi
    double s2_half;           // S2((+-1+ix)/2) + S2((+-1+i/x)/2) = 2 pi, both sign pairings
    double t2_imag;           // T2(ix) = T2(i/x)
    double t2_half;           // T2 half-line difference against 4(S2h - S2) + (2pi^2/3)(x - 1/x)
    double t2_half_forms_gap; // the two right-hand sides of the half-line T2 relation against each other
    double t2_half_symmetry;  // T2((1+ix)/2) - T2((1+i/x)/2), reported for reference
};

FunctionalResiduals verify_functional_equations(double x, double tol = 1e-13);

/// Right-hand sides of the half-line T2 difference relation at x > 0.
struct HalfLineT2Forms {
    double via_s2;     // 4(S2((1+ix)/2) - S2(ix)) + (2 pi^2/3)(x - 1/x)
    double via_moduli; // (4/3)(4k^2 - 2) K(k) + (2 pi^2/3)(x - 1/x)
};
HalfLineT2Forms half_line_t2_forms(double x, double tol = 1e-13);

/// sigma(n), the sum of the divisors of n (n >= 1).
std::uint64_t divisor_sigma(std::size_t n);

/// sum_{m>=1} sigma(m) exp(-scale * pi * m * x); requires x * scale >= 0.05.
double sigma_exp_series(double x, double scale);

/// Residual of sum sigma(m)e^{-2 pi m x} + x^-2 sum sigma(m)e^{-2 pi m/x} = (1 + x^-2)/24 - 1/(4 pi x).
double nasim_residual(double x);

/// Residual of x sum sigma(m)e^{-2 pi m x} = x/24 - S2(ix)/(8 pi^2), with S2 from its csc^2 series.
double sigma_s2_relation_residual(double x, double tol = 1e-14);

/// Residual of the differentiated Nasim identity connecting scales pi x, 2 pi x and 2 pi/x, 4 pi/x.
double nasim_second_residual(double x);

struct ConstantEntry {
    std::string label;
    VerticalLinePoint point;
    double s2;
    double t2;
};

/// Exact S2 and T2 values at the eight singular points, from their gamma-function forms.
const std::array<ConstantEntry, 8> &known_constants();

} // namespace latsum::lattice

#endif
