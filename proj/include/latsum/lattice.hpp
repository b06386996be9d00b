#ifndef LATSUM_LATTICE_HPP
#define LATSUM_LATTICE_HPP

#include <complex>
#include <string_view>

namespace latsum
{

using complex = std::complex<double>;

/// Lattice with periods omega1 > 0 and omega2 = omega1 * tau, normalized to unit cell area.
class LatticeTau
{
public:
    explicit LatticeTau(complex tau);

    complex tau() const { return m_tau; }
    double omega1() const { return m_omega1; }
    complex omega2() const { return m_omega2; }

    /// Coordinates (t1, t2) with z = t1 * omega1 + t2 * omega2.
    std::pair<double, double> to_cell(complex z) const;
    complex from_cell(double t1, double t2) const;

    /// Representative of z with cell coordinates in [0,1).
    complex reduce(complex z) const;

    /// Representative of z with cell coordinates in [-1/2,1/2), and the lattice shift removed.
    struct Centered {
        complex z;
        double t1;
        double t2;
        long m;
        long n;
    };
    Centered center(complex z) const;

    /// Shortest distance from z to any lattice point (minimum image).
    double distance_to_lattice(complex z) const;

private:
    complex m_tau;
    double m_omega1;
    complex m_omega2;
};

/// The three vertical lines on which closed forms exist.
enum class Line { imag_axis, re_plus_half, re_minus_half };

std::string_view to_string(Line line);

/// A point x on one of the canonical lines: tau = ix or tau = (+-1 + ix)/2.
/**
 * Negative x is the formal continuation carried by the sign(x) prefactor of
 * the closed forms; the lattice itself is always built from |x|.
 */
struct VerticalLinePoint {
    double x;
    Line line;

    complex tau() const;
    double sign() const { return x < 0 ? -1.0 : 1.0; }
    double imag_tau() const;
};

enum class Method { series, q_series, closed_form, functional_eq };

std::string_view to_string(Method method);

struct SumResult {
    complex value;
    Method method;
    int terms_used;
    double err_estimate;
};

} // namespace latsum

#endif
