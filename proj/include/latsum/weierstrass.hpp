#ifndef LATSUM_WEIERSTRASS_HPP
#define LATSUM_WEIERSTRASS_HPP

#include <vector>

#include "latsum/lattice.hpp"
#include "latsum/lattice_sums.hpp"

namespace latsum::weierstrass
{

/// A lattice together with its constants S2, T2, S4 and the half-period values of zeta.
/**
 * Immutable after construction. S2 and T2 come from their row series, S4 from
 * the direct double sum, and zeta(omega1/2) from the direct renormalized
 * zeta sum, so the relation S2 = (2/omega1) zeta(omega1/2) is a genuine check
 * between two routes.
 */
class LatticeContext
{
public:
    explicit LatticeContext(const LatticeTau &lat, double tol = lattice::default_tol);

    const LatticeTau &lat() const { return m_lat; }
    complex s2() const { return m_s2; }
    complex t2() const { return m_t2; }
    complex s4() const { return m_s4; }
    complex zeta_half_period() const { return m_zeta_half; }

    /// Quasi-periods eta_j = zeta(z + omega_j) - zeta(z), from the row sums.
    complex eta1() const { return m_eta1; }
    complex eta2() const { return m_eta2; }

    int rows() const { return m_rows; }
    /// exp(2 pi i n tau) for n = 0..rows.
    const std::vector<complex> &nome_powers() const { return m_nome; }

private:
    LatticeTau m_lat;
    complex m_s2;
    complex m_t2;
    complex m_s4;
    complex m_zeta_half;
    complex m_eta1;
    complex m_eta2;
    int m_rows;
    std::vector<complex> m_nome;
};

struct WeierstrassValues {
    complex wp;
    complex wp_prime;
    complex wp_second;
    complex zeta; // at the centered representative
};

/// All four functions at the centered representative of z, from Eisenstein row sums.
/**
 * Each row of the lattice sums in closed form through csc^2, cot and
 * cos/sin^3, so one complex exponential per point suffices. Throws PoleError
 * when both centered cell coordinates are below 1e-12.
 */
WeierstrassValues evaluate_centered(const LatticeContext &ctx, complex z);

complex wp(const LatticeContext &ctx, complex z);
complex wp_prime(const LatticeContext &ctx, complex z);
complex wp_second(const LatticeContext &ctx, complex z);

/// Weierstrass zeta, quasi-periodic: shifts by eta1, eta2 are applied for z outside the centered cell.
complex zeta_w(const LatticeContext &ctx, complex z);

/// E2(z) = wp(z) + S2.
complex eisenstein_e2(const LatticeContext &ctx, complex z);

/// Natanzon function wp1'(z), not periodic; from its Weierstrass-function relation.
complex natanzon_prime(const LatticeContext &ctx, complex z);

struct G2Forms {
    complex via_natanzon; // -conj(z) wp'/2 + wp1'/2 + T2
    complex expanded;     // the same relation written out in wp, wp', wp'', zeta
};

/// Both closed expressions for G2, evaluated at the centered representative.
G2Forms g2_forms(const LatticeContext &ctx, complex z);

/// G2(z), the periodic sum of conj(z-w)/(z-w)^3; throws ConvergenceError if the two forms disagree.
complex g2_function(const LatticeContext &ctx, complex z);

/// G2 by summing each row conj(a-m)/(a-m)^3 in closed form; an independent route.
complex g2_rows(const LatticeContext &ctx, complex z);

/// E2 and G2 together, the pair needed by the random sums.
struct PairValues {
    complex e2;
    complex g2;
};
PairValues pair_values(const LatticeContext &ctx, complex z);

/// Direct double sums over square shells with extrapolation, used as reference values.
namespace direct
{

complex wp(const LatticeTau &lat, complex z, double tol = 1e-12);
complex wp_prime(const LatticeTau &lat, complex z, double tol = 1e-12);
complex wp_second(const LatticeTau &lat, complex z, double tol = 1e-12);
complex zeta(const LatticeTau &lat, complex z, double tol = 1e-12);
complex natanzon_prime(const LatticeTau &lat, complex z, double tol = 1e-10);

} // namespace direct

} // namespace latsum::weierstrass

#endif
