#include "latsum/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latsum/errors.hpp"
#include "trig.hpp"

namespace latsum::weierstrass
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr double pole_guard = 1e-12;
// Beyond this Im(tau) the shared exponential exp(2 pi i u) may overflow and
// each row gets its own exponential instead.
constexpr double shared_exp_limit = 200.0;

int row_count(double imt)
{
    // Row |n| contributes at most ~64 pi^4 max(1, Im tau^2) exp(-2 pi (|n| - 1/2) Im tau).
    const double scale = 64.0 * std::pow(pi, 4) * std::max(1.0, imt * imt);
    const double n = 0.5 + std::log(scale / 1e-17) / (2.0 * pi * imt);
    return std::max(1, static_cast<int>(std::ceil(n)));
}

struct RowSums {
    complex csc2;     // sum of csc^2(pi a_n)
    complex cos_sin3; // sum of cos/sin^3(pi a_n)
    complex quartic;  // sum of csc^4 - (2/3) csc^2
    complex cot;      // cot(pi u) + sum over n >= 1 of the symmetric row pairs
    complex conj_row; // sum of Im(a_n) cos/sin^3(pi a_n)
};

// Rows a_n = u - n tau, |n| <= rows, for |Im u| <= Im(tau)/2.
RowSums row_sums(const LatticeContext &ctx, complex u)
{
    using detail::cplx;
    const complex tau = ctx.lat().tau();
    const double imt = tau.imag();
    const auto &nome = ctx.nome_powers();
    const bool shared = imt <= shared_exp_limit;

    RowSums out{};

    // central row
    if (pi * std::abs(u.imag()) < 20.0) {
        const complex s = std::sin(pi * u);
        const complex c = std::cos(pi * u);
        const complex inv = 1.0 / s;
        const complex inv2 = inv * inv;
        out.csc2 = inv2;
        out.cot = c * inv;
        out.cos_sin3 = c * inv2 * inv;
        out.quartic = inv2 * inv2 - (2.0 / 3.0) * inv2;
        out.conj_row = u.imag() * out.cos_sin3;
    } else {
        const detail::TrigRow t = detail::trig_row(u);
        out.csc2 = t.csc2;
        out.cot = t.cot;
        out.cos_sin3 = t.cos_sin3;
        out.quartic = t.csc2 * t.csc2 - (2.0 / 3.0) * t.csc2;
        out.conj_row = u.imag() * t.cos_sin3;
    }

    const complex up = shared ? std::exp(complex(0.0, detail::two_pi) * u) : complex(0.0);
    const complex down = shared ? 1.0 / up : complex(0.0);
    const complex i(0.0, 1.0);
    for (int n = 1; n <= ctx.rows(); ++n) {
        const complex below = u - static_cast<double>(n) * tau; // Im < 0
        const complex above = u + static_cast<double>(n) * tau; // Im > 0
        const complex pb = shared ? down * nome[n] : detail::nome_power(below, -1.0);
        const complex pa = shared ? up * nome[n] : detail::nome_power(above, 1.0);

        const complex db = 1.0 / (1.0 - pb);
        const complex da = 1.0 / (1.0 - pa);
        const complex csc2_b = -4.0 * pb * db * db;
        const complex csc2_a = -4.0 * pa * da * da;
        const complex cs3_b = -4.0 * i * pb * (1.0 + pb) * db * db * db;
        const complex cs3_a = 4.0 * i * pa * (1.0 + pa) * da * da * da;

        out.csc2 += csc2_b + csc2_a;
        out.cos_sin3 += cs3_b + cs3_a;
        out.quartic += csc2_b * csc2_b + csc2_a * csc2_a - (2.0 / 3.0) * (csc2_b + csc2_a);
        // cot on the two rows is +i(1 + 2p/(1-p)) and -i(1 + 2p/(1-p)); the constants cancel
        out.cot += 2.0 * i * (pb * db - pa * da);
        out.conj_row += below.imag() * cs3_b + above.imag() * cs3_a;
    }
    return out;
}

struct Centered {
    complex u;
    complex zc;
    long m;
    long n;
};

Centered centered(const LatticeTau &lat, complex z)
{
    const LatticeTau::Centered c = lat.center(z);
    if (std::abs(c.t1) < pole_guard && std::abs(c.t2) < pole_guard) {
        throw PoleError("evaluation point lies on a lattice point");
    }
    const complex u = c.t1 + c.t2 * lat.tau();
    return {u, lat.omega1() * u, c.m, c.n};
}

WeierstrassValues values_from_rows(const LatticeContext &ctx, const RowSums &r, complex zc)
{
    const double inv = 1.0 / ctx.lat().omega1();
    const double inv2 = inv * inv;
    const double pi2 = pi * pi;
    WeierstrassValues v;
    v.wp = pi2 * inv2 * r.csc2 - ctx.s2();
    v.wp_prime = -2.0 * pi2 * pi * inv2 * inv * r.cos_sin3;
    v.wp_second = 6.0 * pi2 * pi2 * inv2 * inv2 * r.quartic;
    v.zeta = pi * inv * r.cot + zc * ctx.s2();
    return v;
}

complex natanzon_from(const LatticeContext &ctx, const WeierstrassValues &v, complex zeta_full, complex z)
{
    const complex d = ctx.s2() - pi;
    return (v.wp_second / 3.0 + (zeta_full - d * z) * v.wp_prime - 2.0 * d * v.wp - 10.0 * ctx.s4()) / pi;
}

struct G2Eval {
    G2Forms forms;
    double scale;
};

G2Eval g2_from(const LatticeContext &ctx, const WeierstrassValues &v, complex zc)
{
    const complex half_conj = -0.5 * std::conj(zc) * v.wp_prime;
    const complex np = natanzon_from(ctx, v, v.zeta, zc);
    const complex ratio = ctx.s2() / pi - 1.0;
    const complex expanded = half_conj + v.wp_second / (6.0 * pi) + 0.5 * (v.zeta / pi - ratio * zc) * v.wp_prime
                             - ratio * v.wp - (5.0 / pi) * ctx.s4() + ctx.t2();
    const double scale = std::abs(half_conj) + std::abs(v.wp_second) + std::abs(v.zeta * v.wp_prime)
                         + std::abs(v.wp) + 1.0;
    return {{half_conj + 0.5 * np + ctx.t2(), expanded}, scale};
}

complex checked_g2(const G2Eval &g)
{
    const double diff = std::abs(g.forms.via_natanzon - g.forms.expanded);
    if (diff > 1e-8 + 1e-13 * g.scale) {
        throw ConvergenceError("the two G2 forms disagree by " + std::to_string(diff));
    }
    return g.forms.via_natanzon;
}

} // namespace

LatticeContext::LatticeContext(const LatticeTau &lat, double tol)
    : m_lat(lat), m_rows(row_count(lat.tau().imag()))
{
    m_s2 = lattice::s2_series(lat, tol).value;
    m_t2 = lattice::t2_series(lat, tol).value;
    m_s4 = lattice::s4(lat, tol).value;
    m_zeta_half = direct::zeta(lat, 0.5 * lat.omega1(), tol);
    m_nome.resize(m_rows + 1);
    for (int n = 0; n <= m_rows; ++n) {
        m_nome[n] = std::exp(complex(0.0, detail::two_pi * n) * lat.tau());
    }
    m_eta1 = lat.omega1() * m_s2;
    // zeta is odd, so zeta(z + omega2) - zeta(z) = 2 zeta(omega2/2).
    const complex u = 0.5 * lat.tau();
    m_eta2 = 2.0 * values_from_rows(*this, row_sums(*this, u), lat.omega1() * u).zeta;
}

WeierstrassValues evaluate_centered(const LatticeContext &ctx, complex z)
{
    const Centered c = centered(ctx.lat(), z);
    return values_from_rows(ctx, row_sums(ctx, c.u), c.zc);
}

complex wp(const LatticeContext &ctx, complex z)
{
    return evaluate_centered(ctx, z).wp;
}

complex wp_prime(const LatticeContext &ctx, complex z)
{
    return evaluate_centered(ctx, z).wp_prime;
}

complex wp_second(const LatticeContext &ctx, complex z)
{
    return evaluate_centered(ctx, z).wp_second;
}

complex zeta_w(const LatticeContext &ctx, complex z)
{
    const Centered c = centered(ctx.lat(), z);
    const WeierstrassValues v = values_from_rows(ctx, row_sums(ctx, c.u), c.zc);
    return v.zeta + static_cast<double>(c.m) * ctx.eta1() + static_cast<double>(c.n) * ctx.eta2();
}

complex eisenstein_e2(const LatticeContext &ctx, complex z)
{
    return wp(ctx, z) + ctx.s2();
}

complex natanzon_prime(const LatticeContext &ctx, complex z)
{
    const Centered c = centered(ctx.lat(), z);
    const WeierstrassValues v = values_from_rows(ctx, row_sums(ctx, c.u), c.zc);
    const complex zeta_full = v.zeta + static_cast<double>(c.m) * ctx.eta1() + static_cast<double>(c.n) * ctx.eta2();
    return natanzon_from(ctx, v, zeta_full, z);
}

G2Forms g2_forms(const LatticeContext &ctx, complex z)
{
    const Centered c = centered(ctx.lat(), z);
    const WeierstrassValues v = values_from_rows(ctx, row_sums(ctx, c.u), c.zc);
    return g2_from(ctx, v, c.zc).forms;
}

complex g2_function(const LatticeContext &ctx, complex z)
{
    const Centered c = centered(ctx.lat(), z);
    const WeierstrassValues v = values_from_rows(ctx, row_sums(ctx, c.u), c.zc);
    return checked_g2(g2_from(ctx, v, c.zc));
}

complex g2_rows(const LatticeContext &ctx, complex z)
{
    const Centered c = centered(ctx.lat(), z);
    const RowSums r = row_sums(ctx, c.u);
    const double inv = 1.0 / ctx.lat().omega1();
    // conj(a - m) = (a - m) - 2i Im(a) along each row
    return inv * inv * (pi * pi * r.csc2 - complex(0.0, 2.0 * pi * pi * pi) * r.conj_row);
}

PairValues pair_values(const LatticeContext &ctx, complex z)
{
    const Centered c = centered(ctx.lat(), z);
    const WeierstrassValues v = values_from_rows(ctx, row_sums(ctx, c.u), c.zc);
    return {v.wp + ctx.s2(), checked_g2(g2_from(ctx, v, c.zc))};
}

} // namespace latsum::weierstrass
