#include "latsum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "latsum/elliptic.hpp"
#include "latsum/lattice_sums.hpp"
#include "latsum/weierstrass.hpp"

namespace latsum::verify
{

namespace
{

constexpr double pi = std::numbers::pi;

std::string label(const char *fmt, double v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

} // namespace

bool SuiteReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass(); });
}

double SuiteReport::max_residual() const
{
    double m = 0.0;
    for (const Check &c : checks) {
        m = std::max(m, c.residual);
    }
    return m;
}

std::vector<const Check *> SuiteReport::failures() const
{
    std::vector<const Check *> out;
    for (const Check &c : checks) {
        if (!c.pass()) {
            out.push_back(&c);
        }
    }
    return out;
}

SuiteReport constants(double tolerance)
{
    SuiteReport rep{"constants", {}};
    for (const lattice::ConstantEntry &e : lattice::known_constants()) {
        const LatticeTau lat(e.point.tau());
        const double s2 = std::max(std::abs(lattice::s2_series(lat).value - e.s2),
                                   std::abs(lattice::s2_closed(e.point) - e.s2));
        const double t2 = std::max(std::abs(lattice::t2_series(lat).value - e.t2),
                                   std::abs(lattice::t2_closed(e.point) - e.t2));
        rep.checks.push_back({"S2(" + e.label + ")", s2, tolerance});
        rep.checks.push_back({"T2(" + e.label + ")", t2, tolerance});
    }
    return rep;
}

SuiteReport functional(int samples, std::uint64_t seed, double tolerance)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(0.25, 4.0);
    double s2_imag = 0.0;
    double s2_half = 0.0;
    double t2_imag = 0.0;
    double t2_half = 0.0;
    double forms_gap = 0.0;
    double symmetry = 0.0;
    for (int j = 0; j < samples; ++j) {
        const lattice::FunctionalResiduals r = lattice::verify_functional_equations(pick(rng));
        s2_imag = std::max(s2_imag, r.s2_imag);
        s2_half = std::max(s2_half, r.s2_half);
        t2_imag = std::max(t2_imag, r.t2_imag);
        t2_half = std::max(t2_half, r.t2_half);
        forms_gap = std::max(forms_gap, r.t2_half_forms_gap);
        symmetry = std::max(symmetry, r.t2_half_symmetry);
    }
    return {"functional",
            {
                {"S2(ix) + S2(i/x) = 2pi", s2_imag, tolerance},
                {"S2((+-1+ix)/2) + S2((+-1+i/x)/2) = 2pi", s2_half, tolerance},
                {"T2(ix) = T2(i/x)", t2_imag, tolerance},
                {"T2 half-line difference = 4(S2h - S2) + (2pi^2/3)(x - 1/x)", t2_half, tolerance},
                {"T2 half-line difference, S2 form = moduli form", forms_gap, tolerance},
                {"T2((+-1+ix)/2) = T2((+-1+i/x)/2)", symmetry, tolerance},
            }};
}

SuiteReport half_line_forms(int samples, double tolerance)
{
    SuiteReport rep{"half-line forms", {}};
    for (int j = 0; j < samples; ++j) {
        const double x = 0.25 * std::pow(16.0, (j + 0.5) / samples);
        const lattice::HalfLineT2Forms f = lattice::half_line_t2_forms(x);
        rep.checks.push_back({label("x = %.6g", x), std::abs(f.via_s2 - f.via_moduli), tolerance});
    }
    return rep;
}

SuiteReport nasim(double tolerance)
{
    SuiteReport rep{"nasim", {}};
    for (double x : {0.5, 0.8, 1.0, 1.3, 2.0}) {
        rep.checks.push_back({label("sigma series reciprocity at x = %g", x), lattice::nasim_residual(x), tolerance});
    }
    for (double x : {0.7, 1.0, 1.5}) {
        rep.checks.push_back(
            {label("x sum sigma e^{-2pi m x} = x/24 - S2(ix)/(8pi^2) at x = %g", x),
             lattice::sigma_s2_relation_residual(x), tolerance});
    }
    for (double x : {0.5, 1.0, 1.3, 2.0}) {
        rep.checks.push_back({label("two-scale sigma identity at x = %g", x), lattice::nasim_second_residual(x), tolerance});
    }
    return rep;
}

SuiteReport natanzon()
{
    using namespace weierstrass;
    SuiteReport rep{"natanzon", {}};
    const complex points[] = {{0.37, 0.21}, {-0.2, 0.4}, {0.45, -0.1}, {0.1, 0.05}, {-0.33, -0.47}};
    const std::pair<const char *, complex> lattices[] = {
        {"i", {0.0, 1.0}}, {"(1+i*sqrt(3))/2", {0.5, std::sqrt(3.0) / 2.0}}, {"2i", {0.0, 2.0}}};
    for (const auto &[name, tau] : lattices) {
        const LatticeContext ctx{LatticeTau(tau)};
        const LatticeTau &lat = ctx.lat();
        const std::string at = std::string(" at tau = ") + name;
        double nat = 0.0;
        double ode = 0.0;
        double quasi = 0.0;
        for (const complex &cell : points) {
            const complex z = lat.from_cell(cell.real(), cell.imag());
            nat = std::max(nat, std::abs(natanzon_prime(ctx, z) - direct::natanzon_prime(lat, z)));
            const complex p = wp(ctx, z);
            ode = std::max(ode, std::abs(wp_second(ctx, z) - (6.0 * p * p - 30.0 * ctx.s4())));
            const complex zd = zeta_w(ctx, z);
            quasi = std::max({quasi, std::abs(zeta_w(ctx, z + lat.omega1()) - zd - 2.0 * ctx.zeta_half_period()),
                              std::abs(zeta_w(ctx, z + lat.omega2()) - zd - ctx.eta2())});
        }
        rep.checks.push_back({"Natanzon relation vs direct sum" + at, nat, 1e-7});
        rep.checks.push_back({"wp'' = 6 wp^2 - 30 S4" + at, ode, 1e-8});
        rep.checks.push_back({"zeta quasi-periodicity" + at, quasi, 1e-9});
        const complex legendre = ctx.zeta_half_period() * lat.omega2() - 0.5 * ctx.eta2() * lat.omega1();
        rep.checks.push_back({"zeta(w1/2) w2 - zeta(w2/2) w1 = pi i" + at, std::abs(legendre - complex(0.0, pi)), 1e-9});
        rep.checks.push_back({"S2 = (2/w1) zeta(w1/2)" + at,
                              std::abs(ctx.s2() - 2.0 / lat.omega1() * ctx.zeta_half_period()), 1e-10});
    }
    return rep;
}

SuiteReport elliptic_layer()
{
    using namespace elliptic;
    SuiteReport rep{"elliptic", {}};
    double legendre = 0.0;
    for (int j = 0; j < 100; ++j) {
        const double t = (j % 50) / 49.0;
        const double d = 1e-3 * std::pow(500.0, t);
        const EllipticModulus m(j < 50 ? d : 1.0 - d);
        const auto a = complete_integrals(m);
        const auto b = complete_integrals(m.complement());
        legendre = std::max(legendre, std::abs(a.E * b.K + b.E * a.K - a.K * b.K - pi / 2));
    }
    rep.checks.push_back({"Legendre relation", legendre, 1e-12});
    for (const SingularValueEntry &e : singular_values()) {
        const double k = modulus_from_ratio(std::sqrt(double(e.r))).k();
        rep.checks.push_back({label("singular modulus k_%g", e.r), std::abs(k - e.k_r), 1e-13});
    }
    const double sq2 = std::numbers::sqrt2;
    const double alpha_expect[] = {0.5, sq2 - 1.0, 0.5 * (std::numbers::sqrt3 - 1.0), 2.0 * (sq2 - 1.0) * (sq2 - 1.0)};
    for (int r = 1; r <= 4; ++r) {
        const auto forms = elliptic_alpha_forms(r);
        const double res = std::max(std::abs(forms[0] - forms[1]), std::abs(forms[0] - alpha_expect[r - 1]));
        rep.checks.push_back({label("alpha(%g)", r), res, 1e-12});
    }
    return rep;
}

} // namespace latsum::verify
