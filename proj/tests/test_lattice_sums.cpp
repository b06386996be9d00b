#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "latsum/errors.hpp"
#include "latsum/lattice_sums.hpp"
#include "oracles.hpp"

using namespace latsum;
using namespace latsum::lattice;

namespace
{
constexpr double pi = std::numbers::pi;
const complex I(0.0, 1.0);

double gq()
{
    return std::tgamma(0.25);
}

// 30-digit values from the divisor-sum q-expansions of the Eisenstein series.
struct EisensteinRef {
    complex tau;
    complex s2;
    complex s4;
    complex s6;
};
const EisensteinRef eisenstein_refs[] = {
    {{0.3, 1.7}, {5.59372866677511364167, -0.00293188465832604888}, {6.24516641130479227116, 0.03279195380375007571},
     {10.0322422218325076025, -0.11000132759882571679}},
    {{0.0, 1.0}, {pi, 0.0}, {3.15121200215389753822, 0.0}, {0.0, 0.0}},
    {{0.0, 2.0}, {6.57918556259997965221, 0.0}, {8.66583300592321823010, 0.0}, {16.2488760500880456800, 0.0}},
    {{0.3, 1.1}, {3.64580237541390250308, -0.08214038701651442393}, {2.42116807588006705168, 0.59229918271476212213},
     {3.16427234843598187968, -1.26678595153307517805}},
    {{-0.2, 0.8}, {2.51047845975372234370, 0.39892284632183035241}, {1.95318793334823855529, -2.14896490448197122921},
     {0.60960283250371565680, 3.69264558578947622953}},
};
} // namespace

TEST_CASE("S2 series at tabulated points")
{
    CHECK(std::abs(s2_series(LatticeTau(I)).value - pi) <= 1e-12);
    CHECK(std::abs(s2_series(LatticeTau((1.0 + I * std::sqrt(3.0)) / 2.0)).value - pi) <= 1e-12);
    CHECK(std::abs(s2_series(LatticeTau(2.0 * I)).value - (pi + std::pow(gq(), 4) / (16 * pi))) <= 1e-12);
    const SumResult r = s2_series(LatticeTau(I));
    CHECK(r.method == Method::series);
    CHECK(r.terms_used >= 1);
    CHECK(r.err_estimate >= 0.0);
}

TEST_CASE("S2 and S4 against divisor-sum references")
{
    for (const auto &ref : eisenstein_refs) {
        CAPTURE(ref.tau);
        const LatticeTau lat(ref.tau);
        CHECK(std::abs(s2_series(lat).value - ref.s2) <= 1e-11);
        CHECK(std::abs(s2_qseries(lat).value - ref.s2) <= 1e-11);
        CHECK(std::abs(s4(lat).value - ref.s4) <= 1e-10);
        CHECK(std::abs(eisenstein_weight_sum(lat, 6).value - ref.s6) <= 1e-10);
    }
}

TEST_CASE("S4 against plain truncated sum")
{
    // unaccelerated reference: error of one Richardson step at M = 2000 is ~1e-9
    const complex brute = oracle::brute_weight_sum(I, 4, 2000);
    CHECK(std::abs(s4(LatticeTau(I)).value - brute) <= 1e-8);
}

TEST_CASE("S4 symmetry")
{
    CHECK(std::abs(s4(LatticeTau(I)).value.imag()) <= 1e-10);
    CHECK(s4(LatticeTau(I)).value.real() > 0.0);
    CHECK(std::abs(s4(LatticeTau((1.0 + I * std::sqrt(3.0)) / 2.0)).value) <= 1e-12);
    for (double y : {0.6, 1.3, 2.5}) {
        CHECK(std::abs(s4(LatticeTau(I * y)).value.imag()) <= 1e-12);
    }
    CHECK_THROWS_AS(eisenstein_weight_sum(LatticeTau(I), 3), DomainError);
}

TEST_CASE("q-series and csc^2 series agree")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-0.5, 0.5);
    std::uniform_real_distribution<double> im(0.3, 5.0);
    for (int j = 0; j < 40; ++j) {
        const LatticeTau lat(complex(re(rng), im(rng)));
        CAPTURE(lat.tau());
        const complex a = s2_series(lat).value;
        CHECK(std::abs(a - s2_qseries(lat).value) <= 1e-11);
        CHECK(std::abs(a - s2_series(LatticeTau(lat.tau() + 1.0)).value) <= 1e-11);
    }
    CHECK(s2_qseries(LatticeTau(I)).method == Method::q_series);
    CHECK(std::abs(s2_qseries(LatticeTau(I * std::sqrt(3.0))).value
                   - (pi + std::sqrt(3.0) * std::pow(std::tgamma(1.0 / 3.0), 6) / (16 * pi * pi * std::cbrt(4.0))))
          <= 1e-11);
}

TEST_CASE("T2 series")
{
    const double t2i = pi / 2 + std::pow(gq(), 8) / (384 * pi * pi * pi);
    const complex v = t2_series(LatticeTau(I)).value;
    CHECK(std::abs(v - t2i) <= 1e-12);
    CHECK(std::round(v.real() * 1e6) / 1e6 == doctest::Approx(4.078451).epsilon(1e-12));
    CHECK(std::abs(t2_series(LatticeTau((1.0 + I * std::sqrt(3.0)) / 2.0)).value - pi / 2) <= 1e-12);
    const double g = std::tgamma(0.125) * std::tgamma(0.375);
    CHECK(std::abs(t2_series(LatticeTau(I * std::sqrt(2.0))).value - (pi / 2 + std::pow(g, 4) / (1024 * pi * pi * pi)))
          <= 1e-11);
}

TEST_CASE("series non-convergence and bad input")
{
    CHECK_THROWS_AS(s2_series(LatticeTau(complex(0.1, 1e-7))), ConvergenceError);
    CHECK_THROWS_AS(s2_series(LatticeTau(I), 1e-16), DomainError);
    CHECK_THROWS_AS(LatticeTau(complex(0.0, -1.0)), DomainError);
}

TEST_CASE("large imaginary part stays finite")
{
    const complex v = s2_series(LatticeTau(1000.0 * I)).value;
    CHECK(std::isfinite(v.real()));
    CHECK(std::abs(v - pi * pi * 1000.0 / 3.0) <= 1e-9 * std::abs(v));
}

TEST_CASE("closed forms")
{
    CHECK(std::abs(s2_closed({1.0, Line::imag_axis}) - pi) <= 1e-12);
    CHECK(std::abs(s2_closed({-1.0, Line::imag_axis}) + pi) <= 1e-12);
    const double g = std::tgamma(0.125) * std::tgamma(0.375);
    CHECK(std::abs(s2_closed({std::sqrt(2.0), Line::re_plus_half}) - (pi + (2 * std::sqrt(2.0) - 3) * g * g / (96 * pi)))
          <= 1e-12);
    const double g8 = std::pow(gq(), 8) / (pi * pi * pi);
    CHECK(std::abs(t2_closed({1.0, Line::imag_axis}) - (pi / 2 + g8 / 384)) <= 1e-12);
    CHECK(std::abs(t2_closed({1.0, Line::re_plus_half}) - (pi / 2 - g8 / 384)) <= 1e-12);
    CHECK(std::abs(t2_closed({2.0, Line::imag_axis}) - (pi / 2 + g8 / 192)) <= 1e-12);
    CHECK_THROWS_AS(s2_closed({0.0, Line::imag_axis}), DomainError);
}

TEST_CASE("closed forms against series, oddness and mirror symmetry")
{
    for (double x = 0.3; x <= 5.0; x += 0.17) {
        for (Line line : {Line::imag_axis, Line::re_plus_half, Line::re_minus_half}) {
            const VerticalLinePoint p{x, line};
            if (p.imag_tau() < 0.3) {
                continue;
            }
            CAPTURE(x);
            CAPTURE(to_string(line));
            const LatticeTau lat(p.tau());
            CHECK(std::abs(s2_series(lat).value - s2_closed(p)) <= 1e-10);
            CHECK(std::abs(t2_series(lat).value - t2_closed(p)) <= 1e-10);
            CHECK(s2_closed({-x, line}) == -s2_closed(p));
            CHECK(t2_closed({-x, line}) == -t2_closed(p));
        }
        const complex plus = s2_series(LatticeTau(VerticalLinePoint{x, Line::re_plus_half}.tau())).value;
        const complex minus = s2_series(LatticeTau(VerticalLinePoint{x, Line::re_minus_half}.tau())).value;
        CHECK(std::abs(plus - minus) <= 1e-11);
        const complex tplus = t2_series(LatticeTau(VerticalLinePoint{x, Line::re_plus_half}.tau())).value;
        const complex tminus = t2_series(LatticeTau(VerticalLinePoint{x, Line::re_minus_half}.tau())).value;
        CHECK(std::abs(tplus - tminus) <= 1e-11);
    }
}

TEST_CASE("line evaluation at small imaginary part uses the reciprocal point")
{
    const SumResult r = s2_on_line({0.1, Line::imag_axis});
    CHECK(r.method == Method::functional_eq);
    CHECK(std::abs(r.value - s2_closed({0.1, Line::imag_axis})) <= 1e-10);
    const SumResult t = t2_on_line({0.1, Line::imag_axis});
    CHECK(t.method == Method::functional_eq);
    CHECK(std::abs(t.value - t2_closed({0.1, Line::imag_axis})) <= 1e-10);
    const SumResult h = s2_on_line({0.4, Line::re_minus_half});
    CHECK(h.method == Method::functional_eq);
    CHECK(std::abs(h.value - s2_closed({0.4, Line::re_minus_half})) <= 1e-10);
    CHECK(std::abs(s2_on_line({-1.0, Line::imag_axis}).value + pi) <= 1e-12);
}

TEST_CASE("modular relations that hold")
{
    for (double x : {1.0, std::sqrt(2.0), 1.7, 0.3, 3.9}) {
        CAPTURE(x);
        const FunctionalResiduals r = verify_functional_equations(x);
        CHECK(r.s2_imag <= 1e-10);
        CHECK(r.s2_half <= 1e-10);
        CHECK(r.t2_imag <= 1e-10);
        CHECK(r.t2_half_symmetry <= 1e-10);
    }
    const FunctionalResiduals one = verify_functional_equations(1.0);
    CHECK(one.t2_half <= 1e-12);
    CHECK_THROWS_AS(verify_functional_equations(0.0), DomainError);
}

TEST_CASE("half-line T2 difference relation as written")
{
    // The difference T2((1+ix)/2) - T2((1+i/x)/2) vanishes identically, so
    // the written right-hand sides are nonzero and disagree with each other.
    const FunctionalResiduals r = verify_functional_equations(1.7);
    CHECK(r.t2_half > 1.0);
    const HalfLineT2Forms f = half_line_t2_forms(1.7);
    CHECK(f.via_s2 == doctest::Approx(-2.59).epsilon(0.01));
    CHECK(f.via_moduli == doctest::Approx(3.68).epsilon(0.01));
}

TEST_CASE("divisor sums")
{
    const std::uint64_t first[] = {1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28};
    for (std::size_t n = 1; n <= 12; ++n) {
        CHECK(divisor_sigma(n) == first[n - 1]);
    }
    // prime power and a product of distinct primes
    CHECK(divisor_sigma(1024) == 2047);
    CHECK(divisor_sigma(2 * 3 * 5 * 7 * 11) == 3 * 4 * 6 * 8 * 12);
    CHECK(divisor_sigma(99991) == 99992);
    CHECK_THROWS_AS(divisor_sigma(0), DomainError);
    CHECK_THROWS_AS(sigma_exp_series(0.01, 2.0), DomainError);
}

TEST_CASE("divisor series identities")
{
    CHECK(std::abs(sigma_exp_series(1.0, 2.0) - (1.0 / 24 - 1.0 / (8 * pi))) <= 1e-15);
    for (double x : {0.5, 0.8, 1.0, 1.3, 2.0}) {
        CAPTURE(x);
        CHECK(nasim_residual(x) <= 1e-13);
        CHECK(nasim_second_residual(x) <= 1e-12);
    }
    for (double x : {0.7, 1.0, 1.5}) {
        CHECK(sigma_s2_relation_residual(x) <= 1e-13);
    }
}

TEST_CASE("constants table")
{
    const auto &table = known_constants();
    CHECK(table.size() == 8);
    for (const ConstantEntry &e : table) {
        CAPTURE(e.label);
        const LatticeTau lat(e.point.tau());
        CHECK(std::abs(s2_series(lat).value - e.s2) <= 1e-10);
        CHECK(std::abs(t2_series(lat).value - e.t2) <= 1e-10);
        CHECK(std::abs(s2_closed(e.point) - e.s2) <= 1e-10);
        CHECK(std::abs(t2_closed(e.point) - e.t2) <= 1e-10);
    }
    CHECK(table[0].s2 == pi);
    CHECK(std::abs(table[7].point.tau() - complex(0.5, 1.0)) <= 1e-15);
}
