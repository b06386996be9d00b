#include <doctest.h>

#include <cmath>
#include <numbers>

#include "latsum/elliptic.hpp"
#include "latsum/errors.hpp"
#include "oracles.hpp"

using namespace latsum;
using namespace latsum::elliptic;

namespace
{
constexpr double pi = std::numbers::pi;
const double gamma_quarter = std::tgamma(0.25);
} // namespace

TEST_CASE("K and E at the endpoints")
{
    CHECK(ellip_k(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(ellip_e(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(ellip_e(1.0) == 1.0);
    CHECK_THROWS_AS(ellip_k(1.0), DomainError);
    CHECK_THROWS_AS(ellip_k(-0.1), DomainError);
    CHECK_THROWS_AS(ellip_e(1.1), DomainError);
}

TEST_CASE("K at singular moduli")
{
    const double k1 = 1.0 / std::sqrt(2.0);
    const double expect1 = gamma_quarter * gamma_quarter / (4.0 * std::sqrt(pi));
    CHECK(std::abs(ellip_k(k1) - expect1) <= 1e-14 * expect1);

    const double k4 = 3.0 - 2.0 * std::sqrt(2.0);
    const double expect4 = (std::sqrt(2.0) + 1.0) * gamma_quarter * gamma_quarter / (std::pow(2.0, 3.5) * std::sqrt(pi));
    CHECK(std::abs(ellip_k(k4) - expect4) <= 1e-14 * expect4);
}

TEST_CASE("K and E against periodic quadrature")
{
    // frozen 30-digit reference values
    struct Ref {
        double k, K, E;
    };
    const Ref refs[] = {
        {0.1, 1.57474556151735595266903068866, 1.56686194202166829122047497583},
        {0.5, 1.6857503548125960428712036578, 1.46746220933942715545979526699},
        {0.9, 2.28054913842277020461375194456, 1.17169705278161414118591395796},
        {0.999, 4.49559639584214417041360886204, 1.00399440996550781767268799601},
    };
    for (const Ref &r : refs) {
        CAPTURE(r.k);
        CHECK(std::abs(ellip_k(r.k) - r.K) <= 1e-14 * r.K);
        CHECK(std::abs(ellip_e(r.k) - r.E) <= 1e-14 * r.E);
    }
    for (double k = 0.05; k < 0.96; k += 0.1) {
        CAPTURE(k);
        CHECK(std::abs(ellip_k(k) - oracle::quad_k(k)) <= 1e-13);
        CHECK(std::abs(ellip_e(k) - oracle::quad_e(k)) <= 1e-13);
    }
}

TEST_CASE("Legendre relation on a log grid")
{
    double worst = 0.0;
    for (int j = 0; j < 100; ++j) {
        // log-spaced towards both ends of (1e-3, 1 - 1e-3)
        const double t = (j % 50) / 49.0;
        const double d = 1e-3 * std::pow(500.0, t);
        const double k = j < 50 ? d : 1.0 - d;
        const EllipticModulus m(k);
        const auto a = complete_integrals(m);
        const auto b = complete_integrals(m.complement());
        worst = std::max(worst, std::abs(a.E * b.K + b.E * a.K - a.K * b.K - pi / 2));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("modulus construction")
{
    CHECK_THROWS_AS(EllipticModulus(0.0), DomainError);
    CHECK_THROWS_AS(EllipticModulus(1.0), DomainError);
    const EllipticModulus m(0.3);
    CHECK(std::abs(m.k() * m.k() + m.k_prime() * m.k_prime() - 1.0) <= 4e-16);
    CHECK(m.complement().k() == m.k_prime());
    CHECK_THROWS_AS(EllipticModulus::from_pair(0.3, 0.3), DomainError);
}

TEST_CASE("derivatives match central differences")
{
    const double h = 1e-6;
    for (int j = 1; j <= 9; ++j) {
        const double k = 0.1 * j;
        CAPTURE(k);
        const EllipticModulus m(k);
        const double fd_k = (ellip_k(k + h) - ellip_k(k - h)) / (2 * h);
        const double fd_e = (ellip_e(k + h) - ellip_e(k - h)) / (2 * h);
        CHECK(std::abs(dK_dk(m) - fd_k) <= 1e-7);
        CHECK(std::abs(dE_dk(m) - fd_e) <= 1e-7);
    }
    const EllipticModulus m1(1.0 / std::sqrt(2.0));
    CHECK(std::abs(dE_dk(m1) - std::sqrt(2.0) * (ellip_e(m1) - ellip_k(m1))) <= 1e-14);
}

TEST_CASE("modulus from period ratio")
{
    CHECK(std::abs(modulus_from_ratio(1.0).k() - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(modulus_from_ratio(std::sqrt(2.0)).k() - (std::sqrt(2.0) - 1.0)) <= 1e-15);
    CHECK(std::abs(modulus_from_ratio(2.0).k() - (3.0 - 2.0 * std::sqrt(2.0))) <= 1e-15);
    CHECK_THROWS_AS(modulus_from_ratio(0.0), DomainError);
    CHECK_THROWS_AS(modulus_from_ratio(-1.0), DomainError);

    double worst_inverse = 0.0;
    double worst_involution = 0.0;
    for (int j = 0; j < 100; ++j) {
        const double x = 0.05 * std::pow(400.0, j / 99.0);
        const EllipticModulus m = modulus_from_ratio(x);
        const double back = ellip_k(m.complement()) / ellip_k(m);
        worst_inverse = std::max(worst_inverse, std::abs(back - x));
        worst_involution = std::max(worst_involution, std::abs(modulus_from_ratio(1.0 / x).k() - m.k_prime()));
    }
    CHECK(worst_inverse <= 1e-12);
    CHECK(worst_involution <= 1e-12);
}

TEST_CASE("ratio derivative matches finite difference")
{
    for (double k : {0.2, 0.5, 0.8}) {
        const double h = 1e-6;
        auto ratio = [](double kk) {
            const EllipticModulus m(kk);
            return ellip_k(m.complement()) / ellip_k(m);
        };
        CHECK(std::abs(ratio_derivative(EllipticModulus(k)) - (ratio(k + h) - ratio(k - h)) / (2 * h)) <= 1e-6);
    }
}

TEST_CASE("singular values and alpha")
{
    for (const SingularValueEntry &e : singular_values()) {
        CAPTURE(e.r);
        const EllipticModulus m = modulus_from_ratio(std::sqrt(double(e.r)));
        CHECK(std::abs(m.k() - e.k_r) <= 1e-13);
        CHECK(std::abs(ellip_k(m) - e.K_of_k_r) <= 1e-13 * e.K_of_k_r);
        const auto forms = elliptic_alpha_forms(e.r);
        CHECK(std::abs(forms[0] - forms[1]) <= 1e-12);
    }
    CHECK(std::abs(elliptic_alpha(1) - 0.5) <= 1e-12);
    CHECK(std::abs(elliptic_alpha(2) - (std::sqrt(2.0) - 1.0)) <= 1e-12);
    CHECK(std::abs(elliptic_alpha(4) - 2.0 * std::pow(std::sqrt(2.0) - 1.0, 2)) <= 1e-12);
    CHECK_THROWS_AS(elliptic_alpha(5), DomainError);
}
