#include "latsum/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "latsum/errors.hpp"

namespace latsum::elliptic
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

// AGM(1, g) with the running sum of 2^{n-1} c_n^2 (n >= 1) needed for E.
struct AgmResult {
    double mean;
    double csum;
};

AgmResult agm_with_sum(double g)
{
    double a = 1.0;
    double csum = 0.0;
    double weight = 1.0;
    for (int i = 0; i < 64; ++i) {
        const double c = 0.5 * (a - g);
        if (std::abs(c) <= eps * a) {
            return {a, csum};
        }
        const double a1 = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = a1;
        csum += weight * c * c;
        weight *= 2.0;
    }
    // Quadratic convergence makes this unreachable for g in (0,1].
    throw ConvergenceError("AGM did not converge");
}

double agm(double g)
{
    return agm_with_sum(g).mean;
}

// K(k')/K(k) = AGM(1,k')/AGM(1,k).
double period_ratio(double k, double kp)
{
    return agm(kp) / agm(k);
}

struct ClosedSingular {
    double k;
    double K;
};

ClosedSingular closed_singular(int r)
{
    const double sqrt2 = std::numbers::sqrt2;
    const double sqrtpi = std::sqrt(pi);
    switch (r) {
    case 1: {
        const double g = std::tgamma(0.25);
        return {1.0 / sqrt2, g * g / (4.0 * sqrtpi)};
    }
    case 2:
        return {sqrt2 - 1.0, std::sqrt(sqrt2 + 1.0) * std::tgamma(0.125) * std::tgamma(0.375)
                                 / (std::pow(2.0, 3.25) * sqrtpi)};
    case 3: {
        const double g = std::tgamma(1.0 / 3.0);
        return {0.25 * sqrt2 * (std::numbers::sqrt3 - 1.0),
                std::pow(3.0, 0.25) * g * g * g / (std::pow(2.0, 7.0 / 3.0) * pi)};
    }
    case 4: {
        const double g = std::tgamma(0.25);
        return {3.0 - 2.0 * sqrt2, (sqrt2 + 1.0) * g * g / (std::pow(2.0, 3.5) * sqrtpi)};
    }
    default:
        throw DomainError("singular values are tabulated for r = 1..4 only, got r = "
                          + std::to_string(r));
    }
}

// Root of K(k')/K(k) = x for x >= 1, i.e. k in (0, 1/sqrt2]. Safeguarded
// Newton in u = ln k, where the residual is close to linear for small k.
EllipticModulus solve_ratio_at_least_one(double x)
{
    auto residual = [x](double u) {
        const double k = std::exp(u);
        return period_ratio(k, std::sqrt((1.0 - k) * (1.0 + k))) - x;
    };

    double hi = std::log(std::numbers::sqrt2 / 2.0);
    double f_hi = 1.0 - x;
    double step = 1.0;
    double lo = hi - step;
    double f_lo = residual(lo);
    while (f_lo <= 0.0) {
        step *= 2.0;
        lo = hi - step;
        if (std::exp(lo) == 0.0) {
            throw DomainError("period ratio x = " + std::to_string(x)
                              + " needs a modulus below the double-precision range");
        }
        f_lo = residual(lo);
    }
    if (f_hi == 0.0) {
        return EllipticModulus::from_pair(std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0);
    }

    // Small-k asymptotics x ~ (2/pi) ln(4/k) as the starting point.
    double u = std::log(4.0) - 0.5 * pi * x;
    if (!(u > lo && u < hi)) {
        u = 0.5 * (lo + hi);
    }
    double f = residual(u);
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(f) <= 1e-15 * x) {
            break;
        }
        if (f > 0.0) {
            lo = u;
        } else {
            hi = u;
        }
        const double k = std::exp(u);
        const double kp2 = (1.0 - k) * (1.0 + k);
        const double K = pi / (2.0 * agm(std::sqrt(kp2)));
        const double slope = -pi / (2.0 * kp2 * K * K);
        double next = u - f / slope;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - u) <= 4.0 * eps * std::abs(u)) {
            u = next;
            f = residual(u);
            break;
        }
        u = next;
        f = residual(u);
    }
    if (std::abs(f) > 1e-12) {
        throw ConvergenceError("modulus inversion residual " + std::to_string(std::abs(f))
                               + " exceeds 1e-12 at x = " + std::to_string(x));
    }
    const double k = std::exp(u);
    return EllipticModulus::from_pair(k, std::sqrt((1.0 - k) * (1.0 + k)));
}

} // namespace

EllipticModulus::EllipticModulus(double k) : m_k(k), m_kp(0.0)
{
    if (!(k > 0.0 && k < 1.0)) {
        throw DomainError("elliptic modulus must lie in (0,1), got " + std::to_string(k));
    }
    m_kp = std::sqrt((1.0 - k) * (1.0 + k));
    if (!(m_kp > 0.0)) {
        throw DomainError("complementary modulus underflows for k = " + std::to_string(k));
    }
}

EllipticModulus EllipticModulus::from_pair(double k, double k_prime)
{
    // One member may round to exactly 1 when the other is below sqrt(eps).
    if (!(k > 0.0 && k <= 1.0 && k_prime > 0.0 && k_prime <= 1.0)) {
        throw DomainError("modulus pair must lie in (0,1]");
    }
    if (std::abs(std::fma(k, k, k_prime * k_prime) - 1.0) > 4.0 * eps) {
        throw DomainError("modulus pair violates k^2 + k'^2 = 1");
    }
    return EllipticModulus(k, k_prime, 0);
}

CompleteIntegrals complete_integrals(const EllipticModulus &m)
{
    const double kp = m.k_prime();
    const AgmResult res = agm_with_sum(kp);
    const double K = pi / (2.0 * res.mean);
    // E/K = 1 - k^2/2 - sum_{n>=1} 2^{n-1} c_n^2, with 1 - k^2/2 written via k'.
    const double E = K * (0.5 * (1.0 + kp * kp) - res.csum);
    return {K, E};
}

double ellip_k(double k)
{
    if (!(k >= 0.0 && k < 1.0)) {
        throw DomainError("K(k) requires 0 <= k < 1, got " + std::to_string(k));
    }
    if (k == 0.0) {
        return 0.5 * pi;
    }
    return ellip_k(EllipticModulus(k));
}

double ellip_k(const EllipticModulus &m)
{
    return pi / (2.0 * agm(m.k_prime()));
}

double ellip_e(double k)
{
    if (!(k >= 0.0 && k <= 1.0)) {
        throw DomainError("E(k) requires 0 <= k <= 1, got " + std::to_string(k));
    }
    if (k == 0.0) {
        return 0.5 * pi;
    }
    if (k == 1.0) {
        return 1.0;
    }
    return ellip_e(EllipticModulus(k));
}

double ellip_e(const EllipticModulus &m)
{
    return complete_integrals(m).E;
}

double dK_dk(const EllipticModulus &m)
{
    const auto [K, E] = complete_integrals(m);
    const double kp2 = m.k_prime() * m.k_prime();
    return (E - kp2 * K) / (m.k() * kp2);
}

double dE_dk(const EllipticModulus &m)
{
    const auto [K, E] = complete_integrals(m);
    return (E - K) / m.k();
}

double ratio_derivative(const EllipticModulus &m)
{
    const double K = ellip_k(m);
    return -pi / (2.0 * m.k() * m.k_prime() * m.k_prime() * K * K);
}

EllipticModulus modulus_from_ratio(double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("period ratio must be positive and finite, got " + std::to_string(x));
    }
    if (x == 1.0) {
        return EllipticModulus::from_pair(std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0);
    }
    // Exchanging k and k' inverts the ratio.
    if (x < 1.0) {
        return solve_ratio_at_least_one(1.0 / x).complement();
    }
    return solve_ratio_at_least_one(x);
}

std::array<double, 2> elliptic_alpha_forms(int r)
{
    const ClosedSingular cs = closed_singular(r);
    const EllipticModulus m(cs.k);
    const double E = ellip_e(m);
    const double E_comp = ellip_e(m.complement());
    const double K = cs.K;
    const double base = pi / (4.0 * K * K);
    return {E_comp / K - base, base + std::sqrt(static_cast<double>(r)) * (1.0 - E / K)};
}

double elliptic_alpha(int r)
{
    const auto forms = elliptic_alpha_forms(r);
    if (std::abs(forms[0] - forms[1]) > 1e-12) {
        throw ConvergenceError("elliptic alpha forms disagree at r = " + std::to_string(r));
    }
    return forms[0];
}

const std::array<SingularValueEntry, 4> &singular_values()
{
    static const std::array<SingularValueEntry, 4> table = [] {
        std::array<SingularValueEntry, 4> t{};
        for (int r = 1; r <= 4; ++r) {
            const ClosedSingular cs = closed_singular(r);
            t[r - 1] = {r, cs.k, cs.K, elliptic_alpha(r)};
        }
        return t;
    }();
    return table;
}

} // namespace latsum::elliptic
