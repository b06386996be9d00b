#include "latsum/lattice_sums.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "latsum/elliptic.hpp"
#include "latsum/errors.hpp"
#include "latsum/shell_sum.hpp"
#include "trig.hpp"

namespace latsum::lattice
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr int max_series_terms = 100000;

void check_tol(double tol)
{
    if (!(tol >= min_tol) || !std::isfinite(tol)) {
        throw DomainError("series tolerance must be >= 1e-15, got " + std::to_string(tol));
    }
}

struct SeriesOutcome {
    complex sum;
    int terms;
    double band;
};

// Adds term(1), term(2), ... until three consecutive terms are below
// tol * max(1, |partial|).
template <typename Term>
SeriesOutcome sum_until_small(Term &&term, complex initial, double tol, const char *what)
{
    complex partial = initial;
    int below = 0;
    double band = 0.0;
    for (int m = 1; m <= max_series_terms; ++m) {
        const complex t = term(m);
        partial += t;
        const double mag = std::abs(t);
        if (mag < tol * std::max(1.0, std::abs(partial))) {
            ++below;
            band += mag;
        } else {
            below = 0;
            band = 0.0;
        }
        if (below == 3) {
            return {partial, m, band};
        }
    }
    throw ConvergenceError(std::string(what) + " did not converge within "
                           + std::to_string(max_series_terms)
                           + " terms; Im tau is too small, apply a modular relation first");
}

complex nome_power(const LatticeTau &lat, int m)
{
    return std::exp(complex(0.0, detail::two_pi * m) * lat.tau());
}

struct Closed {
    double k2;
    double kp2;
    double K;
    double E;
    double Kp;
};

Closed closed_data(double ax)
{
    const elliptic::EllipticModulus m = elliptic::modulus_from_ratio(ax);
    const auto ke = elliptic::complete_integrals(m);
    return {m.k() * m.k(), m.k_prime() * m.k_prime(), ke.K, ke.E, elliptic::ellip_k(m.complement())};
}

double nonzero_abs(double x)
{
    if (x == 0.0 || !std::isfinite(x)) {
        throw DomainError("closed forms need finite nonzero x");
    }
    return std::abs(x);
}

} // namespace

SumResult s2_series(const LatticeTau &lat, double tol)
{
    check_tol(tol);
    auto term = [&lat](int m) {
        const complex q = nome_power(lat, m);
        const complex d = 1.0 - q;
        return -8.0 * q / (d * d);
    };
    const auto out = sum_until_small(term, complex(1.0 / 3.0), tol, "S2 series");
    const double pref = pi * pi * lat.tau().imag();
    return {pref * out.sum, Method::series, out.terms, pref * out.band};
}

SumResult s2_qseries(const LatticeTau &lat, double tol)
{
    check_tol(tol);
    auto term = [&lat](int m) {
        const complex q = nome_power(lat, m);
        return -8.0 * static_cast<double>(m) * q / (1.0 - q);
    };
    const auto out = sum_until_small(term, complex(1.0 / 3.0), tol, "S2 q-series");
    const double pref = pi * pi * lat.tau().imag();
    return {pref * out.sum, Method::q_series, out.terms, pref * out.band};
}

SumResult t2_series(const LatticeTau &lat, double tol)
{
    const SumResult s2 = s2_series(lat, tol);
    // n cos(n pi tau)/sin^3(n pi tau) = 4 i n q(1+q)/(1-q)^3 with q = e^{2 pi i n tau}
    auto term = [&lat](int n) {
        const complex q = nome_power(lat, n);
        const complex d = 1.0 - q;
        return static_cast<double>(n) * q * (1.0 + q) / (d * d * d);
    };
    const auto out = sum_until_small(term, complex(0.0), tol, "T2 series");
    const double im = lat.tau().imag();
    const double pref = 16.0 * pi * pi * pi * im * im;
    return {s2.value + pref * out.sum, Method::series, std::max(s2.terms_used, out.terms),
            s2.err_estimate + pref * out.band};
}

SumResult eisenstein_weight_sum(const LatticeTau &lat, int weight, double tol)
{
    if (weight < 4 || weight % 2 != 0) {
        throw DomainError("direct lattice sums need an even weight >= 4");
    }
    const double w1 = lat.omega1();
    const complex tau = lat.tau();
    auto term = [&](int m, int n) -> complex {
        if (m == 0 && n == 0) {
            return 0.0;
        }
        const complex inv2 = 1.0 / std::pow(w1 * (static_cast<double>(m) + static_cast<double>(n) * tau), 2);
        complex out = inv2;
        for (int p = 2; p < weight; p += 2) {
            out *= inv2;
        }
        return out;
    };
    const ShellSumResult r = shell_sum(term, tol);
    return {r.value, Method::series, r.radius, r.err_estimate};
}

SumResult s4(const LatticeTau &lat, double tol)
{
    return eisenstein_weight_sum(lat, 4, tol);
}

double s2_closed(const VerticalLinePoint &p)
{
    const double ax = nonzero_abs(p.x);
    const Closed c = closed_data(ax);
    if (p.line == Line::imag_axis) {
        return p.sign() * (4.0 / 3.0) * c.Kp * (3.0 * c.E + (c.k2 - 2.0) * c.K);
    }
    return p.sign() * 2.0 * c.Kp * (2.0 * c.E + (4.0 * c.k2 - 5.0) / 3.0 * c.K);
}

double t2_closed(const VerticalLinePoint &p)
{
    const double ax = nonzero_abs(p.x);
    const Closed c = closed_data(ax);
    const double two_over_pi = 2.0 / pi;
    if (p.line == Line::imag_axis) {
        const double first = (1.0 - two_over_pi * c.Kp * c.E) * (3.0 * c.E + (c.k2 - 2.0) * c.K);
        const double second = two_over_pi * c.Kp * c.K * (c.kp2 * (c.K - c.E) - c.E);
        return p.sign() * (4.0 / 3.0) * c.Kp * (first - second);
    }
    const double a = 6.0 * c.E + c.K * (4.0 * c.k2 - 5.0);
    const double first = a * (1.0 - two_over_pi * c.Kp * (c.E - c.kp2 * c.K));
    const double second
        = two_over_pi * c.Kp * c.K * ((1.0 - 2.0 * c.k2) * c.E + (4.0 * c.k2 - 1.0) * c.kp2 * c.K);
    return p.sign() * (2.0 / 3.0) * c.Kp * (first - second);
}

SumResult s2_on_line(const VerticalLinePoint &p, double tol)
{
    const double ax = nonzero_abs(p.x);
    const double s = p.sign();
    if (p.imag_tau() < 0.3) {
        const VerticalLinePoint recip{1.0 / ax, p.line};
        const SumResult r = s2_series(LatticeTau(recip.tau()), tol);
        return {s * (2.0 * pi - r.value), Method::functional_eq, r.terms_used, r.err_estimate};
    }
    SumResult r = s2_series(LatticeTau(p.tau()), tol);
    r.value *= s;
    return r;
}

SumResult t2_on_line(const VerticalLinePoint &p, double tol)
{
    const double ax = nonzero_abs(p.x);
    const double s = p.sign();
    // The half lines are summed directly; only the imaginary axis has a
    // verified reciprocal relation for T2 among the ones used here.
    if (p.line == Line::imag_axis && ax < 0.3) {
        SumResult r = t2_series(LatticeTau(complex(0.0, 1.0 / ax)), tol);
        return {s * r.value, Method::functional_eq, r.terms_used, r.err_estimate};
    }
    SumResult r = t2_series(LatticeTau(p.tau()), tol);
    r.value *= s;
    return r;
}

HalfLineT2Forms half_line_t2_forms(double x, double tol)
{
    if (!(x > 0.0)) {
        throw DomainError("half-line relation needs x > 0");
    }
    const complex s2h = s2_series(LatticeTau(complex(0.5, 0.5 * x)), tol).value;
    const complex s2i = s2_series(LatticeTau(complex(0.0, x)), tol).value;
    const double tail = (2.0 * pi * pi / 3.0) * (x - 1.0 / x);
    const elliptic::EllipticModulus m = elliptic::modulus_from_ratio(x);
    const double K = elliptic::ellip_k(m);
    const double k2 = m.k() * m.k();
    return {(4.0 * (s2h - s2i)).real() + tail, (4.0 / 3.0) * (4.0 * k2 - 2.0) * K + tail};
}

FunctionalResiduals verify_functional_equations(double x, double tol)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("functional equations are checked at x > 0");
    }
    const double xi = 1.0 / x;
    auto s2 = [tol](complex tau) { return s2_series(LatticeTau(tau), tol).value; };
    auto t2 = [tol](complex tau) { return t2_series(LatticeTau(tau), tol).value; };
    const complex i(0.0, 1.0);
    const double two_pi = 2.0 * pi;

    FunctionalResiduals r{};
    const complex s2_ix = s2(i * x);
    r.s2_imag = std::abs(s2_ix + s2(i * xi) - two_pi);

    double s2_half = 0.0;
    double t2_half = 0.0;
    double t2_sym = 0.0;
    const double tail = (2.0 * pi * pi / 3.0) * (x - xi);
    for (const double sign : {1.0, -1.0}) {
        const complex a = s2((sign + i * x) / 2.0);
        const complex same = s2((sign + i * xi) / 2.0);
        const complex flipped = s2((-sign + i * xi) / 2.0);
        s2_half = std::max({s2_half, std::abs(a + same - two_pi), std::abs(a + flipped - two_pi)});

        const complex t_diff = t2((sign + i * x) / 2.0) - t2((sign + i * xi) / 2.0);
        const complex rhs = 4.0 * (a - s2_ix) + tail;
        t2_half = std::max(t2_half, std::abs(t_diff - rhs));
        t2_sym = std::max(t2_sym, std::abs(t_diff));
    }
    r.s2_half = s2_half;
    r.t2_imag = std::abs(t2(i * x) - t2(i * xi));
    r.t2_half = t2_half;
    const HalfLineT2Forms forms = half_line_t2_forms(x, tol);
    r.t2_half_forms_gap = std::abs(forms.via_s2 - forms.via_moduli);
    r.t2_half_symmetry = t2_sym;
    return r;
}

namespace
{

// sigma(n) for n < size, built with a linear sieve. Entries are kept as the
// divisor sum of the smallest-prime power part so multiplicativity can be used.
std::vector<std::uint64_t> build_sigma(std::size_t size)
{
    std::vector<std::uint64_t> sigma(size, 0);
    std::vector<std::uint64_t> power(size, 0);
    std::vector<std::uint64_t> power_sum(size, 0);
    std::vector<std::uint32_t> primes;
    std::vector<std::uint32_t> least(size, 0);
    if (size > 1) {
        sigma[1] = 1;
    }
    for (std::size_t i = 2; i < size; ++i) {
        if (least[i] == 0) {
            least[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
            power[i] = i;
            power_sum[i] = 1 + i;
            sigma[i] = 1 + i;
        }
        for (const std::uint32_t p : primes) {
            const std::size_t ip = i * p;
            if (p > least[i] || ip >= size) {
                break;
            }
            least[ip] = p;
            if (p == least[i]) {
                power[ip] = power[i] * p;
                power_sum[ip] = power_sum[i] + power[ip];
                sigma[ip] = sigma[i] / power_sum[i] * power_sum[ip];
            } else {
                power[ip] = p;
                power_sum[ip] = 1 + p;
                sigma[ip] = sigma[i] * (1 + p);
            }
        }
    }
    return sigma;
}

class SigmaCache
{
public:
    std::shared_ptr<const std::vector<std::uint64_t>> at_least(std::size_t size)
    {
        std::lock_guard lock(m_mutex);
        if (!m_table || m_table->size() < size) {
            std::size_t target = m_table ? m_table->size() : 1024;
            while (target < size) {
                target *= 2;
            }
            m_table = std::make_shared<const std::vector<std::uint64_t>>(build_sigma(target));
        }
        return m_table;
    }

private:
    std::mutex m_mutex;
    std::shared_ptr<const std::vector<std::uint64_t>> m_table;
};

SigmaCache &sigma_cache()
{
    static SigmaCache cache;
    return cache;
}

constexpr std::size_t max_sigma_terms = 1000000;

} // namespace

std::uint64_t divisor_sigma(std::size_t n)
{
    if (n == 0) {
        throw DomainError("sigma(n) needs n >= 1");
    }
    return (*sigma_cache().at_least(n + 1))[n];
}

double sigma_exp_series(double x, double scale)
{
    if (!(x > 0.0) || !(scale > 0.0) || !(x * scale >= 0.05)) {
        throw DomainError("divisor series needs x * scale >= 0.05");
    }
    const double a = scale * pi * x;
    // the terms are dominated by e^{-a m} up to a slowly growing factor
    std::size_t estimate = static_cast<std::size_t>(60.0 / a) + 64;
    estimate = std::min(estimate, max_sigma_terms);
    auto table = sigma_cache().at_least(estimate + 1);
    double sum = 0.0;
    int below = 0;
    for (std::size_t m = 1; m <= max_sigma_terms; ++m) {
        if (m >= table->size()) {
            table = sigma_cache().at_least(m + 1);
        }
        const double t = static_cast<double>((*table)[m]) * std::exp(-a * static_cast<double>(m));
        sum += t;
        below = t < 1e-17 * std::max(1.0, sum) ? below + 1 : 0;
        if (below == 3) {
            return sum;
        }
    }
    throw ConvergenceError("divisor series did not converge");
}

double nasim_residual(double x)
{
    const double lhs = sigma_exp_series(x, 2.0) + sigma_exp_series(1.0 / x, 2.0) / (x * x);
    const double rhs = (1.0 + 1.0 / (x * x)) / 24.0 - 1.0 / (4.0 * pi * x);
    return std::abs(lhs - rhs);
}

double sigma_s2_relation_residual(double x, double tol)
{
    const double lhs = x * sigma_exp_series(x, 2.0);
    const double s2 = s2_series(LatticeTau(complex(0.0, x)), tol).value.real();
    return std::abs(lhs - (x / 24.0 - s2 / (8.0 * pi * pi)));
}

double nasim_second_residual(double x)
{
    const double lhs = x * (2.0 * sigma_exp_series(x, 2.0) - sigma_exp_series(x, 1.0));
    const double inv = 1.0 / x;
    const double rhs = 2.0 * inv * (2.0 * sigma_exp_series(inv, 4.0) - sigma_exp_series(inv, 2.0))
                       + x / 24.0 - inv / 12.0;
    return std::abs(lhs - rhs);
}

namespace
{

std::array<ConstantEntry, 8> build_constants()
{
    const double g14 = std::tgamma(0.25);
    const double g18 = std::tgamma(0.125);
    const double g38 = std::tgamma(0.375);
    const double g13 = std::tgamma(1.0 / 3.0);
    const double r2 = std::sqrt(2.0);
    const double r3 = std::sqrt(3.0);
    const double c23 = std::cbrt(4.0);
    const double pi3 = pi * pi * pi;

    const double g14_4 = std::pow(g14, 4);
    const double g14_8 = g14_4 * g14_4;
    const double g18_38_2 = g18 * g18 * g38 * g38;
    const double g18_38_4 = g18_38_2 * g18_38_2;
    const double g13_6 = std::pow(g13, 6);

    const double half_pi = pi / 2.0;
    return {{
        {"i", {1.0, Line::imag_axis}, pi, half_pi + g14_8 / (384.0 * pi3)},
        {"(1+i)/2", {1.0, Line::re_plus_half}, pi, half_pi - g14_8 / (384.0 * pi3)},
        {"i*sqrt(2)", {r2, Line::imag_axis}, pi + g18_38_2 / (48.0 * pi * r2),
         half_pi + g18_38_4 / (1024.0 * pi3)},
        {"(1+i*sqrt(2))/2", {r2, Line::re_plus_half}, pi + (2.0 * r2 - 3.0) * g18_38_2 / (96.0 * pi),
         half_pi - g18_38_4 * (r2 - 1.0) / (1024.0 * pi3)},
        {"i*sqrt(3)", {r3, Line::imag_axis}, pi + r3 * g13_6 / (16.0 * pi * pi * c23),
         half_pi + 3.0 * c23 * g13_6 * g13_6 / (512.0 * pi3 * pi * pi)},
        {"(1+i*sqrt(3))/2", {r3, Line::re_plus_half}, pi, half_pi},
        {"2i", {2.0, Line::imag_axis}, pi + g14_4 / (16.0 * pi), half_pi + g14_8 / (192.0 * pi3)},
        {"1/2+i", {2.0, Line::re_plus_half}, pi + (3.0 - 2.0 * r2) * g14_4 / (32.0 * pi),
         half_pi + g14_8 * (5.0 - 3.0 * r2) / (768.0 * pi3)},
    }};
}

} // namespace

const std::array<ConstantEntry, 8> &known_constants()
{
    static const std::array<ConstantEntry, 8> table = build_constants();
    return table;
}

} // namespace latsum::lattice
