#include "latsum/lattice.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "latsum/errors.hpp"

namespace latsum
{

LatticeTau::LatticeTau(complex tau) : m_tau(tau)
{
    if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
        throw DomainError("lattice parameter needs Im tau > 0, got Im tau = "
                          + std::to_string(tau.imag()));
    }
    m_omega1 = 1.0 / std::sqrt(tau.imag());
    m_omega2 = m_omega1 * tau;
}

std::pair<double, double> LatticeTau::to_cell(complex z) const
{
    const double t2 = z.imag() / m_omega2.imag();
    const double t1 = (z.real() - t2 * m_omega2.real()) / m_omega1;
    return {t1, t2};
}

complex LatticeTau::from_cell(double t1, double t2) const
{
    return t1 * m_omega1 + t2 * m_omega2;
}

complex LatticeTau::reduce(complex z) const
{
    auto [t1, t2] = to_cell(z);
    t1 -= std::floor(t1);
    t2 -= std::floor(t2);
    // floor can leave exactly 1.0 after rounding of tiny negatives
    if (t1 >= 1.0) {
        t1 = 0.0;
    }
    if (t2 >= 1.0) {
        t2 = 0.0;
    }
    return from_cell(t1, t2);
}

LatticeTau::Centered LatticeTau::center(complex z) const
{
    const auto [t1, t2] = to_cell(z);
    const double n = std::floor(t2 + 0.5);
    const double m = std::floor(t1 + 0.5);
    const double c1 = t1 - m;
    const double c2 = t2 - n;
    const complex zc = z - m * m_omega1 - n * m_omega2;
    return {zc, c1, c2, static_cast<long>(m), static_cast<long>(n)};
}

double LatticeTau::distance_to_lattice(complex z) const
{
    const complex zc = center(z).z;
    double best = std::numeric_limits<double>::infinity();
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            best = std::min(best, std::abs(zc + static_cast<double>(i) * m_omega1
                                           + static_cast<double>(j) * m_omega2));
        }
    }
    return best;
}

std::string_view to_string(Line line)
{
    switch (line) {
    case Line::imag_axis:
        return "imag_axis";
    case Line::re_plus_half:
        return "re_plus_half";
    case Line::re_minus_half:
        return "re_minus_half";
    }
    return "unknown";
}

double VerticalLinePoint::imag_tau() const
{
    const double ax = std::abs(x);
    return line == Line::imag_axis ? ax : 0.5 * ax;
}

complex VerticalLinePoint::tau() const
{
    if (x == 0.0 || !std::isfinite(x)) {
        throw DomainError("vertical line point needs finite nonzero x");
    }
    const double ax = std::abs(x);
    switch (line) {
    case Line::imag_axis:
        return {0.0, ax};
    case Line::re_plus_half:
        return {0.5, 0.5 * ax};
    case Line::re_minus_half:
        return {-0.5, 0.5 * ax};
    }
    throw DomainError("unknown line");
}

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::series:
        return "series";
    case Method::q_series:
        return "q_series";
    case Method::closed_form:
        return "closed_form";
    case Method::functional_eq:
        return "functional_eq";
    }
    return "unknown";
}

} // namespace latsum
