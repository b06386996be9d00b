#ifndef LATSUM_SRC_TRIG_HPP
#define LATSUM_SRC_TRIG_HPP

#include <complex>
#include <numbers>

// Trigonometric kernels at pi*v in exponential form. With s = sign(Im v) and
// p = exp(2 pi i s v) we have |p| <= 1, so nothing overflows however large
// |Im v| gets:
//   csc^2(pi v)          = -4 p / (1-p)^2
//   cot(pi v)            = -i s (1+p) / (1-p)
//   cos(pi v)/sin^3(pi v) = 4 i s p (1+p) / (1-p)^3
namespace latsum::detail
{

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct TrigRow {
    cplx csc2;
    cplx cot;
    cplx cos_sin3;
};

inline TrigRow trig_from_p(cplx p, double s)
{
    const cplx one_minus = 1.0 - p;
    const cplx inv = 1.0 / one_minus;
    const cplx inv2 = inv * inv;
    const cplx is(0.0, s);
    return {-4.0 * p * inv2, -is * (1.0 + p) * inv, 4.0 * is * p * (1.0 + p) * inv2 * inv};
}

inline double im_sign(cplx v)
{
    return v.imag() < 0.0 ? -1.0 : 1.0;
}

inline cplx nome_power(cplx v, double s)
{
    return std::exp(cplx(0.0, two_pi * s) * v);
}

inline TrigRow trig_row(cplx v)
{
    const double s = im_sign(v);
    return trig_from_p(nome_power(v, s), s);
}

inline cplx csc2_pi(cplx v)
{
    const double s = im_sign(v);
    const cplx p = nome_power(v, s);
    const cplx d = 1.0 - p;
    return -4.0 * p / (d * d);
}

} // namespace latsum::detail

#endif
