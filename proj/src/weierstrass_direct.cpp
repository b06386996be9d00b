#include <cmath>

#include "latsum/errors.hpp"
#include "latsum/shell_sum.hpp"
#include "latsum/weierstrass.hpp"

namespace latsum::weierstrass::direct
{

namespace
{

void guard(const LatticeTau &lat, complex z)
{
    const auto c = lat.center(z);
    if (std::abs(c.t1) < 1e-12 && std::abs(c.t2) < 1e-12) {
        throw PoleError("evaluation point lies on a lattice point");
    }
}

template <typename Term>
complex lattice_sum(const LatticeTau &lat, Term &&term, double tol)
{
    const double w1 = lat.omega1();
    const complex w2 = lat.omega2();
    auto wrapped = [&](int m, int n) { return term(static_cast<double>(m) * w1 + static_cast<double>(n) * w2, m == 0 && n == 0); };
    return shell_sum(wrapped, tol, true).value;
}

} // namespace

complex wp(const LatticeTau &lat, complex z, double tol)
{
    guard(lat, z);
    const complex zc = lat.center(z).z;
    return lattice_sum(
        lat,
        [zc](complex w, bool origin) {
            const complex d = zc - w;
            return origin ? 1.0 / (d * d) : 1.0 / (d * d) - 1.0 / (w * w);
        },
        tol);
}

complex wp_prime(const LatticeTau &lat, complex z, double tol)
{
    guard(lat, z);
    const complex zc = lat.center(z).z;
    return lattice_sum(
        lat,
        [zc](complex w, bool) {
            const complex d = zc - w;
            return -2.0 / (d * d * d);
        },
        tol);
}

complex wp_second(const LatticeTau &lat, complex z, double tol)
{
    guard(lat, z);
    const complex zc = lat.center(z).z;
    return lattice_sum(
        lat,
        [zc](complex w, bool) {
            const complex d = zc - w;
            const complex d2 = d * d;
            return 6.0 / (d2 * d2);
        },
        tol);
}

complex zeta(const LatticeTau &lat, complex z, double tol)
{
    guard(lat, z);
    return lattice_sum(
        lat,
        [z](complex w, bool origin) {
            if (origin) {
                return 1.0 / z;
            }
            const complex iw = 1.0 / w;
            return 1.0 / (z - w) + iw + z * iw * iw;
        },
        tol);
}

complex natanzon_prime(const LatticeTau &lat, complex z, double tol)
{
    guard(lat, z);
    return lattice_sum(
        lat,
        [z](complex w, bool origin) -> complex {
            if (origin) {
                return 0.0;
            }
            const complex d = z - w;
            return -2.0 * (std::conj(w) / (d * d * d) + std::conj(w) / (w * w * w));
        },
        tol);
}

} // namespace latsum::weierstrass::direct
