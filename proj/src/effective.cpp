#include "latsum/effective.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "latsum/errors.hpp"

namespace latsum::effective
{

namespace
{
constexpr double pi = std::numbers::pi;
}

void CompositeParams::validate() const
{
    if (!(std::abs(rho) <= 1.0)) {
        throw DomainError("contrast parameter must lie in [-1, 1]");
    }
    if (!(f >= 0.0 && f < 1.0)) {
        throw DomainError("volume fraction must lie in [0, 1)");
    }
    if (!(mu > 0.0) || !(mu1 > 0.0)) {
        throw DomainError("shear moduli must be positive");
    }
    if (!std::isfinite(kappa) || !std::isfinite(kappa1)) {
        throw DomainError("Muskhelishvili constants must be finite");
    }
}

double kappa_from_poisson(double nu)
{
    if (!(nu > -1.0 && nu <= 0.5)) {
        throw DomainError("Poisson ratio must lie in (-1, 1/2], got " + std::to_string(nu));
    }
    return 3.0 - 4.0 * nu;
}

double contrast(double lambda, double lambda1)
{
    if (!(lambda > 0.0) || !(lambda1 >= 0.0) || !std::isfinite(lambda1)) {
        throw DomainError("conductivities must be positive");
    }
    return (lambda1 - lambda) / (lambda1 + lambda);
}

ConductivityTensor effective_conductivity(const CompositeParams &p, complex e2)
{
    p.validate();
    const double x = p.rho * p.f;
    const double base = 1.0 + 2.0 * x;
    const complex a = base + 2.0 * x * x * e2 / pi;
    const complex b = base + 2.0 * x * x * (2.0 - e2 / pi);
    return {a.real(), b.real(), -a.imag(), std::abs(x) > truncation_warning};
}

double clausius_mossotti(const CompositeParams &p)
{
    p.validate();
    const double x = p.rho * p.f;
    if (x == 1.0) {
        throw DomainError("Clausius-Mossotti formula is singular at rho f = 1");
    }
    return (1.0 + x) / (1.0 - x);
}

double effective_shear(const CompositeParams &p, complex g2)
{
    p.validate();
    const double denom = p.kappa * p.mu1 + p.mu;
    if (std::abs(denom) <= 1e-300) {
        throw DomainError("kappa mu1 + mu vanishes");
    }
    const double c = (p.mu1 - p.mu) / denom;
    return 1.0 + (1.0 + p.kappa) * (c * p.f + c * c * (p.kappa - 2.0 * g2.real() / pi) * p.f * p.f);
}

} // namespace latsum::effective
