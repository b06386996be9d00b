#ifndef LATSUM_EFFECTIVE_HPP
#define LATSUM_EFFECTIVE_HPP

#include "latsum/lattice.hpp"

namespace latsum::effective
{

/// Material constants of a two-phase fibrous composite.
/**
 * rho = (lambda1 - lambda)/(lambda1 + lambda) is the conductivity contrast;
 * mu, mu1 are the shear moduli of matrix and fibers and kappa, kappa1 their
 * Muskhelishvili constants. kappa1 is carried for completeness but the f^2
 * shear formula does not depend on it.
 */
struct CompositeParams {
    double rho = 0.0;
    double f = 0.0;
    double mu = 1.0;
    double mu1 = 1.0;
    double kappa = 2.0;
    double kappa1 = 2.0;

    void validate() const;
};

/// kappa = 3 - 4 nu for plane strain, nu in (-1, 1/2].
double kappa_from_poisson(double nu);

/// Contrast parameter from the two conductivities.
double contrast(double lambda, double lambda1);

/// Above this |rho| f the f^2 truncation is flagged as an extrapolation.
inline constexpr double truncation_warning = 0.3;

struct ConductivityTensor {
    double xx;
    double yy;
    double xy;
    bool extrapolated; // |rho| f above truncation_warning
};

/// Effective conductivity over the matrix value, truncated after f^2:
/// (xx - i xy) = 1 + 2 rho f + 2 rho^2 f^2 e2/pi, (yy + i xy) = 1 + 2 rho f + 2 rho^2 f^2 (2 - e2/pi).
ConductivityTensor effective_conductivity(const CompositeParams &p, complex e2);

/// (1 + rho f)/(1 - rho f).
double clausius_mossotti(const CompositeParams &p);

/// mu_e/mu = 1 + (1 + kappa)[c f + c^2 (kappa - 2 Re g2/pi) f^2] with c = (mu1 - mu)/(kappa mu1 + mu).
double effective_shear(const CompositeParams &p, complex g2);

} // namespace latsum::effective

#endif
