#ifndef LATSUM_ELLIPTIC_HPP
#define LATSUM_ELLIPTIC_HPP

#include <array>

namespace latsum::elliptic
{

/// Elliptic modulus k in (0,1) together with its complementary modulus k'.
/**
 * Both values are stored because near either endpoint one of them cannot be
 * recovered accurately from the other (k' = sqrt(1 - k^2) loses all relative
 * precision once k is within ~1e-8 of one).
 */
class EllipticModulus
{
public:
    /// Builds from k alone; k' is computed as sqrt((1-k)(1+k)).
    explicit EllipticModulus(double k);

    /// Builds from an independently computed pair; requires k^2 + k'^2 = 1 to a few ulp.
    /// One member may be exactly 1 when the other is too small to show in 1 - x^2.
    static EllipticModulus from_pair(double k, double k_prime);

    double k() const { return m_k; }
    double k_prime() const { return m_kp; }

    /// The modulus with k and k' exchanged.
    EllipticModulus complement() const { return EllipticModulus(m_kp, m_k, 0); }

private:
    EllipticModulus(double k, double kp, int) : m_k(k), m_kp(kp) {}

    double m_k;
    double m_kp;
};

// Complete integrals. The plain-double overloads accept the closed endpoint
// k = 0 (both) and k = 1 (E only).
double ellip_k(double k);
double ellip_k(const EllipticModulus &m);
double ellip_e(double k);
double ellip_e(const EllipticModulus &m);

struct CompleteIntegrals {
    double K;
    double E;
};

/// K and E from a single AGM pass.
CompleteIntegrals complete_integrals(const EllipticModulus &m);

double dK_dk(const EllipticModulus &m);
double dE_dk(const EllipticModulus &m);

/// Derivative of the period ratio x(k) = K(k')/K(k).
double ratio_derivative(const EllipticModulus &m);

/// Inverts x = K(k')/K(k) for k.
EllipticModulus modulus_from_ratio(double x);

/// Singular value data for K(k_r')/K(k_r) = sqrt(r).
struct SingularValueEntry {
    int r;
    double k_r;
    double K_of_k_r;
    double alpha_r;
};

/// Entries for r = 1..4, built from their closed forms.
const std::array<SingularValueEntry, 4> &singular_values();

/// Both printed expressions of the elliptic alpha function at r.
std::array<double, 2> elliptic_alpha_forms(int r);

/// Elliptic alpha function at r in {1,2,3,4}; the two forms are checked against each other.
double elliptic_alpha(int r);

} // namespace latsum::elliptic

#endif
