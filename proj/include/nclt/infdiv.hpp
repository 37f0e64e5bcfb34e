#pragma once

#include <cstddef>

#include "nclt/convolve.hpp"
#include "nclt/measures.hpp"
#include "nclt/series.hpp"
#include "nclt/transforms.hpp"

namespace nclt {

// (gamma, sigma) with |gamma| = 1 and sigma a finite positive atomic measure on
// the circle. Parameterizes the boolean multiplicative, free multiplicative and
// (through the Fourier formula) classical infinitely divisible laws.
struct CircleGeneratingPair {
    cplx gamma = 1.0;
    PositiveCircleMeasure sigma;

    CircleGeneratingPair() = default;
    CircleGeneratingPair(cplx g, PositiveCircleMeasure s);
};

// (gamma, sigma) on the line for the boolean, free and classical additive laws.
struct LineGeneratingPair {
    double gamma = 0.0;
    PositiveLineMeasure sigma;
};

// Largest radius at which circle transforms are evaluated pointwise.
inline constexpr double max_disk_radius = 0.9;

// B(z) = gamma exp(-int (1 + zeta z)/(1 - zeta z) dsigma)
cplx boolean_b(const CircleGeneratingPair& p, cplx z);

// Sigma(z) = conj(gamma) exp(+int (1 + zeta z)/(1 - zeta z) dsigma), i.e. 1/B(z).
// The conjugate makes the free limit of an array share (gamma, sigma) with its
// boolean limit under Sigma(z) = psi^{-1}(z/(1-z))/z, where Sigma of a point
// mass at lambda is 1/lambda.
cplx free_sigma(const CircleGeneratingPair& p, cplx z);

// Exact Taylor series of the two functions above (exp of the Herglotz series).
Series boolean_b_series(const CircleGeneratingPair& p, std::size_t order);
Series free_sigma_series(const CircleGeneratingPair& p, std::size_t order);

// E(z) = gamma + int (1 + t z)/(z - t) dsigma; the same formula gives phi for
// the free law.
cplx nevanlinna_e(const LineGeneratingPair& p, cplx z);
inline cplx free_phi(const LineGeneratingPair& p, cplx z) { return nevanlinna_e(p, z); }

EFraction nevanlinna_fraction(const LineGeneratingPair& p);
// phi as a tail series, phi_0..phi_order.
TailSeries free_phi_tail(const LineGeneratingPair& p, std::size_t order);

// Fourier coefficient k of the classical law:
// gamma^k exp(int (zeta^k - 1 - i k Im zeta) / (1 - Re zeta) dsigma), with the
// integrand equal to -k^2 at zeta = 1.
cplx classical_fourier(const CircleGeneratingPair& p, int k);
double classical_kernel_at_one(int k);
cplx classical_kernel(double angle, int k);

// exp(i gamma t + int (e^{itx} - 1 - itx/(1+x^2)) (1+x^2)/x^2 dsigma); the
// integrand is -t^2/2 at x = 0.
cplx classical_characteristic(const LineGeneratingPair& p, double t);
cplx levy_khintchine_kernel(double x, double t);

// Fourier coefficient k of the wrapped normal law: exp(i a k - t k^2 / 2).
cplx wrapped_normal_fourier(double a, double t, int k);

// gamma = 1, sigma = (t/2) delta_1.
CircleGeneratingPair boolean_normal(double t);
// gamma = exp(i t Im lambda), sigma = t (1 - Re lambda) delta_lambda; lambda = 1
// gives the point mass at 1.
CircleGeneratingPair boolean_poisson(double t, cplx lambda);

// (gamma^{1/n} principal, sigma / n)
CircleGeneratingPair nth_root(const CircleGeneratingPair& p, std::uint64_t n);

} // namespace nclt
