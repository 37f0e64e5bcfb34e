#pragma once

#include <cstddef>
#include <vector>

#include "nclt/measures.hpp"
#include "nclt/series.hpp"

namespace nclt {

// f(z) = sum_j e_j z^{-j}: the expansion at infinity of E, phi or G.
class TailSeries {
public:
    explicit TailSeries(Series coeffs) : coeffs_(std::move(coeffs)) {}

    std::size_t order() const noexcept { return coeffs_.order(); }
    cplx operator[](std::size_t j) const noexcept { return coeffs_[j]; }
    // The same coefficients read as a power series in w = 1/z.
    const Series& in_reciprocal() const noexcept { return coeffs_; }

    friend TailSeries operator+(const TailSeries& a, const TailSeries& b)
    {
        return TailSeries(a.coeffs_ + b.coeffs_);
    }
    friend TailSeries operator*(double c, const TailSeries& a) { return TailSeries(a.coeffs_ * cplx(c)); }

private:
    Series coeffs_;
};

struct PsiB {
    cplx psi;
    cplx b;
};

// psi(z) = int zeta z / (1 - zeta z) dmu and B(z) = psi / (z (1 + psi)), |z| < 1.
PsiB psi_b(const CircleMeasure& mu, cplx z);

// psi has coefficients m_1, m_2, ... and zero constant term.
Series psi_series(const CircleMeasure& mu, std::size_t order);
Series psi_series(const MomentList& m, std::size_t order);
Series b_series(const CircleMeasure& mu, std::size_t order);
// B from moments m_0..m_{order+1}.
Series b_series(const MomentList& m, std::size_t order);

// Inverts B -> moments through psi = zB / (1 - zB). B == 0 gives Haar moments.
MomentList moments_from_b_series(const Series& b);

struct CauchyTriple {
    cplx g;
    cplx f;
    cplx e;
};

// G, F = 1/G and E = z - F at a point of the upper half plane.
CauchyTriple cauchy_transforms(const LineMeasure& nu, cplx z);

// Tail of G: coefficient of z^{-(j+1)} is the j-th moment.
TailSeries g_tail(const LineMeasure& nu, std::size_t order);
TailSeries g_tail_from_moments(const std::vector<double>& m);
// E = z - 1/G at infinity: e_0 = mean, e_1 = variance, ...
TailSeries e_tail(const LineMeasure& nu, std::size_t order);
// phi(z) = F^{-1}(z) - z at infinity.
TailSeries phi_tail(const LineMeasure& nu, std::size_t order);
TailSeries phi_tail_from_e_tail(const TailSeries& e);

// Rebuilds the moments m_0..m_{order} from a phi tail: invert z + phi to get
// F, then read G = 1/F.
std::vector<cplx> moments_from_phi_tail(const TailSeries& phi);

// m_j = coefficient of z^{-(j+1)} in G.
std::vector<cplx> moments_from_g_tail(const TailSeries& g);

// Sigma(z) = (1/z) psi^{-1}(z / (1 - z)) from circle moments m_0..m_M;
// the result has order min(order, M - 1).
Series sigma_series(const MomentList& m, std::size_t order);

// Inverse of the sigma pipeline: Sigma -> psi -> moments (order Sigma.order()+1).
MomentList moments_from_sigma_series(const Series& sigma);

// Threshold on |m_1| below which Sigma is not defined.
inline constexpr double first_moment_epsilon = 1e-8;

} // namespace nclt
