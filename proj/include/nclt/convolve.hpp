#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nclt/measures.hpp"
#include "nclt/series.hpp"

namespace nclt {

// A factor repeated `count` times; n-fold powers are taken in the transform
// domain (B^n, n E, Sigma^n, n phi, m_p^n), never by repeated convolution.
struct CircleFactor {
    CircleMeasure measure;
    std::uint64_t count = 1;
};

struct LineFactor {
    LineMeasure measure;
    std::uint64_t count = 1;
};

std::vector<CircleFactor> as_factors(std::span<const CircleMeasure> mus);
std::vector<LineFactor> as_factors(std::span<const LineMeasure> nus);

inline constexpr std::size_t default_atom_cap = 1'000'000;

struct BooleanCircleResult {
    Series b;
    MomentList moments;
};

// delta_lambda and the factors under multiplicative boolean convolution:
// B = lambda * prod B_k.
BooleanCircleResult boolean_convolve_circle(std::span<const CircleFactor> factors, cplx lambda,
                                            std::size_t order = default_order);

// Multiplicative free convolution via Sigma = conj(lambda) * prod Sigma_k.
// Every factor needs a nonzero first moment.
MomentList free_convolve_circle(std::span<const CircleFactor> factors, cplx lambda,
                                std::size_t order = default_order);

// Classical convolution on the circle (product of independent unit variables).
CircleMeasure classical_convolve_circle(std::span<const CircleFactor> factors, cplx lambda,
                                        std::size_t atom_cap = default_atom_cap);
MomentList classical_moments_circle(std::span<const CircleFactor> factors, cplx lambda,
                                    std::size_t order = default_order);

// E(z) = constant + sum_i residue_i / (z - pole_i) with positive residues: the
// shape of E for any finitely atomic measure and of the Nevanlinna form with
// atomic sigma.
struct PoleTerm {
    double pole;
    double residue;
};

struct EFraction {
    double constant = 0.0;
    std::vector<PoleTerm> terms;

    cplx operator()(cplx z) const;
};

EFraction e_fraction(const LineMeasure& nu);

// The probability measure whose E transform is `e`: atoms are the real roots of
// z - e(z) (one between consecutive poles and one beyond each end), weights
// 1 / (1 - e'(x)). Throws root_finding_failure if a root cannot be certified.
LineMeasure measure_from_e(const EFraction& e);

// Additive boolean convolution, exact: E_out = c + sum E_k.
LineMeasure boolean_convolve_line(std::span<const LineFactor> factors, double c);

// Additive free convolution at moment level: phi_out = c + sum phi_k.
// Returns m_0..m_order.
std::vector<double> free_convolve_line(std::span<const LineFactor> factors, double c,
                                       std::size_t order = default_order);

LineMeasure classical_convolve_line(std::span<const LineFactor> factors, double c,
                                    std::size_t atom_cap = default_atom_cap);

cplx characteristic_function(const LineMeasure& nu, double t);
// Characteristic function of delta_c * prod nu_k^{*count}.
cplx characteristic_function(std::span<const LineFactor> factors, double c, double t);

} // namespace nclt
