#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nclt/convolve.hpp"
#include "nclt/measures.hpp"

namespace nclt {

// Row n of a triangular array on the circle: k_n measures (grouped by
// multiplicity) and the rotation lambda_n.
struct CircleRow {
    std::uint64_t n = 0;
    std::vector<CircleFactor> entries;
    cplx lambda = 1.0;

    std::uint64_t size() const; // k_n
};

struct CircleArray {
    std::vector<CircleRow> rows; // ordered by strictly increasing n
    double tau = 1.0;            // in (0, pi)
};

struct LineRow {
    std::uint64_t n = 0;
    std::vector<LineFactor> entries;
    double shift = 0.0; // c_n
};

struct LineArray {
    std::vector<LineRow> rows;
};

// Throws bad_params on a bad tau, unordered rows or Haar entries.
void validate(const CircleArray& array);
void validate(const LineArray& array);

// max_k mu_k({|zeta - 1| >= eps})
double infinitesimal_sup(std::span<const CircleFactor> row, double eps);
// max_k nu_k({|t| >= eps})
double infinitesimal_sup(std::span<const LineFactor> row, double eps);

// b = exp(i int_{|arg zeta| < tau} arg zeta dmu); the boundary |arg| = tau is excluded.
cplx centering_rotation(const CircleMeasure& mu, double tau);
CircleMeasure center(const CircleMeasure& mu, double tau);

// a = int_{|t| < 1} t dnu; atoms at exactly +-1 are excluded.
double centering_shift(const LineMeasure& nu);
LineMeasure center(const LineMeasure& nu);

// h(z) = -i int Im zeta dmu + int (1 + zeta z)/(1 - zeta z) (1 - Re zeta) dmu for
// a centered measure, |z| <= 0.9.
cplx h_function(const CircleMeasure& centered, cplx z);

// f(z) = int t z / (z - t) dnu for a centered measure, Im z > 0.
cplx f_function(const LineMeasure& centered, cplx z);

// b(y) = int_{|t| >= 1} [a + (t - a) y^2 / (y^2 + (t - a)^2)] dnu, y >= 1.
double b_function(const LineMeasure& nu, double a, double y);

struct CircleAccumulators {
    PositiveCircleMeasure sigma; // sum_k (1 - Re zeta) dmu_k centered
    double phase = 0.0;          // arg lambda + sum arg b_k + sum int Im zeta dmu_k centered
    cplx gamma = 1.0;            // exp(i phase)
};

CircleAccumulators accumulate(const CircleRow& row, double tau);

struct LineAccumulators {
    PositiveLineMeasure sigma; // sum_k t^2/(1+t^2) dnu_k centered
    double gamma = 0.0;        // c + sum_k [a_k + int t/(1+t^2) dnu_k centered]
};

LineAccumulators accumulate(const LineRow& row);

// Polar grid of `rings` radii up to `radius` (plus the origin) times `spokes` angles.
std::vector<cplx> disk_grid(double radius, int rings = 4, int spokes = 16);

// max over k and grid of |psi_k(z) - z/(1-z)|; grid inside |z| <= 0.5.
double psi_uniformity(std::span<const CircleFactor> row, std::span<const cplx> grid);

// max_k |arg b_k|
double max_centering_angle(std::span<const CircleFactor> row, double tau);

// max over k and grid of |Im h_k| / max(Re h_k, 1e-300).
double h_ratio(std::span<const CircleFactor> row, double tau, std::span<const cplx> grid);

// max over k of |Re f_k(iy)| / |Im f_k(iy)| (0 when f_k vanishes).
double f_ratio(std::span<const LineFactor> row, double y);

// sup over grid of |lambda prod B_k(z) - exp(i arg lambda + i sum arg b_k - sum h_k(z))|.
double product_vs_h_gap(const CircleRow& row, double tau, std::span<const cplx> grid);

} // namespace nclt
