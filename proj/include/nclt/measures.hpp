#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nclt/series.hpp"

namespace nclt {

inline constexpr double pi = 3.14159265358979323846;

// Atoms closer than this are merged on construction.
inline constexpr double atom_merge_tolerance = 1e-10;
inline constexpr double weight_sum_tolerance = 1e-12;

// Principal angle in (-pi, pi].
double canonical_angle(double theta);

// z^n for integer n >= 0; positive reals go through std::pow so results match
// closed forms bit for bit.
cplx int_pow(cplx z, std::uint64_t n);

// e^{i p angle}, exact for the real points 1 and -1.
cplx unit_power(double angle, int p);

struct CircleAtom {
    double angle;  // in (-pi, pi]
    double weight; // positive
    cplx point() const { return unit_power(angle, 1); }
    friend bool operator==(const CircleAtom&, const CircleAtom&) = default;
};

struct LineAtom {
    double position;
    double weight;
    friend bool operator==(const LineAtom&, const LineAtom&) = default;
};

// Probability measure on the unit circle: finitely atomic, or Haar measure.
class CircleMeasure {
public:
    // Canonicalizes angles, merges near-coincident atoms, and sorts by angle.
    // Throws invalid_measure on non-positive weights or total mass != 1.
    static CircleMeasure atomic(std::vector<CircleAtom> atoms);
    static CircleMeasure point(double angle) { return atomic({{angle, 1.0}}); }
    static CircleMeasure haar() { return CircleMeasure(); }

    bool is_haar() const noexcept { return haar_; }
    std::span<const CircleAtom> atoms() const noexcept { return atoms_; }

    friend bool operator==(const CircleMeasure&, const CircleMeasure&) = default;

private:
    CircleMeasure() = default;
    bool haar_ = true;
    std::vector<CircleAtom> atoms_;
};

// Finitely atomic probability measure on the real line, atoms sorted ascending.
class LineMeasure {
public:
    static LineMeasure atomic(std::vector<LineAtom> atoms);
    static LineMeasure point(double x) { return atomic({{x, 1.0}}); }

    std::span<const LineAtom> atoms() const noexcept { return atoms_; }
    double mean() const;
    double cdf(double x) const;

    friend bool operator==(const LineMeasure&, const LineMeasure&) = default;

private:
    std::vector<LineAtom> atoms_;
};

// Finite positive atomic measure on the circle (no normalization); the sigma
// of a Levy-Khintchine style pair. Atoms with zero mass are dropped.
class PositiveCircleMeasure {
public:
    PositiveCircleMeasure() = default;
    explicit PositiveCircleMeasure(std::vector<CircleAtom> atoms);

    std::span<const CircleAtom> atoms() const noexcept { return atoms_; }
    double total_mass() const;
    cplx fourier(int p) const;
    bool empty() const noexcept { return atoms_.empty(); }

private:
    std::vector<CircleAtom> atoms_;
};

class PositiveLineMeasure {
public:
    PositiveLineMeasure() = default;
    explicit PositiveLineMeasure(std::vector<LineAtom> atoms);

    std::span<const LineAtom> atoms() const noexcept { return atoms_; }
    double total_mass() const;
    bool empty() const noexcept { return atoms_.empty(); }

private:
    std::vector<LineAtom> atoms_;
};

// Fourier coefficients m_0..m_P of a measure on the circle; m_{-p} = conj(m_p).
class MomentList {
public:
    explicit MomentList(std::vector<cplx> values); // values[0] must be 1
    static MomentList haar(std::size_t order);

    std::size_t order() const noexcept { return values_.size() - 1; }
    cplx operator()(int p) const;
    std::span<const cplx> values() const noexcept { return values_; }
    MomentList truncated(std::size_t order) const;

private:
    std::vector<cplx> values_;
};

cplx fourier(const CircleMeasure& mu, int p);
MomentList moments(const CircleMeasure& mu, std::size_t order);

// Raw moments integral x^j d nu for j = 0..order.
std::vector<double> line_moments(const LineMeasure& nu, std::size_t order);

// max_{1<=p<=P} |a_p - b_p|
double moment_distance(const MomentList& a, const MomentList& b, std::size_t order);

// Exact Levy distance between two step distribution functions.
double levy_distance(const LineMeasure& a, const LineMeasure& b);

// d mu'(zeta) = d mu(lambda zeta): angles move by -arg(lambda).
CircleMeasure rotate(const CircleMeasure& mu, cplx lambda);
// d nu'(t) = d nu(t + a): positions move by -a.
LineMeasure shift(const LineMeasure& nu, double a);

} // namespace nclt
