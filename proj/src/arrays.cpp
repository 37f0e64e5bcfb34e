#include "nclt/arrays.hpp"

#include <algorithm>
#include <cmath>

#include "nclt/error.hpp"
#include "nclt/infdiv.hpp"
#include "nclt/transforms.hpp"

namespace nclt {

std::uint64_t CircleRow::size() const
{
    std::uint64_t k = 0;
    for (const auto& e : entries)
        k += e.count;
    return k;
}

void validate(const CircleArray& array)
{
    if (!(array.tau > 0.0 && array.tau < pi))
        throw error(errc::bad_params, "tau must lie in (0, pi)");
    for (std::size_t i = 0; i < array.rows.size(); ++i) {
        if (i > 0 && array.rows[i].n <= array.rows[i - 1].n)
            throw error(errc::bad_params, "array rows must have increasing n");
        for (const auto& e : array.rows[i].entries)
            if (e.measure.is_haar())
                throw error(errc::bad_params, "array rows must be atomic");
        if (std::abs(std::abs(array.rows[i].lambda) - 1.0) > 1e-12)
            throw error(errc::bad_params, "lambda_n must be unimodular");
    }
}

void validate(const LineArray& array)
{
    for (std::size_t i = 1; i < array.rows.size(); ++i)
        if (array.rows[i].n <= array.rows[i - 1].n)
            throw error(errc::bad_params, "array rows must have increasing n");
}

double infinitesimal_sup(std::span<const CircleFactor> row, double eps)
{
    double worst = 0.0;
    for (const auto& e : row) {
        if (e.measure.is_haar())
            return 1.0;
        double mass = 0.0;
        for (const auto& a : e.measure.atoms())
            if (2.0 * std::abs(std::sin(0.5 * a.angle)) >= eps)
                mass += a.weight;
        worst = std::max(worst, mass);
    }
    return worst;
}

double infinitesimal_sup(std::span<const LineFactor> row, double eps)
{
    double worst = 0.0;
    for (const auto& e : row) {
        double mass = 0.0;
        for (const auto& a : e.measure.atoms())
            if (std::abs(a.position) >= eps)
                mass += a.weight;
        worst = std::max(worst, mass);
    }
    return worst;
}

namespace {

double centering_angle(const CircleMeasure& mu, double tau)
{
    double s = 0.0;
    for (const auto& a : mu.atoms())
        if (std::abs(a.angle) < tau)
            s += a.weight * a.angle;
    return s;
}

// 1 - cos(theta) without cancellation.
double one_minus_cos(double theta)
{
    const double s = std::sin(0.5 * theta);
    return 2.0 * s * s;
}

} // namespace

cplx centering_rotation(const CircleMeasure& mu, double tau)
{
    if (mu.is_haar())
        throw error(errc::bad_params, "centering needs an atomic measure");
    return std::polar(1.0, centering_angle(mu, tau));
}

CircleMeasure center(const CircleMeasure& mu, double tau) { return rotate(mu, centering_rotation(mu, tau)); }

double centering_shift(const LineMeasure& nu)
{
    double s = 0.0;
    for (const auto& a : nu.atoms())
        if (std::abs(a.position) < 1.0)
            s += a.weight * a.position;
    return s;
}

LineMeasure center(const LineMeasure& nu)
{
    const double a = centering_shift(nu);
    return a == 0.0 ? nu : shift(nu, a);
}

cplx h_function(const CircleMeasure& centered, cplx z)
{
    if (!(std::abs(z) <= max_disk_radius))
        throw error(errc::domain_error, "h is evaluated on |z| <= 0.9");
    cplx s = 0.0;
    for (const auto& a : centered.atoms()) {
        const cplx zeta = a.point();
        s += cplx(0.0, -a.weight * std::sin(a.angle));
        s += a.weight * one_minus_cos(a.angle) * (1.0 + zeta * z) / (1.0 - zeta * z);
    }
    return s;
}

cplx f_function(const LineMeasure& centered, cplx z)
{
    if (!(z.imag() > 0.0))
        throw error(errc::domain_error, "f is evaluated on Im z > 0");
    cplx s = 0.0;
    for (const auto& a : centered.atoms())
        if (a.position != 0.0)
            s += a.weight * a.position * z / (z - a.position);
    return s;
}

double b_function(const LineMeasure& nu, double a, double y)
{
    if (!(y >= 1.0))
        throw error(errc::domain_error, "b(y) needs y >= 1");
    double s = 0.0;
    for (const auto& at : nu.atoms()) {
        if (std::abs(at.position) < 1.0)
            continue;
        const double d = at.position - a;
        s += at.weight * (a + d * y * y / (y * y + d * d));
    }
    return s;
}

CircleAccumulators accumulate(const CircleRow& row, double tau)
{
    CircleAccumulators acc;
    acc.phase = std::arg(row.lambda);
    std::vector<CircleAtom> sigma;
    for (const auto& e : row.entries) {
        const double count = static_cast<double>(e.count);
        const double b_angle = centering_angle(e.measure, tau);
        acc.phase += count * b_angle;
        const CircleMeasure c = rotate(e.measure, std::polar(1.0, b_angle));
        double im = 0.0;
        for (const auto& a : c.atoms()) {
            im += a.weight * std::sin(a.angle);
            const double w = count * a.weight * one_minus_cos(a.angle);
            if (w > 0.0)
                sigma.push_back({a.angle, w});
        }
        acc.phase += count * im;
    }
    acc.sigma = PositiveCircleMeasure(std::move(sigma));
    acc.gamma = std::polar(1.0, acc.phase);
    return acc;
}

LineAccumulators accumulate(const LineRow& row)
{
    LineAccumulators acc;
    acc.gamma = row.shift;
    std::vector<LineAtom> sigma;
    for (const auto& e : row.entries) {
        const double count = static_cast<double>(e.count);
        const double a = centering_shift(e.measure);
        double drift = a;
        for (const auto& at : e.measure.atoms()) {
            const double t = at.position - a;
            drift += at.weight * t / (1.0 + t * t);
            const double w = count * at.weight * t * t / (1.0 + t * t);
            if (w > 0.0)
                sigma.push_back({t, w});
        }
        acc.gamma += count * drift;
    }
    acc.sigma = PositiveLineMeasure(std::move(sigma));
    return acc;
}

std::vector<cplx> disk_grid(double radius, int rings, int spokes)
{
    std::vector<cplx> g{0.0};
    for (int r = 1; r <= rings; ++r)
        for (int s = 0; s < spokes; ++s)
            g.push_back(std::polar(radius * r / rings, 2.0 * pi * s / spokes));
    return g;
}

double psi_uniformity(std::span<const CircleFactor> row, std::span<const cplx> grid)
{
    double worst = 0.0;
    for (const auto& e : row)
        for (const cplx z : grid)
            worst = std::max(worst, std::abs(psi_b(e.measure, z).psi - z / (1.0 - z)));
    return worst;
}

double max_centering_angle(std::span<const CircleFactor> row, double tau)
{
    double worst = 0.0;
    for (const auto& e : row)
        worst = std::max(worst, std::abs(centering_angle(e.measure, tau)));
    return worst;
}

double h_ratio(std::span<const CircleFactor> row, double tau, std::span<const cplx> grid)
{
    double worst = 0.0;
    for (const auto& e : row) {
        const CircleMeasure c = center(e.measure, tau);
        for (const cplx z : grid) {
            const cplx h = h_function(c, z);
            worst = std::max(worst, std::abs(h.imag()) / std::max(h.real(), 1e-300));
        }
    }
    return worst;
}

double f_ratio(std::span<const LineFactor> row, double y)
{
    double worst = 0.0;
    for (const auto& e : row) {
        const cplx f = f_function(center(e.measure), cplx(0.0, y));
        if (f == cplx{})
            continue;
        worst = std::max(worst, std::abs(f.real()) / std::abs(f.imag()));
    }
    return worst;
}

double product_vs_h_gap(const CircleRow& row, double tau, std::span<const cplx> grid)
{
    double worst = 0.0;
    for (const cplx z : grid) {
        cplx product = row.lambda;
        cplx exponent(0.0, std::arg(row.lambda));
        for (const auto& e : row.entries) {
            const double count = static_cast<double>(e.count);
            product *= int_pow(psi_b(e.measure, z).b, e.count);
            const cplx b = centering_rotation(e.measure, tau);
            exponent += cplx(0.0, count * std::arg(b));
            exponent -= count * h_function(rotate(e.measure, b), z);
        }
        worst = std::max(worst, std::abs(product - std::exp(exponent)));
    }
    return worst;
}

} // namespace nclt
