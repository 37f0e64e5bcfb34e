#include "nclt/infdiv.hpp"

#include <cmath>

#include "nclt/error.hpp"

namespace nclt {

CircleGeneratingPair::CircleGeneratingPair(cplx g, PositiveCircleMeasure s) : gamma(g), sigma(std::move(s))
{
    if (std::abs(std::abs(gamma) - 1.0) > 1e-12)
        throw error(errc::bad_params, "gamma must lie on the unit circle");
}

namespace {

void check_disk(cplx z)
{
    if (!(std::abs(z) <= max_disk_radius))
        throw error(errc::domain_error, "circle transforms are evaluated on |z| <= 0.9");
}

cplx herglotz(const PositiveCircleMeasure& sigma, cplx z)
{
    cplx s = 0.0;
    for (const auto& a : sigma.atoms()) {
        const cplx zeta = a.point();
        s += a.weight * (1.0 + zeta * z) / (1.0 - zeta * z);
    }
    return s;
}

// (1 + zeta z)/(1 - zeta z) = 1 + 2 sum_{p>=1} zeta^p z^p, integrated against sigma.
Series herglotz_series(const PositiveCircleMeasure& sigma, std::size_t order)
{
    Series h(order);
    h[0] = sigma.total_mass();
    for (std::size_t p = 1; p <= order; ++p)
        h[p] = 2.0 * sigma.fourier(static_cast<int>(p));
    return h;
}

} // namespace

cplx boolean_b(const CircleGeneratingPair& p, cplx z)
{
    check_disk(z);
    return p.gamma * std::exp(-herglotz(p.sigma, z));
}

cplx free_sigma(const CircleGeneratingPair& p, cplx z)
{
    check_disk(z);
    return std::conj(p.gamma) * std::exp(herglotz(p.sigma, z));
}

Series boolean_b_series(const CircleGeneratingPair& p, std::size_t order)
{
    return exp(-herglotz_series(p.sigma, order)) * p.gamma;
}

Series free_sigma_series(const CircleGeneratingPair& p, std::size_t order)
{
    return exp(herglotz_series(p.sigma, order)) * std::conj(p.gamma);
}

cplx nevanlinna_e(const LineGeneratingPair& p, cplx z)
{
    if (!(z.imag() > 0.0))
        throw error(errc::domain_error, "Nevanlinna form needs Im z > 0");
    cplx s = p.gamma;
    for (const auto& a : p.sigma.atoms())
        s += a.weight * (1.0 + a.position * z) / (z - a.position);
    return s;
}

EFraction nevanlinna_fraction(const LineGeneratingPair& p)
{
    // (1 + t z)/(z - t) = t + (1 + t^2)/(z - t)
    EFraction e;
    e.constant = p.gamma;
    for (const auto& a : p.sigma.atoms()) {
        e.constant += a.weight * a.position;
        e.terms.push_back({a.position, a.weight * (1.0 + a.position * a.position)});
    }
    return e;
}

TailSeries free_phi_tail(const LineGeneratingPair& p, std::size_t order)
{
    // 1/(z - t) = sum_k t^k z^{-(k+1)}
    const EFraction e = nevanlinna_fraction(p);
    Series s(order);
    s[0] = e.constant;
    for (const auto& term : e.terms) {
        double tk = 1.0;
        for (std::size_t k = 1; k <= order; ++k) {
            s[k] += term.residue * tk;
            tk *= term.pole;
        }
    }
    return TailSeries(std::move(s));
}

double classical_kernel_at_one(int k) { return -static_cast<double>(k) * k; }

cplx classical_kernel(double angle, int k)
{
    if (angle == 0.0)
        return classical_kernel_at_one(k);
    // Half-angle forms keep the 0/0 cancellation near zeta = 1 accurate.
    const double s_half = std::sin(0.5 * angle);
    const double denom = 2.0 * s_half * s_half;
    const double sk = std::sin(0.5 * k * angle);
    const double re = -2.0 * sk * sk;
    const double im = std::sin(k * angle) - k * std::sin(angle);
    return cplx(re, im) / denom;
}

cplx classical_fourier(const CircleGeneratingPair& p, int k)
{
    cplx s = 0.0;
    for (const auto& a : p.sigma.atoms())
        s += a.weight * classical_kernel(a.angle, k);
    return std::polar(1.0, k * std::arg(p.gamma)) * std::exp(s);
}

cplx levy_khintchine_kernel(double x, double t)
{
    if (x == 0.0)
        return -0.5 * t * t;
    const double x2 = x * x;
    const double sh = std::sin(0.5 * t * x);
    const double re = -2.0 * sh * sh;
    const double im = std::sin(t * x) - t * x / (1.0 + x2);
    return cplx(re, im) * ((1.0 + x2) / x2);
}

cplx classical_characteristic(const LineGeneratingPair& p, double t)
{
    cplx s(0.0, p.gamma * t);
    for (const auto& a : p.sigma.atoms())
        s += a.weight * levy_khintchine_kernel(a.position, t);
    return std::exp(s);
}

cplx wrapped_normal_fourier(double a, double t, int k)
{
    if (!(t > 0.0))
        throw error(errc::bad_params, "variance must be positive");
    return std::exp(cplx(-0.5 * t * k * k, a * k));
}

CircleGeneratingPair boolean_normal(double t)
{
    if (!(t > 0.0))
        throw error(errc::bad_params, "t must be positive");
    return {1.0, PositiveCircleMeasure({{0.0, 0.5 * t}})};
}

CircleGeneratingPair boolean_poisson(double t, cplx lambda)
{
    if (!(t > 0.0))
        throw error(errc::bad_params, "t must be positive");
    const double angle = std::arg(lambda);
    if (angle == 0.0)
        return {1.0, PositiveCircleMeasure()};
    const double s_half = std::sin(0.5 * angle);
    return {std::polar(1.0, t * std::sin(angle)), PositiveCircleMeasure({{angle, t * 2.0 * s_half * s_half}})};
}

CircleGeneratingPair nth_root(const CircleGeneratingPair& p, std::uint64_t n)
{
    std::vector<CircleAtom> atoms(p.sigma.atoms().begin(), p.sigma.atoms().end());
    for (auto& a : atoms)
        a.weight /= static_cast<double>(n);
    return {std::polar(1.0, std::arg(p.gamma) / static_cast<double>(n)), PositiveCircleMeasure(std::move(atoms))};
}

} // namespace nclt
