#include "nclt/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nclt/error.hpp"
#include "nclt/transforms.hpp"

namespace nclt {

std::vector<CircleFactor> as_factors(std::span<const CircleMeasure> mus)
{
    std::vector<CircleFactor> out;
    for (const auto& m : mus)
        out.push_back({m, 1});
    return out;
}

std::vector<LineFactor> as_factors(std::span<const LineMeasure> nus)
{
    std::vector<LineFactor> out;
    for (const auto& m : nus)
        out.push_back({m, 1});
    return out;
}

// ---------------------------------------------------------------------------
// Circle

BooleanCircleResult boolean_convolve_circle(std::span<const CircleFactor> factors, cplx lambda, std::size_t order)
{
    Series b = Series::constant(lambda, order);
    for (const auto& f : factors)
        b = b * pow(b_series(f.measure, order), f.count);
    return {b, moments_from_b_series(b)};
}

MomentList free_convolve_circle(std::span<const CircleFactor> factors, cplx lambda, std::size_t order)
{
    // Sigma of delta_lambda is the constant 1/lambda.
    Series sigma = Series::constant(1.0 / lambda, order);
    for (const auto& f : factors) {
        if (f.measure.is_haar())
            throw error(errc::zero_first_moment, "Haar measure has no Sigma transform");
        sigma = sigma * pow(sigma_series(moments(f.measure, order + 1), order), f.count);
    }
    return moments_from_sigma_series(sigma).truncated(order);
}

namespace {

template <class Atom>
std::vector<Atom> normalized(std::vector<Atom> atoms)
{
    std::erase_if(atoms, [](const Atom& a) { return !(a.weight > 0.0); });
    double total = 0.0;
    for (const auto& a : atoms)
        total += a.weight;
    for (auto& a : atoms)
        a.weight /= total;
    return atoms;
}

CircleMeasure circle_product(const CircleMeasure& a, const CircleMeasure& b, std::size_t cap)
{
    if (a.is_haar() || b.is_haar())
        return CircleMeasure::haar();
    if (a.atoms().size() * b.atoms().size() > cap)
        throw error(errc::atom_explosion, "classical convolution exceeds the atom cap");
    std::vector<CircleAtom> out;
    out.reserve(a.atoms().size() * b.atoms().size());
    for (const auto& x : a.atoms())
        for (const auto& y : b.atoms())
            out.push_back({x.angle + y.angle, x.weight * y.weight});
    return CircleMeasure::atomic(normalized(std::move(out)));
}

LineMeasure line_sum(const LineMeasure& a, const LineMeasure& b, std::size_t cap)
{
    if (a.atoms().size() * b.atoms().size() > cap)
        throw error(errc::atom_explosion, "classical convolution exceeds the atom cap");
    std::vector<LineAtom> out;
    out.reserve(a.atoms().size() * b.atoms().size());
    for (const auto& x : a.atoms())
        for (const auto& y : b.atoms())
            out.push_back({x.position + y.position, x.weight * y.weight});
    return LineMeasure::atomic(normalized(std::move(out)));
}

template <class M, class Op>
M power_by_squaring(M base, std::uint64_t n, M unit, Op op)
{
    M result = std::move(unit);
    while (n > 0) {
        if (n & 1U)
            result = op(result, base);
        n >>= 1U;
        if (n > 0)
            base = op(base, base);
    }
    return result;
}

} // namespace

CircleMeasure classical_convolve_circle(std::span<const CircleFactor> factors, cplx lambda, std::size_t atom_cap)
{
    auto op = [atom_cap](const CircleMeasure& a, const CircleMeasure& b) { return circle_product(a, b, atom_cap); };
    CircleMeasure acc = CircleMeasure::point(std::arg(lambda));
    for (const auto& f : factors)
        acc = op(acc, power_by_squaring(f.measure, f.count, CircleMeasure::point(0.0), op));
    return acc;
}

MomentList classical_moments_circle(std::span<const CircleFactor> factors, cplx lambda, std::size_t order)
{
    std::vector<cplx> v(order + 1);
    for (std::size_t p = 0; p <= order; ++p) {
        const int ip = static_cast<int>(p);
        cplx m = std::polar(1.0, ip * std::arg(lambda));
        for (const auto& f : factors) {
            const cplx mp = fourier(f.measure, ip);
            m *= int_pow(mp, f.count);
        }
        v[p] = m;
    }
    v[0] = 1.0;
    return MomentList(std::move(v));
}

// ---------------------------------------------------------------------------
// Line

cplx EFraction::operator()(cplx z) const
{
    cplx s = constant;
    for (const auto& t : terms)
        s += t.residue / (z - t.pole);
    return s;
}

namespace {

// Bisection on a function that is increasing on (lo, hi) and changes sign.
template <class F>
double bisect_increasing(F f, double lo, double hi)
{
    for (int it = 0; it < 400; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi)
            break;
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double flo = std::abs(f(lo));
    const double fhi = std::abs(f(hi));
    return flo <= fhi ? lo : hi;
}

} // namespace

EFraction e_fraction(const LineMeasure& nu)
{
    // Poles of E are the zeros of G, one in each gap between consecutive atoms
    // (G decreases from +inf to -inf there). Residue -1/G'(p) > 0.
    EFraction e;
    e.constant = nu.mean();
    const auto atoms = nu.atoms();
    auto g = [&](double x) {
        double s = 0.0;
        for (const auto& a : atoms)
            s += a.weight / (x - a.position);
        return s;
    };
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
        const double p = bisect_increasing([&](double x) { return -g(x); }, atoms[i].position, atoms[i + 1].position);
        double slope = 0.0;
        for (const auto& a : atoms)
            slope += a.weight / ((p - a.position) * (p - a.position));
        e.terms.push_back({p, 1.0 / slope});
    }
    return e;
}

LineMeasure measure_from_e(const EFraction& e)
{
    std::vector<PoleTerm> terms = e.terms;
    std::erase_if(terms, [](const PoleTerm& t) { return t.residue == 0.0; });
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.pole < b.pole; });
    std::vector<PoleTerm> merged;
    for (const auto& t : terms) {
        if (t.residue < 0.0)
            throw error(errc::invalid_measure, "E residues must be positive");
        if (!merged.empty() && t.pole - merged.back().pole < atom_merge_tolerance)
            merged.back().residue += t.residue;
        else
            merged.push_back(t);
    }

    auto fval = [&](double x) {
        double s = x - e.constant;
        for (const auto& t : merged)
            s -= t.residue / (x - t.pole);
        return s;
    };
    auto fslope = [&](double x) {
        double s = 1.0;
        for (const auto& t : merged)
            s += t.residue / ((x - t.pole) * (x - t.pole));
        return s;
    };
    auto fscale = [&](double x) {
        double s = 1.0 + std::abs(x) + std::abs(e.constant);
        for (const auto& t : merged)
            s += t.residue / std::abs(x - t.pole);
        return s;
    };

    double total_residue = 0.0;
    for (const auto& t : merged)
        total_residue += t.residue;

    // Brackets: (-inf, p_1), (p_1, p_2), ..., (p_k, +inf).
    std::vector<std::pair<double, double>> brackets;
    if (merged.empty()) {
        brackets.push_back({e.constant - 1.0, e.constant + 1.0});
    } else {
        const double pad = 1.0 + total_residue;
        brackets.push_back({std::min(e.constant, merged.front().pole) - pad, merged.front().pole});
        for (std::size_t i = 0; i + 1 < merged.size(); ++i)
            brackets.push_back({merged[i].pole, merged[i + 1].pole});
        brackets.push_back({merged.back().pole, std::max(e.constant, merged.back().pole) + pad});
    }

    std::vector<LineAtom> atoms;
    for (auto [lo, hi] : brackets) {
        const double x = bisect_increasing(fval, lo, hi);
        if (!(std::abs(fval(x)) <= 1e-10 * fscale(x)))
            throw error(errc::root_finding_failure, "could not certify a root of z - E(z)");
        atoms.push_back({x, 1.0 / fslope(x)});
    }
    double total = 0.0;
    for (const auto& a : atoms)
        total += a.weight;
    if (std::abs(total - 1.0) > 1e-9)
        throw error(errc::root_finding_failure, "recovered weights do not sum to one");
    for (auto& a : atoms)
        a.weight /= total;
    return LineMeasure::atomic(std::move(atoms));
}

LineMeasure boolean_convolve_line(std::span<const LineFactor> factors, double c)
{
    EFraction out;
    out.constant = c;
    for (const auto& f : factors) {
        const EFraction e = e_fraction(f.measure);
        const auto n = static_cast<double>(f.count);
        out.constant += n * e.constant;
        for (const auto& t : e.terms)
            out.terms.push_back({t.pole, n * t.residue});
    }
    return measure_from_e(out);
}

std::vector<double> free_convolve_line(std::span<const LineFactor> factors, double c, std::size_t order)
{
    Series phi = Series::constant(c, order);
    for (const auto& f : factors)
        phi += phi_tail(f.measure, order).in_reciprocal() * cplx(static_cast<double>(f.count));
    const auto m = moments_from_phi_tail(TailSeries(phi));
    std::vector<double> out;
    for (const auto& x : m)
        out.push_back(x.real());
    out[0] = 1.0;
    return out;
}

LineMeasure classical_convolve_line(std::span<const LineFactor> factors, double c, std::size_t atom_cap)
{
    auto op = [atom_cap](const LineMeasure& a, const LineMeasure& b) { return line_sum(a, b, atom_cap); };
    LineMeasure acc = LineMeasure::point(c);
    for (const auto& f : factors)
        acc = op(acc, power_by_squaring(f.measure, f.count, LineMeasure::point(0.0), op));
    return acc;
}

cplx characteristic_function(const LineMeasure& nu, double t)
{
    cplx s = 0.0;
    for (const auto& a : nu.atoms())
        s += a.weight * std::polar(1.0, t * a.position);
    return s;
}

cplx characteristic_function(std::span<const LineFactor> factors, double c, double t)
{
    cplx s = std::polar(1.0, t * c);
    for (const auto& f : factors) {
        const cplx v = characteristic_function(f.measure, t);
        s *= int_pow(v, f.count);
    }
    return s;
}

} // namespace nclt
