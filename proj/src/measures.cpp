#include "nclt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nclt/error.hpp"

namespace nclt {

double canonical_angle(double theta)
{
    double t = std::remainder(theta, 2.0 * pi); // in [-pi, pi]
    if (t <= -pi)
        t += 2.0 * pi;
    return t;
}

cplx int_pow(cplx z, std::uint64_t n)
{
    if (z.imag() == 0.0 && z.real() > 0.0)
        return std::pow(z.real(), static_cast<double>(n));
    cplx result = 1.0;
    while (n > 0) {
        if (n & 1U)
            result *= z;
        n >>= 1U;
        if (n > 0)
            z *= z;
    }
    return result;
}

namespace {

// Sort, then merge neighbours closer than the merge tolerance (including the
// pair straddling the cut at -pi/pi). Weighted mean of the merged angles.
std::vector<CircleAtom> merge_circle_atoms(std::vector<CircleAtom> atoms)
{
    for (auto& a : atoms)
        a.angle = canonical_angle(a.angle);
    std::sort(atoms.begin(), atoms.end(), [](const auto& l, const auto& r) { return l.angle < r.angle; });
    std::vector<CircleAtom> out;
    for (const auto& a : atoms) {
        if (!out.empty() && a.angle - out.back().angle < atom_merge_tolerance) {
            auto& b = out.back();
            const double w = b.weight + a.weight;
            b.angle = (b.angle * b.weight + a.angle * a.weight) / w;
            b.weight = w;
        } else {
            out.push_back(a);
        }
    }
    if (out.size() > 1 && out.front().angle + 2.0 * pi - out.back().angle < atom_merge_tolerance) {
        auto& b = out.back();
        const auto& f = out.front();
        const double w = b.weight + f.weight;
        b.angle = canonical_angle((b.angle * b.weight + (f.angle + 2.0 * pi) * f.weight) / w);
        b.weight = w;
        out.erase(out.begin());
        std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.angle < r.angle; });
    }
    return out;
}

std::vector<LineAtom> merge_line_atoms(std::vector<LineAtom> atoms)
{
    std::sort(atoms.begin(), atoms.end(), [](const auto& l, const auto& r) { return l.position < r.position; });
    std::vector<LineAtom> out;
    for (const auto& a : atoms) {
        if (!out.empty() && a.position - out.back().position < atom_merge_tolerance) {
            auto& b = out.back();
            const double w = b.weight + a.weight;
            b.position = (b.position * b.weight + a.position * a.weight) / w;
            b.weight = w;
        } else {
            out.push_back(a);
        }
    }
    return out;
}

template <class Atom>
void check_probability(const std::vector<Atom>& atoms)
{
    if (atoms.empty())
        throw error(errc::invalid_measure, "no atoms");
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!(a.weight > 0.0) || !std::isfinite(a.weight))
            throw error(errc::invalid_measure, "atom weights must be positive");
        total += a.weight;
    }
    if (std::abs(total - 1.0) > weight_sum_tolerance)
        throw error(errc::invalid_measure, "weights must sum to one");
}

} // namespace

CircleMeasure CircleMeasure::atomic(std::vector<CircleAtom> atoms)
{
    for (const auto& a : atoms)
        if (!std::isfinite(a.angle))
            throw error(errc::invalid_measure, "non-finite angle");
    check_probability(atoms);
    CircleMeasure m;
    m.haar_ = false;
    m.atoms_ = merge_circle_atoms(std::move(atoms));
    return m;
}

LineMeasure LineMeasure::atomic(std::vector<LineAtom> atoms)
{
    for (const auto& a : atoms)
        if (!std::isfinite(a.position))
            throw error(errc::invalid_measure, "non-finite position");
    check_probability(atoms);
    LineMeasure m;
    m.atoms_ = merge_line_atoms(std::move(atoms));
    return m;
}

double LineMeasure::mean() const
{
    double s = 0.0;
    for (const auto& a : atoms_)
        s += a.weight * a.position;
    return s;
}

double LineMeasure::cdf(double x) const
{
    double s = 0.0;
    for (const auto& a : atoms_) {
        if (a.position > x)
            break;
        s += a.weight;
    }
    return s;
}

PositiveCircleMeasure::PositiveCircleMeasure(std::vector<CircleAtom> atoms)
{
    std::erase_if(atoms, [](const CircleAtom& a) {
        if (a.weight < 0.0 || !std::isfinite(a.weight) || !std::isfinite(a.angle))
            throw error(errc::invalid_measure, "sigma masses must be finite and nonnegative");
        return a.weight == 0.0;
    });
    atoms_ = merge_circle_atoms(std::move(atoms));
}

double PositiveCircleMeasure::total_mass() const
{
    double s = 0.0;
    for (const auto& a : atoms_)
        s += a.weight;
    return s;
}

cplx unit_power(double angle, int p)
{
    if (angle == 0.0 || p == 0)
        return 1.0;
    if (angle == pi)
        return p % 2 ? -1.0 : 1.0;
    return std::polar(1.0, p * angle);
}

cplx PositiveCircleMeasure::fourier(int p) const
{
    cplx s = 0.0;
    for (const auto& a : atoms_)
        s += a.weight * unit_power(a.angle, p);
    return s;
}

PositiveLineMeasure::PositiveLineMeasure(std::vector<LineAtom> atoms)
{
    std::erase_if(atoms, [](const LineAtom& a) {
        if (a.weight < 0.0 || !std::isfinite(a.weight) || !std::isfinite(a.position))
            throw error(errc::invalid_measure, "sigma masses must be finite and nonnegative");
        return a.weight == 0.0;
    });
    atoms_ = merge_line_atoms(std::move(atoms));
}

double PositiveLineMeasure::total_mass() const
{
    double s = 0.0;
    for (const auto& a : atoms_)
        s += a.weight;
    return s;
}

MomentList::MomentList(std::vector<cplx> values) : values_(std::move(values))
{
    if (values_.empty() || std::abs(values_[0] - 1.0) > 1e-9)
        throw error(errc::invalid_measure, "zeroth moment must be one");
    values_[0] = 1.0;
}

MomentList MomentList::haar(std::size_t order)
{
    std::vector<cplx> v(order + 1);
    v[0] = 1.0;
    return MomentList(std::move(v));
}

cplx MomentList::operator()(int p) const
{
    const auto k = static_cast<std::size_t>(p < 0 ? -p : p);
    if (k >= values_.size())
        throw error(errc::bad_params, "moment index beyond order");
    return p < 0 ? std::conj(values_[k]) : values_[k];
}

MomentList MomentList::truncated(std::size_t order) const
{
    if (order > this->order())
        throw error(errc::bad_params, "cannot extend a moment list");
    return MomentList(std::vector<cplx>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(order) + 1));
}

cplx fourier(const CircleMeasure& mu, int p)
{
    if (mu.is_haar())
        return p == 0 ? 1.0 : 0.0;
    cplx s = 0.0;
    for (const auto& a : mu.atoms())
        s += a.weight * unit_power(a.angle, p);
    return s;
}

MomentList moments(const CircleMeasure& mu, std::size_t order)
{
    std::vector<cplx> v(order + 1);
    for (std::size_t p = 0; p <= order; ++p)
        v[p] = fourier(mu, static_cast<int>(p));
    v[0] = 1.0;
    return MomentList(std::move(v));
}

std::vector<double> line_moments(const LineMeasure& nu, std::size_t order)
{
    std::vector<double> m(order + 1, 0.0);
    for (const auto& a : nu.atoms()) {
        double x = 1.0;
        for (std::size_t j = 0; j <= order; ++j) {
            m[j] += a.weight * x;
            x *= a.position;
        }
    }
    return m;
}

double moment_distance(const MomentList& a, const MomentList& b, std::size_t order)
{
    if (a.order() < order || b.order() < order)
        throw error(errc::bad_params, "moment lists shorter than requested order");
    double d = 0.0;
    for (std::size_t p = 1; p <= order; ++p)
        d = std::max(d, std::abs(a.values()[p] - b.values()[p]));
    return d;
}

namespace {

// True when every jump of `upper` satisfies upper(y) <= lower(y + eps) + eps.
bool levy_side_holds(const LineMeasure& lower, const LineMeasure& upper, double eps)
{
    constexpr double slack = 1e-12;
    double level = 0.0;
    for (const auto& a : upper.atoms()) {
        level += a.weight;
        const double y = a.position;
        if (level > lower.cdf(y + eps + slack * (1.0 + std::abs(y))) + eps + slack)
            return false;
    }
    return true;
}

} // namespace

double levy_distance(const LineMeasure& a, const LineMeasure& b)
{
    // The infimum is attained at a position gap or at a level gap of the two
    // step functions, so a search over that finite set is exact.
    std::vector<double> candidates{0.0, 1.0};
    for (const auto& x : a.atoms())
        for (const auto& y : b.atoms())
            candidates.push_back(std::abs(x.position - y.position));
    std::vector<double> la{0.0}, lb{0.0};
    for (const auto& x : a.atoms())
        la.push_back(la.back() + x.weight);
    for (const auto& y : b.atoms())
        lb.push_back(lb.back() + y.weight);
    for (double u : la)
        for (double v : lb)
            candidates.push_back(std::abs(u - v));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto feasible = [&](double eps) { return levy_side_holds(a, b, eps) && levy_side_holds(b, a, eps); };
    auto it = std::partition_point(candidates.begin(), candidates.end(), [&](double e) { return !feasible(e); });
    if (it == candidates.end())
        return 1.0;
    return std::min(*it, 1.0);
}

CircleMeasure rotate(const CircleMeasure& mu, cplx lambda)
{
    if (mu.is_haar())
        return mu;
    const double shift = std::arg(lambda);
    std::vector<CircleAtom> atoms(mu.atoms().begin(), mu.atoms().end());
    if (shift == 0.0)
        return mu;
    for (auto& a : atoms)
        a.angle -= shift;
    return CircleMeasure::atomic(std::move(atoms));
}

LineMeasure shift(const LineMeasure& nu, double a)
{
    std::vector<LineAtom> atoms(nu.atoms().begin(), nu.atoms().end());
    for (auto& x : atoms)
        x.position -= a;
    return LineMeasure::atomic(std::move(atoms));
}

} // namespace nclt
