#include "nclt/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "nclt/error.hpp"

namespace nclt {

PsiB psi_b(const CircleMeasure& mu, cplx z)
{
    if (!(std::abs(z) < 1.0))
        throw error(errc::domain_error, "psi/B need |z| < 1");
    if (mu.is_haar())
        return {0.0, 0.0};
    cplx psi = 0.0;
    cplx first = 0.0;
    for (const auto& a : mu.atoms()) {
        const cplx zeta = a.point();
        psi += a.weight * zeta * z / (1.0 - zeta * z);
        first += a.weight * zeta;
    }
    if (z == cplx{})
        return {0.0, first};
    return {psi, psi / (z * (1.0 + psi))};
}

Series psi_series(const MomentList& m, std::size_t order)
{
    if (m.order() < order)
        throw error(errc::bad_params, "moment list shorter than series order");
    Series s(order);
    for (std::size_t p = 1; p <= order; ++p)
        s[p] = m.values()[p];
    return s;
}

Series psi_series(const CircleMeasure& mu, std::size_t order) { return psi_series(moments(mu, order), order); }

Series b_series(const CircleMeasure& mu, std::size_t order) { return b_series(moments(mu, order + 1), order); }

Series b_series(const MomentList& m, std::size_t order)
{
    // B = (psi / z) / (1 + psi): computing psi one order higher keeps B at `order`.
    const Series psi = psi_series(m, order + 1);
    Series one_plus = psi;
    one_plus[0] += 1.0;
    return divide(psi.shifted_down(), one_plus.truncated(order));
}

MomentList moments_from_b_series(const Series& b)
{
    const std::size_t p = b.order();
    const Series zb = b.shifted_up().truncated(p);
    Series denom = -zb;
    denom[0] += 1.0;
    const Series psi = divide(zb, denom);
    std::vector<cplx> v(p + 1);
    v[0] = 1.0;
    for (std::size_t k = 1; k <= p; ++k)
        v[k] = psi[k];
    return MomentList(std::move(v));
}

CauchyTriple cauchy_transforms(const LineMeasure& nu, cplx z)
{
    if (!(z.imag() > 0.0))
        throw error(errc::domain_error, "Cauchy transform needs Im z > 0");
    cplx g = 0.0;
    for (const auto& a : nu.atoms()) {
        const cplx d = z - a.position;
        if (std::abs(d) < 1e-14)
            throw error(errc::pole_proximity, "evaluation point on an atom");
        g += a.weight / d;
    }
    const cplx f = 1.0 / g;
    cplx e = z - f;
    // Im F >= Im z and Im E <= 0 hold exactly; clip roundoff.
    if (e.imag() > 0.0 && e.imag() < 1e-12)
        e.imag(0.0);
    return {g, z - e, e};
}

TailSeries g_tail_from_moments(const std::vector<double>& m)
{
    Series s(m.size());
    for (std::size_t j = 0; j < m.size(); ++j)
        s[j + 1] = m[j];
    return TailSeries(std::move(s));
}

TailSeries g_tail(const LineMeasure& nu, std::size_t order)
{
    if (order == 0)
        return TailSeries(Series(0));
    return TailSeries(g_tail_from_moments(line_moments(nu, order - 1)).in_reciprocal().truncated(order));
}

TailSeries e_tail(const LineMeasure& nu, std::size_t order)
{
    // G(1/w) = w M(w) with M = sum m_j w^j, so 1/G = (1/w) S(w), S = 1/M, and
    // E = z - 1/G = -(s_1 + s_2 w + ...).
    const auto m = line_moments(nu, order + 1);
    Series moment_series(order + 1);
    for (std::size_t j = 0; j <= order + 1; ++j)
        moment_series[j] = m[j];
    const Series s = divide(Series::constant(1.0, order + 1), moment_series);
    Series e(order);
    for (std::size_t j = 0; j <= order; ++j)
        e[j] = -s[j + 1];
    return TailSeries(std::move(e));
}

TailSeries phi_tail_from_e_tail(const TailSeries& e)
{
    // With w = 1/z: K(w) = 1/F(1/w) = w / (1 - w E(w)). If L = K^{-1} then
    // F^{-1}(1/v) = 1/L(v), and phi = 1/L(v) - 1/v. Two orders are consumed.
    const std::size_t p = e.order();
    if (p < 2)
        throw error(errc::bad_params, "E tail too short to invert");
    const Series w_e = e.in_reciprocal().shifted_up().truncated(p);
    Series denom = -w_e;
    denom[0] += 1.0;
    const Series k = divide(Series::identity(p), denom);
    const Series l = revert(k);
    // 1/L(v) = (1/v) / (1 + q_1 v + ...) = (1/v) * Q(v)
    const Series q = divide(Series::constant(1.0, p - 1), l.shifted_down());
    Series phi(p - 2);
    for (std::size_t j = 0; j + 2 <= p; ++j)
        phi[j] = q[j + 1];
    return TailSeries(std::move(phi));
}

TailSeries phi_tail(const LineMeasure& nu, std::size_t order)
{
    return phi_tail_from_e_tail(e_tail(nu, order + 2));
}

std::vector<cplx> moments_from_g_tail(const TailSeries& g)
{
    std::vector<cplx> m;
    for (std::size_t j = 1; j <= g.order(); ++j)
        m.push_back(g[j]);
    return m;
}

std::vector<cplx> moments_from_phi_tail(const TailSeries& phi)
{
    // z + phi(z) = F^{-1}(z); in v = 1/z this is 1/L(v) with L(v) = v / (1 + v phi(v)).
    const std::size_t p = phi.order() + 1;
    Series denom = phi.in_reciprocal().shifted_up().truncated(p);
    denom[0] += 1.0;
    const Series l = divide(Series::identity(p), denom);
    // K = L^{-1} is G(1/w) as a series in w.
    const Series k = revert(l);
    return moments_from_g_tail(TailSeries(k));
}

Series sigma_series(const MomentList& m, std::size_t order)
{
    if (std::abs(m(1)) < first_moment_epsilon)
        throw error(errc::zero_first_moment, "Sigma requires a nonzero first moment");
    const std::size_t work = std::min(order + 1, m.order());
    const Series psi = psi_series(m, work);
    const Series psi_inv = revert(psi);
    // z / (1 - z) = z + z^2 + ...
    Series geometric(work);
    for (std::size_t k = 1; k <= work; ++k)
        geometric[k] = 1.0;
    return compose(psi_inv, geometric).shifted_down();
}

MomentList moments_from_sigma_series(const Series& sigma)
{
    // chi(z) = z Sigma(z) = psi^{-1}(z/(1-z)); substituting z = u/(1+u) gives
    // psi^{-1}(u), which is then reverted.
    const std::size_t p = sigma.order() + 1;
    const Series chi = sigma.shifted_up();
    Series mobius(p);
    for (std::size_t k = 1; k <= p; ++k)
        mobius[k] = (k % 2 == 1) ? 1.0 : -1.0;
    const Series psi_inv = compose(chi, mobius);
    const Series psi = revert(psi_inv);
    std::vector<cplx> v(p + 1);
    v[0] = 1.0;
    for (std::size_t k = 1; k <= p; ++k)
        v[k] = psi[k];
    return MomentList(std::move(v));
}

} // namespace nclt
