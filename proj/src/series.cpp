// Series arithmetic

#include "nclt/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nclt/error.hpp"

namespace nclt {

Series::Series(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        coeffs_.resize(1);
}

Series::Series(std::initializer_list<cplx> coeffs, std::size_t order) : coeffs_(order + 1)
{
    std::size_t i = 0;
    for (auto c : coeffs) {
        if (i > order)
            break;
        coeffs_[i++] = c;
    }
}

Series Series::constant(cplx c, std::size_t order)
{
    Series s(order);
    s.coeffs_[0] = c;
    return s;
}

Series Series::identity(std::size_t order)
{
    Series s(order);
    if (order >= 1)
        s.coeffs_[1] = 1.0;
    return s;
}

Series Series::exponential(std::size_t order)
{
    Series s(order);
    double f = 1.0;
    for (std::size_t k = 0; k <= order; ++k) {
        if (k > 0)
            f /= static_cast<double>(k);
        s.coeffs_[k] = f;
    }
    return s;
}

Series Series::truncated(std::size_t order) const
{
    Series s(order);
    std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), order + 1), s.coeffs_.begin());
    return s;
}

Series Series::shifted_down() const
{
    if (order() == 0)
        return Series(0);
    return Series(std::vector<cplx>(coeffs_.begin() + 1, coeffs_.end()));
}

Series Series::shifted_up() const
{
    std::vector<cplx> c(coeffs_.size() + 1);
    std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + 1);
    return Series(std::move(c));
}

cplx Series::evaluate(cplx z) const
{
    cplx acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

Series Series::derivative() const
{
    if (order() == 0)
        return Series(0);
    Series d(order() - 1);
    for (std::size_t k = 1; k <= order(); ++k)
        d.coeffs_[k - 1] = static_cast<double>(k) * coeffs_[k];
    return d;
}

Series& Series::operator+=(const Series& o)
{
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

Series& Series::operator-=(const Series& o)
{
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

Series operator*(const Series& a, const Series& b)
{
    const std::size_t p = std::min(a.order(), b.order());
    Series out(p);
    for (std::size_t i = 0; i <= p; ++i) {
        if (a.coeffs_[i] == cplx{})
            continue;
        for (std::size_t j = 0; i + j <= p; ++j)
            out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
}

Series& Series::operator*=(const Series& o) { return *this = *this * o; }

Series& Series::operator*=(cplx c)
{
    for (auto& x : coeffs_)
        x *= c;
    return *this;
}

Series Series::operator-() const
{
    Series s = *this;
    return s *= -1.0;
}

Series scale(const Series& a, cplx c) { return a * c; }

Series divide(const Series& a, const Series& b)
{
    if (std::abs(b[0]) < series_epsilon)
        throw error(errc::zero_constant_term, "divisor has vanishing constant term");
    const std::size_t p = std::min(a.order(), b.order());
    Series q(p);
    const cplx inv = 1.0 / b[0];
    for (std::size_t n = 0; n <= p; ++n) {
        cplx acc = a[n];
        for (std::size_t k = 1; k <= n; ++k)
            acc -= b[k] * q[n - k];
        q[n] = acc * inv;
    }
    return q;
}

Series compose(const Series& outer, const Series& inner)
{
    if (std::abs(inner[0]) > series_epsilon)
        throw error(errc::nonzero_inner_constant, "inner series must vanish at the origin");
    const std::size_t p = std::min(outer.order(), inner.order());
    Series in = inner.truncated(p);
    in[0] = 0.0;
    // Horner in the series ring.
    Series acc = Series::constant(outer[p], p);
    for (std::size_t k = p; k-- > 0;) {
        acc = acc * in;
        acc[0] += outer[k];
    }
    return acc;
}

Series revert(const Series& a)
{
    if (std::abs(a[0]) > series_epsilon)
        throw error(errc::nonzero_inner_constant, "series to revert must vanish at the origin");
    if (a.order() < 1 || std::abs(a[1]) < series_epsilon)
        throw error(errc::not_invertible, "linear coefficient vanishes");

    const std::size_t p = a.order();
    const Series da = a.derivative();

    // Newton iteration r <- r - (a(r) - z) / a'(r); the number of correct
    // coefficients doubles each step.
    Series r = Series::identity(p);
    r[1] = 1.0 / a[1];
    std::size_t known = 2;
    while (known <= p) {
        known = std::min(2 * known, p + 1);
        const std::size_t w = known - 1;
        Series rw = r.truncated(w);
        Series residual = compose(a.truncated(w), rw) - Series::identity(w);
        Series slope = w >= 1 ? compose(da.truncated(w), rw) : Series::constant(da[0], w);
        r = (rw - divide(residual, slope)).truncated(p);
        for (std::size_t k = known; k <= p; ++k)
            r[k] = 0.0;
    }
    // One extra polish pass at full order.
    Series residual = compose(a, r) - Series::identity(p);
    r = r - divide(residual, compose(da.truncated(p), r));
    return r;
}

Series exp(const Series& a)
{
    const std::size_t p = a.order();
    Series b(p);
    b[0] = std::exp(a[0]);
    for (std::size_t n = 1; n <= p; ++n) {
        cplx acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k)
            acc += static_cast<double>(k) * a[k] * b[n - k];
        b[n] = acc / static_cast<double>(n);
    }
    return b;
}

Series log(const Series& b)
{
    if (std::abs(b[0]) < series_epsilon)
        throw error(errc::zero_constant_term, "logarithm of a series vanishing at the origin");
    const std::size_t p = b.order();
    Series a(p);
    a[0] = std::log(b[0]);
    const cplx inv = 1.0 / b[0];
    for (std::size_t n = 1; n <= p; ++n) {
        cplx acc = static_cast<double>(n) * b[n];
        for (std::size_t k = 1; k < n; ++k)
            acc -= static_cast<double>(k) * a[k] * b[n - k];
        a[n] = acc * inv / static_cast<double>(n);
    }
    return a;
}

Series pow(const Series& a, std::uint64_t n)
{
    Series result = Series::constant(1.0, a.order());
    Series base = a;
    while (n > 0) {
        if (n & 1U)
            result = result * base;
        n >>= 1U;
        if (n > 0)
            base = base * base;
    }
    return result;
}

double max_abs_diff(const Series& a, const Series& b)
{
    const std::size_t p = std::min(a.order(), b.order());
    double d = 0.0;
    for (std::size_t i = 0; i <= p; ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace nclt
