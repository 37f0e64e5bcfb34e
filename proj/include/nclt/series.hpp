#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace nclt {

using cplx = std::complex<double>;

// Threshold below which a leading coefficient counts as zero.
inline constexpr double series_epsilon = 1e-12;

inline constexpr std::size_t default_order = 16;

// Truncated power series c_0 + c_1 z + ... + c_P z^P with complex coefficients.
// Binary operations truncate to the smaller operand order; nothing is ever
// silently extended.
class Series {
public:
    explicit Series(std::size_t order = default_order) : coeffs_(order + 1) {}
    explicit Series(std::vector<cplx> coeffs);
    Series(std::initializer_list<cplx> coeffs, std::size_t order);

    static Series constant(cplx c, std::size_t order);
    static Series identity(std::size_t order); // the series z
    // z^k / k! truncated; handy as a reference exponential
    static Series exponential(std::size_t order);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }

    cplx operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : cplx{}; }
    cplx& operator[](std::size_t i) { return coeffs_.at(i); }

    Series truncated(std::size_t order) const;

    // f(z)/z for f with zero constant term; order drops by one.
    Series shifted_down() const;
    // z * f(z); order rises by one (the new top coefficient is exact).
    Series shifted_up() const;

    cplx evaluate(cplx z) const;
    Series derivative() const;

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Series& o);
    Series& operator*=(cplx c);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(Series a, cplx c) { return a *= c; }
    friend Series operator*(cplx c, Series a) { return a *= c; }
    Series operator-() const;

private:
    std::vector<cplx> coeffs_;
};

Series scale(const Series& a, cplx c);

// q with q*b = a through the common order.
Series divide(const Series& a, const Series& b);

// outer(inner(z)); inner must have zero constant term.
Series compose(const Series& outer, const Series& inner);

// Compositional inverse r with a(r(z)) = z; a_0 = 0 and a_1 != 0 required.
Series revert(const Series& a);

Series exp(const Series& a);
// Principal branch at the constant term.
Series log(const Series& a);

Series pow(const Series& a, std::uint64_t n);

// Largest coefficient gap over the common order.
double max_abs_diff(const Series& a, const Series& b);

} // namespace nclt
