#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nclt {

enum class errc {
    zero_constant_term,
    nonzero_inner_constant,
    not_invertible,
    domain_error,
    pole_proximity,
    zero_first_moment,
    root_finding_failure,
    atom_explosion,
    invalid_measure,
    unknown_preset,
    bad_params,
    hypothesis_violated,
};

std::string_view to_string(errc code) noexcept;

// Every failure raised by the library carries one of the codes above so callers
// (and tests) can branch on the kind rather than parse messages.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Extra payload for HypothesisViolated: which of the four hypotheses failed.
class hypothesis_error : public error {
public:
    hypothesis_error(int clause, const std::string& what)
        : error(errc::hypothesis_violated, "clause " + std::to_string(clause) + ": " + what), clause_(clause)
    {
    }

    int clause() const noexcept { return clause_; }

private:
    int clause_;
};

} // namespace nclt
