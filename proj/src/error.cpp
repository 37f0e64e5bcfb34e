#include "nclt/error.hpp"

namespace nclt {

std::string_view to_string(errc code) noexcept
{
    switch (code) {
    case errc::zero_constant_term: return "ZeroConstantTerm";
    case errc::nonzero_inner_constant: return "NonzeroInnerConstant";
    case errc::not_invertible: return "NotInvertible";
    case errc::domain_error: return "DomainError";
    case errc::pole_proximity: return "PoleProximity";
    case errc::zero_first_moment: return "ZeroFirstMoment";
    case errc::root_finding_failure: return "RootFindingFailure";
    case errc::atom_explosion: return "AtomExplosion";
    case errc::invalid_measure: return "InvalidMeasure";
    case errc::unknown_preset: return "UnknownPreset";
    case errc::bad_params: return "BadParams";
    case errc::hypothesis_violated: return "HypothesisViolated";
    }
    return "Unknown";
}

} // namespace nclt
