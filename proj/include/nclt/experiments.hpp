#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nclt/arrays.hpp"
#include "nclt/infdiv.hpp"

namespace nclt {

enum class Mode { boolean, free, classical };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s); // bad_params on anything else

// What a circle array is expected to converge to. Without a pair the boolean
// and free limits are Haar measure.
struct CircleLimit {
    std::optional<CircleGeneratingPair> pair;
    std::optional<CircleMeasure> classical; // replaces the pair's classical law
    bool exponential = false;               // reached at an exponential rate
};

struct CircleExperiment {
    std::string name;
    CircleArray array;
    std::optional<CircleLimit> limit; // default: (gamma_n, sigma_n) of the last row
};

struct LineExperiment {
    std::string name;
    LineArray array;
    std::optional<LineGeneratingPair> limit; // default: last row's accumulators
};

using Experiment = std::variant<CircleExperiment, LineExperiment>;

struct PresetParams {
    std::optional<double> t;            // cor37, cor38
    std::optional<double> lambda_angle; // cor38
    std::optional<double> lambda;       // poisson_R
    std::vector<std::uint64_t> ladder;  // empty: the preset's own
};

const std::vector<std::string>& preset_names();
Experiment preset(std::string_view name, const PresetParams& params = {});

// Single rows of the presets.
CircleRow cor37_row(std::uint64_t n, double t);
CircleRow cor38_row(std::uint64_t n, double t, double lambda_angle);
CircleRow remark_rho_row(std::uint64_t n);
LineRow bern_row(std::uint64_t n);
LineRow poisson_row(std::uint64_t n, double lambda);

struct Tolerances {
    double moment_distance = 0.05;
    double exponential = 1e-6; // circle limits with exponential = true
    double levy = 0.05;
    double e_gap = 0.02;
    double charfn = 0.05;
    double moment_gap = 0.02;
};

struct ReportRow {
    std::string experiment;
    std::uint64_t n = 0;
    std::string metric;
    double value = 0.0;
    std::optional<double> target;
    std::optional<double> tolerance;
    std::optional<bool> pass;
};

struct CircleStep {
    std::uint64_t n = 0;
    MomentList moments = MomentList::haar(0);
    MomentList target = MomentList::haar(0);
    double distance = 0.0;
    CircleAccumulators accumulators;
};

struct LineStep {
    std::uint64_t n = 0;
    std::optional<LineMeasure> output;   // boolean mode
    std::vector<double> moments;         // free mode
    double distance = 0.0;               // primary distance of the mode
    double e_gap = 0.0;                  // boolean mode
    LineAccumulators accumulators;
};

struct ExperimentReport {
    std::string experiment;
    Mode mode = Mode::boolean;
    std::vector<CircleStep> circle_steps;
    std::vector<LineStep> line_steps;
    std::vector<ReportRow> rows;

    // Every row that carries a verdict passed.
    bool passed() const;
};

inline constexpr std::size_t compared_orders = 8;

ExperimentReport run_circle(const CircleExperiment& e, Mode mode, std::size_t order = default_order,
                            const Tolerances& tol = {});
ExperimentReport run_line(const LineExperiment& e, Mode mode, std::size_t order = default_order,
                          const Tolerances& tol = {});
ExperimentReport run(const Experiment& e, Mode mode, std::size_t order = default_order, const Tolerances& tol = {});

// Moments of the laws generated by a pair, order P.
MomentList boolean_limit_moments(const CircleGeneratingPair& p, std::size_t order);
MomentList free_limit_moments(const CircleGeneratingPair& p, std::size_t order);
MomentList classical_limit_moments(const CircleGeneratingPair& p, std::size_t order);

// Per row: the mass of sigma_n, and lambda_n times the product of first moments.
std::vector<double> haar_criterion(const CircleArray& array);
std::vector<cplx> first_moment_product(const CircleArray& array);

// Taylor coefficients 0..order of f from `points` samples on |z| = radius.
Series fit_series(const std::function<cplx(cplx)>& f, double radius = 0.5, std::size_t points = 256,
                  std::size_t order = default_order);

struct ExpSumComparison {
    std::vector<cplx> limit_z; // exp(i r_n + sum_k z_nk)
    std::vector<cplx> limit_w;
    std::vector<double> gap;
    std::vector<double> eps;   // max_k |z_nk / w_nk - 1|
    double best_m = 0.0;       // smallest M with |Im w| <= M |Re w| + s
    double s_bound = 0.0;      // max_n sum_k s_nk
    // Per n: |sum (z - w)| against (1 + M) eps (-sum Re w) + eps sum s, and
    // (1 - eps - M eps)(-sum Re w) against (-sum Re z) + eps sum s.
    std::vector<double> difference, difference_bound;
    std::vector<double> shrunk_real_w, real_z_bound;
};

// Checks the four hypotheses on exponential sums numerically and evaluates both
// sequences. Throws hypothesis_error naming the first failing clause.
ExpSumComparison compare_exp_sums(const std::vector<double>& r, const std::vector<std::vector<cplx>>& z_rows,
                                  const std::vector<std::vector<cplx>>& w_rows,
                                  const std::vector<std::vector<double>>& s_rows);

struct NonuniquenessResult {
    cplx lhs;
    cplx rhs;
    double sigma_gap;
};

// Two different densities (1 - Re zeta) f^{+-} with the same classical
// Fourier coefficient at p; trapezoid rule on N angles.
NonuniquenessResult nonuniqueness_check(int p, std::size_t n);

// CSV with columns experiment,n,metric,value,target,tolerance,pass; rows sorted
// by (experiment, n, metric).
void write_csv(std::ostream& out, std::vector<ReportRow> rows);

} // namespace nclt
