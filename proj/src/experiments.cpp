#include "nclt/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <tuple>

#include "nclt/error.hpp"
#include "nclt/transforms.hpp"

namespace nclt {

std::string_view to_string(Mode m)
{
    switch (m) {
    case Mode::boolean:
        return "boolean";
    case Mode::free:
        return "free";
    case Mode::classical:
        return "classical";
    }
    return "?";
}

Mode parse_mode(std::string_view s)
{
    if (s == "boolean")
        return Mode::boolean;
    if (s == "free")
        return Mode::free;
    if (s == "classical")
        return Mode::classical;
    throw error(errc::bad_params, "mode must be boolean, free or classical");
}

// ---- presets

CircleRow cor37_row(std::uint64_t n, double t)
{
    const double dn = static_cast<double>(n);
    if (!(t > 0.0 && t < dn))
        throw error(errc::bad_params, "cor37 needs 0 < t < n");
    // xi = sqrt(1 - t/n) + i sqrt(t/n)
    const double angle = std::atan2(std::sqrt(t / dn), std::sqrt(1.0 - t / dn));
    return {n, {{CircleMeasure::atomic({{angle, 0.5}, {-angle, 0.5}}), n}}, 1.0};
}

CircleRow cor38_row(std::uint64_t n, double t, double lambda_angle)
{
    const double dn = static_cast<double>(n);
    if (!(t > 0.0 && t < dn))
        throw error(errc::bad_params, "cor38 needs 0 < t < n");
    return {n, {{CircleMeasure::atomic({{0.0, 1.0 - t / dn}, {lambda_angle, t / dn}}), n}}, 1.0};
}

CircleRow remark_rho_row(std::uint64_t n)
{
    if (n < 3)
        throw error(errc::bad_params, "remark_rho needs n >= 3");
    const double dn = static_cast<double>(n);
    return {n, {{CircleMeasure::atomic({{0.0, 1.0 - 1.0 / dn}, {pi, 1.0 / dn}}), n * n}}, 1.0};
}

LineRow bern_row(std::uint64_t n)
{
    if (n < 1)
        throw error(errc::bad_params, "bern_R needs n >= 1");
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    return {n, {{LineMeasure::atomic({{-s, 0.5}, {s, 0.5}}), n}}, 0.0};
}

LineRow poisson_row(std::uint64_t n, double lambda)
{
    const double dn = static_cast<double>(n);
    if (!(lambda > 0.0 && lambda < dn))
        throw error(errc::bad_params, "poisson_R needs 0 < lambda < n");
    return {n, {{LineMeasure::atomic({{0.0, 1.0 - lambda / dn}, {1.0, lambda / dn}}), n}}, 0.0};
}

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"cor37", "cor38", "remark_rho", "bern_R", "poisson_R"};
    return names;
}

namespace {

std::vector<std::uint64_t> ladder_or(const PresetParams& p, std::vector<std::uint64_t> fallback)
{
    auto l = p.ladder.empty() ? std::move(fallback) : p.ladder;
    for (std::size_t i = 1; i < l.size(); ++i)
        if (l[i] <= l[i - 1])
            throw error(errc::bad_params, "ladder must be strictly increasing");
    if (l.empty())
        throw error(errc::bad_params, "empty ladder");
    return l;
}

void reject(const PresetParams& p, bool t, bool angle, bool lambda)
{
    if ((p.t && !t) || (p.lambda_angle && !angle) || (p.lambda && !lambda))
        throw error(errc::bad_params, "parameter not used by this preset");
}

} // namespace

Experiment preset(std::string_view name, const PresetParams& params)
{
    if (name == "cor37") {
        reject(params, true, false, false);
        const double t = params.t.value_or(1.0);
        CircleExperiment e{"cor37", {{}, 1.0}, CircleLimit{boolean_normal(t), {}, false}};
        for (const auto n : ladder_or(params, {100, 1000, 10000}))
            e.array.rows.push_back(cor37_row(n, t));
        return e;
    }
    if (name == "cor38") {
        reject(params, true, true, false);
        const double t = params.t.value_or(1.0);
        const double angle = params.lambda_angle.value_or(pi / 3);
        if (!(angle != 0.0 && std::abs(angle) <= pi))
            throw error(errc::bad_params, "cor38 needs 0 < |lambda_angle| <= pi");
        CircleExperiment e{"cor38", {{}, std::abs(angle) / 2}, CircleLimit{boolean_poisson(t, std::polar(1.0, angle)), {}, false}};
        for (const auto n : ladder_or(params, {100, 1000, 10000}))
            e.array.rows.push_back(cor38_row(n, t, angle));
        return e;
    }
    if (name == "remark_rho") {
        reject(params, false, false, false);
        CircleLimit limit;
        limit.classical = CircleMeasure::atomic({{0.0, 0.5}, {pi, 0.5}});
        limit.exponential = true;
        CircleExperiment e{"remark_rho", {{}, 1.0}, limit};
        for (const auto n : ladder_or(params, {8, 16, 32}))
            e.array.rows.push_back(remark_rho_row(n));
        return e;
    }
    if (name == "bern_R") {
        reject(params, false, false, false);
        LineExperiment e{"bern_R", {}, LineGeneratingPair{0.0, PositiveLineMeasure({{0.0, 1.0}})}};
        for (const auto n : ladder_or(params, {10, 100, 1000}))
            e.array.rows.push_back(bern_row(n));
        return e;
    }
    if (name == "poisson_R") {
        reject(params, false, false, true);
        const double lambda = params.lambda.value_or(1.0);
        LineExperiment e{"poisson_R", {}, LineGeneratingPair{lambda / 2, PositiveLineMeasure({{1.0, lambda / 2}})}};
        for (const auto n : ladder_or(params, {10, 100, 1000}))
            e.array.rows.push_back(poisson_row(n, lambda));
        return e;
    }
    throw error(errc::unknown_preset, "unknown preset: " + std::string(name));
}

// ---- limits

Series fit_series(const std::function<cplx(cplx)>& f, double radius, std::size_t points, std::size_t order)
{
    if (points <= order)
        throw error(errc::bad_params, "need more sample points than coefficients");
    std::vector<cplx> samples(points);
    for (std::size_t j = 0; j < points; ++j)
        samples[j] = f(std::polar(radius, 2.0 * pi * j / points));
    Series s(order);
    for (std::size_t p = 0; p <= order; ++p) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < points; ++j)
            acc += samples[j] * std::polar(1.0, -2.0 * pi * static_cast<double>((p * j) % points) / points);
        s[p] = acc / static_cast<double>(points) / std::pow(radius, static_cast<double>(p));
    }
    return s;
}

MomentList boolean_limit_moments(const CircleGeneratingPair& p, std::size_t order)
{
    return moments_from_b_series(fit_series([&](cplx z) { return boolean_b(p, z); }, 0.5, 256, order));
}

MomentList free_limit_moments(const CircleGeneratingPair& p, std::size_t order)
{
    return moments_from_sigma_series(fit_series([&](cplx z) { return free_sigma(p, z); }, 0.5, 256, order))
        .truncated(order);
}

MomentList classical_limit_moments(const CircleGeneratingPair& p, std::size_t order)
{
    std::vector<cplx> v(order + 1);
    v[0] = 1.0;
    for (std::size_t k = 1; k <= order; ++k)
        v[k] = classical_fourier(p, static_cast<int>(k));
    return MomentList(std::move(v));
}

std::vector<double> haar_criterion(const CircleArray& array)
{
    std::vector<double> out;
    for (const auto& row : array.rows)
        out.push_back(accumulate(row, array.tau).sigma.total_mass());
    return out;
}

std::vector<cplx> first_moment_product(const CircleArray& array)
{
    std::vector<cplx> out;
    for (const auto& row : array.rows) {
        cplx p = row.lambda;
        for (const auto& e : row.entries)
            p *= int_pow(fourier(e.measure, 1), e.count);
        out.push_back(p);
    }
    return out;
}

// ---- runs

bool ExperimentReport::passed() const
{
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass.value_or(true); });
}

namespace {

// Strictly decreasing, except that values already at rounding level may tie.
bool decreasing(const std::vector<double>& v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1] || (v[i] <= 1e-9 && v[i - 1] <= 1e-9)))
            return false;
    return true;
}

class RowSink {
public:
    explicit RowSink(std::string experiment) : experiment_(std::move(experiment)) {}

    void info(std::uint64_t n, std::string metric, double value)
    {
        rows.push_back({experiment_, n, std::move(metric), value, {}, {}, {}});
    }
    // value <= tolerance passes
    void bounded(std::uint64_t n, std::string metric, double value, double target, double tolerance)
    {
        rows.push_back({experiment_, n, std::move(metric), value, target, tolerance, value <= tolerance});
    }
    void flag(std::uint64_t n, std::string metric, bool ok)
    {
        rows.push_back({experiment_, n, std::move(metric), ok ? 1.0 : 0.0, 1.0, {}, ok});
    }

    std::vector<ReportRow> rows;

private:
    std::string experiment_;
};

MomentList convolve_row(const CircleRow& row, Mode mode, std::size_t order)
{
    switch (mode) {
    case Mode::boolean:
        return boolean_convolve_circle(row.entries, row.lambda, order).moments;
    case Mode::free:
        return free_convolve_circle(row.entries, row.lambda, order);
    case Mode::classical:
        return classical_moments_circle(row.entries, row.lambda, order);
    }
    throw error(errc::bad_params, "bad mode");
}

MomentList circle_target(const CircleLimit& limit, Mode mode, std::size_t order)
{
    if (mode == Mode::classical && limit.classical)
        return moments(*limit.classical, order);
    if (!limit.pair)
        return MomentList::haar(order);
    switch (mode) {
    case Mode::boolean:
        return boolean_limit_moments(*limit.pair, order);
    case Mode::free:
        return free_limit_moments(*limit.pair, order);
    case Mode::classical:
        return classical_limit_moments(*limit.pair, order);
    }
    throw error(errc::bad_params, "bad mode");
}

std::string experiment_label(const std::string& name, Mode mode) { return name + "." + std::string(to_string(mode)); }

} // namespace

ExperimentReport run_circle(const CircleExperiment& e, Mode mode, std::size_t order, const Tolerances& tol)
{
    validate(e.array);
    if (e.array.rows.empty())
        throw error(errc::bad_params, "array has no rows");
    if (order < 1)
        throw error(errc::bad_params, "order must be at least 1");

    CircleLimit limit;
    if (e.limit) {
        limit = *e.limit;
    } else {
        const auto last = accumulate(e.array.rows.back(), e.array.tau);
        limit.pair = CircleGeneratingPair(last.gamma, last.sigma);
    }
    const std::size_t cmp = std::min(compared_orders, order);
    const double tolerance = limit.exponential ? tol.exponential : tol.moment_distance;
    const MomentList target = circle_target(limit, mode, order);
    const auto grid_half = disk_grid(0.5);
    const auto grid_quarter = disk_grid(0.25);

    ExperimentReport report;
    report.experiment = experiment_label(e.name, mode);
    report.mode = mode;
    RowSink sink(report.experiment);

    std::vector<double> distances;
    for (std::size_t i = 0; i < e.array.rows.size(); ++i) {
        const CircleRow& row = e.array.rows[i];
        const bool final = i + 1 == e.array.rows.size();
        CircleStep step;
        step.n = row.n;
        step.moments = convolve_row(row, mode, order);
        step.target = target;
        step.distance = moment_distance(step.moments, target, cmp);
        step.accumulators = accumulate(row, e.array.tau);
        distances.push_back(step.distance);

        const std::uint64_t n = row.n;
        if (final)
            sink.bounded(n, "moment_distance", step.distance, 0.0, tolerance);
        else
            sink.info(n, "moment_distance", step.distance);

        const auto& acc = step.accumulators;
        sink.info(n, "sigma_mass", acc.sigma.total_mass());
        sink.info(n, "gamma_re", acc.gamma.real());
        sink.info(n, "gamma_im", acc.gamma.imag());
        if (limit.pair) {
            double gap = 0.0;
            for (int p = 1; p <= static_cast<int>(compared_orders); ++p)
                gap = std::max(gap, std::abs(acc.sigma.fourier(p) - limit.pair->sigma.fourier(p)));
            sink.info(n, "sigma_fourier_gap", gap);
            sink.info(n, "gamma_gap", std::abs(acc.gamma - limit.pair->gamma));
        }
        cplx product = row.lambda;
        for (const auto& f : row.entries)
            product *= int_pow(fourier(f.measure, 1), f.count);
        sink.info(n, "first_moment_product_re", product.real());
        sink.info(n, "first_moment_product_im", product.imag());
        sink.info(n, "infinitesimal_sup", infinitesimal_sup(row.entries, 0.5));
        sink.info(n, "psi_uniformity", psi_uniformity(row.entries, grid_half));
        sink.info(n, "max_centering_angle", max_centering_angle(row.entries, e.array.tau));
        sink.info(n, "h_ratio", h_ratio(row.entries, e.array.tau, grid_quarter));
        sink.info(n, "product_vs_h_gap", product_vs_h_gap(row, e.array.tau, grid_quarter));

        if (final && mode == Mode::boolean && limit.pair && order >= 2) {
            // the limit's B, rebuilt from the last row, stays away from zero
            const Series b = b_series(step.moments, order - 1);
            double lo = std::numeric_limits<double>::infinity();
            for (const cplx z : grid_half)
                lo = std::min(lo, std::abs(b.evaluate(z)));
            sink.rows.push_back({report.experiment, n, "limit_b_min", lo, {}, {}, lo > 0.0});
        }
        report.circle_steps.push_back(std::move(step));
    }
    if (distances.size() > 1)
        sink.flag(e.array.rows.back().n, "moment_distance_decreasing", decreasing(distances));

    report.rows = std::move(sink.rows);
    return report;
}

ExperimentReport run_line(const LineExperiment& e, Mode mode, std::size_t order, const Tolerances& tol)
{
    validate(e.array);
    if (e.array.rows.empty())
        throw error(errc::bad_params, "array has no rows");
    if (mode == Mode::free && order < 4)
        throw error(errc::bad_params, "free line runs compare four moments");

    LineGeneratingPair limit;
    if (e.limit) {
        limit = *e.limit;
    } else {
        const auto last = accumulate(e.array.rows.back());
        limit = {last.gamma, last.sigma};
    }

    ExperimentReport report;
    report.experiment = experiment_label(e.name, mode);
    report.mode = mode;
    RowSink sink(report.experiment);

    std::optional<LineMeasure> target_law;
    std::vector<double> target_moments;
    if (mode == Mode::boolean)
        target_law = measure_from_e(nevanlinna_fraction(limit));
    if (mode == Mode::free)
        for (const cplx m : moments_from_phi_tail(free_phi_tail(limit, order)))
            target_moments.push_back(m.real());

    std::vector<double> distances, e_gaps;
    for (std::size_t i = 0; i < e.array.rows.size(); ++i) {
        const LineRow& row = e.array.rows[i];
        const bool final = i + 1 == e.array.rows.size();
        const std::uint64_t n = row.n;
        LineStep step;
        step.n = n;
        step.accumulators = accumulate(row);

        auto report_distance = [&](const std::string& metric, double value, double tolerance) {
            if (final)
                sink.bounded(n, metric, value, 0.0, tolerance);
            else
                sink.info(n, metric, value);
        };

        switch (mode) {
        case Mode::boolean: {
            step.output = boolean_convolve_line(row.entries, row.shift);
            step.distance = levy_distance(*step.output, *target_law);
            for (const double y : {2.0, 5.0, 10.0}) {
                const cplx z(0.0, y);
                step.e_gap = std::max(step.e_gap, std::abs(cauchy_transforms(*step.output, z).e - nevanlinna_e(limit, z)));
            }
            report_distance("levy_distance", step.distance, tol.levy);
            report_distance("e_gap", step.e_gap, tol.e_gap);
            sink.info(n, "atoms", static_cast<double>(step.output->atoms().size()));
            e_gaps.push_back(step.e_gap);
            break;
        }
        case Mode::classical: {
            for (int j = 0; j < 128; ++j) {
                const double t = -pi + 2.0 * pi * j / 127;
                step.distance = std::max(step.distance, std::abs(characteristic_function(row.entries, row.shift, t) -
                                                                 classical_characteristic(limit, t)));
            }
            report_distance("charfn_gap", step.distance, tol.charfn);
            break;
        }
        case Mode::free: {
            step.moments = free_convolve_line(row.entries, row.shift, order);
            for (std::size_t j = 1; j <= 4; ++j)
                step.distance = std::max(step.distance, std::abs(step.moments[j] - target_moments[j]));
            report_distance("moment_gap", step.distance, tol.moment_gap);
            break;
        }
        }
        distances.push_back(step.distance);

        const auto& acc = step.accumulators;
        sink.info(n, "sigma_mass", acc.sigma.total_mass());
        sink.info(n, "gamma", acc.gamma);
        sink.info(n, "sigma_mass_gap", std::abs(acc.sigma.total_mass() - limit.sigma.total_mass()));
        sink.info(n, "gamma_gap", std::abs(acc.gamma - limit.gamma));
        sink.info(n, "infinitesimal_sup", infinitesimal_sup(row.entries, 0.5));
        for (const double y : {1.0, 2.0, 5.0}) {
            const double ratio = f_ratio(row.entries, y);
            const std::string metric = "f_ratio_y" + std::to_string(static_cast<int>(y));
            if (n >= 16)
                sink.rows.push_back({report.experiment, n, metric, ratio, 3.0 + 6.0 * y, {}, ratio <= 3.0 + 6.0 * y});
            else
                sink.info(n, metric, ratio);
        }
        report.line_steps.push_back(std::move(step));
    }

    const std::uint64_t last = e.array.rows.back().n;
    if (distances.size() > 1) {
        const char* name = mode == Mode::boolean ? "levy_distance_decreasing"
                           : mode == Mode::free  ? "moment_gap_decreasing"
                                                 : "charfn_gap_decreasing";
        sink.flag(last, name, decreasing(distances));
        if (mode == Mode::boolean)
            sink.flag(last, "e_gap_decreasing", decreasing(e_gaps));
    }
    report.rows = std::move(sink.rows);
    return report;
}

ExperimentReport run(const Experiment& e, Mode mode, std::size_t order, const Tolerances& tol)
{
    return std::visit(
        [&](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, CircleExperiment>)
                return run_circle(x, mode, order, tol);
            else
                return run_line(x, mode, order, tol);
        },
        e);
}

// ---- exponential sums

ExpSumComparison compare_exp_sums(const std::vector<double>& r, const std::vector<std::vector<cplx>>& z_rows,
                                  const std::vector<std::vector<cplx>>& w_rows,
                                  const std::vector<std::vector<double>>& s_rows)
{
    const std::size_t rows = r.size();
    if (z_rows.size() != rows || w_rows.size() != rows || s_rows.size() != rows)
        throw error(errc::bad_params, "row counts differ");
    for (std::size_t n = 0; n < rows; ++n)
        if (z_rows[n].size() != w_rows[n].size() || z_rows[n].size() != s_rows[n].size())
            throw error(errc::bad_params, "row lengths differ");

    constexpr double slack = 1e-12;
    ExpSumComparison out;

    for (std::size_t n = 0; n < rows; ++n) {
        double sum = 0.0;
        for (const double s : s_rows[n]) {
            if (!(s >= 0.0))
                throw hypothesis_error(1, "s_nk must be nonnegative");
            sum += s;
        }
        if (!std::isfinite(sum))
            throw hypothesis_error(1, "sum of s_nk is unbounded");
        out.s_bound = std::max(out.s_bound, sum);
    }

    for (std::size_t n = 0; n < rows; ++n)
        for (std::size_t k = 0; k < z_rows[n].size(); ++k)
            if (z_rows[n][k].real() > slack || w_rows[n][k].real() > slack)
                throw hypothesis_error(2, "Re z_nk and Re w_nk must be <= 0");

    for (std::size_t n = 0; n < rows; ++n) {
        double eps = 0.0;
        for (std::size_t k = 0; k < z_rows[n].size(); ++k) {
            const cplx z = z_rows[n][k], w = w_rows[n][k];
            if (w == cplx{}) {
                if (z != cplx{})
                    throw hypothesis_error(3, "z_nk != 0 where w_nk = 0");
                continue;
            }
            eps = std::max(eps, std::abs(z / w - 1.0));
        }
        out.eps.push_back(eps);
    }
    if (rows > 1 && out.eps.back() > slack && out.eps.back() >= out.eps.front())
        throw hypothesis_error(3, "eps_n does not decrease to zero");

    for (std::size_t n = 0; n < rows; ++n)
        for (std::size_t k = 0; k < w_rows[n].size(); ++k) {
            const cplx w = w_rows[n][k];
            const double excess = std::abs(w.imag()) - s_rows[n][k];
            if (excess <= slack)
                continue;
            if (w.real() == 0.0)
                throw hypothesis_error(4, "|Im w_nk| exceeds s_nk where Re w_nk = 0");
            out.best_m = std::max(out.best_m, excess / std::abs(w.real()));
        }

    for (std::size_t n = 0; n < rows; ++n) {
        cplx sz = 0.0, sw = 0.0;
        double s = 0.0;
        for (std::size_t k = 0; k < z_rows[n].size(); ++k) {
            sz += z_rows[n][k];
            sw += w_rows[n][k];
            s += s_rows[n][k];
        }
        const double eps = out.eps[n], m = out.best_m;
        out.limit_z.push_back(std::exp(cplx(0.0, r[n]) + sz));
        out.limit_w.push_back(std::exp(cplx(0.0, r[n]) + sw));
        out.gap.push_back(std::abs(out.limit_z.back() - out.limit_w.back()));
        out.difference.push_back(std::abs(sz - sw));
        out.difference_bound.push_back((1.0 + m) * eps * -sw.real() + eps * s);
        out.shrunk_real_w.push_back((1.0 - eps - m * eps) * -sw.real());
        out.real_z_bound.push_back(-sz.real() + eps * s);
    }
    return out;
}

NonuniquenessResult nonuniqueness_check(int p, std::size_t n)
{
    if (n < 1024 || (n & (n - 1)) != 0)
        throw error(errc::bad_params, "N must be a power of two >= 1024");
    cplx plus = 0.0, minus = 0.0, first = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = 2.0 * pi * static_cast<double>(j) / static_cast<double>(n);
        const double s = std::sin(theta);
        const double f = 4.0 * pi * s;
        // the (1 - Re zeta) density cancels the kernel's denominator
        const cplx g = std::polar(1.0, p * theta) - 1.0 - cplx(0.0, p * s);
        if (f > 0.0)
            plus += g * f;
        else
            minus += g * -f;
        first += std::polar(1.0, theta) * (1.0 - std::cos(theta)) * f;
    }
    const double dn = static_cast<double>(n);
    return {std::exp(plus / dn), std::exp(minus / dn), std::abs(first / dn)};
}

// ---- output

void write_csv(std::ostream& out, std::vector<ReportRow> rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.experiment, a.n, a.metric) < std::tie(b.experiment, b.n, b.metric);
    });
    // shortest text that reads back to the same double
    auto number = [](double v) {
        char buf[40];
        return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
    };
    out << "experiment,n,metric,value,target,tolerance,pass\n";
    for (const auto& r : rows) {
        out << r.experiment << ',' << r.n << ',' << r.metric << ',' << number(r.value) << ',';
        if (r.target)
            out << number(*r.target);
        out << ',';
        if (r.tolerance)
            out << number(*r.tolerance);
        out << ',';
        if (r.pass)
            out << (*r.pass ? "true" : "false");
        out << '\n';
    }
}

} // namespace nclt
