#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "nclt/acceptance.hpp"
#include "nclt/error.hpp"
#include "nclt/io.hpp"

using namespace nclt;

namespace {

// "-" writes to stdout.
void emit(const std::string& path, const std::vector<ReportRow>& rows)
{
    if (path == "-") {
        write_csv(std::cout, rows);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw error(errc::bad_params, "cannot write " + path);
    write_csv(out, rows);
}

std::vector<ReportRow> run_modes(const Experiment& e, const std::vector<Mode>& modes, std::size_t order,
                                 const Tolerances& tol, bool& passed)
{
    std::vector<ReportRow> rows;
    for (const Mode m : modes) {
        auto report = run(e, m, order, tol);
        passed = passed && report.passed();
        std::fprintf(stderr, "%s: %s\n", report.experiment.c_str(), report.passed() ? "pass" : "FAIL");
        rows.insert(rows.end(), report.rows.begin(), report.rows.end());
    }
    return rows;
}

int check()
{
    bool all = true;
    for (const auto& r : run_acceptance()) {
        std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str());
        for (const auto& d : r.details)
            std::printf("    %s\n", d.c_str());
        all = all && r.passed;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Limit theorems for boolean, free and classical convolution on the circle and the line"};
    app.require_subcommand(1);

    auto* preset_cmd = app.add_subcommand("preset", "run a named array over its ladder");
    std::string name, out;
    std::optional<double> t, lambda_angle, lambda;
    std::vector<std::uint64_t> ladder;
    std::optional<std::string> mode;
    std::size_t order = default_order;
    preset_cmd->add_option("name", name, "cor37, cor38, remark_rho, bern_R or poisson_R")->required();
    preset_cmd->add_option("--t", t, "time parameter (cor37, cor38)");
    preset_cmd->add_option("--lambda-angle", lambda_angle, "angle of lambda (cor38)");
    preset_cmd->add_option("--lambda", lambda, "rate (poisson_R)");
    preset_cmd->add_option("--n-ladder", ladder, "row indices, e.g. 100,1000,10000")->delimiter(',');
    preset_cmd->add_option("--mode", mode, "boolean, free or classical; all three when omitted");
    preset_cmd->add_option("--order", order, "moment order")->check(CLI::PositiveNumber);
    preset_cmd->add_option("--out", out, "CSV path, - for stdout")->required();

    auto* run_cmd = app.add_subcommand("run", "run an array described by a JSON config");
    std::string config;
    run_cmd->add_option("--config", config, "config JSON")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out, "CSV path, - for stdout")->required();

    app.add_subcommand("check", "run the acceptance suite; nonzero exit on any failure");

    CLI11_PARSE(app, argc, argv);

    try {
        bool passed = true;
        if (*preset_cmd) {
            const PresetParams params{t, lambda_angle, lambda, ladder};
            std::vector<Mode> modes{Mode::boolean, Mode::free, Mode::classical};
            if (mode)
                modes = {parse_mode(*mode)};
            emit(out, run_modes(preset(name, params), modes, order, {}, passed));
        } else if (*run_cmd) {
            const auto c = load_config(config);
            emit(out, run_modes(c.experiment, {c.mode}, c.order, c.tolerances, passed));
        } else {
            return check();
        }
        return passed ? 0 : 1;
    } catch (const error& e) {
        std::fprintf(stderr, "nclt: %s\n", e.what());
        return 2;
    }
}
