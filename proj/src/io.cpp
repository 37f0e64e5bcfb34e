#include "nclt/io.hpp"

#include <algorithm>
#include <fstream>

#include "nclt/error.hpp"

namespace nclt {

namespace {

[[noreturn]] void bad(const std::string& what) { throw error(errc::bad_params, what); }

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

double number(const json& j, const char* what)
{
    if (!j.is_number())
        bad(std::string(what) + " must be a number");
    return j.get<double>();
}

std::uint64_t count(const json& j, const char* what)
{
    if (!j.is_number_unsigned())
        bad(std::string(what) + " must be a nonnegative integer");
    return j.get<std::uint64_t>();
}

void only_keys(const json& j, std::initializer_list<const char*> allowed)
{
    for (const auto& [key, value] : j.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            bad("unknown field \"" + key + "\"");
}

std::vector<std::pair<double, double>> pairs(const json& j, const char* what)
{
    if (!j.is_array())
        bad(std::string(what) + " must be an array of [x, w] pairs");
    std::vector<std::pair<double, double>> out;
    for (const auto& a : j) {
        if (!a.is_array() || a.size() != 2)
            bad(std::string(what) + " must be an array of [x, w] pairs");
        out.emplace_back(number(a[0], what), number(a[1], what));
    }
    return out;
}

// An angle, or [re, im] normalized to the unit circle.
cplx unit(const json& j, const char* what)
{
    if (j.is_number())
        return std::polar(1.0, j.get<double>());
    if (j.is_array() && j.size() == 2) {
        const cplx z(number(j[0], what), number(j[1], what));
        if (std::abs(std::abs(z) - 1.0) > 1e-9)
            bad(std::string(what) + " must lie on the unit circle");
        return z / std::abs(z);
    }
    bad(std::string(what) + " must be an angle or [re, im]");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

template <class Factor, class Parse>
std::vector<Factor> entries(const json& j, Parse parse)
{
    if (!j.is_array() || j.empty())
        bad("row entries must be a nonempty array");
    std::vector<Factor> out;
    for (const auto& e : j) {
        only_keys(e, {"measure", "count"});
        out.push_back({parse(field(e, "measure")), e.contains("count") ? count(e["count"], "count") : 1});
    }
    return out;
}

std::vector<std::uint64_t> ladder_of(const json& j)
{
    if (!j.contains("ladder"))
        return {};
    std::vector<std::uint64_t> out;
    if (!j["ladder"].is_array())
        bad("ladder must be an array");
    for (const auto& n : j["ladder"])
        out.push_back(count(n, "ladder entry"));
    return out;
}

template <class Row>
std::vector<Row> keep_ladder(std::vector<Row> rows, const std::vector<std::uint64_t>& ladder)
{
    if (ladder.empty())
        return rows;
    std::vector<Row> out;
    for (const auto n : ladder) {
        const auto it = std::find_if(rows.begin(), rows.end(), [&](const Row& r) { return r.n == n; });
        if (it == rows.end())
            bad("ladder entry " + std::to_string(n) + " has no row");
        out.push_back(*it);
    }
    return out;
}

Experiment explicit_array(const json& a, const std::vector<std::uint64_t>& ladder)
{
    const std::string domain = field(a, "domain").is_string() ? a["domain"].get<std::string>() : "";
    const std::string name = a.contains("name") ? a["name"].get<std::string>() : "array";
    const json& rows = field(a, "rows");
    if (!rows.is_array())
        bad("rows must be an array");

    if (domain == "circle") {
        only_keys(a, {"domain", "name", "tau", "limit", "rows"});
        CircleExperiment e{name, {{}, a.contains("tau") ? number(a["tau"], "tau") : 1.0}, std::nullopt};
        for (const auto& r : rows) {
            only_keys(r, {"n", "lambda", "entries"});
            e.array.rows.push_back({count(field(r, "n"), "n"), entries<CircleFactor>(field(r, "entries"), circle_measure_from_json),
                                    r.contains("lambda") ? unit(r["lambda"], "lambda") : cplx(1.0)});
        }
        e.array.rows = keep_ladder(std::move(e.array.rows), ladder);
        if (a.contains("limit")) {
            CircleLimit limit;
            if (a["limit"] != "haar")
                limit.pair = circle_pair_from_json(a["limit"]);
            e.limit = limit;
        }
        return e;
    }
    if (domain == "line") {
        only_keys(a, {"domain", "name", "limit", "rows"});
        LineExperiment e{name, {}, std::nullopt};
        for (const auto& r : rows) {
            only_keys(r, {"n", "shift", "entries"});
            e.array.rows.push_back({count(field(r, "n"), "n"), entries<LineFactor>(field(r, "entries"), line_measure_from_json),
                                    r.contains("shift") ? number(r["shift"], "shift") : 0.0});
        }
        e.array.rows = keep_ladder(std::move(e.array.rows), ladder);
        if (a.contains("limit"))
            e.limit = line_pair_from_json(a["limit"]);
        return e;
    }
    bad("array domain must be \"circle\" or \"line\"");
}

Tolerances tolerances_from_json(const json& j)
{
    only_keys(j, {"moment_distance", "exponential", "levy", "e_gap", "charfn", "moment_gap"});
    Tolerances t;
    auto set = [&](const char* key, double& slot) {
        if (j.contains(key)) {
            slot = number(j[key], key);
            if (!(slot >= 0.0))
                bad(std::string(key) + " must be nonnegative");
        }
    };
    set("moment_distance", t.moment_distance);
    set("exponential", t.exponential);
    set("levy", t.levy);
    set("e_gap", t.e_gap);
    set("charfn", t.charfn);
    set("moment_gap", t.moment_gap);
    return t;
}

} // namespace

json to_json(const CircleMeasure& mu)
{
    if (mu.is_haar())
        return {{"type", "haar"}};
    json atoms = json::array();
    for (const auto& a : mu.atoms())
        atoms.push_back({a.angle, a.weight});
    return {{"type", "circleAtomic"}, {"atoms", atoms}};
}

json to_json(const LineMeasure& nu)
{
    json atoms = json::array();
    for (const auto& a : nu.atoms())
        atoms.push_back({a.position, a.weight});
    return {{"type", "lineAtomic"}, {"atoms", atoms}};
}

CircleMeasure circle_measure_from_json(const json& j)
{
    const json& type = field(j, "type");
    if (type == "haar") {
        only_keys(j, {"type"});
        return CircleMeasure::haar();
    }
    if (type != "circleAtomic")
        bad("circle measure type must be \"circleAtomic\" or \"haar\"");
    only_keys(j, {"type", "atoms"});
    std::vector<CircleAtom> atoms;
    for (const auto& [x, w] : pairs(field(j, "atoms"), "atoms"))
        atoms.push_back({x, w});
    return CircleMeasure::atomic(std::move(atoms));
}

LineMeasure line_measure_from_json(const json& j)
{
    if (field(j, "type") != "lineAtomic")
        bad("line measure type must be \"lineAtomic\"");
    only_keys(j, {"type", "atoms"});
    std::vector<LineAtom> atoms;
    for (const auto& [x, w] : pairs(field(j, "atoms"), "atoms"))
        atoms.push_back({x, w});
    return LineMeasure::atomic(std::move(atoms));
}

json to_json(const CircleGeneratingPair& p)
{
    json sigma = json::array();
    for (const auto& a : p.sigma.atoms())
        sigma.push_back({a.angle, a.weight});
    return {{"gamma", complex_json(p.gamma)}, {"sigma", sigma}};
}

CircleGeneratingPair circle_pair_from_json(const json& j)
{
    only_keys(j, {"gamma", "sigma"});
    std::vector<CircleAtom> atoms;
    if (j.contains("sigma"))
        for (const auto& [x, s] : pairs(j["sigma"], "sigma"))
            atoms.push_back({x, s});
    return {j.contains("gamma") ? unit(j["gamma"], "gamma") : cplx(1.0), PositiveCircleMeasure(std::move(atoms))};
}

json to_json(const LineGeneratingPair& p)
{
    json sigma = json::array();
    for (const auto& a : p.sigma.atoms())
        sigma.push_back({a.position, a.weight});
    return {{"gamma", p.gamma}, {"sigma", sigma}};
}

LineGeneratingPair line_pair_from_json(const json& j)
{
    only_keys(j, {"gamma", "sigma"});
    std::vector<LineAtom> atoms;
    if (j.contains("sigma"))
        for (const auto& [x, s] : pairs(j["sigma"], "sigma"))
            atoms.push_back({x, s});
    return {j.contains("gamma") ? number(j["gamma"], "gamma") : 0.0, PositiveLineMeasure(std::move(atoms))};
}

RunConfig parse_config(const json& j)
{
    try {
        only_keys(j, {"array", "mode", "ladder", "order", "tolerances"});
        RunConfig c;
        const auto ladder = ladder_of(j);
        const json& a = field(j, "array");
        if (a.is_object() && a.contains("preset")) {
            only_keys(a, {"preset", "t", "lambda_angle", "lambda"});
            PresetParams p;
            if (a.contains("t"))
                p.t = number(a["t"], "t");
            if (a.contains("lambda_angle"))
                p.lambda_angle = number(a["lambda_angle"], "lambda_angle");
            if (a.contains("lambda"))
                p.lambda = number(a["lambda"], "lambda");
            p.ladder = ladder;
            if (!a["preset"].is_string())
                bad("preset must be a name");
            c.experiment = preset(a["preset"].get<std::string>(), p);
        } else {
            c.experiment = explicit_array(a, ladder);
        }
        if (j.contains("mode")) {
            if (!j["mode"].is_string())
                bad("mode must be a string");
            c.mode = parse_mode(j["mode"].get<std::string>());
        }
        if (j.contains("order")) {
            c.order = count(j["order"], "order");
            if (c.order < 1)
                bad("order must be at least 1");
        }
        if (j.contains("tolerances"))
            c.tolerances = tolerances_from_json(j["tolerances"]);
        return c;
    } catch (const json::exception& e) {
        bad(e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        bad("cannot read " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        bad(path.string() + ": " + e.what());
    }
    return parse_config(j);
}

} // namespace nclt
