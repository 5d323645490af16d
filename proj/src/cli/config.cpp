#include "hypvol/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace hypvol {

using nlohmann::json;

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::fuchsian_group: return "fuchsian_group";
        case Mode::pleated_core: return "pleated_core";
        case Mode::anomaly_check: return "anomaly_check";
    }
    return "unknown";
}

std::string to_string(ConventionChoice choice) {
    switch (choice) {
        case ConventionChoice::paper: return "paper";
        case ConventionChoice::derived: return "derived";
        case ConventionChoice::both: return "both";
    }
    return "unknown";
}

ConventionChoice convention_choice_from_string(const std::string& name) {
    if (name == "paper") return ConventionChoice::paper;
    if (name == "derived") return ConventionChoice::derived;
    if (name == "both") return ConventionChoice::both;
    throw ConfigError("", "convention must be paper, derived or both, got '" + name + "'");
}

std::vector<Convention> conventions(ConventionChoice choice) {
    switch (choice) {
        case ConventionChoice::paper: return {Convention::paper};
        case ConventionChoice::derived: return {Convention::derived};
        case ConventionChoice::both: return {Convention::paper, Convention::derived};
    }
    return {};
}

std::string to_string(FieldKind kind) {
    switch (kind) {
        case FieldKind::zero: return "zero";
        case FieldKind::constant: return "constant";
        case FieldKind::log_cosh: return "log_cosh";
        case FieldKind::sin_theta: return "sin_theta";
        case FieldKind::random: return "random";
        case FieldKind::csv: return "csv";
    }
    return "unknown";
}

namespace {

/// A JSON value together with its pointer, for error messages.
struct Node {
    const json& value;
    std::string path;

    [[noreturn]] void fail(const std::string& message) const { throw ConfigError(path.empty() ? "/" : path, message); }

    bool has(const char* key) const { return value.contains(key); }

    Node at(const char* key) const {
        if (!value.contains(key)) {
            fail(std::string("missing key '") + key + "'");
        }
        return {value.at(key), path + "/" + key};
    }
    Node at(std::size_t i) const { return {value.at(i), path + "/" + std::to_string(i)}; }

    void only_keys(std::initializer_list<const char*> keys) const {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& item : value.items()) {
            if (!allowed.contains(item.key())) {
                throw ConfigError(path + "/" + item.key(), "unknown key");
            }
        }
    }

    const json& object() const {
        if (!value.is_object()) fail("expected an object");
        return value;
    }
    const json& array() const {
        if (!value.is_array()) fail("expected an array");
        return value;
    }
    double number() const {
        if (!value.is_number()) fail("expected a number");
        return value.get<double>();
    }
    Complex complex_number() const {
        if (value.is_number()) {
            return {value.get<double>(), 0.0};
        }
        if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
            return {value[0].get<double>(), value[1].get<double>()};
        }
        fail("expected a number or a [re, im] pair");
    }
    long long integer() const {
        if (!value.is_number_integer()) fail("expected an integer");
        return value.get<long long>();
    }
    std::size_t index() const {
        const long long v = integer();
        if (v < 0) fail("expected a nonnegative integer");
        return static_cast<std::size_t>(v);
    }
    std::string string() const {
        if (!value.is_string()) fail("expected a string");
        return value.get<std::string>();
    }
};

json complex_json(Complex z) {
    if (z.imag() == 0.0) {
        return z.real();
    }
    return json::array({z.real(), z.imag()});
}

Mode parse_mode(const Node& node) {
    const std::string name = node.string();
    if (name == "fuchsian_group") return Mode::fuchsian_group;
    if (name == "pleated_core") return Mode::pleated_core;
    if (name == "anomaly_check") return Mode::anomaly_check;
    node.fail("mode must be fuchsian_group, pleated_core or anomaly_check");
}

GroupConfig parse_group(const Node& root) {
    GroupConfig group;
    if (root.has("circles")) {
        const Node list = root.at("circles");
        for (std::size_t i = 0; i < list.array().size(); ++i) {
            const Node c = list.at(i);
            c.object();
            c.only_keys({"center", "radius"});
            group.circles.push_back({c.at("center").complex_number(), c.at("radius").number()});
        }
    }
    if (root.has("pairings")) {
        const Node list = root.at("pairings");
        for (std::size_t i = 0; i < list.array().size(); ++i) {
            const Node p = list.at(i);
            p.object();
            p.only_keys({"source", "target", "matrix"});
            PairingSpec spec{p.at("source").index(), p.at("target").index(), std::nullopt};
            if (p.has("matrix")) {
                const Node m = p.at("matrix");
                if (m.array().size() != 4) {
                    m.fail("matrix needs four row-major entries a, b, c, d");
                }
                spec.matrix = std::array<Complex, 4>{m.at(std::size_t{0}).complex_number(), m.at(std::size_t{1}).complex_number(),
                                                     m.at(std::size_t{2}).complex_number(), m.at(std::size_t{3}).complex_number()};
            }
            group.pairings.push_back(spec);
        }
    }
    if (root.has("axes")) {
        const Node list = root.at("axes");
        for (std::size_t i = 0; i < list.array().size(); ++i) {
            const Node a = list.at(i);
            a.object();
            a.only_keys({"p", "q", "length"});
            group.axes.push_back({a.at("p").number(), a.at("q").number(), a.at("length").number()});
        }
    }
    if (group.circles.empty() && group.axes.empty()) {
        root.fail("fuchsian_group needs circles and pairings or axes");
    }
    return group;
}

PleatedCoreData parse_pleated(const Node& root) {
    PleatedCoreData core;
    core.core_volume = root.at("core_volume").number();
    if (root.has("genus")) {
        core.genus = static_cast<int>(root.at("genus").integer());
    }
    if (root.has("boundary_area")) {
        core.boundary_area = root.at("boundary_area").number();
    }
    if (root.has("leaves")) {
        const Node list = root.at("leaves");
        for (std::size_t i = 0; i < list.array().size(); ++i) {
            const Node leaf = list.at(i);
            leaf.object();
            leaf.only_keys({"length", "theta"});
            core.leaves.push_back({leaf.at("length").number(), leaf.at("theta").number()});
        }
    }
    return core;
}

AnomalyConfig parse_anomaly(const Node& root) {
    AnomalyConfig cfg;
    if (root.has("mesh")) {
        const Node mesh = root.at("mesh");
        mesh.object();
        mesh.only_keys({"n_t", "n_theta", "T", "L", "tag"});
        if (mesh.has("n_t")) cfg.n_t = mesh.at("n_t").index();
        if (mesh.has("n_theta")) cfg.n_theta = mesh.at("n_theta").index();
        if (mesh.has("T")) cfg.half_height = mesh.at("T").number();
        if (mesh.has("L")) cfg.period = mesh.at("L").number();
        if (mesh.has("tag")) {
            const Node tag = mesh.at("tag");
            try {
                cfg.tag = metric_tag_from_string(tag.string());
            } catch (const std::invalid_argument& e) {
                tag.fail(e.what());
            }
        }
    }
    if (root.has("field")) {
        const Node field = root.at("field");
        field.object();
        field.only_keys({"kind", "value", "amplitude", "mode", "modes", "seed", "path"});
        const Node kind = field.at("kind");
        const std::string name = kind.string();
        static const std::array<FieldKind, 6> kinds{FieldKind::zero,      FieldKind::constant, FieldKind::log_cosh,
                                                    FieldKind::sin_theta, FieldKind::random,   FieldKind::csv};
        const auto it = std::find_if(kinds.begin(), kinds.end(), [&](FieldKind k) { return to_string(k) == name; });
        if (it == kinds.end()) {
            kind.fail("field kind must be zero, constant, log_cosh, sin_theta, random or csv");
        }
        cfg.field.kind = *it;
        if (field.has("value")) cfg.field.value = field.at("value").number();
        if (field.has("amplitude")) cfg.field.amplitude = field.at("amplitude").number();
        if (field.has("mode")) cfg.field.mode = static_cast<int>(field.at("mode").integer());
        if (field.has("modes")) cfg.field.modes = static_cast<int>(field.at("modes").integer());
        if (field.has("seed")) cfg.field.seed = static_cast<std::uint64_t>(field.at("seed").index());
        if (field.has("path")) cfg.field.path = field.at("path").string();
        if (cfg.field.kind == FieldKind::csv && cfg.field.path.empty()) {
            field.fail("csv field needs a path");
        }
    }
    return cfg;
}

std::string position(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

Config parse_config(std::string_view text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": " + position(text, e.byte), "syntax error: " + std::string(e.what()));
    }
    const Node root{doc, ""};
    root.object();

    Config config;
    config.mode = parse_mode(root.at("mode"));
    if (root.has("name")) {
        config.name = root.at("name").string();
    }
    switch (config.mode) {
        case Mode::fuchsian_group:
            root.only_keys({"name", "mode", "circles", "pairings", "axes", "epsilon_grid", "quadrature_tol",
                            "convention"});
            config.group = parse_group(root);
            break;
        case Mode::pleated_core:
            root.only_keys({"name", "mode", "core_volume", "genus", "boundary_area", "leaves", "epsilon_grid",
                            "quadrature_tol", "convention"});
            config.pleated = parse_pleated(root);
            break;
        case Mode::anomaly_check:
            root.only_keys({"name", "mode", "mesh", "field", "epsilon_grid", "quadrature_tol", "convention"});
            config.anomaly = parse_anomaly(root);
            break;
    }
    if (root.has("epsilon_grid")) {
        const Node grid = root.at("epsilon_grid");
        grid.object();
        grid.only_keys({"min", "max", "count"});
        if (grid.has("min")) config.grid.min = grid.at("min").number();
        if (grid.has("max")) config.grid.max = grid.at("max").number();
        if (grid.has("count")) config.grid.count = static_cast<int>(grid.at("count").integer());
    }
    if (root.has("quadrature_tol")) {
        config.quadrature_tol = root.at("quadrature_tol").number();
    }
    if (root.has("convention")) {
        const Node c = root.at("convention");
        try {
            config.convention = convention_choice_from_string(c.string());
        } catch (const ConfigError& e) {
            c.fail(e.what());
        }
    }
    check_config(config);
    return config;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path, "cannot open config file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    Config config = parse_config(buffer.str(), path);
    config.base_dir = std::filesystem::path(path).parent_path().string();
    return config;
}

void check_config(const Config& config) {
    const EpsilonGrid& g = config.grid;
    if (!(g.min > 0.0 && g.max < 1.0 && g.min < g.max)) {
        throw ConfigError("/epsilon_grid", "epsilon range must satisfy 0 < min < max < 1");
    }
    if (g.count < 8) {
        throw ConfigError("/epsilon_grid/count", "at least 8 samples are needed for the expansion fit");
    }
    if (!(config.quadrature_tol > 0.0 && config.quadrature_tol < 1.0)) {
        throw ConfigError("/quadrature_tol", "tolerance must lie in (0, 1)");
    }
}

std::string echo_config(const Config& config) {
    json doc;
    if (!config.name.empty()) {
        doc["name"] = config.name;
    }
    doc["mode"] = to_string(config.mode);
    switch (config.mode) {
        case Mode::fuchsian_group: {
            json circles = json::array();
            for (const Circle& c : config.group.circles) {
                circles.push_back({{"center", complex_json(c.center)}, {"radius", c.radius}});
            }
            json pairings = json::array();
            for (const PairingSpec& p : config.group.pairings) {
                json item{{"source", p.source}, {"target", p.target}};
                if (p.matrix) {
                    json m = json::array();
                    for (Complex z : *p.matrix) {
                        m.push_back(complex_json(z));
                    }
                    item["matrix"] = m;
                }
                pairings.push_back(item);
            }
            json axes = json::array();
            for (const AxisSpec& a : config.group.axes) {
                axes.push_back({{"p", a.p}, {"q", a.q}, {"length", a.length}});
            }
            doc["circles"] = circles;
            doc["pairings"] = pairings;
            doc["axes"] = axes;
            break;
        }
        case Mode::pleated_core: {
            doc["core_volume"] = config.pleated.core_volume;
            doc["genus"] = config.pleated.genus;
            if (config.pleated.boundary_area) {
                doc["boundary_area"] = *config.pleated.boundary_area;
            }
            json leaves = json::array();
            for (const PleatLeaf& leaf : config.pleated.leaves) {
                leaves.push_back({{"length", leaf.length}, {"theta", leaf.angle}});
            }
            doc["leaves"] = leaves;
            break;
        }
        case Mode::anomaly_check: {
            const AnomalyConfig& a = config.anomaly;
            doc["mesh"] = {{"n_t", a.n_t}, {"n_theta", a.n_theta}, {"T", a.half_height}, {"L", a.period},
                           {"tag", to_string(a.tag)}};
            json field{{"kind", to_string(a.field.kind)}, {"value", a.field.value}, {"amplitude", a.field.amplitude},
                       {"mode", a.field.mode},            {"modes", a.field.modes}, {"seed", a.field.seed}};
            if (!a.field.path.empty()) {
                field["path"] = a.field.path;
            }
            doc["field"] = field;
            break;
        }
    }
    doc["epsilon_grid"] = {{"min", config.grid.min}, {"max", config.grid.max}, {"count", config.grid.count}};
    doc["quadrature_tol"] = config.quadrature_tol;
    doc["convention"] = to_string(config.convention);
    return doc.dump(2) + "\n";
}

SchottkyData build_group(const GroupConfig& group) {
    SchottkyData data;
    data.circles = group.circles;
    for (const PairingSpec& p : group.pairings) {
        if (p.source >= data.circles.size() || p.target >= data.circles.size()) {
            throw ValidationError(ValidationFailure::malformed, "pairing refers to a missing circle");
        }
        Mobius map;
        if (p.matrix) {
            const auto& m = *p.matrix;
            const bool real = std::all_of(m.begin(), m.end(), [](Complex z) { return z.imag() == 0.0; });
            map = real ? Mobius::real(m[0].real(), m[1].real(), m[2].real(), m[3].real())
                       : Mobius::complex(m[0], m[1], m[2], m[3]);
        } else {
            map = standard_pairing(data.circles[p.source], data.circles[p.target]);
        }
        data.pairings.push_back({p.source, p.target, map});
    }
    for (const AxisSpec& a : group.axes) {
        const AxisGenerator gen = generator_from_axis(a.p, a.q, a.length);
        const std::size_t base = data.circles.size();
        data.circles.push_back(gen.source);
        data.circles.push_back(gen.target);
        data.pairings.push_back({base, base + 1, gen.map});
    }
    data.fuchsian = std::all_of(data.circles.begin(), data.circles.end(), [](const Circle& c) { return c.is_real(); }) &&
                    std::all_of(data.pairings.begin(), data.pairings.end(),
                                [](const Pairing& p) { return p.map.field() == Field::real; });
    return data;
}

}  // namespace hypvol
