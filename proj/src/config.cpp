#include "nspfc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nspfc/errors.hpp"
#include "nspfc/noise.hpp"
#include "nspfc/snapshot.hpp"

namespace nspfc {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where,
                    const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.contains(it.key()))
            throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
}

double get_num(const json& j, const std::string& where, const std::string& key,
               std::optional<double> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback)
            return *fallback;
        throw ConfigError("missing \"" + key + "\" in " + where);
    }
    if (!j[key].is_number())
        throw ConfigError("\"" + key + "\" in " + where + " must be a number");
    return j[key].get<double>();
}

CoefficientFamily parse_family(const json& j, const std::string& where) {
    if (!j.is_object())
        throw ConfigError(where + " must be an object");
    const std::string kind = j.value("kind", "");
    if (kind == "constant") {
        reject_unknown(j, where, {"kind", "value"});
        return CoefficientFamily::constant(get_num(j, where, "value"));
    }
    if (kind == "smooth_monotone") {
        reject_unknown(j, where, {"kind", "c0", "c1", "c2"});
        const double c0 = get_num(j, where, "c0");
        const double c1 = get_num(j, where, "c1");
        const double c2 = get_num(j, where, "c2", 0.0);
        return CoefficientFamily::smooth_monotone(c0, c1, c2);
    }
    throw ConfigError(where + ".kind must be \"constant\" or \"smooth_monotone\"");
}

std::uint64_t get_seed(const json& j, const std::string& where) {
    if (!j.contains("seed"))
        throw ConfigError("stochastic generator in " + where + " requires a \"seed\"");
    return j["seed"].get<std::uint64_t>();
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config root must be a JSON object");
    reject_unknown(j, "config", {"grid", "params", "step", "initial", "output", "oracle_modes"});

    RunConfig cfg;

    {
        if (!j.contains("grid"))
            throw ConfigError("missing \"grid\" section");
        const json& g = j["grid"];
        reject_unknown(g, "grid", {"dim", "n", "box_length", "dealias_fraction"});
        cfg.grid.dim = static_cast<int>(get_num(g, "grid", "dim", 2.0));
        cfg.grid.n = static_cast<int>(get_num(g, "grid", "n"));
        cfg.grid.box_length = get_num(g, "grid", "box_length", 1.0);
        cfg.grid.dealias_fraction = get_num(g, "grid", "dealias_fraction", 2.0 / 3.0);
        validate(cfg.grid);
    }

    {
        if (!j.contains("params"))
            throw ConfigError("missing \"params\" section");
        const json& p = j["params"];
        reject_unknown(p, "params", {"M", "r", "eta", "mobility"});
        const double M = get_num(p, "params", "M", 1.0);
        const double r = get_num(p, "params", "r");
        if (!p.contains("eta") || !p.contains("mobility"))
            throw ConfigError("params must declare eta and mobility families");
        cfg.params = make_params(M, r, parse_family(p["eta"], "params.eta"),
                                 parse_family(p["mobility"], "params.mobility"));
    }

    {
        if (!j.contains("step"))
            throw ConfigError("missing \"step\" section");
        const json& s = j["step"];
        reject_unknown(s, "step",
                       {"dt", "t_end", "max_steps", "stabilization_S", "stabilization_kappa",
                        "freeze_velocity"});
        cfg.step.dt = get_num(s, "step", "dt");
        cfg.step.t_end = get_num(s, "step", "t_end");
        cfg.step.max_steps = static_cast<long>(get_num(s, "step", "max_steps", 1e6));
        cfg.step.stabilization_S = get_num(s, "step", "stabilization_S", 2.0);
        cfg.step.stabilization_kappa = get_num(s, "step", "stabilization_kappa", 0.0);
        if (s.contains("freeze_velocity")) {
            if (!s["freeze_velocity"].is_boolean())
                throw ConfigError("step.freeze_velocity must be a boolean");
            cfg.step.freeze_velocity = s["freeze_velocity"].get<bool>();
        }
        validate(cfg.step);
    }

    {
        if (!j.contains("initial"))
            throw ConfigError("missing \"initial\" section");
        const json& ini = j["initial"];
        reject_unknown(ini, "initial", {"phi", "u"});
        if (!ini.contains("phi") || !ini.contains("u"))
            throw ConfigError("initial must declare both phi and u");

        const json& p = ini["phi"];
        const std::string pk = p.value("kind", "");
        if (pk == "constant_plus_noise") {
            reject_unknown(p, "initial.phi", {"kind", "mean", "amplitude", "seed", "cutoff"});
            cfg.phi0.kind = PhiInitial::Kind::constant_plus_noise;
            cfg.phi0.mean = get_num(p, "initial.phi", "mean");
            cfg.phi0.amplitude = get_num(p, "initial.phi", "amplitude");
            cfg.phi0.cutoff = static_cast<int>(get_num(p, "initial.phi", "cutoff"));
            cfg.phi0.seed = cfg.phi0.amplitude != 0.0 ? get_seed(p, "initial.phi") : 0;
        } else if (pk == "single_mode") {
            reject_unknown(p, "initial.phi", {"kind", "k_index", "amplitude"});
            cfg.phi0.kind = PhiInitial::Kind::single_mode;
            if (!p.contains("k_index") || !p["k_index"].is_array())
                throw ConfigError("initial.phi.k_index must be an array of integers");
            const auto arr = p["k_index"];
            if (arr.size() != static_cast<std::size_t>(cfg.grid.dim))
                throw ConfigError("initial.phi.k_index must have grid.dim entries");
            for (std::size_t a = 0; a < arr.size(); ++a)
                cfg.phi0.k_index[a] = arr[a].get<int>();
            cfg.phi0.mode_amplitude = get_num(p, "initial.phi", "amplitude");
        } else if (pk == "snapshot") {
            reject_unknown(p, "initial.phi", {"kind", "path"});
            cfg.phi0.kind = PhiInitial::Kind::snapshot;
            cfg.phi0.path = p.value("path", "");
            if (cfg.phi0.path.empty())
                throw ConfigError("initial.phi.path must name a snapshot file");
        } else {
            throw ConfigError("initial.phi.kind must be constant_plus_noise, single_mode, or snapshot");
        }

        const json& u = ini["u"];
        const std::string uk = u.value("kind", "");
        if (uk == "zero") {
            reject_unknown(u, "initial.u", {"kind"});
            cfg.u0.kind = UInitial::Kind::zero;
        } else if (uk == "random_solenoidal") {
            reject_unknown(u, "initial.u", {"kind", "amplitude", "seed", "cutoff"});
            cfg.u0.kind = UInitial::Kind::random_solenoidal;
            cfg.u0.amplitude = get_num(u, "initial.u", "amplitude");
            cfg.u0.cutoff = static_cast<int>(get_num(u, "initial.u", "cutoff"));
            cfg.u0.seed = cfg.u0.amplitude != 0.0 ? get_seed(u, "initial.u") : 0;
        } else if (uk == "snapshot") {
            reject_unknown(u, "initial.u", {"kind", "path"});
            cfg.u0.kind = UInitial::Kind::snapshot;
            cfg.u0.path = u.value("path", "");
            if (cfg.u0.path.empty())
                throw ConfigError("initial.u.path must name a snapshot file");
        } else {
            throw ConfigError("initial.u.kind must be zero, random_solenoidal, or snapshot");
        }
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        reject_unknown(o, "output", {"directory", "stride", "ledger", "norms", "snapshots"});
        cfg.output.directory = o.value("directory", std::string("out"));
        cfg.output.stride = static_cast<int>(get_num(o, "output", "stride", 1.0));
        if (cfg.output.stride < 1)
            throw ConfigError("output.stride must be >= 1");
        cfg.output.ledger = o.value("ledger", true);
        cfg.output.norms = o.value("norms", true);
        cfg.output.snapshots = o.value("snapshots", true);
    }

    if (j.contains("oracle_modes")) {
        cfg.oracle_modes = static_cast<int>(get_num(j, "config", "oracle_modes"));
        if (*cfg.oracle_modes < 1 || *cfg.oracle_modes > 8)
            throw ConfigError("oracle_modes must lie in [1, 8]");
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    j["grid"] = {{"dim", cfg.grid.dim},
                 {"n", cfg.grid.n},
                 {"box_length", cfg.grid.box_length},
                 {"dealias_fraction", cfg.grid.dealias_fraction}};
    auto fam = [](const CoefficientFamily& f) {
        if (f.kind == CoefficientFamily::Kind::constant)
            return json{{"kind", "constant"}, {"value", f.value}};
        return json{{"kind", "smooth_monotone"}, {"c0", f.c0}, {"c1", f.c1}, {"c2", f.c2}};
    };
    j["params"] = {{"M", cfg.params.M},
                   {"r", cfg.params.r},
                   {"eta", fam(cfg.params.eta)},
                   {"mobility", fam(cfg.params.mobility)}};
    j["step"] = {{"dt", cfg.step.dt},
                 {"t_end", cfg.step.t_end},
                 {"max_steps", cfg.step.max_steps},
                 {"stabilization_S", cfg.step.stabilization_S},
                 {"stabilization_kappa", cfg.step.stabilization_kappa},
                 {"freeze_velocity", cfg.step.freeze_velocity}};
    json phi;
    switch (cfg.phi0.kind) {
        case PhiInitial::Kind::constant_plus_noise:
            phi = {{"kind", "constant_plus_noise"},
                   {"mean", cfg.phi0.mean},
                   {"amplitude", cfg.phi0.amplitude},
                   {"seed", cfg.phi0.seed},
                   {"cutoff", cfg.phi0.cutoff}};
            break;
        case PhiInitial::Kind::single_mode: {
            json idx = json::array();
            for (int a = 0; a < cfg.grid.dim; ++a)
                idx.push_back(cfg.phi0.k_index[static_cast<std::size_t>(a)]);
            phi = {{"kind", "single_mode"}, {"k_index", idx}, {"amplitude", cfg.phi0.mode_amplitude}};
            break;
        }
        case PhiInitial::Kind::snapshot:
            phi = {{"kind", "snapshot"}, {"path", cfg.phi0.path}};
            break;
    }
    json u;
    switch (cfg.u0.kind) {
        case UInitial::Kind::zero:
            u = {{"kind", "zero"}};
            break;
        case UInitial::Kind::random_solenoidal:
            u = {{"kind", "random_solenoidal"},
                 {"amplitude", cfg.u0.amplitude},
                 {"seed", cfg.u0.seed},
                 {"cutoff", cfg.u0.cutoff}};
            break;
        case UInitial::Kind::snapshot:
            u = {{"kind", "snapshot"}, {"path", cfg.u0.path}};
            break;
    }
    j["initial"] = {{"phi", phi}, {"u", u}};
    j["output"] = {{"directory", cfg.output.directory},
                   {"stride", cfg.output.stride},
                   {"ledger", cfg.output.ledger},
                   {"norms", cfg.output.norms},
                   {"snapshots", cfg.output.snapshots}};
    if (cfg.oracle_modes)
        j["oracle_modes"] = *cfg.oracle_modes;
    return j.dump(2);
}

State build_initial_state(const RunConfig& cfg, const GridPtr& grid) {
    State state(grid);

    switch (cfg.phi0.kind) {
        case PhiInitial::Kind::constant_plus_noise: {
            const int max_cut = grid->n() / 2 - 1;
            if (cfg.phi0.amplitude != 0.0 && (cfg.phi0.cutoff < 1 || cfg.phi0.cutoff > max_cut))
                throw ConfigError("initial.phi.cutoff must lie in [1, n/2 - 1]");
            state.phi = constant_plus_noise(grid, cfg.phi0.mean, cfg.phi0.amplitude,
                                            std::max(cfg.phi0.cutoff, 1), cfg.phi0.seed);
            break;
        }
        case PhiInitial::Kind::single_mode:
            state.phi = single_mode(grid, cfg.phi0.k_index, cfg.phi0.mode_amplitude);
            break;
        case PhiInitial::Kind::snapshot:
            state.phi = read_snapshot(cfg.phi0.path, grid).phi;
            break;
    }

    switch (cfg.u0.kind) {
        case UInitial::Kind::zero:
            break;
        case UInitial::Kind::random_solenoidal: {
            const int max_cut = grid->n() / 2 - 1;
            if (cfg.u0.amplitude != 0.0 && (cfg.u0.cutoff < 1 || cfg.u0.cutoff > max_cut))
                throw ConfigError("initial.u.cutoff must lie in [1, n/2 - 1]");
            state.u = random_solenoidal(grid, cfg.u0.amplitude, std::max(cfg.u0.cutoff, 1),
                                        cfg.u0.seed);
            break;
        }
        case UInitial::Kind::snapshot:
            state.u = read_snapshot(cfg.u0.path, grid).u;
            break;
    }

    // solver hygiene: fields inside the dealias mask, velocity projected
    state.phi = dealias(state.phi);
    state.u = leray_project(dealias(state.u));
    state.t = 0.0;
    return state;
}

} // namespace nspfc
