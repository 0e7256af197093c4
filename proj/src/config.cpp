#include "wavelab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wavelab/io.hpp"

namespace wavelab {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& scope) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw SchemaError(scope.empty() ? it.key() : scope + "." + it.key(), "unknown key");
}

double need_positive(const json& j, const std::string& key, double def) {
    if (!j.contains(key)) return def;
    double v = j.at(key).get<double>();
    if (v <= 0.0) throw RangeError(key, "must be positive");
    return v;
}

}  // namespace

RunConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
    RunConfig cfg;
    reject_unknown(j, {"grid", "params", "initial", "stepper", "norms", "experiment", "output"},
                   "");

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        reject_unknown(g, {"n_points", "period"}, "grid");
        if (g.contains("n_points")) {
            long n = g.at("n_points").get<long>();
            if (n < 4 || (n & (n - 1)) != 0)
                throw RangeError("grid.n_points", "must be a power of two >= 4");
            cfg.n_points = std::size_t(n);
        }
        cfg.period = need_positive(g, "period", cfg.period);
    }
    if (j.contains("params")) {
        const auto& p = j.at("params");
        reject_unknown(p, {"g", "sigma", "gamma"}, "params");
        if (p.contains("g")) {
            cfg.params.g = p.at("g").get<double>();
            if (cfg.params.g < 0.0) throw RangeError("params.g", "must be nonnegative");
        }
        if (p.contains("sigma")) {
            cfg.params.sigma = p.at("sigma").get<double>();
            if (cfg.params.sigma <= 0.0) throw RangeError("params.sigma", "must be positive");
        }
        if (p.contains("gamma")) cfg.params.gamma = p.at("gamma").get<double>();
    }
    if (j.contains("initial")) {
        const auto& i = j.at("initial");
        reject_unknown(i, {"type", "k", "eps", "target", "seed", "decay_rate", "path"}, "initial");
        if (i.contains("type")) cfg.initial.type = i.at("type").get<std::string>();
        if (cfg.initial.type != "single_mode" && cfg.initial.type != "random_smooth" &&
            cfg.initial.type != "from_checkpoint")
            throw RangeError("initial.type", "must be single_mode|random_smooth|from_checkpoint");
        if (i.contains("k")) {
            cfg.initial.k = i.at("k").get<int>();
            if (cfg.initial.k <= 0) throw RangeError("initial.k", "must be positive");
        }
        if (i.contains("eps")) {
            cfg.initial.eps = i.at("eps").get<double>();
            if (cfg.initial.eps < 0.0) throw RangeError("initial.eps", "must be nonnegative");
        }
        if (i.contains("target")) {
            cfg.initial.target = i.at("target").get<std::string>();
            if (cfg.initial.target != "W" && cfg.initial.target != "Q")
                throw RangeError("initial.target", "must be W or Q");
        }
        if (i.contains("seed")) cfg.initial.seed = i.at("seed").get<std::uint64_t>();
        if (i.contains("decay_rate")) {
            cfg.initial.decay_rate = i.at("decay_rate").get<double>();
            if (cfg.initial.decay_rate <= 0.0)
                throw RangeError("initial.decay_rate", "must be positive");
        }
        if (i.contains("path")) cfg.initial.path = i.at("path").get<std::string>();
    }
    if (j.contains("stepper")) {
        const auto& st = j.at("stepper");
        reject_unknown(st,
                       {"dt", "scheme", "t_end", "reproject_each_step", "dealias_rule",
                        "diagnostics_stride"},
                       "stepper");
        if (st.contains("dt")) cfg.stepper.dt = need_positive(st, "dt", cfg.stepper.dt);
        else cfg.stepper.dt = 0.0;  // filled from the CFL guard below
        if (st.contains("scheme")) {
            std::string s = st.at("scheme").get<std::string>();
            if (s == "if_rk4") cfg.stepper.scheme = Scheme::IfRk4;
            else if (s == "rk4") cfg.stepper.scheme = Scheme::Rk4;
            else throw RangeError("stepper.scheme", "must be if_rk4 or rk4");
        }
        if (st.contains("t_end")) {
            cfg.stepper.t_end = st.at("t_end").get<double>();
            if (cfg.stepper.t_end < 0.0) throw RangeError("stepper.t_end", "must be nonnegative");
        }
        if (st.contains("reproject_each_step"))
            cfg.stepper.reproject_each_step = st.at("reproject_each_step").get<bool>();
        if (st.contains("dealias_rule")) {
            cfg.stepper.dealias_rule = st.at("dealias_rule").get<double>();
            if (cfg.stepper.dealias_rule <= 0.0 || cfg.stepper.dealias_rule > 1.0)
                throw RangeError("stepper.dealias_rule", "must be in (0,1]");
        }
        if (st.contains("diagnostics_stride")) {
            long v = st.at("diagnostics_stride").get<long>();
            if (v <= 0) throw RangeError("stepper.diagnostics_stride", "must be positive");
            cfg.stepper.diagnostics_stride = std::size_t(v);
        }
    } else {
        cfg.stepper.dt = 0.0;
    }
    if (j.contains("norms")) {
        const auto& nn = j.at("norms");
        reject_unknown(nn, {"sobolev_s", "holder_r", "epsilon"}, "norms");
        if (nn.contains("sobolev_s")) cfg.stepper.diag_sobolev_s = nn.at("sobolev_s").get<double>();
        if (nn.contains("holder_r")) cfg.stepper.diag_holder_r = nn.at("holder_r").get<double>();
        if (nn.contains("epsilon"))
            cfg.stepper.control_eps = need_positive(nn, "epsilon", cfg.stepper.control_eps);
    }
    if (j.contains("experiment")) cfg.experiment = j.at("experiment").get<std::string>();
    if (j.contains("output")) {
        const auto& o = j.at("output");
        reject_unknown(o, {"dir"}, "output");
        if (o.contains("dir")) cfg.out_dir = o.at("dir").get<std::string>();
    }

    if (cfg.stepper.dt <= 0.0)
        cfg.stepper.dt = 0.5 * rk4_dt_ceiling(cfg.grid(), cfg.params);
    cfg.params.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return config_from_json_text(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    j["grid"] = {{"n_points", cfg.n_points}, {"period", cfg.period}};
    j["params"] = {{"g", cfg.params.g}, {"sigma", cfg.params.sigma}, {"gamma", cfg.params.gamma}};
    // all keys emitted so dotted overrides can reach any of them
    j["initial"] = {{"type", cfg.initial.type},   {"k", cfg.initial.k},
                    {"eps", cfg.initial.eps},     {"target", cfg.initial.target},
                    {"seed", cfg.initial.seed},   {"decay_rate", cfg.initial.decay_rate},
                    {"path", cfg.initial.path}};
    j["stepper"] = {{"dt", cfg.stepper.dt},
                    {"scheme", cfg.stepper.scheme == Scheme::IfRk4 ? "if_rk4" : "rk4"},
                    {"t_end", cfg.stepper.t_end},
                    {"reproject_each_step", cfg.stepper.reproject_each_step},
                    {"dealias_rule", cfg.stepper.dealias_rule},
                    {"diagnostics_stride", cfg.stepper.diagnostics_stride}};
    j["norms"] = {{"sobolev_s", cfg.stepper.diag_sobolev_s},
                  {"holder_r", cfg.stepper.diag_holder_r},
                  {"epsilon", cfg.stepper.control_eps}};
    j["experiment"] = cfg.experiment;
    j["output"] = {{"dir", cfg.out_dir}};
    return j.dump(2);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ParseError("override must be key=value: " + assignment);
    std::string key = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);
    json j = json::parse(serialize_config(cfg));
    json* node = &j;
    std::size_t pos = 0;
    while (true) {
        auto dot = key.find('.', pos);
        std::string part = key.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (!node->contains(part)) throw SchemaError(key, "unknown key");
        if (dot == std::string::npos) {
            json parsed;
            try {
                parsed = json::parse(value);
            } catch (...) {
                parsed = value;  // bare strings allowed
            }
            (*node)[part] = parsed;
            break;
        }
        node = &(*node)[part];
        pos = dot + 1;
    }
    cfg = config_from_json_text(j.dump());
}

WaveState build_initial_state(const RunConfig& cfg) {
    PeriodicGrid g = cfg.grid();
    if (cfg.initial.type == "from_checkpoint") {
        WaveState s = load_checkpoint(cfg.initial.path);
        if (s.W.grid != g) throw Error("checkpoint grid does not match config grid");
        s.params = cfg.params;
        return s;
    }
    WaveState s;
    s.params = cfg.params;
    s.t = 0.0;
    s.W = HoloField(g);
    s.Q = HoloField(g);
    if (cfg.initial.type == "single_mode") {
        HoloField m = single_mode(g, cfg.initial.k, cfg.initial.eps);
        if (cfg.initial.target == "W") s.W = m;
        else s.Q = m;
    } else {
        SplitMix64 rng(cfg.initial.seed);
        SplitMix64 rw = rng.split(1), rq = rng.split(2);
        s.W = random_smooth(g, rw, cfg.initial.eps, cfg.initial.decay_rate);
        s.Q = random_smooth(g, rq, cfg.initial.eps, cfg.initial.decay_rate);
    }
    return s;
}

}  // namespace wavelab
