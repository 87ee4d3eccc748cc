#include "oposhg/config.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "oposhg/errors.hpp"
#include "oposhg/steady.hpp"

namespace oposhg {

using nlohmann::json;

namespace {

Complex read_complex(const json& j, const std::string& key) {
    const json& v = j.at(key);
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex(v[0].get<double>(), v[1].get<double>());
    throw ConfigError("key '" + key + "' must be a number or an [re, im] pair");
}

double read_number(const json& j, const std::string& key) {
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError("key '" + key + "' must be numeric");
    return v.get<double>();
}

json complex_to_json(const Complex& z) {
    if (z.imag() == 0.0) return json(z.real());
    return json::array({z.real(), z.imag()});
}

}  // namespace

int RunSettings::resolved_stride(double total_time) const {
    if (out_stride > 0) return out_stride;
    const long n_steps = static_cast<long>(std::llround(total_time / dt));
    return static_cast<int>(std::max(1L, n_steps / 500));
}

void RunSettings::validate() const {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(t_final > 0.0)) throw ConfigError("t_final must be positive");
    if (n_traj < 1) throw ConfigError("n_traj must be at least 1");
    if (!(omega_max > 0.0)) throw ConfigError("omega_max must be positive");
    if (omega_points < 2) throw ConfigError("omega_points must be at least 2");
    if (out_stride < 0) throw ConfigError("out_stride must be non-negative");
    if (!(divergence_bound > 0.0)) throw ConfigError("divergence_bound must be positive");
    if (discard_budget < 0.0 || discard_budget > 1.0)
        throw ConfigError("discard_budget must lie in [0, 1]");
}

Config parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("params"))
        throw ConfigError("config must be an object with a 'params' section");
    const json& jp = doc["params"];

    Config cfg;
    try {
        cfg.params.gamma1 = read_number(jp, "gamma1");
        cfg.params.gamma2 = read_number(jp, "gamma2");
        cfg.params.gamma3 = read_number(jp, "gamma3");
        cfg.params.kappa1 = read_number(jp, "kappa1");
        cfg.params.kappa2 = read_number(jp, "kappa2");
    } catch (const json::out_of_range&) {
        throw ConfigError("missing key: params requires gamma1..gamma3, kappa1, kappa2");
    }
    const bool has_abs = jp.contains("eps2");
    const bool has_rel = jp.contains("eps2_over_threshold");
    if (has_abs && has_rel)
        throw ConfigError("give either eps2 or eps2_over_threshold, not both");
    if (!has_abs && !has_rel) throw ConfigError("missing key: eps2 (or eps2_over_threshold)");
    if (has_abs) cfg.params.eps2 = read_complex(jp, "eps2");
    if (jp.contains("eps1")) cfg.params.eps1 = read_complex(jp, "eps1");
    cfg.params.validate();
    cfg.params = cfg.params.normalized();
    if (has_rel) {
        // The threshold scales like every other rate, so the ratio may be
        // applied after normalization.
        if (!(cfg.params.kappa1 > 0.0))
            throw ConfigError("threshold-relative pump requested but kappa1 = 0");
        cfg.params.eps2 = read_number(jp, "eps2_over_threshold") * threshold_pump(cfg.params);
    }
    cfg.params.validate();

    if (doc.contains("run")) {
        const json& jr = doc["run"];
        if (!jr.is_object()) throw ConfigError("'run' section must be an object");
        if (jr.contains("dt")) cfg.run.dt = read_number(jr, "dt");
        if (jr.contains("t_final")) cfg.run.t_final = read_number(jr, "t_final");
        if (jr.contains("n_traj")) cfg.run.n_traj = jr.at("n_traj").get<long>();
        if (jr.contains("seed")) cfg.run.seed = jr.at("seed").get<std::uint64_t>();
        if (jr.contains("omega_max")) cfg.run.omega_max = read_number(jr, "omega_max");
        if (jr.contains("omega_points")) cfg.run.omega_points = jr.at("omega_points").get<int>();
        if (jr.contains("out_stride")) cfg.run.out_stride = jr.at("out_stride").get<int>();
        if (jr.contains("threads")) cfg.run.threads = jr.at("threads").get<int>();
        if (jr.contains("divergence_bound"))
            cfg.run.divergence_bound = read_number(jr, "divergence_bound");
        if (jr.contains("discard_budget"))
            cfg.run.discard_budget = read_number(jr, "discard_budget");
        if (jr.contains("initial")) {
            const json& ji = jr["initial"];
            for (int m = 1; m <= 3; ++m) {
                const std::string key = "alpha" + std::to_string(m);
                if (ji.contains(key)) cfg.run.initial[m - 1] = read_complex(ji, key);
            }
        }
    }
    cfg.run.validate();
    return cfg;
}

std::string serialize_config(const Config& config) {
    json jp;
    jp["gamma1"] = config.params.gamma1;
    jp["gamma2"] = config.params.gamma2;
    jp["gamma3"] = config.params.gamma3;
    jp["kappa1"] = config.params.kappa1;
    jp["kappa2"] = config.params.kappa2;
    jp["eps2"] = complex_to_json(config.params.eps2);
    jp["eps1"] = complex_to_json(config.params.eps1);

    json jr;
    jr["dt"] = config.run.dt;
    jr["t_final"] = config.run.t_final;
    jr["n_traj"] = config.run.n_traj;
    jr["seed"] = config.run.seed;
    jr["omega_max"] = config.run.omega_max;
    jr["omega_points"] = config.run.omega_points;
    jr["out_stride"] = config.run.out_stride;
    jr["threads"] = config.run.threads;
    jr["divergence_bound"] = config.run.divergence_bound;
    jr["discard_budget"] = config.run.discard_budget;
    json ji;
    for (int m = 1; m <= 3; ++m)
        ji["alpha" + std::to_string(m)] =
            json::array({config.run.initial[m - 1].real(), config.run.initial[m - 1].imag()});
    jr["initial"] = ji;

    json doc;
    doc["params"] = jp;
    doc["run"] = jr;
    return doc.dump(2);
}

}  // namespace oposhg
