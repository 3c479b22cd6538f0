#include "ayfun/config.hpp"

#include "ayfun/grid.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace ayfun::harness {

using nlohmann::json;
using spectral::GridSpec;

JobKind job_kind_from_string(const std::string& s) {
    if (s == "coeffs") return JobKind::coeffs;
    if (s == "eval") return JobKind::eval;
    if (s == "verify") return JobKind::verify;
    if (s == "sweep") return JobKind::sweep;
    throw ConfigError("unknown job kind: " + s);
}

GridSpec JobConfig::grid() const {
    if (resolutions.empty()) return spectral::default_grid(n);
    return GridSpec(n, resolutions);
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw ConfigError("unknown config key '" + key + "' in " + where);
}

// every axis constant (1) or wide enough for products of n+2 bandwidth-b factors
void check_alias_contract(int n, const std::vector<int>& res, int bandwidth) {
    int minimal = 2 * (n + 2) * bandwidth + 1;
    for (std::size_t a = 0; a < res.size(); ++a) {
        if (res[a] == 1) continue;
        if (res[a] < minimal) {
            std::ostringstream os;
            os << "resolution " << res[a] << " on axis " << a
               << " violates the alias-free contract; minimal usable resolution is " << minimal;
            throw ConfigError(os.str());
        }
    }
}

} // namespace

JobConfig parse_config_text(const std::string& text, bool i_know_flag) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"job", "n", "max_n", "resolutions", "metric", "potential", "path",
                       "quadrature", "seeds", "sweep", "tolerances", "i_know",
                       "corrupt_test_hook", "threads", "output"},
                   "top level");
    JobConfig c;
    if (j.contains("job")) c.job = job_kind_from_string(j.at("job").get<std::string>());
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (c.n < 2) throw ConfigError("n >= 2 required");
    if (j.contains("max_n")) c.max_n = j.at("max_n").get<int>();
    if (j.contains("resolutions")) c.resolutions = j.at("resolutions").get<std::vector<int>>();
    if (j.contains("metric")) {
        const json& m = j.at("metric");
        reject_unknown(m, {"kind", "epsilon", "seed"}, "metric");
        if (m.contains("kind"))
            c.metric_kind = scenarios::metric_kind_from_string(m.at("kind").get<std::string>());
        if (m.contains("epsilon")) c.epsilon = m.at("epsilon").get<double>();
        if (m.contains("seed")) c.metric_seed = m.at("seed").get<std::uint64_t>();
    }
    if (j.contains("potential")) {
        const json& p = j.at("potential");
        reject_unknown(p, {"seed", "amplitude", "modes"}, "potential");
        if (p.contains("seed")) c.potential_seed = p.at("seed").get<std::uint64_t>();
        if (p.contains("amplitude")) c.potential_amplitude = p.at("amplitude").get<double>();
        if (p.contains("modes")) {
            std::map<spectral::ModeIndex, spectral::cplx> modes;
            for (const auto& [key, amp] : p.at("modes").items()) {
                spectral::ModeIndex k;
                std::stringstream ss(key);
                std::string tok;
                while (std::getline(ss, tok, ',')) k.push_back(std::stoi(tok));
                if (!amp.is_array() || amp.size() != 2)
                    throw ConfigError("potential.modes values must be [re, im]");
                modes[k] = {amp[0].get<double>(), amp[1].get<double>()};
            }
            c.potential_modes = std::move(modes);
        }
        if (c.potential_modes && c.potential_seed)
            throw ConfigError("potential: give either seed or modes, not both");
    }
    if (j.contains("path")) {
        const json& p = j.at("path");
        reject_unknown(p, {"kind", "seed", "shift"}, "path");
        if (p.contains("kind"))
            c.path_kind = scenarios::path_kind_from_string(p.at("kind").get<std::string>());
        if (p.contains("seed")) c.path_seed = p.at("seed").get<std::uint64_t>();
        if (p.contains("shift")) c.shift_constant = p.at("shift").get<double>();
    }
    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        reject_unknown(q, {"order"}, "quadrature");
        if (q.contains("order")) c.quad_order = q.at("order").get<int>();
        if (c.quad_order < 0 || (c.quad_order > 0 && c.quad_order < 2))
            throw ConfigError("quadrature.order must be >= 2");
    }
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        reject_unknown(s, {"resolutions", "quad_orders", "seeds"}, "sweep");
        if (s.contains("resolutions"))
            c.sweep_resolutions = s.at("resolutions").get<std::vector<int>>();
        if (s.contains("quad_orders"))
            c.sweep_quad_orders = s.at("quad_orders").get<std::vector<int>>();
        if (s.contains("seeds")) c.sweep_seeds = s.at("seeds").get<std::vector<std::uint64_t>>();
    }
    if (j.contains("tolerances")) {
        for (const auto& [key, value] : j.at("tolerances").items()) {
            if (default_tolerance(key) == 0.0)
                throw ConfigError("tolerances: unknown residual tag '" + key + "'");
            c.tolerances[key] = value.get<double>();
        }
    }
    if (j.contains("i_know")) c.i_know = j.at("i_know").get<bool>();
    c.i_know = c.i_know || i_know_flag;
    if (j.contains("corrupt_test_hook"))
        c.corrupt_test_hook = j.at("corrupt_test_hook").get<bool>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();

    // up-front alias validation for the resolutions this job will touch
    int bandwidth = 1;
    if (c.potential_modes)
        for (const auto& [k, amp] : *c.potential_modes)
            for (int v : k) bandwidth = std::max(bandwidth, std::abs(v));
    if (!c.resolutions.empty()) {
        if (c.resolutions.size() != static_cast<std::size_t>(2 * c.n))
            throw ConfigError("resolutions must list 2n entries");
        check_alias_contract(c.n, c.resolutions, bandwidth);
    } else if (bandwidth > 1) {
        // the default grid is sized for bandwidth-1 fields only
        check_alias_contract(c.n, spectral::default_grid(c.n).resolutions, bandwidth);
    }
    for (int m : c.sweep_resolutions)
        check_alias_contract(c.n, std::vector<int>(4, m), bandwidth);
    // tolerance guard happens lazily in tolerance_for
    for (const auto& [tag, value] : c.tolerances) (void)tolerance_for(c, tag);
    return c;
}

JobConfig load_config(const std::string& path, bool i_know_flag) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), i_know_flag);
}

double default_tolerance(const std::string& tag) {
    auto starts = [&](const char* p) { return tag.rfind(p, 0) == 0; };
    if (starts("calc_") || starts("extra_") || starts("reduce_") || tag == "volume_anchor")
        return 1e-12;
    if (starts("eq_2_")) return 1e-8;
    if (starts("eq_3_")) return 1e-9;
    if (tag == "path_independence" || tag == "cocycle" || tag == "antisymmetry") return 1e-8;
    if (tag == "shift_kahler" || tag == "inequality_margin" || tag == "imag_part") return 1e-10;
    if (tag == "explicit_vs_path" || tag == "i_dual" || tag == "j_dual" || starts("shift_"))
        return 1e-9;
    if (starts("sum_")) return 1e-10;
    return 0.0; // unknown tag
}

double tolerance_for(const JobConfig& cfg, const std::string& tag) {
    double def = default_tolerance(tag);
    if (def == 0.0) throw ConfigError("no default tolerance for tag " + tag);
    auto it = cfg.tolerances.find(tag);
    if (it == cfg.tolerances.end()) return def;
    if (it->second > 10.0 * def && !cfg.i_know)
        throw ConfigError("tolerance for " + tag + " loosened beyond 10x default; pass --i-know");
    return it->second;
}

} // namespace ayfun::harness
