#include "nkl/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nkl/common.hpp"
#include "nkl/csvio.hpp"

namespace nkl {

using nlohmann::json;

RunConfig RunConfig::defaults() {
    RunConfig cfg;
    cfg.t_list.clear();
    for (int i = 0; i < 5; ++i) cfg.t_list.push_back(1e-3 * std::pow(10.0, i / 4.0));
    return cfg;
}

void RunConfig::apply_family_grid_defaults() {
    if (grid_overridden) return;
    if (model.family == Family::ExpSmooth || model.family == Family::ExpPower ||
        model.family == Family::Gauss) {
        L = 8.0;
        n = 1601;
    }
}

Grid1D RunConfig::make_grid() const { return Grid1D::build(L, n); }

void RunConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw UsageError("config: epsilon must be in (0, 1)");
    if (!(interior_margin >= 0.0 && interior_margin < 0.5))
        throw UsageError("config: interior_margin must be in [0, 0.5)");
    if (alpha_list.empty()) throw UsageError("config: alpha_list must be non-empty");
    for (double a : alpha_list)
        if (!(a > 0.0 && a <= 2.0)) throw UsageError("config: alpha values must lie in (0, 2]");
    if (t_list.empty()) throw UsageError("config: t_list must be non-empty");
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        if (!(t_list[i] > 0.0)) throw UsageError("config: t values must be positive");
        if (i > 0 && !(t_list[i] > t_list[i - 1]))
            throw UsageError("config: t values must be strictly ascending");
    }
    if (output_dir.empty()) throw UsageError("config: output_dir must be non-empty");
}

std::string RunConfig::canonical_json() const {
    json j;
    j["model"]["family"] = model.family_name();
    j["model"]["d"] = model.d;
    switch (model.family) {
        case Family::Cauchy: j["model"]["beta"] = model.beta; break;
        case Family::ExpSmooth: j["model"]["a"] = model.a; break;
        case Family::ExpPower:
            j["model"]["a"] = model.a;
            j["model"]["K_cut"] = model.K_cut;
            break;
        case Family::Gauss: break;
    }
    j["grid"]["L"] = L;
    j["grid"]["n"] = n;
    j["grid"]["bc"] = bc == Boundary::Neumann ? "neumann" : "dirichlet";
    j["alpha_list"] = alpha_list;
    j["t_list"] = t_list;
    j["epsilon"] = epsilon;
    j["interior_margin"] = interior_margin;
    j["seed"] = seed;
    return j.dump();
}

std::string RunConfig::digest() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_json())));
    return buf;
}

uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    if (!obj.is_object()) throw UsageError("config: " + where + " must be a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw UsageError("config: unknown key \"" + it.key() + "\" in " + where);
}

double number_at(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw UsageError(std::string("config: ") + key + " must be a number");
    return v.get<double>();
}

}  // namespace

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config: invalid JSON: ") + e.what());
    }

    reject_unknown(j, {"model", "grid", "alpha_list", "t_list", "epsilon", "interior_margin",
                       "output_dir", "seed"},
                   "top level");

    RunConfig cfg = RunConfig::defaults();

    if (j.contains("model")) {
        const json& m = j.at("model");
        reject_unknown(m, {"family", "beta", "a", "d", "K_cut"}, "model");
        std::string family = "cauchy";
        if (m.contains("family")) {
            if (!m.at("family").is_string())
                throw UsageError("config: model.family must be a string");
            family = m.at("family").get<std::string>();
        }
        const int d = static_cast<int>(number_at(m, "d", 1.0));
        if (family == "cauchy") {
            cfg.model = DensityModel::cauchy(number_at(m, "beta", 2.0), d);
        } else if (family == "exp_smooth") {
            cfg.model = DensityModel::exp_smooth(number_at(m, "a", 1.0), d);
        } else if (family == "exp_power") {
            cfg.model = DensityModel::exp_power(number_at(m, "a", 2.0), d,
                                                number_at(m, "K_cut", 0.0));
        } else if (family == "gauss") {
            cfg.model = DensityModel::gauss(d);
        } else {
            throw UsageError("config: unknown model family \"" + family + "\"");
        }
    }

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        reject_unknown(g, {"L", "n", "bc"}, "grid");
        if (g.contains("L")) {
            cfg.L = number_at(g, "L", cfg.L);
            cfg.grid_overridden = true;
        }
        if (g.contains("n")) {
            cfg.n = static_cast<int>(number_at(g, "n", cfg.n));
            cfg.grid_overridden = true;
        }
        if (g.contains("bc")) {
            if (!g.at("bc").is_string()) throw UsageError("config: grid.bc must be a string");
            const std::string bc = g.at("bc").get<std::string>();
            if (bc == "neumann") cfg.bc = Boundary::Neumann;
            else if (bc == "dirichlet") cfg.bc = Boundary::Dirichlet;
            else throw UsageError("config: grid.bc must be \"neumann\" or \"dirichlet\"");
        }
    }

    auto read_list = [&](const char* key, std::vector<double>& dst) {
        if (!j.contains(key)) return;
        const json& arr = j.at(key);
        if (!arr.is_array() || arr.empty())
            throw UsageError(std::string("config: ") + key + " must be a non-empty array");
        dst.clear();
        for (const json& v : arr) {
            if (!v.is_number())
                throw UsageError(std::string("config: ") + key + " entries must be numbers");
            dst.push_back(v.get<double>());
        }
    };
    read_list("alpha_list", cfg.alpha_list);
    read_list("t_list", cfg.t_list);

    cfg.epsilon = number_at(j, "epsilon", cfg.epsilon);
    cfg.interior_margin = number_at(j, "interior_margin", cfg.interior_margin);
    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string())
            throw UsageError("config: output_dir must be a string");
        cfg.output_dir = j.at("output_dir").get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            throw UsageError("config: seed must be an integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }

    cfg.validate();
    return cfg;
}

}  // namespace nkl
