#include "isoeuler/config.hpp"

#include <fstream>

namespace isoeuler {

namespace {

double num(const nlohmann::json& j, const char* ctx, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ConfigError(std::string("key '") + key + "' in " + ctx +
                          " must be a number");
    return v.get<double>();
}

int integer(const nlohmann::json& j, const char* ctx, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer())
        throw ConfigError(std::string("key '") + key + "' in " + ctx +
                          " must be an integer");
    return v.get<int>();
}

std::vector<int> int_list(const nlohmann::json& j, const char* ctx, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_array() || v.empty())
        throw ConfigError(std::string("key '") + key + "' in " + ctx +
                          " must be a non-empty array of integers");
    std::vector<int> out;
    for (const auto& e : v) {
        if (!e.is_number_integer())
            throw ConfigError(std::string("key '") + key + "' in " + ctx +
                              " must contain only integers");
        out.push_back(e.get<int>());
    }
    return out;
}

IsentropicEos eos_field(const nlohmann::json& j, const char* ctx) {
    try {
        return IsentropicEos::from_json(j.at("eos"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad 'eos' in ") + ctx + ": " + e.what());
    }
}

}  // namespace

nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    return j;
}

void require_keys(const nlohmann::json& j, const char* context,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : required) known = known || it.key() == k;
        for (const char* k : optional) known = known || it.key() == k;
        if (!known)
            throw ConfigError("unknown key '" + it.key() + "' in " + context +
                              " config");
    }
    for (const char* k : required)
        if (!j.contains(k))
            throw ConfigError(std::string("missing key '") + k + "' in " + context +
                              " config");
}

namespace {

FieldDump field_dump(const nlohmann::json& j, const char* ctx, const char* extra) {
    require_keys(j, ctx, {"t", "r"}, {extra});
    FieldDump f{};
    f.t = num(j, ctx, "t");
    const auto& r = j.at("r");
    require_keys(r, ctx, {"min", "max", "count"}, {});
    f.r_min = num(r, ctx, "min");
    f.r_max = num(r, ctx, "max");
    f.count = integer(r, ctx, "count");
    if (!(f.t > 0.0) || !(f.r_min > 0.0) || !(f.r_max >= f.r_min) || f.count < 1)
        throw ConfigError(std::string(ctx) +
                          ": needs t > 0, 0 < r.min <= r.max, count >= 1");
    return f;
}

}  // namespace

NohConfig NohConfig::parse(const nlohmann::json& j) {
    require_keys(j, "noh", {"eos", "rho0", "u0"}, {"geometry", "fields"});
    if (j.contains("geometry") && j.at("geometry") != 0)
        throw ConfigError(
            "noh: only planar geometry (0) is supported; the curvilinear problem "
            "requires an EOS with constant pressure at non-constant density");
    NohConfig c{eos_field(j, "noh"), num(j, "noh", "rho0"), {}, {}, 0.0};
    const auto& u0 = j.at("u0");
    require_keys(u0, "noh.u0", {"min", "max", "count"}, {});
    c.u0 = {num(u0, "noh.u0", "min"), num(u0, "noh.u0", "max"),
            integer(u0, "noh.u0", "count")};
    if (!(c.rho0 > 0.0)) throw ConfigError("noh: rho0 must be positive");
    if (!(c.u0.min > 0.0) || !(c.u0.max >= c.u0.min) || c.u0.count < 1)
        throw ConfigError("noh: u0 grid must satisfy 0 < min <= max, count >= 1");
    if (j.contains("fields")) {
        c.fields = field_dump(j.at("fields"), "noh.fields", "u0");
        c.fields_u0 = j.at("fields").contains("u0")
                          ? num(j.at("fields"), "noh.fields", "u0")
                          : c.u0.min;
        if (!(c.fields_u0 > 0.0))
            throw ConfigError("noh.fields: u0 must be positive");
    }
    return c;
}

BubbleConfig BubbleConfig::parse(const nlohmann::json& j) {
    require_keys(j, "bubble", {"B", "rho_ref"},
                 {"I0", "geometries", "samples", "fields"});
    BubbleConfig c;
    c.B = num(j, "bubble", "B");
    c.rho_ref = num(j, "bubble", "rho_ref");
    if (j.contains("I0")) c.I0 = num(j, "bubble", "I0");
    if (j.contains("geometries")) c.geometries = int_list(j, "bubble", "geometries");
    if (j.contains("samples")) c.samples = integer(j, "bubble", "samples");
    if (c.samples < 2) throw ConfigError("bubble: samples must be at least 2");
    for (int n : c.geometries)
        if (n < 0 || n > 2)
            throw ConfigError("bubble: geometries must be within {0,1,2}");
    if (j.contains("fields")) {
        c.fields = field_dump(j.at("fields"), "bubble.fields", "n");
        if (j.at("fields").contains("n"))
            c.fields_n = integer(j.at("fields"), "bubble.fields", "n");
        if (c.fields_n < 0 || c.fields_n > 2)
            throw ConfigError("bubble.fields: n must be 0, 1, or 2");
    }
    return c;
}

SimilarityConfig SimilarityConfig::parse(const nlohmann::json& j) {
    require_keys(j, "similarity", {"a", "eos", "initial", "xi_end"},
                 {"n", "rel_tol", "abs_tol"});
    const auto& a = j.at("a");
    if (!a.is_array() || a.size() != 3)
        throw ConfigError("similarity: 'a' must be an array [a1, a2, a3]");
    SimilarityConfig c{a[0].get<double>(), a[1].get<double>(), a[2].get<double>(),
                       0,    eos_field(j, "similarity"),
                       0.0,  0.0,
                       0.0,  0.0};
    if (c.a1 == 0.0 || c.a2 == 0.0)
        throw ConfigError("similarity: a1 and a2 must be nonzero");
    if (j.contains("n")) c.n = integer(j, "similarity", "n");
    if (c.n < 0 || c.n > 2) throw ConfigError("similarity: n must be 0, 1, or 2");
    const auto& init = j.at("initial");
    require_keys(init, "similarity.initial", {"xi", "w", "j"}, {});
    c.xi_start = num(init, "similarity.initial", "xi");
    c.w_start = num(init, "similarity.initial", "w");
    c.j_start = num(init, "similarity.initial", "j");
    c.xi_end = num(j, "similarity", "xi_end");
    if (j.contains("rel_tol")) c.rel_tol = num(j, "similarity", "rel_tol");
    if (j.contains("abs_tol")) c.abs_tol = num(j, "similarity", "abs_tol");
    if (!(c.xi_start > 0.0) || !(c.xi_end > 0.0))
        throw ConfigError("similarity: xi_start and xi_end must be positive");
    return c;
}

VerifyNohConfig VerifyNohConfig::parse(const nlohmann::json& j) {
    require_keys(j, "verify.noh", {"eos", "rho0", "u0", "resolutions"},
                 {"t_final", "r_hi", "cfl", "max_shock_error_cells",
                  "max_speed_error_pct", "speed_resolution"});
    VerifyNohConfig c{eos_field(j, "verify.noh"),
                      num(j, "verify.noh", "rho0"),
                      num(j, "verify.noh", "u0"),
                      int_list(j, "verify.noh", "resolutions")};
    if (j.contains("t_final")) c.t_final = num(j, "verify.noh", "t_final");
    if (j.contains("r_hi")) c.r_hi = num(j, "verify.noh", "r_hi");
    if (j.contains("cfl")) c.cfl = num(j, "verify.noh", "cfl");
    if (j.contains("max_shock_error_cells"))
        c.max_shock_error_cells = num(j, "verify.noh", "max_shock_error_cells");
    if (j.contains("max_speed_error_pct"))
        c.max_speed_error_pct = num(j, "verify.noh", "max_speed_error_pct");
    if (j.contains("speed_resolution"))
        c.speed_resolution = integer(j, "verify.noh", "speed_resolution");
    return c;
}

VerifyBubbleConfig VerifyBubbleConfig::parse(const nlohmann::json& j) {
    require_keys(j, "verify.bubble", {"B", "rho_ref", "resolutions"},
                 {"geometries", "t0", "t_final", "cfl", "min_order"});
    VerifyBubbleConfig c;
    c.B = num(j, "verify.bubble", "B");
    c.rho_ref = num(j, "verify.bubble", "rho_ref");
    c.resolutions = int_list(j, "verify.bubble", "resolutions");
    if (j.contains("geometries"))
        c.geometries = int_list(j, "verify.bubble", "geometries");
    if (j.contains("t0")) c.t0 = num(j, "verify.bubble", "t0");
    if (j.contains("t_final")) c.t_final = num(j, "verify.bubble", "t_final");
    if (j.contains("cfl")) c.cfl = num(j, "verify.bubble", "cfl");
    if (j.contains("min_order")) c.min_order = num(j, "verify.bubble", "min_order");
    return c;
}

VerifyConfig VerifyConfig::parse(const nlohmann::json& j) {
    require_keys(j, "verify", {}, {"noh", "bubble"});
    VerifyConfig c;
    if (j.contains("noh")) c.noh = VerifyNohConfig::parse(j.at("noh"));
    if (j.contains("bubble")) c.bubble = VerifyBubbleConfig::parse(j.at("bubble"));
    if (!c.noh && !c.bubble)
        throw ConfigError("verify config needs at least one of 'noh', 'bubble'");
    return c;
}

}  // namespace isoeuler
