#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isoeuler/eos.hpp"
#include "isoeuler/errors.hpp"

namespace isoeuler {

enum class OutputFormat { Csv, Json };

struct OutputOptions {
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Csv;
};

// Reads and parses a JSON config file; throws ConfigError with the offending
// path or key on any problem.
nlohmann::json load_config_file(const std::string& path);

// Rejects keys outside required+optional and missing required keys.
void require_keys(const nlohmann::json& j, const char* context,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional);

struct U0Grid {
    double min, max;
    int count;
};

// Optional space-time sampling of a solution's fields along an r-grid at a
// fixed time, emitted as rows (r, t, u, rho, P, I, region).
struct FieldDump {
    double t;
    double r_min, r_max;
    int count;
};

struct NohConfig {
    IsentropicEos eos;
    double rho0;
    U0Grid u0;
    std::optional<FieldDump> fields;
    double fields_u0 = 0.0;  // inflow speed for the field dump
    static NohConfig parse(const nlohmann::json& j);
};

struct BubbleConfig {
    double B;
    double rho_ref;
    double I0 = 0.0;
    std::vector<int> geometries = {0, 1, 2};
    int samples = 200;
    std::optional<FieldDump> fields;
    int fields_n = 0;  // geometry for the field dump
    static BubbleConfig parse(const nlohmann::json& j);
};

struct SimilarityConfig {
    double a1, a2, a3;
    int n = 0;
    IsentropicEos eos;
    double xi_start, w_start, j_start;
    double xi_end;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    static SimilarityConfig parse(const nlohmann::json& j);
};

struct VerifyNohConfig {
    IsentropicEos eos;
    double rho0, u0;
    std::vector<int> resolutions;
    double t_final = 1.0;
    double r_hi = 0.5;
    double cfl = 0.8;
    double max_shock_error_cells = 2.0;    // at the finest resolution listed
    double max_speed_error_pct = 5.0;
    int speed_resolution = 800;
    static VerifyNohConfig parse(const nlohmann::json& j);
};

struct VerifyBubbleConfig {
    double B;
    double rho_ref;
    std::vector<int> geometries = {1, 2};
    std::vector<int> resolutions;
    double t0 = 1.0;
    double t_final = 1.5;
    double cfl = 0.8;
    double min_order = 0.8;
    static VerifyBubbleConfig parse(const nlohmann::json& j);
};

struct VerifyConfig {
    std::optional<VerifyNohConfig> noh;
    std::optional<VerifyBubbleConfig> bubble;
    static VerifyConfig parse(const nlohmann::json& j);
};

}  // namespace isoeuler
