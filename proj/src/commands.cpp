#include "isoeuler/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "isoeuler/fvcheck.hpp"
#include "isoeuler/io.hpp"
#include "isoeuler/rh.hpp"
#include "isoeuler/scaling.hpp"
#include "isoeuler/similarity.hpp"
#include "isoeuler/solutions.hpp"

namespace isoeuler {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const OutputOptions& opts, const std::string& name) {
    fs::create_directories(opts.out_dir);
    const fs::path p = fs::path(opts.out_dir) / name;
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write output file '" + p.string() + "'");
    return out;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned workers =
        std::min<std::size_t>(sweep_thread_count(), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::mutex mu;
    std::exception_ptr first_error;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

nlohmann::json rows_to_json(const std::vector<std::string>& header,
                            const std::vector<std::vector<double>>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj;
        for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
        arr.push_back(obj);
    }
    return arr;
}

std::vector<std::vector<std::string>> format_rows(
    const std::vector<std::vector<double>>& rows) {
    std::vector<std::vector<std::string>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<std::string> r;
        r.reserve(row.size());
        for (double v : row) r.push_back(format_sig17(v));
        out.push_back(std::move(r));
    }
    return out;
}

// Field dump rows (r, t, u, rho, P, I, region) along an r-grid at fixed t.
void emit_field_dump(const OutputOptions& opts, const std::string& stem,
                     const FieldDump& spec,
                     const std::function<FlowSample(double, double)>& fields) {
    const std::vector<std::string> header = {"r", "t",  "u",     "rho",
                                             "P", "I", "region"};
    std::vector<std::vector<std::string>> rows;
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < spec.count; ++i) {
        const double r =
            spec.count == 1
                ? spec.r_min
                : spec.r_min + (spec.r_max - spec.r_min) * i / (spec.count - 1.0);
        const FlowSample s = fields(r, spec.t);
        if (opts.format == OutputFormat::Csv)
            rows.push_back({format_sig17(r), format_sig17(spec.t), format_sig17(s.u),
                            format_sig17(s.rho), format_sig17(s.P),
                            format_sig17(s.I), std::string(region_name(s.region))});
        else
            arr.push_back({{"r", r},
                           {"t", spec.t},
                           {"u", s.u},
                           {"rho", s.rho},
                           {"P", s.P},
                           {"I", s.I},
                           {"region", std::string(region_name(s.region))}});
    }
    if (opts.format == OutputFormat::Csv) {
        auto out = open_output(opts, stem + ".csv");
        write_csv(out, header, rows);
    } else {
        auto out = open_output(opts, stem + ".json");
        out << arr.dump(2) << '\n';
    }
}

void write_snapshot(const OutputOptions& opts, const std::string& name,
                    const fv::Grid1D& g, const IsentropicEos& eos) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < g.cells(); ++i)
        rows.push_back({g.center(i), g.rho[i], g.mom[i] / g.rho[i],
                        eos.pressure(g.rho[i])});
    auto out = open_output(opts, name);
    write_csv(out, {"r_center", "rho", "u", "P"}, format_rows(rows));
}

}  // namespace

unsigned sweep_thread_count() {
    const char* env = std::getenv("ISO_EULER_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (v < 1) return 1;
    return static_cast<unsigned>(std::min<long>(v, hw));
}

int cmd_noh(const nlohmann::json& config, const OutputOptions& opts) {
    const NohConfig c = NohConfig::parse(config);

    std::vector<double> u0s(c.u0.count);
    for (int i = 0; i < c.u0.count; ++i)
        u0s[i] = c.u0.count == 1
                     ? c.u0.min
                     : c.u0.min + (c.u0.max - c.u0.min) * i / (c.u0.count - 1.0);

    const std::vector<std::string> header = {"u0",  "rho2", "D0",
                                             "P2",  "I2",   "residual_mass",
                                             "residual_momentum"};
    std::vector<std::vector<double>> rows(u0s.size());
    parallel_for(u0s.size(), [&](std::size_t i) {
        const double u0 = u0s[i];
        const NohShockState s = solve_noh_shock(c.eos, c.rho0, u0);
        const auto [rm, rp] = jump_residuals(
            c.eos, {c.rho0, -u0, s.rho2, 0.0, s.D0});
        rows[i] = {u0, s.rho2, s.D0, s.P2, s.I2, rm, rp};
    });

    if (opts.format == OutputFormat::Csv) {
        auto out = open_output(opts, "noh.csv");
        write_csv(out, header, format_rows(rows));
    } else {
        auto out = open_output(opts, "noh.json");
        out << rows_to_json(header, rows).dump(2) << '\n';
    }

    if (c.fields) {
        const NohSolution sol(c.eos, c.rho0, c.fields_u0);
        emit_field_dump(opts, "noh_fields_rt", *c.fields,
                        [&](double r, double t) { return sol.fields(r, t); });
    }
    return 0;
}

int cmd_bubble(const nlohmann::json& config, const OutputOptions& opts) {
    const BubbleConfig c = BubbleConfig::parse(config);

    std::vector<std::vector<double>> constants;
    std::vector<std::vector<double>> fields;
    for (int n : c.geometries) {
        const BubbleSolution sol(n, c.B, c.rho_ref, c.I0);
        constants.push_back(
            {double(n), sol.gamma(), sol.omega(), sol.w0(), sol.xi0()});
        for (int k = 1; k <= c.samples; ++k) {
            const double xi = sol.xi0() * k / c.samples;
            fields.push_back({double(n), xi, sol.velocity_profile(xi),
                              sol.density_profile(xi), sol.pressure_profile(xi),
                              sol.sie_profile(xi)});
        }
    }

    const std::vector<std::string> chdr = {"n", "gamma", "omega", "w0", "xi0"};
    const std::vector<std::string> fhdr = {"n", "xi", "u", "rho", "P", "I"};
    if (opts.format == OutputFormat::Csv) {
        auto cout_ = open_output(opts, "bubble_constants.csv");
        write_csv(cout_, chdr, format_rows(constants));
        auto fout = open_output(opts, "bubble_fields.csv");
        write_csv(fout, fhdr, format_rows(fields));
    } else {
        auto out = open_output(opts, "bubble.json");
        nlohmann::json j = {{"constants", rows_to_json(chdr, constants)},
                            {"fields", rows_to_json(fhdr, fields)}};
        out << j.dump(2) << '\n';
    }

    if (c.fields) {
        const BubbleSolution sol(c.fields_n, c.B, c.rho_ref, c.I0);
        emit_field_dump(opts, "bubble_fields_rt", *c.fields,
                        [&](double r, double t) { return sol.fields(r, t); });
    }
    return 0;
}

int cmd_similarity(const nlohmann::json& config, const OutputOptions& opts) {
    const SimilarityConfig c = SimilarityConfig::parse(config);

    const SimilarityExponents e = similarity_exponents(c.a1, c.a2, c.a3);
    const SymmetryCase sc = classify(c.a1, c.a2, c.a3);
    const IsentropicEos eos = c.eos;

    const OdeRhs rhs = [&e, &eos, n = c.n](double xi, const Eigen::Vector2d& y) {
        return general_rhs({xi, y[0], y[1], {}, {}}, e, n, eos);
    };
    // For a pressureless EOS the sonic discriminant is a perfect square and
    // never changes sign; the singular locus is the characteristic
    // denominator alpha xi^(1/alpha) - j instead.
    const bool pressureless = eos.kind() == "zero";
    const OdeGuard guard = [&e, &eos, n = c.n,
                            pressureless](double xi, const Eigen::Vector2d& y) {
        if (pressureless)
            return e.alpha * std::pow(xi, 1.0 / e.alpha) - y[1];
        return sonic_discriminant({xi, y[0], y[1], {}, {}}, e, n, eos);
    };

    IntegrateOptions io;
    io.rel_tol = c.rel_tol;
    io.abs_tol = c.abs_tol;
    const Trajectory traj =
        integrate(rhs, guard, {c.xi_start, c.w_start, c.j_start, {}, {}}, c.xi_end, io);

    const bool case1 = sc == SymmetryCase::I;
    std::vector<std::string> header = {"xi", "w", "j"};
    if (case1) {
        header.push_back("W");
        header.push_back("J");
    }
    header.push_back("termination_reason");

    std::vector<std::vector<std::string>> rows;
    for (const auto& p : traj.points) {
        std::vector<std::string> row = {format_sig17(p.xi), format_sig17(p.w),
                                        format_sig17(p.j)};
        if (case1) {
            const auto tr = case1_transform(p.xi, p.w, p.j, c.a1, c.a2, c.a3);
            row.push_back(format_sig17(tr.W));
            row.push_back(format_sig17(tr.J));
        }
        row.emplace_back(halt_reason_name(traj.reason));
        rows.push_back(std::move(row));
    }

    if (opts.format == OutputFormat::Csv) {
        auto out = open_output(opts, "similarity.csv");
        write_csv(out, header, rows);
    } else {
        auto out = open_output(opts, "similarity.json");
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : traj.points) {
            nlohmann::json obj = {{"xi", p.xi}, {"w", p.w}, {"j", p.j}};
            if (case1) {
                const auto tr = case1_transform(p.xi, p.w, p.j, c.a1, c.a2, c.a3);
                obj["W"] = tr.W;
                obj["J"] = tr.J;
            }
            pts.push_back(obj);
        }
        nlohmann::json j = {{"scaling", exponent_report(c.a1, c.a2, c.a3)},
                            {"points", pts},
                            {"termination_reason",
                             std::string(halt_reason_name(traj.reason))},
                            {"terminal_xi", traj.terminal_xi}};
        out << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_verify(const nlohmann::json& config, const OutputOptions& opts) {
    const VerifyConfig c = VerifyConfig::parse(config);
    nlohmann::json report;
    bool all_pass = true;

    if (c.noh) {
        const auto& vc = *c.noh;
        nlohmann::json entries = nlohmann::json::array();
        double prev_l1 = 0.0;
        bool decreasing = true;
        double shock_err_cells = 0.0;
        for (std::size_t k = 0; k < vc.resolutions.size(); ++k) {
            const int N = vc.resolutions[k];
            const auto rep =
                fv::run_noh(vc.eos, vc.rho0, vc.u0, N, vc.t_final, vc.r_hi, vc.cfl);
            nlohmann::json e = {{"N", N}, {"L1_rho", rep.l1.rho}};
            if (k > 0) {
                e["order"] = std::log2(prev_l1 / rep.l1.rho) /
                             std::log2(double(N) / vc.resolutions[k - 1]);
                decreasing = decreasing && rep.l1.rho < prev_l1;
            } else {
                e["order"] = nullptr;
            }
            prev_l1 = rep.l1.rho;
            shock_err_cells = rep.shock_position_error_cells;
            entries.push_back(e);
            write_snapshot(opts, "noh_snapshot_N" + std::to_string(N) + ".csv",
                           rep.grid, vc.eos);
        }
        const auto speed_rep = fv::run_noh(vc.eos, vc.rho0, vc.u0,
                                           vc.speed_resolution, vc.t_final, vc.r_hi,
                                           vc.cfl);
        const double D0 = NohSolution(vc.eos, vc.rho0, vc.u0).shock().D0;
        const double speed_err_pct =
            100.0 * std::abs(speed_rep.shock_speed - D0) / D0;
        const bool pass = decreasing && shock_err_cells <= vc.max_shock_error_cells &&
                          speed_err_pct <= vc.max_speed_error_pct;
        report["noh"] = {{"entries", entries},
                         {"l1_decreasing", decreasing},
                         {"shock_position_error_cells", shock_err_cells},
                         {"measured_shock_speed", speed_rep.shock_speed},
                         {"reference_shock_speed", D0},
                         {"speed_error_pct", speed_err_pct},
                         {"pass", pass}};
        all_pass = all_pass && pass;
    }

    if (c.bubble) {
        const auto& vc = *c.bubble;
        nlohmann::json sections = nlohmann::json::array();
        for (int n : vc.geometries) {
            const BubbleSolution sol(n, vc.B, vc.rho_ref);
            const double r_lo = 0.2 * sol.xi0() * vc.t0;
            const double r_hi = 0.85 * sol.xi0() * vc.t0;
            nlohmann::json entries = nlohmann::json::array();
            double prev_l1 = 0.0;
            double order = 0.0;
            bool decreasing = true;
            for (std::size_t k = 0; k < vc.resolutions.size(); ++k) {
                const int N = vc.resolutions[k];
                const auto rep =
                    fv::run_bubble(sol, N, vc.t0, vc.t_final, r_lo, r_hi, vc.cfl);
                nlohmann::json e = {{"N", N}, {"L1_rho", rep.l1.rho}};
                if (k > 0) {
                    order = std::log2(prev_l1 / rep.l1.rho) /
                            std::log2(double(N) / vc.resolutions[k - 1]);
                    e["order"] = order;
                    decreasing = decreasing && rep.l1.rho < prev_l1;
                } else {
                    e["order"] = nullptr;
                }
                prev_l1 = rep.l1.rho;
                entries.push_back(e);
                write_snapshot(opts,
                               "bubble_snapshot_n" + std::to_string(n) + "_N" +
                                   std::to_string(N) + ".csv",
                               rep.grid, sol.eos());
            }
            const bool pass = decreasing && order >= vc.min_order;
            sections.push_back({{"n", n},
                                {"entries", entries},
                                {"observed_order", order},
                                {"pass", pass}});
            all_pass = all_pass && pass;
        }
        report["bubble"] = sections;
    }

    report["pass"] = all_pass;
    auto out = open_output(opts, "verify_report.json");
    out << report.dump(2) << '\n';
    return all_pass ? 0 : 1;
}

int run_command(const std::string& name, const std::string& config_path,
                const OutputOptions& opts) {
    try {
        const nlohmann::json config = load_config_file(config_path);
        if (name == "noh") return cmd_noh(config, opts);
        if (name == "bubble") return cmd_bubble(config, opts);
        if (name == "similarity") return cmd_similarity(config, opts);
        if (name == "verify") return cmd_verify(config, opts);
        std::cerr << "unknown subcommand '" << name << "'\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace isoeuler
