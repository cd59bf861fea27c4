#pragma once

#include <string>

#include "isoeuler/config.hpp"

namespace isoeuler {

// Subcommand entry points. Each reads a parsed config, writes its output
// files under opts.out_dir, and returns a process exit code:
//   0 success, 1 numerical failure / unmet verify threshold, 2 config error.
int cmd_noh(const nlohmann::json& config, const OutputOptions& opts);
int cmd_bubble(const nlohmann::json& config, const OutputOptions& opts);
int cmd_similarity(const nlohmann::json& config, const OutputOptions& opts);
int cmd_verify(const nlohmann::json& config, const OutputOptions& opts);

// Dispatch by subcommand name with uniform error-to-exit-code mapping.
int run_command(const std::string& name, const std::string& config_path,
                const OutputOptions& opts);

// Worker count for parameter sweeps: ISO_EULER_THREADS, clamped to
// [1, hardware_concurrency]; defaults to 1.
unsigned sweep_thread_count();

}  // namespace isoeuler
