#pragma once
// Shared plumbing for the msmd tool: preset resolution, JSON sidecars, exit
// code mapping. Exit codes: 0 ok, 2 usage or config error, 3 numerical or
// runtime failure.

#include <chrono>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "msmd/jump.hpp"

namespace msmdcli {

using json = nlohmann::json;

// semantic config problems (bad flag combinations, missing presets); CLI11
// parse errors are mapped to the same exit code in main()
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliContext {
  int threads = 1;
  std::string presets_dir;  // empty means the compiled-in source tree default
};

// model text is a file path, a bare preset name looked up as
// <presets_dir>/<name>.json, or one of the built-in mean-120s presets
msmd::DurationModel resolve_model(const std::string& text, const CliContext& ctx);

std::string preset_dir(const CliContext& ctx);

// wall-clock timer started at subcommand entry
using Clock = std::chrono::steady_clock;

// writes <out_path>.meta.json carrying the config, its hash, library
// versions, and the elapsed wall-clock time
void write_sidecar(const std::string& out_path, const json& config, Clock::time_point t0);

void write_text(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& s);

// "HH:MM" to seconds since midnight
double parse_clock_time(const std::string& text);

msmd::InnovationLaw parse_innovation(const std::string& text);

}  // namespace msmdcli
