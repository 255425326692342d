#include "common.hpp"

#include <Eigen/Core>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "msmd/io_json.hpp"

#ifndef MSMD_VERSION
#define MSMD_VERSION "dev"
#endif
#ifndef MSMD_SOURCE_PRESETS
#define MSMD_SOURCE_PRESETS ""
#endif

namespace msmdcli {

namespace fs = std::filesystem;

std::string preset_dir(const CliContext& ctx) {
  if (!ctx.presets_dir.empty()) return ctx.presets_dir;
  if (const char* env = std::getenv("MSMD_PRESETS")) return env;
  return MSMD_SOURCE_PRESETS;
}

msmd::DurationModel resolve_model(const std::string& text, const CliContext& ctx) {
  if (text.empty()) throw UsageError("empty model name");
  if (fs::exists(text)) return msmd::load_duration_model(text);
  const std::string dir = preset_dir(ctx);
  if (!dir.empty()) {
    const fs::path p = fs::path(dir) / (text + ".json");
    if (fs::exists(p)) return msmd::load_duration_model(p.string());
  }
  try {
    return msmd::duration_model_preset(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("model '" + text + "' is neither a file, a preset in " +
                     (dir.empty() ? std::string("<unset>") : dir) + ", nor a built-in preset");
  }
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_sidecar(const std::string& out_path, const json& config, Clock::time_point t0) {
  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a64(config.dump())));
  json meta{
      {"config", config},
      {"config_hash", hash},
      {"versions",
       {{"msmd", MSMD_VERSION},
        {"compiler", __VERSION__},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                      "." + std::to_string(EIGEN_MINOR_VERSION)}}},
      {"runtime_seconds", elapsed},
  };
  write_text(out_path + ".meta.json", meta.dump(2) + "\n");
}

double parse_clock_time(const std::string& text) {
  int hh = 0, mi = 0;
  if (std::sscanf(text.c_str(), "%d:%d", &hh, &mi) != 2 || hh < 0 || hh > 24 || mi < 0 || mi > 59)
    throw UsageError("expected HH:MM, got '" + text + "'");
  return hh * 3600.0 + mi * 60.0;
}

msmd::InnovationLaw parse_innovation(const std::string& text) {
  if (text == "exponential" || text == "exp") return msmd::InnovationLaw::exponential;
  if (text == "weibull") return msmd::InnovationLaw::weibull;
  throw UsageError("innovation law must be exponential or weibull, got '" + text + "'");
}

}  // namespace msmdcli
