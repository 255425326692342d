#pragma once

#include <CLI11.hpp>

#include "common.hpp"

namespace msmdcli {

void setup_simulate(CLI::App& app, CliContext& ctx);
void setup_fits(CLI::App& app, CliContext& ctx);  // fit-mle, fit-whittle, fit-acd, fit-lmsd
void setup_forecast(CLI::App& app, CliContext& ctx);
void setup_tournament(CLI::App& app, CliContext& ctx);
void setup_goftest(CLI::App& app, CliContext& ctx);
void setup_mc(CLI::App& app, CliContext& ctx);
void setup_rvsim(CLI::App& app, CliContext& ctx);
void setup_ingest(CLI::App& app, CliContext& ctx);

}  // namespace msmdcli
