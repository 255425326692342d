#include <cstdio>
#include <exception>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Markov-switching multifractal duration models: simulation, estimation, "
               "forecasting, spectral testing, and Monte Carlo harnesses"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MSMD_VERSION);

  msmdcli::CliContext ctx;
  app.add_option("--threads", ctx.threads, "worker threads for replication loops")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--presets-dir", ctx.presets_dir, "directory holding model preset JSON files");

  msmdcli::setup_simulate(app, ctx);
  msmdcli::setup_fits(app, ctx);
  msmdcli::setup_forecast(app, ctx);
  msmdcli::setup_tournament(app, ctx);
  msmdcli::setup_goftest(app, ctx);
  msmdcli::setup_mc(app, ctx);
  msmdcli::setup_rvsim(app, ctx);
  msmdcli::setup_ingest(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const msmdcli::UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
