#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <string>

#include "nahmlab/errors.hpp"
#include "nahmlab/io.hpp"
#include "nahmlab/runner.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

int run(const std::string& cmd, const std::string& config_path, const std::string& out_override) {
  using namespace nahmlab;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    RunConfig cfg = load_config(config_path);
    if (!out_override.empty()) cfg.out = out_override;

    Artifacts artifacts;
    if (cmd == "flat-adhm")
      artifacts = run_flat_adhm(cfg);
    else if (cmd == "spectrum")
      artifacts = run_spectrum(cfg);
    else if (cmd == "reconstruct")
      artifacts = run_reconstruct(cfg);
    else if (cmd == "index")
      artifacts = run_index(cfg);
    else if (cmd == "family")
      artifacts = run_family_cmd(cfg);

    write_artifacts(cfg.out, artifacts);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_text_file(cfg.out + "/manifest.json", manifest_json(cfg, kVersion, wall));
    for (const auto& [name, contents] : artifacts)
      std::printf("wrote %s/%s (%zu bytes)\n", cfg.out.c_str(), name.c_str(), contents.size());
    if (cmd == "family" && !nahmlab::family_dichotomy_ok(artifacts)) {
      std::fprintf(stderr,
                   "family: spectral dichotomy gate failed (report written); raise the degree\n");
      return 4;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error [%s]: %s\n", e.field.c_str(), e.what());
    return 2;
  } catch (const ResolutionError& e) {
    std::fprintf(stderr, "resolution gate: %s\n", e.what());
    return 3;
  } catch (const GapError& e) {
    std::fprintf(stderr, "inconclusive spectral gap: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nahmlab - discrete Bergmann spaces, ADHM data and instanton families on the 4-ball"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::string chosen;
  for (const char* name : {"flat-adhm", "spectrum", "reconstruct", "index", "family"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_override, "output directory (overrides config)");
    sub->callback([name, &chosen] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);
  return run(chosen, config_path, out_override);
}
