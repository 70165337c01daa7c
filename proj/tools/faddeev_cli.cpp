#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "faddeev/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Configuration-space Faddeev solver for three-nucleon scattering"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> incoming;
  std::optional<double> energy, lab_energy;

  auto* bound = app.add_subcommand("bound", "two-body bound states per channel");
  auto* scatter = app.add_subcommand("scatter", "solve one energy and extract the S-matrix");
  auto* scan = app.add_subcommand("scan", "solve a list or range of energies");
  for (auto* sub : {bound, scatter, scan}) {
    sub->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides [run] output)");
  }
  for (auto* sub : {scatter, scan})
    sub->add_option("--incoming", incoming, "incoming states: nd, nnp:1, nnp:2, ...");
  auto* e_opt = scatter->add_option("--energy", energy, "centre-of-mass energy in MeV");
  scatter->add_option("--elab", lab_energy, "nucleon laboratory energy in MeV")->excludes(e_opt);

  std::vector<std::string> files;
  auto* defects = app.add_subcommand("defects", "recompute unitarity and reciprocity defects from S-matrix files");
  defects->add_option("files", files, "S-matrix JSON files")->required()->check(CLI::ExistingFile);
  defects->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (defects->parsed()) {
      std::vector<std::filesystem::path> paths(files.begin(), files.end());
      return faddeev::cmd_defects(paths, out_dir, std::cout);
    }
    faddeev::RunConfig cfg = faddeev::load_config(config_path);
    if (!out_dir.empty()) cfg.output = out_dir;
    if (!incoming.empty()) {
      cfg.incoming.clear();
      for (const auto& s : incoming) cfg.incoming.push_back(faddeev::IncomingSelector::parse(s));
    }
    if (bound->parsed()) return faddeev::cmd_bound(cfg, std::cout);
    if (scatter->parsed()) {
      if (energy || lab_energy) {
        cfg.energies = energy ? std::vector<double>{*energy} : std::vector<double>{};
        cfg.lab_energies = lab_energy ? std::vector<double>{*lab_energy} : std::vector<double>{};
        cfg.scan = {};
      }
      return faddeev::cmd_scatter(cfg, std::nullopt, std::nullopt, std::cout);
    }
    return faddeev::cmd_scan(cfg, std::cout);
  } catch (const faddeev::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
