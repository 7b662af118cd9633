#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "fhartree/config.hpp"
#include "fhartree/errors.hpp"
#include "fhartree/experiment.hpp"

namespace {

// Accepts "--section.key=value", "--section.key value" and "section.key=value".
fhartree::Overrides parse_overrides(const std::vector<std::string>& args) {
  fhartree::Overrides out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string arg = args[i];
    if (arg.rfind("--", 0) == 0) arg = arg.substr(2);
    const auto eq = arg.find('=');
    if (eq != std::string::npos) {
      out[arg.substr(0, eq)] = arg.substr(eq + 1);
    } else if (arg.find('.') != std::string::npos && i + 1 < args.size()) {
      out[arg] = args[++i];
    } else {
      throw fhartree::ValidationError("unrecognized argument: " + args[i]);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral experiments for the focusing fractional Hartree equation"};
  app.require_subcommand(1);
  app.allow_extras();

  std::string config_path;
  std::string out_dir;
  std::string profile = "canonical";
  app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (same as io.out)");
  app.add_option("--profile", profile, "Base profile")->check(CLI::IsMember({"canonical"}));

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ground-state", "Solve for the ground state and write its snapshot and validation report"},
      {"classify", "Place u0 = c*Q (or a snapshot) in K1/K2 and print the predicted fate"},
      {"evolve", "Evolve initial data with diagnostics; writes run.csv and run.json"},
      {"sweep", "Classify and evolve c*Q across an amplitude range"},
      {"verify", "Run the identity suite and report pass/fail per check"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->allow_extras();
    sub->fallthrough();
    sub->footer("Any configuration key can be overridden as --section.key=value, e.g. --physics.s=0.6");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fhartree::kExitValidation;
  }

  auto* chosen = app.get_subcommands().front();
  try {
    auto extras = chosen->remaining();
    for (const auto& a : app.remaining()) extras.push_back(a);
    auto overrides = parse_overrides(extras);
    if (!out_dir.empty()) overrides["io.out"] = out_dir;
    const auto cfg = fhartree::load_config(profile, config_path, overrides);
    return fhartree::run_command(chosen->get_name(), cfg, std::cout, std::cerr);
  } catch (const fhartree::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fhartree::kExitValidation;
  }
}
