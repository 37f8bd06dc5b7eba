// newsaudit: audits fake-news detectors for bias against machine-generated
// text and runs the mitigation pipeline (feature audit, debiased retraining,
// machine-real augmentation). Each subcommand is one pipeline stage; stages
// talk to each other only through files in the output directory.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "newsaudit/errors.hpp"
#include "newsaudit/pipeline.hpp"
#include "newsaudit/version.hpp"

namespace {

std::string describe(const std::string& command) {
  if (command == "ingest") return "Validate the configured corpora and snapshot them into the output directory";
  if (command == "extract") return "Compute the 50-feature matrix for every ingested article";
  if (command == "audit") return "Run pairwise subgroup significance tests and write the debiased feature lists";
  if (command == "train") return "Split the corpus and fit the baseline, debiased, and (if augmented) MR-augmented detectors";
  if (command == "eval") return "Score the held-out split with each trained model and write per-subgroup reports";
  if (command == "compare") return "Diff the evaluation reports (debiasing and augmentation effects)";
  if (command == "augment") return "Merge the machine-real corpus into the training pool";
  if (command == "generate") return "Generate machine-written articles from human seeds via the configured endpoint";
  if (command == "mauve") return "Score distributional similarity of two embedding files";
  if (command == "kappa") return "Compute inter-annotator agreement from two rating CSVs";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"newsaudit: bias audit and mitigation for fake-news detectors "
               "on machine-generated text"};
  app.set_version_flag("--version", std::string(newsaudit::kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON run configuration file")
      ->required();
  CLI::Option* out_opt =
      app.add_option("--out", out_dir, "override the configured output directory");
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "override the configured global seed");

  for (const std::string& name : newsaudit::pipeline::command_names()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage problems are validation errors
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    newsaudit::pipeline::RunConfig cfg = newsaudit::pipeline::load_run_config(
        config_path,
        out_opt->count() > 0 ? std::optional<std::string>(out_dir) : std::nullopt,
        seed_opt->count() > 0 ? std::optional<std::uint64_t>(seed) : std::nullopt);
    std::vector<std::filesystem::path> wrote =
        newsaudit::pipeline::run_command(command, cfg);
    for (const std::filesystem::path& p : wrote)
      std::cout << "wrote " << p.generic_string() << "\n";
    return 0;
  } catch (const newsaudit::ValidationError& e) {  // covers ParseError
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const newsaudit::TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    if (!e.attempt_log().empty()) std::cerr << e.attempt_log();
    return 2;
  } catch (const newsaudit::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}
