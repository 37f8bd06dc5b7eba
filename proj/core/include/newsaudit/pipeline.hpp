#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "newsaudit/corpus.hpp"
#include "newsaudit/llmgen/client.hpp"
#include "newsaudit/mauve/mauve.hpp"
#include "newsaudit/models/logreg.hpp"
#include "newsaudit/stats/significance.hpp"

namespace newsaudit::pipeline {

// Effective configuration of a pipeline run, loaded from a JSON config file
// (see README for the key tree) plus CLI overrides. Artifacts embed
// (tool version, config hash, seed); reruns with identical inputs produce
// byte-identical files, timestamps living only in the run.log sidecar.
struct RunConfig {
  // Corpus inputs.
  std::string corpus_main;  // JSONL corpus (HR/HF and optionally MF)
  std::string corpus_mr;    // optional machine-real corpus for augmentation

  // Resource overrides; empty selects the builtin data.
  std::string lexicon_dir;
  std::string template_dir;

  SplitSpec split;  // split.seed mirrors the global seed

  std::string model_kind = "logreg";  // "logreg" or "tree"
  models::FitConfig model;

  stats::DebiasRule debias_rule = stats::DebiasRule::A;
  double eval_threshold = 0.5;

  mauve::MauveConfig mauve_cfg;
  std::string embeddings_p;  // mauve inputs
  std::string embeddings_q;

  llmgen::LlmEndpointConfig llm;
  std::string llm_target_label = "fake";  // "fake" (SMP) or "real" (paraphrase)
  int llm_min_body_words = 50;
  int llm_max_articles = 0;  // 0 = no cap

  std::string annotations_a;  // kappa inputs, CSV id,rating
  std::string annotations_b;

  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 0;

  // Derived at load time.
  std::string config_hash;  // FNV-1a-64 of the effective config, hex
  std::string source_path;
};

// FNV-1a 64-bit hash rendered as 16 hex digits; the artifact fingerprint.
std::string fnv1a64_hex(std::string_view data);

// Parses the JSON config text; unknown keys are rejected so typos fail
// loudly. `source` names the file in error messages.
RunConfig parse_run_config(const std::string& json_text, const std::string& source);

// Loads the file then applies CLI overrides (--out, --seed). The config
// hash covers the effective (post-override) configuration.
RunConfig load_run_config(const std::filesystem::path& file,
                          const std::optional<std::string>& out_override,
                          const std::optional<std::uint64_t>& seed_override);

// Subcommands in dispatch order: ingest, extract, audit, train, eval,
// compare, augment, generate, mauve, kappa.
const std::vector<std::string>& command_names();

// Runs one stage and returns the artifact paths it wrote (also appended to
// <out_dir>/run.log with a timestamp). Stages communicate only through
// files under out_dir, so any deleted downstream artifact is reproducible
// by rerunning its command. Errors propagate as ValidationError /
// ParseError (exit 1 at the CLI) or IoError / TransportError (exit 2).
std::vector<std::filesystem::path> run_command(const std::string& command,
                                               const RunConfig& cfg);

}  // namespace newsaudit::pipeline
