#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it in-process.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semrerank/eval.hpp"
#include "semrerank/preprocess.hpp"
#include "semrerank/rerank.hpp"
#include "semrerank/scorer.hpp"

namespace semrerank {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int data = 2;
}  // namespace exit_code

// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// oracle | constant:<v> | baseline:<model-path> | remote:<url>
// Throws std::invalid_argument for an unrecognized scorer string.
ScorerProvider make_scorer_provider(const std::string& spec, ProcessingMethod method,
                                    const Resources& resources);

struct DemoOptions {
  std::size_t examples = 200;
  std::size_t train_examples = 400;
  std::size_t beam_size = 10;
  std::uint64_t seed = 2020;
  ProcessingMethod method = ProcessingMethod::templated;
  unsigned jobs = 1;
  // Optional external critic used for the G-R rows instead of the baseline.
  std::optional<std::string> scorer;
  std::optional<std::filesystem::path> out_dir;
};

struct DemoOutcome {
  std::vector<std::pair<std::string, EvalReport>> rows;
  BaselineModel model;
  double critic_pair_accuracy = 0.0;  // on pairs from the test corpus
  std::string text;                   // the printed report
};

DemoOutcome run_demo(const DemoOptions& options);

}  // namespace semrerank
