/*
 * Copyright 2026 The treeattr Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// treeattr: exact Shapley and Banzhaf attributions for tree ensembles.
//
//   treeattr explain --model m.json --data x.csv --method shapley_fast
//   treeattr verify [--model m.json] [--data x.csv] [--seed 42]
//   treeattr bench [--kind sparse --depth 10,20,40 | --model .. --data ..]
//   treeattr compare a.csv b.csv [--top-n 1,3,5]
//   treeattr hypercube --table 0,0,0,1
//   treeattr synth --kind dense --depth 3 --output dir

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "treeattr/commands.h"

namespace {

using treeattr::RunConfig;

void AddShared(CLI::App* command, RunConfig* config, std::string* mode) {
  command->add_option("--model", config->model_path, "Model JSON file");
  command->add_option("--data", config->data_path, "Dataset CSV file");
  command->add_option("--method", config->methods, "Method name(s)")
      ->delimiter(',');
  command->add_option("--mode", *mode, "Arithmetic")
      ->check(CLI::IsMember({"float64", "rational"}));
  command->add_option("--output", config->output_path, "Output path");
  command->add_option("--threads", config->threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  command->add_option("--seed", config->seed, "Random seed");
  command->add_option("--top-n", config->top_n, "Ranking lengths")
      ->delimiter(',');
  command->add_option("--repeats", config->repeats, "Timing repeats");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Shapley and Banzhaf attributions for tree ensembles"};
  app.require_subcommand(1);
  RunConfig config;
  std::string mode = "float64";

  CLI::App* explain = app.add_subcommand("explain", "Attribution CSV per row");
  CLI::App* verify =
      app.add_subcommand("verify", "Check the algorithms against the oracles");
  CLI::App* bench = app.add_subcommand("bench", "Time and count state work");
  CLI::App* compare =
      app.add_subcommand("compare", "Compare two attribution CSVs");
  CLI::App* hypercube = app.add_subcommand(
      "hypercube", "Global impacts of a Boolean function under weightings");
  CLI::App* synth =
      app.add_subcommand("synth", "Write a synthetic instance with its answer");
  for (CLI::App* command : {explain, verify, bench, compare, hypercube, synth}) {
    AddShared(command, &config, &mode);
  }
  for (CLI::App* command : {bench, synth}) {
    command->add_option("--kind", config.kind, "dense or sparse");
    command->add_option("--depth", config.depths, "Depth(s)")->delimiter(',');
  }
  compare->add_option("files", config.inputs, "Two attribution CSVs");
  hypercube->add_option("--function", config.function_path,
                        "JSON {\"k\": k, \"table\": [...]}");
  hypercube->add_option("--table", config.table, "Inline table")
      ->delimiter(',');
  hypercube->add_option("--k", config.k, "Dimension");
  hypercube->add_option("--random-schemes", config.random_schemes,
                        "Random per-size weightings to add");

  CLI11_PARSE(app, argc, argv);
  config.mode = mode == "rational" ? treeattr::NumericMode::kRational
                                   : treeattr::NumericMode::kFloat64;
  try {
    if (explain->parsed()) return RunExplain(config, std::cout, std::cerr);
    if (verify->parsed()) return RunVerify(config, std::cout, std::cerr);
    if (bench->parsed()) return RunBench(config, std::cout, std::cerr);
    if (compare->parsed()) return RunCompare(config, std::cout, std::cerr);
    if (hypercube->parsed()) return RunHypercube(config, std::cout, std::cerr);
    if (synth->parsed()) return RunSynth(config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
