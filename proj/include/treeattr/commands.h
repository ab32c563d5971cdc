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


// The subcommands behind the treeattr tool. Each returns a process exit
// code: 0 success, 1 bad input or failed check, 2 dimension mismatch, 3 the
// oracle's feature cap was exceeded. Results go to `output_path` when set and
// to `out` otherwise; diagnostics go to `err`.

#ifndef TREEATTR_COMMANDS_H_
#define TREEATTR_COMMANDS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "treeattr/rational.h"

namespace treeattr {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitDimensionMismatch = 2,
  kExitOracleCap = 3,
};

struct RunConfig {
  std::string model_path;
  std::string data_path;
  std::vector<std::string> methods;
  NumericMode mode = NumericMode::kFloat64;
  std::string output_path;
  int threads = 1;
  std::uint64_t seed = 42;
  std::vector<int> top_n;
  int repeats = 3;

  // synth and bench: instance family and depths.
  std::string kind = "sparse";
  std::vector<int> depths;
  // compare: the two attribution CSVs.
  std::vector<std::string> inputs;
  // hypercube: JSON file {"k": k, "table": [...]} or an inline table.
  std::string function_path;
  std::vector<double> table;
  int k = -1;
  int random_schemes = 5;
};

// Attribution CSV for every data row.
int RunExplain(const RunConfig& config, std::ostream& out, std::ostream& err);
// JSON report checking the algorithms against the oracles. Without --model
// a random ensemble from --seed is used, without --data random points.
int RunVerify(const RunConfig& config, std::ostream& out, std::ostream& err);
// CSV "method,depth,L,wall_ns,add_ops,del_ops,scale_ops".
int RunBench(const RunConfig& config, std::ostream& out, std::ostream& err);
// JSON report comparing two attribution CSVs; with --output, per-feature and
// Cayley tables are also written next to it (.features.csv, .cayley.csv).
int RunCompare(const RunConfig& config, std::ostream& out, std::ostream& err);
// JSON report: monotonicity and global impacts under several weightings.
int RunHypercube(const RunConfig& config, std::ostream& out,
                 std::ostream& err);
// Writes model.json, data.csv and exact.json into the output directory.
int RunSynth(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace treeattr

#endif  // TREEATTR_COMMANDS_H_
