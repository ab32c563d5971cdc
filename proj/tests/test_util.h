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


#ifndef TREEATTR_TESTS_TEST_UTIL_H_
#define TREEATTR_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <random>
#include <string>

#include "gtest/gtest.h"
#include "treeattr/model.h"

namespace treeattr::testing {

// root f0 @ 5; left leaf 10 (cov 3), right leaf 20 (cov 1).
inline TreeEnsemble OneSplitModel() {
  TreeEnsemble model;
  model.num_features = 1;
  model.trees.push_back({{TreeNode::Split(0, 5.0, 1, 2, 4),
                          TreeNode::Leaf(10, 3), TreeNode::Leaf(20, 1)}});
  return model;
}

// root f0 @ 5; left leaf 0 (cov 2); right f1 @ 3 with leaves 10, 30 (cov 1).
inline TreeEnsemble TwoFeatureModel() {
  TreeEnsemble model;
  model.num_features = 2;
  model.trees.push_back(
      {{TreeNode::Split(0, 5.0, 1, 2, 4), TreeNode::Leaf(0, 2),
        TreeNode::Split(1, 3.0, 3, 4, 2), TreeNode::Leaf(10, 1),
        TreeNode::Leaf(30, 1)}});
  return model;
}

inline TreeEnsemble SingleLeafModel(double value, int num_features = 1) {
  TreeEnsemble model;
  model.num_features = num_features;
  model.trees.push_back({{TreeNode::Leaf(value, 10)}});
  return model;
}

// Fresh directory under the test temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = std::filesystem::temp_directory_path() /
            (std::string("treeattr_") + info->test_suite_name() + "_" +
             info->name());
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace treeattr::testing

#endif  // TREEATTR_TESTS_TEST_UTIL_H_
