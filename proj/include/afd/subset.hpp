// Copyright 2026 The AFD Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Class-subset selection from a confusion matrix: pick the k classes that
// are most confused among each other, measured by the Shannon entropy of
// the off-diagonal confusion mass inside the subset.

#ifndef AFD_SUBSET_HPP_
#define AFD_SUBSET_HPP_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace afd {

// k x k confusion rates, row = true class, column = predicted class.
// Rows are normalized to sum 1 on construction.
class ConfusionMatrix {
 public:
  // Throws InvalidMatrix on non-square input, label count mismatch,
  // negative/non-finite entries or a row summing to zero.
  ConfusionMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> rows);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double rate(std::size_t truth, std::size_t predicted) const noexcept {
    return rates_[truth * size() + predicted];
  }
  double diagonal(std::size_t i) const noexcept { return rate(i, i); }

 private:
  std::vector<std::string> labels_;
  std::vector<double> rates_;
};

// Header row of labels, then k rows of k comma-separated counts or rates.
// A row may start with its label as an extra leading field.
ConfusionMatrix parse_confusion_csv(std::istream& in);

// Entropy (nats) of the normalized off-diagonal entries of the subset's
// block. Zero when the block has no off-diagonal mass.
// Throws SubsetTooSmall for fewer than two classes.
double interclass_entropy(const ConfusionMatrix& matrix, std::span<const std::size_t> subset);

enum class SearchMode { Exhaustive, Greedy };

struct SubsetResult {
  std::vector<std::size_t> selected;     // ordered; see permutation
  double score = 0.0;
  std::vector<std::size_t> permutation;  // selected block first, then the rest by label
  SearchMode mode = SearchMode::Exhaustive;
};

struct SubsetOptions {
  double min_accuracy = 0.5;
  // Exhaustive enumeration is used while C(eligible, k) stays at or below
  // this bound.
  std::size_t exhaustive_limit = 1'000'000;
};

// Throws NotEnoughEligibleClasses, SubsetTooSmall.
SubsetResult select_subset(const ConfusionMatrix& matrix, std::size_t k,
                           const SubsetOptions& options = {});

// Orders a selected block so that consecutive classes share as much
// symmetrized confusion as possible. Exact for blocks of up to 8 classes,
// nearest-neighbor chaining beyond.
std::vector<std::size_t> order_block(const ConfusionMatrix& matrix,
                                     std::vector<std::size_t> block);

void write_subset_result(std::ostream& out, const ConfusionMatrix& matrix,
                         const SubsetResult& result);

// Binomial coefficient saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k) noexcept;

}  // namespace afd

#endif  // AFD_SUBSET_HPP_
