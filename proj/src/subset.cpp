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

#include "afd/subset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "afd/error.hpp"
#include "json.hpp"

namespace afd {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& field, std::size_t row) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size()) {
    throw Error(ErrorCode::InvalidMatrix,
                "row " + std::to_string(row + 1) + ": '" + field + "' is not a number");
  }
  return value;
}

// Candidate comparison: higher score first, then lexicographically smaller
// sorted label list.
class SubsetRanker {
 public:
  SubsetRanker(const ConfusionMatrix& matrix) : matrix_(matrix) {}

  std::vector<std::string> sorted_labels(std::span<const std::size_t> subset) const {
    std::vector<std::string> out;
    out.reserve(subset.size());
    for (auto i : subset) out.push_back(matrix_.labels()[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool better(double score, std::span<const std::size_t> subset, double best_score,
              std::span<const std::size_t> best) const {
    if (score != best_score) return score > best_score;
    return sorted_labels(subset) < sorted_labels(best);
  }

 private:
  const ConfusionMatrix& matrix_;
};

double symmetric_confusion(const ConfusionMatrix& m, std::size_t a, std::size_t b) {
  return m.rate(a, b) + m.rate(b, a);
}

std::vector<std::size_t> exhaustive_search(const ConfusionMatrix& matrix,
                                           const std::vector<std::size_t>& eligible,
                                           std::size_t k, double& best_score) {
  const SubsetRanker ranker(matrix);
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<std::size_t> candidate(k);
  std::vector<std::size_t> best;
  best_score = -1.0;
  const std::size_t n = eligible.size();
  while (true) {
    for (std::size_t i = 0; i < k; ++i) candidate[i] = eligible[pick[i]];
    const double score = interclass_entropy(matrix, candidate);
    if (best.empty() || ranker.better(score, candidate, best_score, best)) {
      best = candidate;
      best_score = score;
    }
    // Next k-combination of {0..n-1} in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

std::vector<std::size_t> greedy_search(const ConfusionMatrix& matrix,
                                       const std::vector<std::size_t>& eligible, std::size_t k,
                                       double& best_score) {
  const SubsetRanker ranker(matrix);

  // Seed: the eligible pair with the most symmetrized confusion.
  std::vector<std::size_t> current;
  double seed_mass = -1.0;
  for (std::size_t a = 0; a < eligible.size(); ++a) {
    for (std::size_t b = a + 1; b < eligible.size(); ++b) {
      const std::vector<std::size_t> pair{eligible[a], eligible[b]};
      const double mass = symmetric_confusion(matrix, eligible[a], eligible[b]);
      if (current.empty() || mass > seed_mass ||
          (mass == seed_mass && ranker.sorted_labels(pair) < ranker.sorted_labels(current))) {
        current = pair;
        seed_mass = mass;
      }
    }
  }

  // Grow by the class that maximizes block entropy.
  while (current.size() < k) {
    std::vector<std::size_t> best;
    double best_grow = -1.0;
    for (auto e : eligible) {
      if (std::find(current.begin(), current.end(), e) != current.end()) continue;
      auto candidate = current;
      candidate.push_back(e);
      const double score = interclass_entropy(matrix, candidate);
      if (best.empty() || ranker.better(score, candidate, best_grow, best)) {
        best = std::move(candidate);
        best_grow = score;
      }
    }
    current = std::move(best);
  }

  // Single-swap hill climbing, best improvement per pass.
  best_score = interclass_entropy(matrix, current);
  while (true) {
    std::vector<std::size_t> best = current;
    double improved = best_score;
    for (std::size_t slot = 0; slot < current.size(); ++slot) {
      for (auto e : eligible) {
        if (std::find(current.begin(), current.end(), e) != current.end()) continue;
        auto candidate = current;
        candidate[slot] = e;
        const double score = interclass_entropy(matrix, candidate);
        if (ranker.better(score, candidate, improved, best)) {
          best = std::move(candidate);
          improved = score;
        }
      }
    }
    if (best == current) break;
    current = std::move(best);
    best_score = improved;
  }
  return current;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels,
                                 std::vector<std::vector<double>> rows)
    : labels_(std::move(labels)) {
  const std::size_t k = labels_.size();
  if (k == 0) throw Error(ErrorCode::InvalidMatrix, "no classes");
  if (rows.size() != k) {
    throw Error(ErrorCode::InvalidMatrix, std::to_string(rows.size()) + " rows for " +
                                              std::to_string(k) + " labels");
  }
  rates_.resize(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    if (rows[i].size() != k) {
      throw Error(ErrorCode::InvalidMatrix, "row " + std::to_string(i + 1) + " has " +
                                                std::to_string(rows[i].size()) + " entries, expected " +
                                                std::to_string(k));
    }
    double sum = 0.0;
    for (double v : rows[i]) {
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::InvalidMatrix, "row " + std::to_string(i + 1) +
                                                  " has a negative or non-finite entry");
      }
      sum += v;
    }
    if (!(sum > 0.0)) {
      throw Error(ErrorCode::InvalidMatrix, "row " + std::to_string(i + 1) + " sums to zero");
    }
    for (std::size_t j = 0; j < k; ++j) rates_[i * k + j] = rows[i][j] / sum;
  }
}

ConfusionMatrix parse_confusion_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw Error(ErrorCode::InvalidMatrix, "missing header row");
  // An empty top-left cell announces a leading label column.
  const bool corner = header.front().empty();
  std::vector<std::string> labels(header.begin() + (corner ? 1 : 0), header.end());
  const std::size_t k = labels.size();

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const std::size_t r = rows.size();
    std::size_t first = 0;
    if (fields.size() == k + 1) {
      if (r >= k || fields.front() != labels[r]) {
        throw Error(ErrorCode::InvalidMatrix, "row " + std::to_string(r + 1) + " label '" +
                                                  fields.front() + "' does not match header");
      }
      first = 1;
    } else if (fields.size() != k || corner) {
      throw Error(ErrorCode::InvalidMatrix, "row " + std::to_string(r + 1) + " has " +
                                                std::to_string(fields.size()) + " fields");
    }
    std::vector<double> row;
    for (std::size_t j = first; j < fields.size(); ++j) row.push_back(parse_number(fields[j], r));
    rows.push_back(std::move(row));
  }
  return ConfusionMatrix(std::move(labels), std::move(rows));
}

double interclass_entropy(const ConfusionMatrix& matrix, std::span<const std::size_t> subset) {
  if (subset.size() < 2) throw Error(ErrorCode::SubsetTooSmall, "need at least two classes");
  std::vector<std::size_t> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end() || s.back() >= matrix.size()) {
    throw Error(ErrorCode::InvalidParams, "subset has duplicate or out-of-range classes");
  }
  double total = 0.0;
  for (auto i : s) {
    for (auto j : s) {
      if (i != j) total += matrix.rate(i, j);
    }
  }
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (auto i : s) {
    for (auto j : s) {
      if (i == j) continue;
      const double p = matrix.rate(i, j) / total;
      if (p > 0.0) h -= p * std::log(p);
    }
  }
  return h;
}

std::size_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays exact because result is C(n-k+i-1, i-1).
    const std::size_t factor = n - k + i;
    if (result > std::numeric_limits<std::size_t>::max() / factor) {
      return std::numeric_limits<std::size_t>::max();
    }
    result = result * factor / i;
  }
  return result;
}

std::vector<std::size_t> order_block(const ConfusionMatrix& matrix,
                                     std::vector<std::size_t> block) {
  const auto& labels = matrix.labels();
  const auto by_label = [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; };
  std::sort(block.begin(), block.end(), by_label);
  if (block.size() <= 2) return block;

  const auto chain_mass = [&](const std::vector<std::size_t>& order) {
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      mass += symmetric_confusion(matrix, order[i], order[i + 1]);
    }
    return mass;
  };

  if (block.size() <= 8) {
    // Permutations come in lexicographic label order, so on ties the first
    // one found is kept.
    std::vector<std::size_t> best = block;
    double best_mass = chain_mass(block);
    while (std::next_permutation(block.begin(), block.end(), by_label)) {
      const double mass = chain_mass(block);
      if (mass > best_mass) {
        best_mass = mass;
        best = block;
      }
    }
    return best;
  }

  std::vector<std::size_t> order;
  std::vector<bool> used(block.size(), false);
  std::size_t a0 = 0, b0 = 1;
  double seed = -1.0;
  for (std::size_t a = 0; a < block.size(); ++a) {
    for (std::size_t b = a + 1; b < block.size(); ++b) {
      const double m = symmetric_confusion(matrix, block[a], block[b]);
      if (m > seed) {
        seed = m;
        a0 = a;
        b0 = b;
      }
    }
  }
  order = {block[a0], block[b0]};
  used[a0] = used[b0] = true;
  while (order.size() < block.size()) {
    std::size_t pick = block.size();
    double pick_mass = -1.0;
    for (std::size_t c = 0; c < block.size(); ++c) {
      if (used[c]) continue;
      const double m = symmetric_confusion(matrix, order.back(), block[c]);
      if (m > pick_mass) {
        pick_mass = m;
        pick = c;
      }
    }
    used[pick] = true;
    order.push_back(block[pick]);
  }
  return order;
}

SubsetResult select_subset(const ConfusionMatrix& matrix, std::size_t k,
                           const SubsetOptions& options) {
  if (k < 2) throw Error(ErrorCode::SubsetTooSmall, "need at least two classes");
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix.diagonal(i) >= options.min_accuracy) eligible.push_back(i);
  }
  if (eligible.size() < k) {
    throw Error(ErrorCode::NotEnoughEligibleClasses,
                std::to_string(eligible.size()) + " classes reach accuracy " +
                    std::to_string(options.min_accuracy) + ", need " + std::to_string(k));
  }

  SubsetResult result;
  std::vector<std::size_t> chosen;
  if (binomial(eligible.size(), k) <= options.exhaustive_limit) {
    result.mode = SearchMode::Exhaustive;
    chosen = exhaustive_search(matrix, eligible, k, result.score);
  } else {
    result.mode = SearchMode::Greedy;
    chosen = greedy_search(matrix, eligible, k, result.score);
  }
  result.selected = order_block(matrix, chosen);
  result.score = interclass_entropy(matrix, result.selected);

  result.permutation = result.selected;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) rest.push_back(i);
  }
  std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    return matrix.labels()[a] < matrix.labels()[b];
  });
  result.permutation.insert(result.permutation.end(), rest.begin(), rest.end());
  return result;
}

void write_subset_result(std::ostream& out, const ConfusionMatrix& matrix,
                         const SubsetResult& result) {
  nlohmann::ordered_json doc;
  std::vector<std::string> selected_labels;
  for (auto i : result.selected) selected_labels.push_back(matrix.labels()[i]);
  std::vector<std::string> permutation_labels;
  for (auto i : result.permutation) permutation_labels.push_back(matrix.labels()[i]);
  doc["selected"] = selected_labels;
  doc["selected_indices"] = result.selected;
  doc["score"] = result.score;
  doc["mode"] = result.mode == SearchMode::Exhaustive ? "exhaustive" : "greedy";
  doc["permutation"] = result.permutation;
  doc["permutation_labels"] = permutation_labels;
  out << doc.dump(2) << '\n';
}

}  // namespace afd
