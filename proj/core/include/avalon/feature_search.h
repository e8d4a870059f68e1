// Copyright 2026 The Avalon Assassin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AVALON_FEATURE_SEARCH_H_
#define AVALON_FEATURE_SEARCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "avalon/features.h"
#include "avalon/game_io.h"
#include "avalon/svm.h"

namespace avalon {

struct SubsetScore {
  StatSubset subset;
  double mean_accuracy = 0.0;
  std::vector<double> fold_accuracies;
};

// Higher mean first; ties prefer fewer statistics, then the subset whose
// sorted id list is lexicographically smaller.
bool RanksBefore(const SubsetScore& a, const SubsetScore& b);

struct SearchResult {
  std::vector<SubsetScore> ranking;
  StatSubset best_subset;
  std::size_t total_subsets_evaluated = 0;
  std::uint64_t seed = 0;
  int folds = 0;
};

// Scores every non-empty subset of `candidates` by k-fold linear-SVC
// accuracy on engineered features. One fold plan is shared by all subsets.
// Throws EmptyCandidates, EmptyDataset, BadK.
SearchResult PowersetSearch(const GameStream& stream, StatSubset candidates,
                            int folds, std::uint64_t seed,
                            const LinearSvcParams& svc = {}, int jobs = 1,
                            FullCleanMode mode = FullCleanMode::kNoSpies);

// "subset,mean,fold_1,...,fold_k" with subsets written as "f1+f2".
std::string SearchCsv(const SearchResult& result);
std::string SearchSummary(const SearchResult& result, std::size_t top = 10);

}  // namespace avalon

#endif  // AVALON_FEATURE_SEARCH_H_
