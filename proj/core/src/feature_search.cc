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

#include "avalon/feature_search.h"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "avalon/error.h"
#include "avalon/evaluation.h"
#include "avalon/parallel.h"

namespace avalon {

namespace {

Dataset SelectStats(const std::vector<StatTable>& tables,
                    const std::vector<int>& labels,
                    const std::vector<SeatMask>& masks, StatSubset subset,
                    FullCleanMode mode) {
  Dataset data;
  data.schema = EngineeredSchema(subset);
  data.schema.full_clean = mode;
  data.labels = labels;
  data.resistance = masks;
  const auto stats = subset.stats();
  data.x = Matrix(tables.size(), kNumPlayers * stats.size());
  for (std::size_t i = 0; i < tables.size(); ++i) {
    auto row = data.x.row(i);
    std::size_t c = 0;
    for (Seat s = 0; s < kNumPlayers; ++s) {
      for (Stat stat : stats) {
        row[c++] = tables[i][s][static_cast<std::size_t>(stat)];
      }
    }
  }
  return data;
}

}  // namespace

bool RanksBefore(const SubsetScore& a, const SubsetScore& b) {
  if (a.mean_accuracy != b.mean_accuracy) {
    return a.mean_accuracy > b.mean_accuracy;
  }
  if (a.subset.size() != b.subset.size()) {
    return a.subset.size() < b.subset.size();
  }
  const auto sa = a.subset.stats();
  const auto sb = b.subset.stats();
  return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(),
                                      sb.end());
}

SearchResult PowersetSearch(const GameStream& stream, StatSubset candidates,
                            int folds, std::uint64_t seed,
                            const LinearSvcParams& svc, int jobs,
                            FullCleanMode mode) {
  if (candidates.empty()) {
    throw Error(ErrorKind::kEmptyCandidates,
                "at least one candidate statistic is required");
  }
  if (stream.games.empty()) throw Error(ErrorKind::kEmptyDataset, "no games");

  const std::size_t n = stream.games.size();
  const FoldPlan plan = KFoldSplit(n, folds, seed);
  std::vector<StatTable> tables(n);
  std::vector<int> labels(n);
  std::vector<SeatMask> masks(n);
  ParallelFor(jobs, n, [&](std::size_t i) {
    const GameLog& g = stream.games[i];
    tables[i] = ComputeStatTable(MakeAssassinView(g), mode);
    labels[i] = g.SeatOf(Role::kMerlin);
    masks[i] = g.ResistanceMask();
  });

  std::vector<StatSubset> subsets;
  const std::uint16_t mask = candidates.bits();
  for (std::uint16_t bits = mask; bits != 0; bits = (bits - 1) & mask) {
    subsets.push_back(StatSubset::FromBits(bits));
  }
  std::sort(subsets.begin(), subsets.end(),
            [](StatSubset a, StatSubset b) { return a.bits() < b.bits(); });

  const TrainFn train = MakeTrainFn(svc);
  SearchResult result;
  result.seed = seed;
  result.folds = folds;
  result.ranking.resize(subsets.size());
  ParallelFor(jobs, subsets.size(), [&](std::size_t s) {
    const Dataset data = SelectStats(tables, labels, masks, subsets[s], mode);
    const DatasetCv cv = CrossValidateDataset(data, train, plan);
    SubsetScore& score = result.ranking[s];
    score.subset = subsets[s];
    for (const FoldResult& f : cv.folds) {
      score.fold_accuracies.push_back(f.test_accuracy);
      score.mean_accuracy += f.test_accuracy;
    }
    score.mean_accuracy /= static_cast<double>(cv.folds.size());
  });
  std::sort(result.ranking.begin(), result.ranking.end(), RanksBefore);
  result.total_subsets_evaluated = result.ranking.size();
  result.best_subset = result.ranking.front().subset;
  return result;
}

std::string SearchCsv(const SearchResult& result) {
  std::ostringstream out;
  out << "subset,mean";
  for (int f = 1; f <= result.folds; ++f) out << ",fold_" << f;
  out << '\n' << std::setprecision(17);
  for (const SubsetScore& s : result.ranking) {
    std::string ids = s.subset.ToString();
    std::replace(ids.begin(), ids.end(), ',', '+');
    out << ids << ',' << s.mean_accuracy;
    for (double a : s.fold_accuracies) out << ',' << a;
    out << '\n';
  }
  return out.str();
}

std::string SearchSummary(const SearchResult& result, std::size_t top) {
  std::ostringstream out;
  out << "evaluated " << result.total_subsets_evaluated << " subsets with "
      << result.folds << "-fold CV (seed " << result.seed << ")\n";
  out << "best subset: " << result.best_subset.ToString() << "\n";
  out << std::fixed << std::setprecision(4);
  const std::size_t shown = std::min(top, result.ranking.size());
  for (std::size_t i = 0; i < shown; ++i) {
    const SubsetScore& s = result.ranking[i];
    out << "  " << std::setw(3) << i + 1 << ". " << std::left << std::setw(28)
        << s.subset.ToString() << std::right << s.mean_accuracy << "\n";
  }
  return out.str();
}

}  // namespace avalon
