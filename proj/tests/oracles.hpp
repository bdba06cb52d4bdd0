#pragma once

// Brute-force reference implementations used as independent oracles. These
// deliberately avoid the library's optimized paths: positions come from
// pairwise counting instead of sorting, expectations from full-profile
// re-aggregation over every permutation, and the null multiset from direct
// enumeration of permutation pairs.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "peerrank/types.hpp"

namespace oracle {

using peerrank::Assignment;
using peerrank::BinaryMatrix;
using peerrank::ProblemInstance;
using peerrank::Ranking;
using peerrank::ReviewProfile;

// Competition position of every work: 1 + count of strictly smaller scores.
inline std::vector<int> positions(const std::vector<double>& scores) {
  const int n = static_cast<int>(scores.size());
  std::vector<int> out(n);
  for (int j = 0; j < n; ++j) {
    int below = 0;
    for (int k = 0; k < n; ++k) below += scores[k] < scores[j] ? 1 : 0;
    out[j] = 1 + below;
  }
  return out;
}

// Borda totals (weight = rank position) over a whole profile.
inline std::vector<double> borda_scores(const ReviewProfile& profile, int n) {
  std::vector<double> scores(n, 0.0);
  for (const Ranking& r : profile.rankings)
    for (std::size_t p = 0; p < r.order.size(); ++p) scores[r.order[p]] += static_cast<double>(p + 1);
  return scores;
}

inline std::vector<int> aggregate_positions(const ReviewProfile& profile, int n) {
  return positions(borda_scores(profile, n));
}

// Expected positions when reviewer `i`'s ranking is uniform: enumerate every
// permutation of M(i), rebuild the full profile, aggregate from scratch.
inline std::vector<double> expected_positions(int reviewer, const ReviewProfile& profile,
                                              const Assignment& assignment, int n) {
  std::vector<int> works = assignment.per_reviewer[reviewer];
  std::sort(works.begin(), works.end());
  std::vector<double> sums(n, 0.0);
  long long count = 0;
  do {
    ReviewProfile candidate = profile;
    candidate.rankings[reviewer] = Ranking{reviewer, works};
    const std::vector<int> pos = aggregate_positions(candidate, n);
    for (int j = 0; j < n; ++j) sums[j] += pos[j];
    ++count;
  } while (std::next_permutation(works.begin(), works.end()));
  for (double& s : sums) s /= static_cast<double>(count);
  return sums;
}

// Test statistic straight from its definition.
inline double statistic(const ReviewProfile& profile, const BinaryMatrix& authorship,
                        const Assignment& assignment,
                        const std::optional<ReviewProfile>& supervision = std::nullopt) {
  const int n = assignment.matrix.cols();
  const ReviewProfile& reference = supervision ? *supervision : profile;
  double tau = 0.0;
  for (int i = 0; i < assignment.matrix.rows(); ++i) {
    ReviewProfile actual_slot = reference;
    actual_slot.rankings[i] = profile.rankings[i];
    const std::vector<int> actual = aggregate_positions(actual_slot, n);
    const std::vector<double> expected = expected_positions(i, reference, assignment, n);
    for (int j = 0; j < n; ++j)
      if (authorship.at(i, j)) tau += actual[j] - expected[j];
  }
  return tau;
}

// Membership in the valid-assignment set, from the definition.
inline bool is_valid_assignment(const ProblemInstance& inst, const BinaryMatrix& matrix) {
  for (int i = 0; i < inst.m; ++i) {
    int row = 0;
    for (int j = 0; j < inst.n; ++j) {
      if (matrix.at(i, j) && inst.conflicts.at(i, j)) return false;
      row += matrix.at(i, j) ? 1 : 0;
    }
    if (row != inst.mu) return false;
  }
  for (int j = 0; j < inst.n; ++j) {
    int col = 0;
    for (int i = 0; i < inst.m; ++i) col += matrix.at(i, j) ? 1 : 0;
    if (col != inst.lambda) return false;
  }
  return true;
}

// Every valid assignment, by recursion over reviewer rows.
inline std::vector<BinaryMatrix> enumerate_valid_assignments(const ProblemInstance& inst) {
  std::vector<BinaryMatrix> out;
  std::vector<int> col_load(inst.n, 0);
  std::vector<std::vector<int>> rows(inst.m);

  std::vector<int> row;
  auto fill_row = [&](auto&& self, int i, int next_work) -> void {
    if (static_cast<int>(row.size()) == inst.mu) {
      rows[i] = row;
      if (i + 1 == inst.m) {
        BinaryMatrix matrix(inst.m, inst.n);
        for (int r = 0; r < inst.m; ++r)
          for (int j : rows[r]) matrix.set(r, j, true);
        if (is_valid_assignment(inst, matrix)) out.push_back(matrix);
      } else {
        std::vector<int> saved = row;
        row.clear();
        self(self, i + 1, 0);
        row = saved;
      }
      return;
    }
    for (int j = next_work; j < inst.n; ++j) {
      if (inst.conflicts.at(i, j) || col_load[j] >= inst.lambda) continue;
      row.push_back(j);
      ++col_load[j];
      self(self, i, j + 1);
      --col_load[j];
      row.pop_back();
    }
  };
  fill_row(fill_row, 0, 0);
  return out;
}

// All accepted (row permutation, column permutation) pairs, as sorted
// authorship entry lists with multiplicity preserved.
inline std::vector<std::vector<std::pair<int, int>>> enumerate_null_multiset(const BinaryMatrix& conflicts,
                                                                             const BinaryMatrix& authorship,
                                                                             const Assignment& assignment) {
  const int m = conflicts.rows();
  const int n = conflicts.cols();
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<int> rp(m), cp(n);
  std::iota(rp.begin(), rp.end(), 0);
  do {
    std::iota(cp.begin(), cp.end(), 0);
    do {
      bool ok = true;
      for (int i = 0; i < m && ok; ++i)
        for (int j = 0; j < n && ok; ++j)
          if (conflicts.at(i, j) && assignment.matrix.at(rp[i], cp[j])) ok = false;
      if (ok) {
        std::vector<std::pair<int, int>> entries;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j)
            if (authorship.at(i, j)) entries.emplace_back(rp[i], cp[j]);
        std::sort(entries.begin(), entries.end());
        out.push_back(std::move(entries));
      }
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return out;
}

}  // namespace oracle
