#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "peerrank/error.hpp"

namespace peerrank {

/// Dense binary matrix (row-major). Reviewers index rows, works index columns.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}

  static BinaryMatrix identity(int n) {
    BinaryMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c] != 0; }
  void set(int r, int c, bool v) { data_[static_cast<std::size_t>(r) * cols_ + c] = v ? 1 : 0; }

  int row_sum(int r) const {
    int s = 0;
    for (int c = 0; c < cols_; ++c) s += at(r, c) ? 1 : 0;
    return s;
  }
  int col_sum(int c) const {
    int s = 0;
    for (int r = 0; r < rows_; ++r) s += at(r, c) ? 1 : 0;
    return s;
  }

  /// Nonzero entries as sorted (row, col) pairs.
  std::vector<std::pair<int, int>> entries() const {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (at(r, c)) out.emplace_back(r, c);
    return out;
  }

  static BinaryMatrix from_entries(int rows, int cols, const std::vector<std::pair<int, int>>& entries) {
    BinaryMatrix m(rows, cols);
    for (auto [r, c] : entries) {
      if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw Error(ErrorCode::ShapeMismatch, "entry outside matrix bounds");
      m.set(r, c, true);
    }
    return m;
  }

  bool operator==(const BinaryMatrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Problem setup: works, reviewers, loads, conflicts, authorship, ground truth.
struct ProblemInstance {
  int n = 0;       // number of works
  int m = 0;       // number of reviewers
  int lambda = 0;  // reviewers per work
  int mu = 0;      // works per reviewer
  BinaryMatrix conflicts;          // m x n
  BinaryMatrix authorship;         // m x n, subset of conflicts
  std::vector<double> qualities;   // per-work ground truth, higher is better
};

/// Review assignment. `matrix` is the m x n indicator; `per_reviewer[i]` lists
/// the works assigned to reviewer i in ascending id order.
struct Assignment {
  BinaryMatrix matrix;
  std::vector<std::vector<int>> per_reviewer;

  static Assignment from_matrix(const BinaryMatrix& matrix) {
    Assignment a;
    a.matrix = matrix;
    a.per_reviewer.resize(matrix.rows());
    for (int i = 0; i < matrix.rows(); ++i)
      for (int j = 0; j < matrix.cols(); ++j)
        if (matrix.at(i, j)) a.per_reviewer[i].push_back(j);
    return a;
  }

  static Assignment from_lists(int n_works, const std::vector<std::vector<int>>& per_reviewer) {
    BinaryMatrix m(static_cast<int>(per_reviewer.size()), n_works);
    for (int i = 0; i < static_cast<int>(per_reviewer.size()); ++i)
      for (int j : per_reviewer[i]) {
        if (j < 0 || j >= n_works) throw Error(ErrorCode::ShapeMismatch, "work id outside instance");
        m.set(i, j, true);
      }
    return from_matrix(m);  // re-derives lists, sorted and deduplicated
  }
};

/// One reviewer's total order over their assigned works, best first.
struct Ranking {
  int reviewer = -1;
  std::vector<int> order;
};

/// One ranking per reviewer; index in `rankings` equals the reviewer id.
struct ReviewProfile {
  std::vector<Ranking> rankings;
};

/// Desired assignment structure: biregular bipartite edge list over
/// m left (reviewer) nodes and n right (work) nodes.
struct Topology {
  int left_nodes = 0;
  int right_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // (left, right)
};

// ---------------------------------------------------------------------------
// Structural validation. Each throws Error on the first violation found.
// ---------------------------------------------------------------------------

void validate_instance(const ProblemInstance& inst);
void validate_assignment(const ProblemInstance& inst, const Assignment& assignment);
void validate_profile(const Assignment& assignment, const ReviewProfile& profile);
void validate_topology(const ProblemInstance& inst, const Topology& topology);

}  // namespace peerrank
