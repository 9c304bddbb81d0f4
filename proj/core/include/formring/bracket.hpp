#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "formring/group.hpp"

namespace formring {

/// A full binary tree whose leaves are numbered 0..m-1 from left to right.
class CommExpr {
 public:
  static CommExpr leaf(int index);
  static CommExpr bracket(CommExpr left, CommExpr right);

  bool is_leaf() const { return !left_; }
  int leaf_index() const { return leaf_; }
  const CommExpr& left() const { return *left_; }
  const CommExpr& right() const { return *right_; }
  int leaf_count() const;

  /// "[[0,1],2]"
  std::string to_string() const;
  /// Inverse of to_string.
  static CommExpr parse(const std::string& text);

  friend bool operator==(const CommExpr& a, const CommExpr& b) { return a.to_string() == b.to_string(); }

 private:
  int leaf_ = -1;
  std::shared_ptr<const CommExpr> left_, right_;
};

std::uint64_t catalan(int n);

/// Every bracketing of m ≥ 1 leaves, Catalan(m-1) of them, ordered by the
/// size of the left subtree and then recursively.
std::vector<CommExpr> enumerate_bracketings(int m);

/// [[[0,1],2],...,m-1]
CommExpr left_normed(int m);

/// Bottom-up evaluation with mixed_commutator at every internal node. Any
/// budget-exceeded child makes the result budget-exceeded.
SubgroupHandle evaluate_bracketing(const UnitarySpace& space, const CommExpr& expr,
                                   const std::vector<SubgroupHandle>& leaves,
                                   std::size_t budget = kDefaultBudget);

}  // namespace formring
