#include "formring/bracket.hpp"

#include <cctype>

#include "formring/error.hpp"

namespace formring {

CommExpr CommExpr::leaf(int index) {
  CommExpr e;
  e.leaf_ = index;
  return e;
}

CommExpr CommExpr::bracket(CommExpr left, CommExpr right) {
  CommExpr e;
  e.left_ = std::make_shared<const CommExpr>(std::move(left));
  e.right_ = std::make_shared<const CommExpr>(std::move(right));
  return e;
}

int CommExpr::leaf_count() const { return is_leaf() ? 1 : left_->leaf_count() + right_->leaf_count(); }

std::string CommExpr::to_string() const {
  if (is_leaf()) return std::to_string(leaf_);
  return "[" + left_->to_string() + "," + right_->to_string() + "]";
}

namespace {

CommExpr parse_at(const std::string& t, std::size_t& i) {
  if (i >= t.size()) throw ConfigError("bracketing ends early");
  if (t[i] == '[') {
    ++i;
    CommExpr l = parse_at(t, i);
    if (i >= t.size() || t[i] != ',') throw ConfigError("bracketing expects ','");
    ++i;
    CommExpr r = parse_at(t, i);
    if (i >= t.size() || t[i] != ']') throw ConfigError("bracketing expects ']'");
    ++i;
    return CommExpr::bracket(std::move(l), std::move(r));
  }
  std::size_t j = i;
  while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
  if (j == i) throw ConfigError("bracketing expects a leaf index");
  const int v = std::stoi(t.substr(i, j - i));
  i = j;
  return CommExpr::leaf(v);
}

std::vector<CommExpr> trees(int first, int m) {
  if (m == 1) return {CommExpr::leaf(first)};
  std::vector<CommExpr> out;
  for (int k = 1; k < m; ++k) {
    for (const CommExpr& l : trees(first, k)) {
      for (const CommExpr& r : trees(first + k, m - k)) out.push_back(CommExpr::bracket(l, r));
    }
  }
  return out;
}

}  // namespace

CommExpr CommExpr::parse(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  std::size_t i = 0;
  CommExpr e = parse_at(t, i);
  if (i != t.size()) throw ConfigError("trailing characters in bracketing");
  return e;
}

std::uint64_t catalan(int n) {
  std::uint64_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::vector<CommExpr> enumerate_bracketings(int m) {
  if (m < 1) throw Error("bracketing needs at least one leaf");
  return trees(0, m);
}

CommExpr left_normed(int m) {
  CommExpr e = CommExpr::leaf(0);
  for (int i = 1; i < m; ++i) e = CommExpr::bracket(e, CommExpr::leaf(i));
  return e;
}

SubgroupHandle evaluate_bracketing(const UnitarySpace& space, const CommExpr& expr,
                                   const std::vector<SubgroupHandle>& leaves, std::size_t budget) {
  if (expr.is_leaf()) {
    const int i = expr.leaf_index();
    if (i < 0 || static_cast<std::size_t>(i) >= leaves.size()) throw Error("leaf index out of range");
    return leaves[static_cast<std::size_t>(i)];
  }
  const SubgroupHandle l = evaluate_bracketing(space, expr.left(), leaves, budget);
  if (l.status == StoreStatus::budget_exceeded) return l;
  const SubgroupHandle r = evaluate_bracketing(space, expr.right(), leaves, budget);
  if (r.status == StoreStatus::budget_exceeded) return r;
  return mixed_commutator(space, l, r, budget);
}

}  // namespace formring
