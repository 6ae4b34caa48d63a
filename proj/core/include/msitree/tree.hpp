#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include "msitree/dataset.hpp"
#include "msitree/split.hpp"

namespace msitree {

/// One node of a binary decision tree. A node is either internal (split
/// engaged, both children present) or a leaf (no split, no children).
/// Every node keeps the subset of training rows it covers and the class it
/// would forecast for them.
struct TreeNode {
    DataSubset data;
    int forecastClass = 0;
    std::optional<Split> split;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;

    TreeNode(DataSubset subset, int forecast)
        : data(std::move(subset)), forecastClass(forecast) {}

    bool isLeaf() const { return !split.has_value(); }
};

/// A trained decision tree. Holds the root node and a reference to the
/// dataset it was trained on; the dataset must outlive the tree.
class Tree {
public:
    Tree(const Dataset& trainedOn, std::unique_ptr<TreeNode> root)
        : trainedOn_(&trainedOn), root_(std::move(root)) {}

    Tree(Tree&&) noexcept = default;
    Tree& operator=(Tree&&) noexcept = default;

    const TreeNode& root() const { return *root_; }
    TreeNode& root() { return *root_; }
    const Dataset& trainedOn() const { return *trainedOn_; }

private:
    const Dataset* trainedOn_;
    std::unique_ptr<TreeNode> root_;
};

/// Modal class label of the subset; ties break toward the smallest label.
/// Throws std::invalid_argument on an empty subset.
int forecast(const DataSubset& subset);

/// Routes x from the root to a leaf (left when x[j] <= threshold) and
/// returns that leaf's forecast class. Throws std::invalid_argument on a
/// dimension mismatch or non-finite input.
int predict(const Tree& tree, std::span<const double> x);

/// Renders the tree as a small Python-like function:
///
///     def tree{X1,X2}:
///         if X1 <= 50:
///             return 0
///         else:
///             ...
///
/// The header lists only the attributes the model actually uses, ascending.
/// Thresholds use the shortest round-trip decimal form; a single-leaf tree
/// is a header plus one return line. This text is the model interchange
/// format and the string whose compressed length measures model complexity.
std::string serialize(const Tree& tree);

/// Total number of nodes, internal and leaf.
std::size_t nodeCount(const Tree& tree);

/// Length in edges of the longest root-to-leaf path; a lone leaf has depth 0.
std::size_t maxDepth(const Tree& tree);

/// Fraction of rows whose prediction matches the label.
double accuracy(const Tree& tree, const Dataset& dataset);

/// Rows of `dataset` the tree mispredicts, in row order. May be empty.
DataSubset misclassified(const Tree& tree, const Dataset& dataset);

} // namespace msitree
