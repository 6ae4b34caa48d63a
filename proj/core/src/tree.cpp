#include "msitree/tree.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "msitree/text_format.hpp"

namespace msitree {

int forecast(const DataSubset& subset) {
    if (subset.empty()) throw std::invalid_argument("forecast: empty subset");
    std::vector<std::size_t> counts(subset.parent().labelCount(), 0);
    for (std::uint32_t r : subset.rows()) ++counts[subset.parent().label(r)];
    // First maximum wins, so ties go to the smallest label.
    return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

int predict(const Tree& tree, std::span<const double> x) {
    if (x.size() != tree.trainedOn().columnCount())
        throw std::invalid_argument("predict: input has " + std::to_string(x.size()) +
                                    " attributes, model expects " +
                                    std::to_string(tree.trainedOn().columnCount()));
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("predict: non-finite input value");
    const TreeNode* node = &tree.root();
    while (!node->isLeaf())
        node = x[node->split->featureIndex] <= node->split->threshold ? node->left.get()
                                                                      : node->right.get();
    return node->forecastClass;
}

namespace {

void collectUsedAttributes(const TreeNode& node, std::set<std::size_t>& used) {
    if (node.isLeaf()) return;
    used.insert(node.split->featureIndex);
    collectUsedAttributes(*node.left, used);
    collectUsedAttributes(*node.right, used);
}

void emitNode(const TreeNode& node, std::size_t indent, std::string& out) {
    out.append(indent, ' ');
    if (node.isLeaf()) {
        out += "return ";
        out += std::to_string(node.forecastClass);
        out += '\n';
        return;
    }
    out += "if X";
    out += std::to_string(node.split->featureIndex + 1);
    out += " <= ";
    appendDouble(out, node.split->threshold);
    out += ":\n";
    emitNode(*node.left, indent + 4, out);
    out.append(indent, ' ');
    out += "else:\n";
    emitNode(*node.right, indent + 4, out);
}

} // namespace

std::string serialize(const Tree& tree) {
    std::set<std::size_t> used;
    collectUsedAttributes(tree.root(), used);
    std::string out = "def tree{";
    bool first = true;
    for (std::size_t j : used) {
        if (!first) out += ',';
        out += 'X';
        out += std::to_string(j + 1);
        first = false;
    }
    out += "}:\n";
    emitNode(tree.root(), 4, out);
    return out;
}

namespace {

std::size_t countNodes(const TreeNode& node) {
    if (node.isLeaf()) return 1;
    return 1 + countNodes(*node.left) + countNodes(*node.right);
}

std::size_t depthOf(const TreeNode& node) {
    if (node.isLeaf()) return 0;
    return 1 + std::max(depthOf(*node.left), depthOf(*node.right));
}

} // namespace

std::size_t nodeCount(const Tree& tree) { return countNodes(tree.root()); }

std::size_t maxDepth(const Tree& tree) { return depthOf(tree.root()); }

double accuracy(const Tree& tree, const Dataset& dataset) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < dataset.rowCount(); ++i)
        if (predict(tree, dataset.row(i)) == dataset.label(i)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(dataset.rowCount());
}

DataSubset misclassified(const Tree& tree, const Dataset& dataset) {
    std::vector<std::uint32_t> rows;
    for (std::size_t i = 0; i < dataset.rowCount(); ++i)
        if (predict(tree, dataset.row(i)) != dataset.label(i))
            rows.push_back(static_cast<std::uint32_t>(i));
    return DataSubset(dataset, std::move(rows));
}

} // namespace msitree
