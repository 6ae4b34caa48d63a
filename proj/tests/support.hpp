#pragma once

// Shared test helpers: random dataset and tree generators, the independent
// brute-force split oracle, and tree cloning for invariant checks.

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "msitree/dataset.hpp"
#include "msitree/rng.hpp"
#include "msitree/split.hpp"
#include "msitree/tree.hpp"

namespace testsupport {

inline msitree::Dataset randomDataset(msitree::Rng& rng, std::size_t n, std::size_t m,
                                      int classes, double lo = 0.0, double hi = 10.0) {
    std::vector<double> features(n * m);
    for (auto& v : features) v = rng.uniform(lo, hi);
    std::vector<int> labels(n);
    for (auto& l : labels) l = static_cast<int>(rng.below(classes));
    return msitree::Dataset(std::move(features), m, std::move(labels));
}

/// Brute force over every feature and every midpoint of consecutive
/// distinct sorted values, scored with the public weightedEntropy, keeping
/// the first strict minimum. Independent of the sweep inside bestSplit.
inline std::optional<msitree::Split> bruteForceBestSplit(const msitree::DataSubset& subset,
                                                         std::size_t minSideSize = 1) {
    if (subset.size() < 2) return std::nullopt;
    if (msitree::entropy(subset) == 0.0) return std::nullopt;
    const msitree::Dataset& data = subset.parent();
    std::optional<msitree::Split> best;
    double bestH = 0.0;
    for (std::size_t j = 0; j < data.columnCount(); ++j) {
        std::vector<double> values;
        values.reserve(subset.size());
        for (auto r : subset.rows()) values.push_back(data.feature(r, j));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t k = 0; k + 1 < values.size(); ++k) {
            const double threshold = (values[k] + values[k + 1]) / 2.0;
            if (!(threshold < values[k + 1])) continue; // midpoint rounded up to the next value
            msitree::Split candidate{j, threshold};
            auto [left, right] = msitree::partitionRows(subset, candidate);
            if (left.size() < minSideSize || right.size() < minSideSize) continue;
            const double h = msitree::weightedEntropy(subset, candidate);
            if (!best || h < bestH) {
                best = candidate;
                bestH = h;
            }
        }
    }
    return best;
}

/// Attaches children produced by a split, with majority forecasts, the way
/// the builders do.
inline void growAt(msitree::TreeNode& leaf, const msitree::Split& split,
                   const msitree::Dataset& dataset) {
    auto [leftRows, rightRows] = msitree::partitionRows(leaf.data, split);
    msitree::DataSubset leftData(dataset, std::move(leftRows));
    msitree::DataSubset rightData(dataset, std::move(rightRows));
    const int leftClass = msitree::forecast(leftData);
    const int rightClass = msitree::forecast(rightData);
    leaf.split = split;
    leaf.left = std::make_unique<msitree::TreeNode>(std::move(leftData), leftClass);
    leaf.right = std::make_unique<msitree::TreeNode>(std::move(rightData), rightClass);
}

/// A tree with `splits` random valid growth steps (fewer when leaves run
/// out of distinct values).
inline msitree::Tree randomTree(msitree::Rng& rng, const msitree::Dataset& dataset,
                                std::size_t splits) {
    auto root = std::make_unique<msitree::TreeNode>(msitree::DataSubset::whole(dataset),
                                                    msitree::forecast(msitree::DataSubset::whole(dataset)));
    msitree::Tree tree(dataset, std::move(root));
    std::vector<msitree::TreeNode*> leaves{&tree.root()};
    std::size_t grown = 0;
    while (grown < splits && !leaves.empty()) {
        const std::size_t pick = rng.below(leaves.size());
        msitree::TreeNode* leaf = leaves[pick];

        // A usable split needs a feature with at least two distinct values.
        std::optional<msitree::Split> chosen;
        for (std::size_t attempt = 0; attempt < dataset.columnCount() && !chosen; ++attempt) {
            const std::size_t j = rng.below(dataset.columnCount());
            std::vector<double> values;
            for (auto r : leaf->data.rows()) values.push_back(dataset.feature(r, j));
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            if (values.size() < 2) continue;
            const std::size_t k = rng.below(values.size() - 1);
            const double threshold = (values[k] + values[k + 1]) / 2.0;
            if (!(threshold < values[k + 1])) continue;
            chosen = msitree::Split{j, threshold};
        }
        leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(pick));
        if (!chosen) continue; // this leaf cannot be split further
        growAt(*leaf, *chosen, dataset);
        leaves.push_back(leaf->left.get());
        leaves.push_back(leaf->right.get());
        ++grown;
    }
    return tree;
}

inline std::unique_ptr<msitree::TreeNode> cloneNode(const msitree::TreeNode& node) {
    auto copy = std::make_unique<msitree::TreeNode>(node.data, node.forecastClass);
    if (!node.isLeaf()) {
        copy->split = node.split;
        copy->left = cloneNode(*node.left);
        copy->right = cloneNode(*node.right);
    }
    return copy;
}

inline msitree::Tree cloneTree(const msitree::Tree& tree) {
    return msitree::Tree(tree.trainedOn(), cloneNode(tree.root()));
}

template <typename Visit>
void forEachNode(const msitree::TreeNode& node, Visit&& visit) {
    visit(node);
    if (!node.isLeaf()) {
        forEachNode(*node.left, visit);
        forEachNode(*node.right, visit);
    }
}

} // namespace testsupport
