#include "msitree/msi.hpp"

#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>

#include "msitree/split.hpp"

namespace msitree {

namespace {

struct PendingGrowth {
    TreeNode* leaf = nullptr;
    Split split;
    CostBreakdown cost;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;
};

} // namespace

MsiResult buildTree(const Dataset& dataset, const MsiConfig& config,
                    const MsiBuildOptions& options) {
    const CostEvaluator evaluator(config.compressor, config.combiner, dataset);

    DataSubset all = DataSubset::whole(dataset);
    auto root = std::make_unique<TreeNode>(all, forecast(all));
    Tree tree(dataset, std::move(root));

    CostBreakdown current = evaluator.cost(tree);
    double bestCost = current.combined;

    std::vector<TreeNode*> candidates{&tree.root()};
    std::unordered_map<const TreeNode*, std::size_t> nodeIds{{&tree.root(), 0}};
    std::size_t nextId = 1;
    std::unordered_map<const TreeNode*, std::optional<Split>> splitMemo;

    auto notify = [&](MsiEvent::Kind kind, std::size_t leafId, double cost) {
        if (options.observer) options.observer(MsiEvent{kind, tree, leafId, cost});
    };

    GrowthTrace trace;
    std::size_t iteration = 0;

    while (!candidates.empty()) {
        ++iteration;
        std::optional<PendingGrowth> bestSolution;
        std::vector<TreeNode*> keep;
        keep.reserve(candidates.size());

        for (TreeNode* leaf : candidates) {
            std::optional<Split> chosen;
            if (options.memoizeSplits) {
                auto [it, inserted] = splitMemo.try_emplace(leaf);
                if (inserted) it->second = bestSplit(leaf->data);
                chosen = it->second;
            } else {
                chosen = bestSplit(leaf->data);
            }
            if (!chosen) {
                notify(MsiEvent::Kind::CandidateDiscarded, nodeIds[leaf], 0.0);
                continue; // leaf cannot grow; drop it from the candidate set
            }
            keep.push_back(leaf);

            auto [leftRows, rightRows] = partitionRows(leaf->data, *chosen);
            DataSubset leftData(dataset, std::move(leftRows));
            DataSubset rightData(dataset, std::move(rightRows));
            const int leftClass = forecast(leftData);
            const int rightClass = forecast(rightData);
            auto left = std::make_unique<TreeNode>(std::move(leftData), leftClass);
            auto right = std::make_unique<TreeNode>(std::move(rightData), rightClass);

            // Grow at the leaf, score the whole tree, then restore it.
            leaf->split = *chosen;
            leaf->left = std::move(left);
            leaf->right = std::move(right);
            CostBreakdown candidateCost = evaluator.cost(tree);
            left = std::move(leaf->left);
            right = std::move(leaf->right);
            leaf->split.reset();

            notify(MsiEvent::Kind::CandidateEvaluated, nodeIds[leaf], candidateCost.combined);

            if (candidateCost.combined < bestCost) {
                bestCost = candidateCost.combined;
                bestSolution = PendingGrowth{leaf, *chosen, candidateCost, std::move(left),
                                             std::move(right)};
            }
        }
        candidates.swap(keep);

        if (!bestSolution) break; // no candidate lowers the cost

        TreeNode* leaf = bestSolution->leaf;
        leaf->split = bestSolution->split;
        leaf->left = std::move(bestSolution->left);
        leaf->right = std::move(bestSolution->right);
        nodeIds[leaf->left.get()] = nextId++;
        nodeIds[leaf->right.get()] = nextId++;

        trace.push_back(
            {iteration, nodeIds[leaf], bestSolution->split, current, bestSolution->cost});
        current = bestSolution->cost;

        std::erase(candidates, leaf);
        candidates.push_back(leaf->left.get());
        candidates.push_back(leaf->right.get());

        notify(MsiEvent::Kind::GrowthCommitted, nodeIds[leaf], current.combined);
    }

    return MsiResult{std::move(tree), std::move(trace)};
}

CostBreakdown costOf(const Tree& tree, const Dataset& dataset, const MsiConfig& config) {
    return treeCost(config.compressor, config.combiner, tree, dataset);
}

} // namespace msitree
