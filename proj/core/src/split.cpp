#include "msitree/split.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msitree {

namespace {

// Shared by entropy() and the bestSplit() sweep so both paths produce
// bit-identical doubles for the same counts.
double entropyFromCounts(const std::vector<std::size_t>& counts, std::size_t total) {
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

std::vector<std::size_t> labelCounts(const DataSubset& subset) {
    std::vector<std::size_t> counts(subset.parent().labelCount(), 0);
    for (std::uint32_t r : subset.rows()) ++counts[subset.parent().label(r)];
    return counts;
}

} // namespace

double entropy(const DataSubset& subset) {
    if (subset.empty()) throw std::invalid_argument("entropy: empty subset");
    return entropyFromCounts(labelCounts(subset), subset.size());
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
partitionRows(const DataSubset& subset, const Split& split) {
    std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> parts;
    for (std::uint32_t r : subset.rows()) {
        if (subset.parent().feature(r, split.featureIndex) <= split.threshold)
            parts.first.push_back(r);
        else
            parts.second.push_back(r);
    }
    return parts;
}

double weightedEntropy(const DataSubset& subset, const Split& split) {
    if (subset.size() < 2) throw std::invalid_argument("weightedEntropy: need at least two rows");
    auto [left, right] = partitionRows(subset, split);
    if (left.empty() || right.empty())
        throw std::invalid_argument("weightedEntropy: split leaves one side empty");
    const auto total = static_cast<double>(subset.size());
    DataSubset l(subset.parent(), std::move(left));
    DataSubset r(subset.parent(), std::move(right));
    return (static_cast<double>(l.size()) / total) * entropy(l) +
           (static_cast<double>(r.size()) / total) * entropy(r);
}

std::optional<Split> bestSplit(const DataSubset& subset, std::size_t minSideSize) {
    const std::size_t n = subset.size();
    if (n < 2) return std::nullopt;

    const Dataset& data = subset.parent();
    const std::size_t classes = data.labelCount();

    auto totalCounts = labelCounts(subset);
    // Pure subsets cannot be improved by any split.
    if (std::count_if(totalCounts.begin(), totalCounts.end(),
                      [](std::size_t c) { return c > 0; }) <= 1)
        return std::nullopt;

    std::optional<Split> best;
    double bestH = 0.0;

    std::vector<std::uint32_t> order(subset.rows());
    std::vector<std::size_t> leftCounts(classes), rightCounts(classes);

    for (std::size_t j = 0; j < data.columnCount(); ++j) {
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return data.feature(a, j) < data.feature(b, j);
        });
        std::fill(leftCounts.begin(), leftCounts.end(), 0);
        rightCounts = totalCounts;

        for (std::size_t k = 0; k + 1 < n; ++k) {
            const int label = data.label(order[k]);
            ++leftCounts[label];
            --rightCounts[label];

            const double v = data.feature(order[k], j);
            const double vNext = data.feature(order[k + 1], j);
            if (!(v < vNext)) continue;

            const std::size_t nl = k + 1;
            const std::size_t nr = n - nl;
            if (nl < minSideSize || nr < minSideSize) continue;

            const double threshold = (v + vNext) / 2.0;
            // With adjacent doubles the midpoint can round up to vNext,
            // which would leak right-side rows into the left partition;
            // such a candidate is not a valid separator.
            if (!(threshold < vNext)) continue;

            const double h =
                (static_cast<double>(nl) / static_cast<double>(n)) * entropyFromCounts(leftCounts, nl) +
                (static_cast<double>(nr) / static_cast<double>(n)) * entropyFromCounts(rightCounts, nr);
            if (!best || h < bestH) {
                best = Split{j, threshold};
                bestH = h;
            }
        }
    }
    return best;
}

} // namespace msitree
