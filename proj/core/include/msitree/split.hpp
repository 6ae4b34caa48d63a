#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "msitree/dataset.hpp"

namespace msitree {

/// An axis-aligned split: rows with feature[featureIndex] <= threshold go
/// left, the rest go right.
struct Split {
    std::size_t featureIndex = 0;
    double threshold = 0.0;

    friend bool operator==(const Split&, const Split&) = default;
};

/// Shannon entropy, in bits, of the class-label distribution of the
/// subset. Throws std::invalid_argument on an empty subset.
double entropy(const DataSubset& subset);

/// Splits the subset's rows into (left, right) by the <= rule, preserving
/// subset order.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
partitionRows(const DataSubset& subset, const Split& split);

/// Size-weighted mean of the entropies of the two sides:
/// |L|/|Q| * H(L) + |R|/|Q| * H(R). Throws std::invalid_argument when the
/// split leaves either side empty.
double weightedEntropy(const DataSubset& subset, const Split& split);

/// Exhaustive search for the split minimizing weighted entropy. Candidate
/// thresholds are the midpoints between consecutive distinct sorted values
/// of each feature. Ties break toward the lowest feature index, then the
/// lowest threshold. Returns nullopt when the subset is already pure or no
/// candidate produces two sides of at least `minSideSize` rows each.
std::optional<Split> bestSplit(const DataSubset& subset, std::size_t minSideSize = 1);

} // namespace msitree
