#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "msitree/tree.hpp"

namespace msitree {

class ModelParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A decision tree read back from its serialized text form. Carries only
/// what prediction needs: the split structure, the attribute count, and
/// the label set.
class Model {
public:
    /// Parses model text: an optional comment header
    /// `# msitree model attrs=<m> labels=<l0,l1,...>` followed by the
    /// serialized tree. Without the header, the attribute count is
    /// inferred from the highest attribute the tree uses.
    static Model parseText(std::string_view text);
    static Model parseFile(const std::filesystem::path& path);

    int predict(std::span<const double> x) const;

    std::size_t attributeCount() const { return attributeCount_; }
    const std::vector<int>& labels() const { return labels_; }

private:
    struct Node {
        // featureIndex < 0 marks a leaf carrying `label`.
        int featureIndex = -1;
        double threshold = 0.0;
        int label = 0;
        std::unique_ptr<Node> left;
        std::unique_ptr<Node> right;
    };

    Model() = default;

    std::unique_ptr<Node> root_;
    std::size_t attributeCount_ = 0;
    std::vector<int> labels_;
};

/// Model file text: a header comment with the training dataset's attribute
/// count and label set, then the serialized tree.
std::string modelFileText(const Tree& tree);

void writeModelFile(const Tree& tree, const std::filesystem::path& path);

} // namespace msitree
