#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace msitree {

/// Error raised while reading a CSV file; the message names the offending
/// row and column when the failure is a bad cell.
class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable classification dataset: an n x m matrix of finite real
/// features plus one integer class label per row. Labels are nonnegative;
/// the label alphabet is {0..maxLabel()}.
class Dataset {
public:
    /// `features` is row-major with `columns` values per row. Attribute
    /// names default to "X1".."Xm". Throws std::invalid_argument on shape
    /// mismatch, non-finite features, or negative labels.
    Dataset(std::vector<double> features, std::size_t columns, std::vector<int> labels,
            std::vector<std::string> attributeNames = {});

    std::size_t rowCount() const { return labels_.size(); }
    std::size_t columnCount() const { return columns_; }

    std::span<const double> row(std::size_t i) const {
        return {features_.data() + i * columns_, columns_};
    }
    double feature(std::size_t row, std::size_t col) const {
        return features_[row * columns_ + col];
    }
    int label(std::size_t row) const { return labels_[row]; }
    const std::vector<int>& labels() const { return labels_; }

    /// Largest observed label (the G in {0..G}).
    int maxLabel() const { return maxLabel_; }
    /// Number of classes, G + 1.
    int labelCount() const { return maxLabel_ + 1; }

    const std::vector<std::string>& attributeNames() const { return attributeNames_; }

private:
    std::vector<double> features_;
    std::vector<int> labels_;
    std::vector<std::string> attributeNames_;
    std::size_t columns_ = 0;
    int maxLabel_ = 0;
};

/// A view of selected rows of a Dataset. Indices are unique and in range;
/// size() is the subset's diameter. The parent dataset must outlive the
/// subset.
class DataSubset {
public:
    DataSubset(const Dataset& parent, std::vector<std::uint32_t> rows);

    /// Subset covering every row, in order.
    static DataSubset whole(const Dataset& parent);

    const Dataset& parent() const { return *parent_; }
    const std::vector<std::uint32_t>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

private:
    const Dataset* parent_;
    std::vector<std::uint32_t> rows_;
};

struct SplitRatio {
    double trainFraction = 0.7;
    std::uint64_t seed = 0;
};

/// Loads a CSV file. Cells other than the label column must parse as
/// finite reals. Label cells are used directly when the whole column is
/// nonnegative integers; otherwise the column is treated as categorical
/// and distinct values are mapped to 0..G in first-appearance order.
/// `labelColumn` is a zero-based column index into the file.
Dataset loadCsv(const std::filesystem::path& path, std::size_t labelColumn, bool hasHeader);

/// Same, with the label column named by its header entry. Requires a header.
Dataset loadCsv(const std::filesystem::path& path, const std::string& labelColumnName,
                bool hasHeader);

/// Writes attribute columns followed by a final "label" column, using the
/// canonical number formatting, so that loading the file back reproduces
/// the dataset exactly.
void saveCsv(const Dataset& dataset, const std::filesystem::path& path, bool writeHeader = true);

/// Deterministic shuffle-and-cut partition. Train size is
/// round(trainFraction * n), clamped so neither side is empty. Row order
/// within each part follows the original dataset.
std::pair<Dataset, Dataset> trainTestSplit(const Dataset& dataset, const SplitRatio& ratio);

/// 100 uniform points on [0,100]^2 labeled 0 when X1 < 50 and 1 otherwise,
/// plus one extra point labeled 1 placed uniformly in [0,45] x [0,100]:
/// a single wrongly-labeled measurement inside the class-0 region. n = 101.
Dataset makeErrorPointDataset(std::uint64_t seed);

/// Two isotropic Gaussian clusters of `pointsPerBlob` 2-D points each,
/// centered at (0,0) and (10,10), one class per cluster.
Dataset makeBlobs(double stdDev, std::size_t pointsPerBlob, std::uint64_t seed);

/// Unlabeled feature rows, as read from a prediction-input CSV.
struct FeatureMatrix {
    std::vector<double> values; // row-major
    std::size_t columns = 0;

    std::size_t rowCount() const { return columns == 0 ? 0 : values.size() / columns; }
    std::span<const double> row(std::size_t i) const {
        return {values.data() + i * columns, columns};
    }
};

/// Loads a CSV file of features only; every cell must parse as a finite
/// real.
FeatureMatrix loadCsvFeatures(const std::filesystem::path& path, bool hasHeader);

/// Canonical text form of one row: comma-separated features in shortest
/// round-trip decimal form, then the label, then '\n'. This is both the
/// CSV body format and the string fed to compressors by the cost function.
void appendRowText(const Dataset& dataset, std::size_t row, std::string& out);

/// Every row of the dataset in canonical text form.
std::string datasetText(const Dataset& dataset);

/// The subset's rows in canonical text form, in subset order.
std::string subsetText(const DataSubset& subset);

} // namespace msitree
