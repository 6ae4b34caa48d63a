#include "msitree/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "msitree/rng.hpp"
#include "msitree/text_format.hpp"

namespace msitree {

Dataset::Dataset(std::vector<double> features, std::size_t columns, std::vector<int> labels,
                 std::vector<std::string> attributeNames)
    : features_(std::move(features)), labels_(std::move(labels)),
      attributeNames_(std::move(attributeNames)), columns_(columns) {
    if (columns_ == 0) throw std::invalid_argument("Dataset: need at least one attribute");
    if (labels_.empty()) throw std::invalid_argument("Dataset: need at least one row");
    if (features_.size() != labels_.size() * columns_)
        throw std::invalid_argument("Dataset: feature matrix shape does not match label count");
    for (double v : features_)
        if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite feature value");
    for (int label : labels_) {
        if (label < 0) throw std::invalid_argument("Dataset: negative class label");
        maxLabel_ = std::max(maxLabel_, label);
    }
    if (attributeNames_.empty()) {
        attributeNames_.reserve(columns_);
        for (std::size_t j = 0; j < columns_; ++j)
            attributeNames_.push_back("X" + std::to_string(j + 1));
    } else if (attributeNames_.size() != columns_) {
        throw std::invalid_argument("Dataset: attribute name count does not match columns");
    }
}

DataSubset::DataSubset(const Dataset& parent, std::vector<std::uint32_t> rows)
    : parent_(&parent), rows_(std::move(rows)) {
    std::unordered_set<std::uint32_t> seen;
    seen.reserve(rows_.size());
    for (std::uint32_t r : rows_) {
        if (r >= parent.rowCount()) throw std::invalid_argument("DataSubset: row index out of range");
        if (!seen.insert(r).second) throw std::invalid_argument("DataSubset: duplicate row index");
    }
}

DataSubset DataSubset::whole(const Dataset& parent) {
    std::vector<std::uint32_t> rows(parent.rowCount());
    std::iota(rows.begin(), rows.end(), 0u);
    return DataSubset(parent, std::move(rows));
}

namespace {

std::vector<std::string> splitLine(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.emplace_back(trimCell(std::string_view(line).substr(start)));
            return cells;
        }
        cells.emplace_back(trimCell(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
}

struct RawCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // all non-header lines, split
};

RawCsv readRaw(const std::filesystem::path& path, bool hasHeader) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path.string() + "'");
    RawCsv raw;
    std::string line;
    std::size_t width = 0;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        auto cells = splitLine(line);
        if (width == 0) width = cells.size();
        if (cells.size() != width)
            throw CsvError("row " + std::to_string(lineNo) + ": expected " + std::to_string(width) +
                           " cells, found " + std::to_string(cells.size()));
        if (hasHeader && raw.header.empty() && raw.rows.empty()) {
            raw.header = std::move(cells);
        } else {
            raw.rows.push_back(std::move(cells));
        }
    }
    if (in.bad()) throw CsvError("read failure on '" + path.string() + "'");
    if ((hasHeader && raw.header.empty()) || raw.rows.empty())
        throw CsvError("'" + path.string() + "' contains no data rows");
    return raw;
}

Dataset buildDataset(const RawCsv& raw, std::size_t labelColumn, bool hasHeader) {
    const std::size_t width = raw.rows.front().size();
    if (labelColumn >= width)
        throw CsvError("label column " + std::to_string(labelColumn) + " out of range (file has " +
                       std::to_string(width) + " columns)");
    if (width < 2) throw CsvError("need at least one attribute column besides the label");

    const std::size_t n = raw.rows.size();
    const std::size_t m = width - 1;

    // Labels: integer column when every cell is a nonnegative integer,
    // otherwise categorical with first-appearance mapping.
    std::vector<int> labels(n);
    bool allIntegers = true;
    for (const auto& row : raw.rows) {
        auto v = parseInteger(row[labelColumn]);
        if (!v || *v < 0) {
            allIntegers = false;
            break;
        }
    }
    if (allIntegers) {
        for (std::size_t i = 0; i < n; ++i)
            labels[i] = static_cast<int>(*parseInteger(raw.rows[i][labelColumn]));
    } else {
        std::unordered_map<std::string, int> mapping;
        for (std::size_t i = 0; i < n; ++i) {
            auto [it, inserted] =
                mapping.try_emplace(raw.rows[i][labelColumn], static_cast<int>(mapping.size()));
            labels[i] = it->second;
        }
    }

    std::vector<double> features;
    features.reserve(n * m);
    const std::size_t headerLines = hasHeader ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < width; ++c) {
            if (c == labelColumn) continue;
            auto v = parseFiniteDouble(raw.rows[i][c]);
            if (!v)
                throw CsvError("row " + std::to_string(i + 1 + headerLines) + ", column " +
                               std::to_string(c + 1) + ": cell '" + raw.rows[i][c] +
                               "' is not a finite number");
            features.push_back(*v);
        }
    }

    std::vector<std::string> names;
    if (!raw.header.empty()) {
        for (std::size_t c = 0; c < width; ++c)
            if (c != labelColumn) names.push_back(raw.header[c]);
    }
    return Dataset(std::move(features), m, std::move(labels), std::move(names));
}

} // namespace

Dataset loadCsv(const std::filesystem::path& path, std::size_t labelColumn, bool hasHeader) {
    return buildDataset(readRaw(path, hasHeader), labelColumn, hasHeader);
}

Dataset loadCsv(const std::filesystem::path& path, const std::string& labelColumnName,
                bool hasHeader) {
    if (!hasHeader) throw CsvError("label column by name requires a header row");
    RawCsv raw = readRaw(path, true);
    auto it = std::find(raw.header.begin(), raw.header.end(), labelColumnName);
    if (it == raw.header.end())
        throw CsvError("no column named '" + labelColumnName + "' in header");
    return buildDataset(raw, static_cast<std::size_t>(it - raw.header.begin()), true);
}

FeatureMatrix loadCsvFeatures(const std::filesystem::path& path, bool hasHeader) {
    RawCsv raw = readRaw(path, hasHeader);
    FeatureMatrix matrix;
    matrix.columns = raw.rows.front().size();
    matrix.values.reserve(raw.rows.size() * matrix.columns);
    const std::size_t headerLines = hasHeader ? 1 : 0;
    for (std::size_t i = 0; i < raw.rows.size(); ++i) {
        for (std::size_t c = 0; c < matrix.columns; ++c) {
            auto v = parseFiniteDouble(raw.rows[i][c]);
            if (!v)
                throw CsvError("row " + std::to_string(i + 1 + headerLines) + ", column " +
                               std::to_string(c + 1) + ": cell '" + raw.rows[i][c] +
                               "' is not a finite number");
            matrix.values.push_back(*v);
        }
    }
    return matrix;
}

void saveCsv(const Dataset& dataset, const std::filesystem::path& path, bool writeHeader) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot open '" + path.string() + "' for writing");
    std::string text;
    if (writeHeader) {
        for (const auto& name : dataset.attributeNames()) {
            text += name;
            text += ',';
        }
        text += "label\n";
    }
    for (std::size_t i = 0; i < dataset.rowCount(); ++i) appendRowText(dataset, i, text);
    out << text;
    if (!out) throw CsvError("write failure on '" + path.string() + "'");
}

std::pair<Dataset, Dataset> trainTestSplit(const Dataset& dataset, const SplitRatio& ratio) {
    const std::size_t n = dataset.rowCount();
    if (n < 2) throw std::invalid_argument("trainTestSplit: need at least two rows");
    if (!(ratio.trainFraction > 0.0 && ratio.trainFraction < 1.0))
        throw std::invalid_argument("trainTestSplit: trainFraction must lie in (0,1)");

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    Rng rng(ratio.seed);
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(i + 1)]);

    auto trainSize = static_cast<std::size_t>(std::llround(ratio.trainFraction * double(n)));
    trainSize = std::clamp<std::size_t>(trainSize, 1, n - 1);

    std::vector<std::uint32_t> trainRows(order.begin(), order.begin() + trainSize);
    std::vector<std::uint32_t> testRows(order.begin() + trainSize, order.end());
    std::sort(trainRows.begin(), trainRows.end());
    std::sort(testRows.begin(), testRows.end());

    auto materialize = [&](const std::vector<std::uint32_t>& rows) {
        std::vector<double> features;
        features.reserve(rows.size() * dataset.columnCount());
        std::vector<int> labels;
        labels.reserve(rows.size());
        for (std::uint32_t r : rows) {
            auto src = dataset.row(r);
            features.insert(features.end(), src.begin(), src.end());
            labels.push_back(dataset.label(r));
        }
        return Dataset(std::move(features), dataset.columnCount(), std::move(labels),
                       dataset.attributeNames());
    };
    return {materialize(trainRows), materialize(testRows)};
}

Dataset makeErrorPointDataset(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> features;
    features.reserve(101 * 2);
    std::vector<int> labels;
    labels.reserve(101);
    for (int i = 0; i < 100; ++i) {
        double x1 = rng.uniform(0.0, 100.0);
        double x2 = rng.uniform(0.0, 100.0);
        features.push_back(x1);
        features.push_back(x2);
        labels.push_back(x1 < 50.0 ? 0 : 1);
    }
    // The mislabeled point, kept well inside the class-0 half plane.
    features.push_back(rng.uniform(0.0, 45.0));
    features.push_back(rng.uniform(0.0, 100.0));
    labels.push_back(1);
    return Dataset(std::move(features), 2, std::move(labels));
}

Dataset makeBlobs(double stdDev, std::size_t pointsPerBlob, std::uint64_t seed) {
    if (!(stdDev > 0.0)) throw std::invalid_argument("makeBlobs: stdDev must be positive");
    if (pointsPerBlob == 0) throw std::invalid_argument("makeBlobs: pointsPerBlob must be positive");
    static constexpr double kCenters[2][2] = {{0.0, 0.0}, {10.0, 10.0}};
    Rng rng(seed);
    std::vector<double> features;
    features.reserve(pointsPerBlob * 4);
    std::vector<int> labels;
    labels.reserve(pointsPerBlob * 2);
    for (int c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < pointsPerBlob; ++i) {
            features.push_back(rng.normal(kCenters[c][0], stdDev));
            features.push_back(rng.normal(kCenters[c][1], stdDev));
            labels.push_back(c);
        }
    }
    return Dataset(std::move(features), 2, std::move(labels));
}

void appendRowText(const Dataset& dataset, std::size_t row, std::string& out) {
    auto values = dataset.row(row);
    for (double v : values) {
        appendDouble(out, v);
        out += ',';
    }
    out += std::to_string(dataset.label(row));
    out += '\n';
}

std::string datasetText(const Dataset& dataset) {
    std::string out;
    for (std::size_t i = 0; i < dataset.rowCount(); ++i) appendRowText(dataset, i, out);
    return out;
}

std::string subsetText(const DataSubset& subset) {
    std::string out;
    for (std::uint32_t r : subset.rows()) appendRowText(subset.parent(), r, out);
    return out;
}

} // namespace msitree
