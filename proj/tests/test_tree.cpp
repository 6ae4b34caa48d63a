#include <algorithm>
#include <string>

#include <doctest.h>

#include "msitree/dataset.hpp"
#include "msitree/rng.hpp"
#include "msitree/tree.hpp"
#include "support.hpp"

using namespace msitree;
using testsupport::growAt;

namespace {

std::size_t countToken(const std::string& text, const std::string& token) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(token); pos != std::string::npos;
         pos = text.find(token, pos + token.size()))
        ++count;
    return count;
}

Tree leafTree(const Dataset& d) {
    auto whole = DataSubset::whole(d);
    return Tree(d, std::make_unique<TreeNode>(whole, forecast(whole)));
}

} // namespace

TEST_SUITE("tree") {

TEST_CASE("forecast picks the modal label, ties to the smallest") {
    Dataset d(std::vector<double>{1, 2, 3}, 1, std::vector<int>{1, 1, 0});
    CHECK(forecast(DataSubset::whole(d)) == 1);

    Dataset single(std::vector<double>{1}, 1, std::vector<int>{0});
    CHECK(forecast(DataSubset::whole(single)) == 0);

    Dataset tie(std::vector<double>{1, 2}, 1, std::vector<int>{0, 1});
    CHECK(forecast(DataSubset::whole(tie)) == 0);
    Dataset tieRev(std::vector<double>{1, 2}, 1, std::vector<int>{1, 0});
    CHECK(forecast(DataSubset::whole(tieRev)) == 0);

    CHECK_THROWS_AS(forecast(DataSubset(d, {})), std::invalid_argument);
}

TEST_CASE("predict routes by <= and validates input") {
    Dataset d(std::vector<double>{10, 0, 20, 0, 30, 0, 40, 0}, 2, std::vector<int>{0, 0, 1, 1});
    Tree tree = leafTree(d);
    growAt(tree.root(), Split{0, 25.0}, d);

    CHECK(predict(tree, std::vector<double>{10.0, 0.0}) == 0);
    CHECK(predict(tree, std::vector<double>{30.0, 0.0}) == 1);
    CHECK(predict(tree, std::vector<double>{25.0, 0.0}) == 0); // exactly at the threshold

    CHECK_THROWS_AS(predict(tree, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(predict(tree, std::vector<double>{1.0, 2.0, 3.0}), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(predict(tree, std::vector<double>{nan, 1.0}), std::invalid_argument);

    Tree leaf = leafTree(d);
    CHECK(predict(leaf, std::vector<double>{-1e9, 1e9}) == 0);
}

TEST_CASE("serialization of a single leaf is the degenerate template") {
    Dataset d(std::vector<double>{1, 2}, 1, std::vector<int>{0, 0});
    CHECK(serialize(leafTree(d)) == "def tree{}:\n    return 0\n");
}

TEST_CASE("serialization of one split matches the template exactly") {
    Dataset d(std::vector<double>{10, 1, 20, 1, 60, 1, 70, 1}, 2, std::vector<int>{0, 0, 1, 1});
    Tree tree = leafTree(d);
    growAt(tree.root(), Split{0, 50.0}, d);
    CHECK(serialize(tree) == "def tree{X1}:\n"
                             "    if X1 <= 50:\n"
                             "        return 0\n"
                             "    else:\n"
                             "        return 1\n");
}

TEST_CASE("nested serialization indents by four per level and lists used attrs") {
    Dataset d(std::vector<double>{1, 5, 2, 6, 3, 7, 4, 8}, 2, std::vector<int>{0, 0, 1, 1});
    Tree tree = leafTree(d);
    growAt(tree.root(), Split{1, 6.5}, d);
    growAt(*tree.root().left, Split{1, 5.5}, d);
    const std::string text = serialize(tree);
    CHECK(text == "def tree{X2}:\n"
                  "    if X2 <= 6.5:\n"
                  "        if X2 <= 5.5:\n"
                  "            return 0\n"
                  "        else:\n"
                  "            return 0\n"
                  "    else:\n"
                  "        return 1\n");
}

TEST_CASE("serialized if-count equals the internal node count") {
    Rng rng(99);
    for (int round = 0; round < 30; ++round) {
        Dataset d = testsupport::randomDataset(rng, 20 + rng.below(30), 3, 2);
        Tree tree = testsupport::randomTree(rng, d, rng.below(8));
        const std::string text = serialize(tree);
        std::size_t internals = 0;
        testsupport::forEachNode(tree.root(), [&](const TreeNode& n) {
            if (!n.isLeaf()) ++internals;
        });
        CHECK(countToken(text, "if X") == internals);
        CHECK(countToken(text, "return ") == internals + 1);
    }
}

TEST_CASE("node count and depth on known shapes") {
    Dataset d(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8}, 1, std::vector<int>{0, 0, 1, 1, 0, 0, 1, 1});
    Tree leaf = leafTree(d);
    CHECK(nodeCount(leaf) == 1);
    CHECK(maxDepth(leaf) == 0);

    Tree oneSplit = leafTree(d);
    growAt(oneSplit.root(), Split{0, 4.5}, d);
    CHECK(nodeCount(oneSplit) == 3);
    CHECK(maxDepth(oneSplit) == 1);

    Tree chain = leafTree(d);
    growAt(chain.root(), Split{0, 6.5}, d);
    growAt(*chain.root().left, Split{0, 4.5}, d);
    growAt(*chain.root().left->left, Split{0, 2.5}, d);
    CHECK(nodeCount(chain) == 7);
    CHECK(maxDepth(chain) == 3);

    Tree perfect = leafTree(d);
    growAt(perfect.root(), Split{0, 4.5}, d);
    growAt(*perfect.root().left, Split{0, 2.5}, d);
    growAt(*perfect.root().right, Split{0, 6.5}, d);
    CHECK(nodeCount(perfect) == 7);
    CHECK(maxDepth(perfect) == 2);
}

TEST_CASE("accuracy and misclassified agree exactly") {
    // 60/40 majority data; a single leaf forecasts the majority class.
    std::vector<double> xs(10);
    std::vector<int> ys = {0, 0, 0, 0, 0, 0, 1, 1, 1, 1};
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = double(i);
    Dataset d(std::move(xs), 1, std::move(ys));
    Tree majority = leafTree(d);
    CHECK(accuracy(majority, d) == doctest::Approx(0.6));
    CHECK(misclassified(majority, d).size() == 4);

    Tree split = leafTree(d);
    growAt(split.root(), Split{0, 5.5}, d);
    CHECK(accuracy(split, d) == 1.0);
    CHECK(misclassified(split, d).empty());

    Rng rng(17);
    for (int round = 0; round < 20; ++round) {
        Dataset random = testsupport::randomDataset(rng, 30, 2, 3);
        Tree tree = testsupport::randomTree(rng, random, rng.below(6));
        const double acc = accuracy(tree, random);
        const auto missed = misclassified(tree, random);
        CHECK(acc == 1.0 - double(missed.size()) / double(random.rowCount()));
    }
}

TEST_CASE("every internal node forecasts the majority of its children's rows") {
    Rng rng(23);
    for (int round = 0; round < 15; ++round) {
        Dataset d = testsupport::randomDataset(rng, 40, 2, 2);
        Tree tree = testsupport::randomTree(rng, d, 6);
        testsupport::forEachNode(tree.root(), [&](const TreeNode& node) {
            if (node.isLeaf()) return;
            std::vector<std::uint32_t> combined = node.left->data.rows();
            combined.insert(combined.end(), node.right->data.rows().begin(),
                            node.right->data.rows().end());
            std::sort(combined.begin(), combined.end());
            std::vector<std::uint32_t> own = node.data.rows();
            std::sort(own.begin(), own.end());
            CHECK(combined == own);
            CHECK(node.forecastClass == forecast(node.data));
        });
    }
}

TEST_CASE("distinct structures serialize to distinct text") {
    Dataset d(std::vector<double>{1, 2, 3, 4}, 1, std::vector<int>{0, 1, 0, 1});
    Tree a = leafTree(d);
    growAt(a.root(), Split{0, 1.5}, d);
    Tree b = leafTree(d);
    growAt(b.root(), Split{0, 2.5}, d);
    CHECK(serialize(a) != serialize(b));
    CHECK(serialize(leafTree(d)) != serialize(a));
}

} // TEST_SUITE
