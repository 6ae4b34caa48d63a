#include "msitree/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "msitree/text_format.hpp"

namespace msitree {

std::string modelFileText(const Tree& tree) {
    std::string out = "# msitree model attrs=";
    out += std::to_string(tree.trainedOn().columnCount());
    out += " labels=";
    for (int g = 0; g <= tree.trainedOn().maxLabel(); ++g) {
        if (g > 0) out += ',';
        out += std::to_string(g);
    }
    out += '\n';
    out += serialize(tree);
    return out;
}

void writeModelFile(const Tree& tree, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << modelFileText(tree);
    if (!out) throw std::runtime_error("write failure on '" + path.string() + "'");
}

namespace {

struct Line {
    std::size_t indent = 0;
    std::string_view body;
    std::size_t number = 0; // 1-based, for error messages
};

[[noreturn]] void fail(const Line& line, const std::string& what) {
    throw ModelParseError("model line " + std::to_string(line.number) + ": " + what);
}

class Parser {
public:
    explicit Parser(std::string_view text) {
        std::size_t lineNo = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            std::string_view raw = text.substr(
                start, end == std::string_view::npos ? std::string_view::npos : end - start);
            ++lineNo;
            start = end == std::string_view::npos ? text.size() + 1 : end + 1;
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            if (raw.empty()) continue;
            std::size_t indent = 0;
            while (indent < raw.size() && raw[indent] == ' ') ++indent;
            std::string_view body = raw.substr(indent);
            if (body.empty()) continue;
            lines_.push_back({indent, body, lineNo});
        }
    }

    const Line& peek() const {
        if (pos_ >= lines_.size()) throw ModelParseError("model text ends unexpectedly");
        return lines_[pos_];
    }
    const Line& take() {
        const Line& l = peek();
        ++pos_;
        return l;
    }
    bool done() const { return pos_ >= lines_.size(); }

private:
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
};

} // namespace

Model Model::parseText(std::string_view text) {
    Parser parser(text);
    Model model;

    // Header comments; the first one may carry attrs= and labels=.
    while (!parser.done() && parser.peek().body.front() == '#') {
        const Line& comment = parser.take();
        std::string body(comment.body);
        std::istringstream tokens(body);
        std::string token;
        while (tokens >> token) {
            if (token.rfind("attrs=", 0) == 0) {
                auto v = parseInteger(std::string_view(token).substr(6));
                if (!v || *v < 1) fail(comment, "bad attribute count '" + token + "'");
                model.attributeCount_ = static_cast<std::size_t>(*v);
            } else if (token.rfind("labels=", 0) == 0) {
                std::string_view list = std::string_view(token).substr(7);
                while (!list.empty()) {
                    std::size_t comma = list.find(',');
                    auto cell = list.substr(0, comma);
                    auto v = parseInteger(cell);
                    if (!v || *v < 0) fail(comment, "bad label list entry '" + std::string(cell) + "'");
                    model.labels_.push_back(static_cast<int>(*v));
                    if (comma == std::string_view::npos) break;
                    list.remove_prefix(comma + 1);
                }
            }
        }
    }

    const Line& header = parser.take();
    if (header.indent != 0 || header.body.rfind("def tree{", 0) != 0 ||
        header.body.substr(header.body.size() - 2) != "}:")
        fail(header, "expected 'def tree{...}:'");

    std::size_t maxAttribute = 0;

    // Recursive descent over indentation levels; each block is either a
    // single return or an if/else pair whose branches sit one level deeper.
    auto parseNode = [&](auto&& self, std::size_t indent) -> std::unique_ptr<Node> {
        const Line& line = parser.take();
        if (line.indent != indent)
            fail(line, "expected indent " + std::to_string(indent) + ", found " +
                           std::to_string(line.indent));
        auto node = std::make_unique<Node>();
        if (line.body.rfind("return ", 0) == 0) {
            auto label = parseInteger(line.body.substr(7));
            if (!label || *label < 0) fail(line, "bad label in '" + std::string(line.body) + "'");
            node->label = static_cast<int>(*label);
            return node;
        }
        if (line.body.rfind("if X", 0) != 0 || line.body.back() != ':')
            fail(line, "expected 'if X<n> <= <threshold>:' or 'return <label>'");
        std::string_view rest = line.body.substr(4, line.body.size() - 5);
        std::size_t sep = rest.find(" <= ");
        if (sep == std::string_view::npos) fail(line, "missing ' <= ' in condition");
        auto attribute = parseInteger(rest.substr(0, sep));
        if (!attribute || *attribute < 1) fail(line, "bad attribute number");
        auto threshold = parseFiniteDouble(rest.substr(sep + 4));
        if (!threshold) fail(line, "bad threshold");
        node->featureIndex = static_cast<int>(*attribute) - 1;
        node->threshold = *threshold;
        maxAttribute = std::max(maxAttribute, static_cast<std::size_t>(*attribute));

        node->left = self(self, indent + 4);
        const Line& elseLine = parser.take();
        if (elseLine.indent != indent || elseLine.body != "else:")
            fail(elseLine, "expected 'else:'");
        node->right = self(self, indent + 4);
        return node;
    };

    model.root_ = parseNode(parseNode, 4);
    if (!parser.done()) fail(parser.peek(), "unexpected trailing content");

    if (model.attributeCount_ == 0) model.attributeCount_ = std::max<std::size_t>(maxAttribute, 1);
    if (maxAttribute > model.attributeCount_)
        throw ModelParseError("model uses attribute X" + std::to_string(maxAttribute) +
                              " but declares only " + std::to_string(model.attributeCount_));
    return model;
}

Model Model::parseFile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ModelParseError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parseText(buffer.str());
}

int Model::predict(std::span<const double> x) const {
    if (x.size() != attributeCount_)
        throw std::invalid_argument("predict: input has " + std::to_string(x.size()) +
                                    " attributes, model expects " +
                                    std::to_string(attributeCount_));
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("predict: non-finite input value");
    const Node* node = root_.get();
    while (node->featureIndex >= 0)
        node = x[static_cast<std::size_t>(node->featureIndex)] <= node->threshold
                   ? node->left.get()
                   : node->right.get();
    return node->label;
}

} // namespace msitree
