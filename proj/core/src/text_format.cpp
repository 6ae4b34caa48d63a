#include "msitree/text_format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

namespace msitree {

std::string formatDouble(double value) {
    std::array<char, 64> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

void appendDouble(std::string& out, double value) {
    std::array<char, 64> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    out.append(buf.data(), res.ptr);
}

std::optional<double> parseFiniteDouble(std::string_view cell) {
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<long long> parseInteger(std::string_view cell) {
    if (cell.empty()) return std::nullopt;
    long long value = 0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) return std::nullopt;
    return value;
}

std::string_view trimCell(std::string_view cell) {
    auto isSpace = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!cell.empty() && isSpace(cell.front())) cell.remove_prefix(1);
    while (!cell.empty() && isSpace(cell.back())) cell.remove_suffix(1);
    return cell;
}

} // namespace msitree
