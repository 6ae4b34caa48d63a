#include "msitree/compression.hpp"

#include <stdexcept>
#include <string>

#include <boost/iostreams/device/array.hpp>
#include <boost/iostreams/device/back_inserter.hpp>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/lzma.hpp>
#include <boost/iostreams/filter/zlib.hpp>
#include <boost/iostreams/filtering_stream.hpp>

namespace msitree {

namespace io = boost::iostreams;

std::size_t compressedLength(CompressorKind kind, std::string_view bytes) {
    std::string compressed;
    io::filtering_ostream out;
    switch (kind) {
    case CompressorKind::BZ2:
        out.push(io::bzip2_compressor(io::bzip2_params(9)));
        break;
    case CompressorKind::ZLIB:
        out.push(io::zlib_compressor(io::zlib_params(io::zlib::best_compression)));
        break;
    case CompressorKind::LZMA:
        out.push(io::lzma_compressor(io::lzma_params(9, 1)));
        break;
    }
    out.push(io::back_inserter(compressed));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.good()) throw std::runtime_error("compressedLength: backend write failure");
    out.reset(); // pops the chain, flushing the container footer
    return compressed.size();
}

std::string_view compressorName(CompressorKind kind) {
    switch (kind) {
    case CompressorKind::BZ2: return "bz2";
    case CompressorKind::ZLIB: return "zlib";
    case CompressorKind::LZMA: return "lzma";
    }
    return "?";
}

std::optional<CompressorKind> parseCompressorName(std::string_view name) {
    if (name == "bz2") return CompressorKind::BZ2;
    if (name == "zlib") return CompressorKind::ZLIB;
    if (name == "lzma") return CompressorKind::LZMA;
    return std::nullopt;
}

} // namespace msitree
