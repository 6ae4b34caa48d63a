#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace msitree {

/// Compression backends used to approximate the information content of a
/// string by its compressed length. Every backend runs at its maximum
/// compression level (bzip2 block size 9, zlib level 9, lzma preset 9) so
/// that small window buffers never distort the measurement.
enum class CompressorKind { BZ2, ZLIB, LZMA };

/// Length in bytes of the compressed form of `bytes`, including the
/// backend's standard container framing. Deterministic per kind, and safe
/// to call concurrently from independent threads.
std::size_t compressedLength(CompressorKind kind, std::string_view bytes);

std::string_view compressorName(CompressorKind kind);
std::optional<CompressorKind> parseCompressorName(std::string_view name);

} // namespace msitree
