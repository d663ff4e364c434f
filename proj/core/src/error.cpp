#include "thermocrack/error.hpp"

namespace thermocrack {

MalformedColormapError::MalformedColormapError(std::size_t x, std::size_t y,
                                               const std::string& detail)
    : DataError("malformed colormap pixel at (" + std::to_string(x) + ", " +
                std::to_string(y) + "): " + detail),
      x_(x),
      y_(y) {}

ParseError::ParseError(std::size_t line, const std::string& detail)
    : DataError("line " + std::to_string(line) + ": " + detail), line_(line) {}

CorruptionError::CorruptionError(std::uint64_t offset, const std::string& detail)
    : DataError("corrupt data at byte offset " + std::to_string(offset) + ": " + detail),
      offset_(offset) {}

IoError::IoError(const std::filesystem::path& path, const std::string& detail)
    : Error(path.string() + ": " + detail), path_(path) {}

}  // namespace thermocrack
