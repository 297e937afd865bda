#pragma once

#include <string>
#include <string_view>

namespace mesram {

/// Writes `content` to `path` via a sibling temp file and rename, so readers
/// never observe a partially written file.
void write_file_atomic(const std::string& path, std::string_view content);

std::string read_file(const std::string& path);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

}  // namespace mesram
