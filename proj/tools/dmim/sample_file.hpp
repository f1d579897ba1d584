#pragma once

#include <string>
#include <vector>

namespace dmim::cli {

// Reads a sample file: one float per line, '#' starts a comment, blank lines
// ignored. Throws IoError on missing files or malformed lines.
std::vector<double> read_sample_file(const std::string& path);

} // namespace dmim::cli
