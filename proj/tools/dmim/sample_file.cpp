#include "sample_file.hpp"

#include <cstdlib>
#include <fstream>

#include "output_record.hpp"

namespace dmim::cli {

std::vector<double> read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sample file: " + path);

    std::vector<double> samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(begin, end - begin + 1);

        char* parsed_end = nullptr;
        const double value = std::strtod(token.c_str(), &parsed_end);
        if (parsed_end != token.c_str() + token.size()) {
            throw IoError(path + ":" + std::to_string(lineno) +
                          ": expected one float per line, got '" + token + "'");
        }
        samples.push_back(value);
    }
    if (in.bad()) throw IoError("read error on sample file: " + path);
    return samples;
}

} // namespace dmim::cli
