#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace irsoff {

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

// FNV-1a 64-bit, used to fingerprint the canonical config text.
std::uint64_t fnv1a64(const std::string& text);

// Minimal CSV writer: caller supplies already-formatted cells. Values are
// never quoted, so cells must not contain commas or newlines.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void close();

private:
    std::ofstream out_;
    std::string path_;
    size_t columns_;
};

}  // namespace irsoff
