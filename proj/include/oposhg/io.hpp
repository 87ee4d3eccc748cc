#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace oposhg {

/// Formats a double with 17 significant digits (bit-stable round trip).
std::string format_double(double value);

/// Column-oriented CSV writer used by every subcommand artifact.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);
    void header(const std::vector<std::string>& columns);
    void row(std::span<const double> values);

private:
    std::ofstream out_;
};

/// FNV-1a 64-bit hash of a file's bytes, as lowercase hex. Used for the
/// manifest's output fingerprints and rerun identity checks.
std::string file_hash(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace oposhg
