#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace divkit::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kInputError = 2, kDimensionMismatch = 3 };

// Thrown for unreadable or malformed input files; the message names file and line.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumberColumn {
    std::vector<double> values;
    std::vector<std::size_t> lines;  // 1-based source line of each value
};

// Single-column CSV (an optional non-numeric header line is skipped) or a JSON array.
NumberColumn read_numbers(const std::filesystem::path& path);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace divkit::cli
