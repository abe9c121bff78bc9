#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lr2sd/types.hpp"

namespace lr2sd {

// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Writes `<prefix>_re.csv` and `<prefix>_im.csv`: one matrix row per line,
/// columns separated by commas, no header.
void write_complex_csv(const std::filesystem::path& prefix, const CMatrix& X);
CMatrix read_complex_csv(const std::filesystem::path& prefix);

}  // namespace lr2sd
