#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "netstab/types.hpp"

namespace netstab {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Square matrix stored as N lines of N comma-separated decimals. Lines that
/// start with '#' are comments; the first such line is returned in `comment`
/// (without the leading "# ") when non-null.
Matrix read_matrix_csv(std::istream& in, std::string* comment = nullptr);
Matrix read_matrix_csv(const std::filesystem::path& path, std::string* comment = nullptr);

void write_matrix_csv(std::ostream& out, const Matrix& m, std::string_view comment = {});

}  // namespace netstab
