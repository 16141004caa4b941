#include "netstab/matrix_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "netstab/error.hpp"

namespace netstab {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error("cannot format value");
  return std::string(buf.data(), end);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
  cell = trim(cell);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw FormatError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": cannot parse '" + std::string(cell) + "' as a number");
  }
  return value;
}

}  // namespace

Matrix read_matrix_csv(std::istream& in, std::string* comment) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool have_comment = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      if (comment != nullptr && !have_comment) {
        view.remove_prefix(1);
        *comment = std::string(trim(view));
        have_comment = true;
      }
      continue;
    }
    std::vector<double> row;
    std::size_t column = 1;
    while (true) {
      auto comma = view.find(',');
      row.push_back(parse_cell(view.substr(0, comma), line_no, column));
      if (comma == std::string_view::npos) break;
      view.remove_prefix(comma + 1);
      ++column;
    }
    rows.push_back(std::move(row));
  }
  const auto n = rows.size();
  if (n == 0) throw FormatError("matrix file has no rows");
  Matrix m(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw FormatError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                        " values, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  return m;
}

Matrix read_matrix_csv(const std::filesystem::path& path, std::string* comment) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("no such input: " + path.string());
  return read_matrix_csv(in, comment);
}

void write_matrix_csv(std::ostream& out, const Matrix& m, std::string_view comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace netstab
