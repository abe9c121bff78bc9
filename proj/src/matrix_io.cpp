#include "lr2sd/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace lr2sd {

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf, end};
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '+')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw std::runtime_error("malformed number '" + std::string(text) + "'");
  return value;
}

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const char* suffix) {
  return prefix.parent_path() / (prefix.filename().string() + suffix);
}

void write_real(const std::filesystem::path& path, const Eigen::MatrixXd& X) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (j) out << ',';
      out << format_double(X(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Eigen::MatrixXd read_real(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("ragged rows in " + path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return {};
  Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return X;
}

}  // namespace

void write_complex_csv(const std::filesystem::path& prefix, const CMatrix& X) {
  write_real(with_suffix(prefix, "_re.csv"), X.real());
  write_real(with_suffix(prefix, "_im.csv"), X.imag());
}

CMatrix read_complex_csv(const std::filesystem::path& prefix) {
  const Eigen::MatrixXd re = read_real(with_suffix(prefix, "_re.csv"));
  const Eigen::MatrixXd im = read_real(with_suffix(prefix, "_im.csv"));
  if (re.rows() != im.rows() || re.cols() != im.cols())
    throw std::runtime_error("real and imaginary parts of " + prefix.string() + " differ in shape");
  CMatrix X(re.rows(), re.cols());
  X.real() = re;
  X.imag() = im;
  return X;
}

}  // namespace lr2sd
