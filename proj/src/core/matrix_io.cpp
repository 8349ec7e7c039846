#include "core/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "core/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "SPMX writer assumes a little-endian host");

namespace beltrami {
namespace {

constexpr char kMagic[4] = {'S', 'P', 'M', 'X'};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

}  // namespace

void write_spmx(const std::string& path, const Eigen::MatrixXd& matrix) {
  std::unique_ptr<std::FILE, FileCloser> out(std::fopen(path.c_str(), "wb"));
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  const std::uint32_t rows = static_cast<std::uint32_t>(matrix.rows());
  const std::uint32_t cols = static_cast<std::uint32_t>(matrix.cols());
  const std::uint32_t reserved = 0;
  std::fwrite(kMagic, 1, 4, out.get());
  std::fwrite(&rows, 4, 1, out.get());
  std::fwrite(&cols, 4, 1, out.get());
  std::fwrite(&reserved, 4, 1, out.get());
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> row_major = matrix;
  if (row_major.size() > 0) {
    std::fwrite(row_major.data(), sizeof(double), static_cast<std::size_t>(row_major.size()),
                out.get());
  }
}

Eigen::MatrixXd read_spmx(const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> in(std::fopen(path.c_str(), "rb"));
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  char magic[4];
  std::uint32_t rows = 0, cols = 0, reserved = 0;
  if (std::fread(magic, 1, 4, in.get()) != 4 || std::memcmp(magic, kMagic, 4) != 0) {
    fail(ErrorCode::ParseError, path + ": not an SPMX file");
  }
  if (std::fread(&rows, 4, 1, in.get()) != 1 || std::fread(&cols, 4, 1, in.get()) != 1 ||
      std::fread(&reserved, 4, 1, in.get()) != 1) {
    fail(ErrorCode::ParseError, path + ": truncated SPMX header");
  }
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(rows, cols);
  const std::size_t expect = static_cast<std::size_t>(rows) * cols;
  if (expect > 0 && std::fread(m.data(), sizeof(double), expect, in.get()) != expect) {
    fail(ErrorCode::ParseError, path + ": truncated SPMX payload");
  }
  return m;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix,
                      const std::vector<std::string>& header) {
  std::unique_ptr<std::FILE, FileCloser> out(std::fopen(path.c_str(), "w"));
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  if (!header.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::fprintf(out.get(), "%s%s", header[i].c_str(), i + 1 < header.size() ? "," : "\n");
    }
  }
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      std::fprintf(out.get(), "%.17g%s", matrix(r, c), c + 1 < matrix.cols() ? "," : "\n");
    }
  }
}

Eigen::MatrixXd read_matrix_csv(const std::string& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && skip_header) {
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, path + ": non-numeric CSV cell '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(ErrorCode::ParseError, path + ": ragged CSV rows");
    }
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

}  // namespace beltrami
