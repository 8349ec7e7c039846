#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace beltrami {

// SPMX flat binary matrix: 16-byte header (magic "SPMX", u32 rows, u32 cols,
// u32 reserved = 0, little-endian) followed by row-major f64 payload.
void write_spmx(const std::string& path, const Eigen::MatrixXd& matrix);
Eigen::MatrixXd read_spmx(const std::string& path);

// CSV with full-precision (%.17g) values; optional header line.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix,
                      const std::vector<std::string>& header = {});
Eigen::MatrixXd read_matrix_csv(const std::string& path, bool skip_header = false);

}  // namespace beltrami
