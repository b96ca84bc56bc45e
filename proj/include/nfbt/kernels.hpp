#pragma once

#include <complex>
#include <span>
#include <vector>

namespace nfbt {

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

// Row-major dense complex matrix; rows are subcarriers or codewords, columns antennas.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<cdouble> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cdouble> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVector data_;
};

enum class Execution { Serial, Parallel };

// Hot loops of the simulator. `serial` is the reference; `parallel` splits rows over
// OpenMP threads and must produce bit-identical results (each row is reduced in the
// same order by exactly one thread).
namespace kernels {

namespace serial {

// out(i, j) = amplitude * exp(j (row_scale[i] * col_term[j] + col_offset[j]))
void fill_phase_matrix(std::span<const double> row_scale, std::span<const double> col_term,
                       std::span<const double> col_offset, double amplitude, ComplexMatrix& out);

// out[i] = sum_j a(i, j) * b(i, j)
void row_products(const ComplexMatrix& a, const ComplexMatrix& b, std::span<cdouble> out);

// out[i] = sum_j row[j] * b(i, j)
void broadcast_products(std::span<const cdouble> row, const ComplexMatrix& b, std::span<cdouble> out);

}  // namespace serial

namespace parallel {

void fill_phase_matrix(std::span<const double> row_scale, std::span<const double> col_term,
                       std::span<const double> col_offset, double amplitude, ComplexMatrix& out);
void row_products(const ComplexMatrix& a, const ComplexMatrix& b, std::span<cdouble> out);
void broadcast_products(std::span<const cdouble> row, const ComplexMatrix& b, std::span<cdouble> out);

}  // namespace parallel

void fill_phase_matrix(Execution ex, std::span<const double> row_scale, std::span<const double> col_term,
                       std::span<const double> col_offset, double amplitude, ComplexMatrix& out);
void row_products(Execution ex, const ComplexMatrix& a, const ComplexMatrix& b, std::span<cdouble> out);
void broadcast_products(Execution ex, std::span<const cdouble> row, const ComplexMatrix& b,
                        std::span<cdouble> out);

int max_threads();

}  // namespace kernels

}  // namespace nfbt
