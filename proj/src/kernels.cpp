#include "nfbt/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include <omp.h>

namespace nfbt::kernels {

namespace {

void check_fill(std::span<const double> row_scale, std::span<const double> col_term,
                std::span<const double> col_offset, const ComplexMatrix& out) {
  if (row_scale.size() != out.rows() || col_term.size() != out.cols() ||
      (!col_offset.empty() && col_offset.size() != out.cols()))
    throw std::invalid_argument("fill_phase_matrix: shape mismatch");
}

inline void fill_row(double scale, std::span<const double> col_term, std::span<const double> col_offset,
                     double amplitude, std::span<cdouble> row) {
  const bool offset = !col_offset.empty();
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double phase = scale * col_term[j] + (offset ? col_offset[j] : 0.0);
    row[j] = cdouble(amplitude * std::cos(phase), amplitude * std::sin(phase));
  }
}

inline cdouble dot(std::span<const cdouble> a, std::span<const cdouble> b) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double ar = a[j].real(), ai = a[j].imag();
    const double br = b[j].real(), bi = b[j].imag();
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

}  // namespace

namespace serial {

void fill_phase_matrix(std::span<const double> row_scale, std::span<const double> col_term,
                       std::span<const double> col_offset, double amplitude, ComplexMatrix& out) {
  check_fill(row_scale, col_term, col_offset, out);
  for (std::size_t i = 0; i < out.rows(); ++i) fill_row(row_scale[i], col_term, col_offset, amplitude, out.row(i));
}

void row_products(const ComplexMatrix& a, const ComplexMatrix& b, std::span<cdouble> out) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || out.size() != a.rows())
    throw std::invalid_argument("row_products: shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), b.row(i));
}

void broadcast_products(std::span<const cdouble> row, const ComplexMatrix& b, std::span<cdouble> out) {
  if (row.size() != b.cols() || out.size() != b.rows())
    throw std::invalid_argument("broadcast_products: shape mismatch");
  for (std::size_t i = 0; i < b.rows(); ++i) out[i] = dot(row, b.row(i));
}

}  // namespace serial

namespace parallel {

void fill_phase_matrix(std::span<const double> row_scale, std::span<const double> col_term,
                       std::span<const double> col_offset, double amplitude, ComplexMatrix& out) {
  check_fill(row_scale, col_term, col_offset, out);
  const auto rows = static_cast<std::ptrdiff_t>(out.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto r = static_cast<std::size_t>(i);
    fill_row(row_scale[r], col_term, col_offset, amplitude, out.row(r));
  }
}

void row_products(const ComplexMatrix& a, const ComplexMatrix& b, std::span<cdouble> out) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || out.size() != a.rows())
    throw std::invalid_argument("row_products: shape mismatch");
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto r = static_cast<std::size_t>(i);
    out[r] = dot(a.row(r), b.row(r));
  }
}

void broadcast_products(std::span<const cdouble> row, const ComplexMatrix& b, std::span<cdouble> out) {
  if (row.size() != b.cols() || out.size() != b.rows())
    throw std::invalid_argument("broadcast_products: shape mismatch");
  const auto rows = static_cast<std::ptrdiff_t>(b.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto r = static_cast<std::size_t>(i);
    out[r] = dot(row, b.row(r));
  }
}

}  // namespace parallel

void fill_phase_matrix(Execution ex, std::span<const double> row_scale, std::span<const double> col_term,
                       std::span<const double> col_offset, double amplitude, ComplexMatrix& out) {
  if (ex == Execution::Parallel)
    parallel::fill_phase_matrix(row_scale, col_term, col_offset, amplitude, out);
  else
    serial::fill_phase_matrix(row_scale, col_term, col_offset, amplitude, out);
}

void row_products(Execution ex, const ComplexMatrix& a, const ComplexMatrix& b, std::span<cdouble> out) {
  if (ex == Execution::Parallel)
    parallel::row_products(a, b, out);
  else
    serial::row_products(a, b, out);
}

void broadcast_products(Execution ex, std::span<const cdouble> row, const ComplexMatrix& b,
                        std::span<cdouble> out) {
  if (ex == Execution::Parallel)
    parallel::broadcast_products(row, b, out);
  else
    serial::broadcast_products(row, b, out);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace nfbt::kernels
