#include <cstring>
#include <random>

#include "doctest.h"
#include "nfbt/kernels.hpp"

using namespace nfbt;

namespace {

std::vector<double> random_reals(std::size_t n, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (auto& v : m.row(i)) v = {n(rng), n(rng)};
  return m;
}

bool bit_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (std::memcmp(a.row(i).data(), b.row(i).data(), a.cols() * sizeof(cdouble)) != 0) return false;
  return true;
}

bool bit_equal(const CVector& a, const CVector& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cdouble)) == 0;
}

}  // namespace

TEST_CASE("fill_phase_matrix matches a direct evaluation") {
  const auto rs = random_reals(37, 1, 1e3);
  const auto ct = random_reals(65, 2, 1e-2);
  const auto co = random_reals(65, 3, 3.0);
  ComplexMatrix out(rs.size(), ct.size());
  kernels::serial::fill_phase_matrix(rs, ct, co, 0.25, out);
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < ct.size(); ++j) {
      const cdouble expect = std::polar(0.25, rs[i] * ct[j] + co[j]);
      CHECK(std::abs(out(i, j) - expect) < 1e-12);
    }
}

TEST_CASE("empty column offset means zero offset") {
  const auto rs = random_reals(5, 4, 10.0);
  const auto ct = random_reals(7, 5, 1.0);
  const std::vector<double> zeros(7, 0.0);
  ComplexMatrix a(5, 7), b(5, 7);
  kernels::serial::fill_phase_matrix(rs, ct, {}, 1.0, a);
  kernels::serial::fill_phase_matrix(rs, ct, zeros, 1.0, b);
  CHECK(bit_equal(a, b));
}

TEST_CASE("row and broadcast products against naive sums") {
  const auto a = random_matrix(9, 33, 6);
  const auto b = random_matrix(9, 33, 7);
  CVector out(9);
  kernels::serial::row_products(a, b, out);
  for (std::size_t i = 0; i < 9; ++i) {
    cdouble s = 0;
    for (std::size_t j = 0; j < 33; ++j) s += a(i, j) * b(i, j);
    CHECK(std::abs(out[i] - s) < 1e-12);
  }
  const CVector row(a.row(0).begin(), a.row(0).end());
  kernels::serial::broadcast_products(row, b, out);
  for (std::size_t i = 0; i < 9; ++i) {
    cdouble s = 0;
    for (std::size_t j = 0; j < 33; ++j) s += row[j] * b(i, j);
    CHECK(std::abs(out[i] - s) < 1e-12);
  }
}

TEST_CASE("parallel kernels are bit-identical to the serial reference") {
  for (std::size_t rows : {1u, 3u, 257u, 1024u}) {
    const auto rs = random_reals(rows, 10 + rows, 1e4);
    const auto ct = random_reals(513, 20, 1e-2);
    const auto co = random_reals(513, 30, 6.0);
    ComplexMatrix s(rows, 513), p(rows, 513);
    kernels::serial::fill_phase_matrix(rs, ct, co, 0.04, s);
    kernels::parallel::fill_phase_matrix(rs, ct, co, 0.04, p);
    CHECK(bit_equal(s, p));

    const auto b = random_matrix(rows, 513, 40 + rows);
    CVector os(rows), op(rows);
    kernels::serial::row_products(s, b, os);
    kernels::parallel::row_products(s, b, op);
    CHECK(bit_equal(os, op));

    const CVector row(b.row(0).begin(), b.row(0).end());
    kernels::serial::broadcast_products(row, s, os);
    kernels::parallel::broadcast_products(row, s, op);
    CHECK(bit_equal(os, op));
  }
}

TEST_CASE("dispatch routes to the requested implementation") {
  const auto rs = random_reals(64, 50, 1e3);
  const auto ct = random_reals(129, 51, 1e-2);
  ComplexMatrix a(64, 129), b(64, 129);
  kernels::fill_phase_matrix(Execution::Serial, rs, ct, {}, 1.0, a);
  kernels::fill_phase_matrix(Execution::Parallel, rs, ct, {}, 1.0, b);
  CHECK(bit_equal(a, b));
  CHECK(kernels::max_threads() >= 1);
}

TEST_CASE("kernels reject mismatched shapes") {
  ComplexMatrix a(3, 4), b(3, 5);
  CVector out(3);
  CHECK_THROWS_AS(kernels::serial::row_products(a, b, out), std::invalid_argument);
}
