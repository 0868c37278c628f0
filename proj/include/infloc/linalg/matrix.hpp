#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infloc/linalg/scalar.hpp"

namespace infloc {

using Vec = std::vector<Scalar>;

// Dense row-major storage up to kDenseLimit in both directions, sparse
// (row, col) -> value triplets beyond that.
class Matrix {
 public:
  static constexpr std::size_t kDenseLimit = 512;

  Matrix() = default;
  Matrix(Ring ring, std::size_t rows, std::size_t cols);
  static Matrix identity(Ring ring, std::size_t n);
  // rows given as nested vectors of long, convenient in tests and fixtures
  static Matrix from_rows(Ring ring, const std::vector<std::vector<long>>& rows);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_sparse() const { return sparse_mode_; }

  const Scalar& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& v);
  void add(std::size_t i, std::size_t j, const Scalar& v);

  template <class F>
  void for_each_nonzero(F f) const {
    if (sparse_mode_) {
      for (const auto& [ij, v] : sparse_) f(ij.first, ij.second, v);
      return;
    }
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const Scalar& v = dense_[i * cols_ + j];
        if (!v.is_zero()) f(i, j, v);
      }
  }

  // nonzero entries grouped by row, each row sorted by column
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> sparse_rows() const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  Vec apply(const Vec& x) const;
  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Vec column(std::size_t j) const;
  static Matrix from_columns(Ring ring, std::size_t rows, const std::vector<Vec>& cols);

 private:
  Ring ring_;
  std::size_t rows_ = 0, cols_ = 0;
  bool sparse_mode_ = false;
  std::vector<Scalar> dense_;
  std::map<std::pair<std::size_t, std::size_t>, Scalar> sparse_;
  Scalar zero_;
};

Vec zero_vec(const Ring& ring, std::size_t n);
bool is_zero_vec(const Vec& v);

// y += a * x (same length)
void axpy(Vec& y, const Scalar& a, const Vec& x);
Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator-(Vec a);
Vec operator*(const Scalar& c, Vec a);

// "rows cols ring" header followed by row-major entries (integers or a/b).
Matrix read_matrix(std::istream& in);
std::vector<Matrix> read_matrices(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace infloc
