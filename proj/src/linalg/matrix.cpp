#include "infloc/linalg/matrix.hpp"

#include <istream>
#include <ostream>

namespace infloc {

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), zero_(ring.zero()) {
  sparse_mode_ = rows > kDenseLimit || cols > kDenseLimit;
  if (!sparse_mode_) dense_.assign(rows * cols, ring.zero());
}

Matrix Matrix::identity(Ring ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, ring.one());
  return m;
}

Matrix Matrix::from_rows(Ring ring, const std::vector<std::vector<long>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  Matrix m(ring, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw InvalidInput("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, ring.make(rows[i][j]));
  }
  return m;
}

const Scalar& Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw InvariantViolation("matrix index out of range");
  if (!sparse_mode_) return dense_[i * cols_ + j];
  auto it = sparse_.find({i, j});
  return it == sparse_.end() ? zero_ : it->second;
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  if (i >= rows_ || j >= cols_) throw InvariantViolation("matrix index out of range");
  if (!ring_.contains(v)) throw InvalidInput("entry " + v.str() + " not in " + ring_.name());
  Scalar w = v.modulus() == ring_.modulus() ? v : Scalar(v.value(), ring_.modulus());
  if (!sparse_mode_) {
    dense_[i * cols_ + j] = std::move(w);
    return;
  }
  if (w.is_zero())
    sparse_.erase({i, j});
  else
    sparse_[{i, j}] = std::move(w);
}

void Matrix::add(std::size_t i, std::size_t j, const Scalar& v) {
  if (v.is_zero()) return;
  set(i, j, at(i, j) + v);
}

std::vector<std::vector<std::pair<std::size_t, Scalar>>> Matrix::sparse_rows() const {
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> out(rows_);
  for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& v) { out[i].emplace_back(j, v); });
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw InvariantViolation("matrix product dimension mismatch");
  Matrix out(ring_, rows_, o.cols_);
  auto orow = o.sparse_rows();
  if (!out.sparse_mode_) {
    for_each_nonzero([&](std::size_t i, std::size_t k, const Scalar& a) {
      for (const auto& [j, b] : orow[k]) out.dense_[i * out.cols_ + j] += a * b;
    });
    return out;
  }
  for_each_nonzero([&](std::size_t i, std::size_t k, const Scalar& a) {
    for (const auto& [j, b] : orow[k]) out.add(i, j, a * b);
  });
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvariantViolation("matrix sum dimension mismatch");
  Matrix out = *this;
  o.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& v) { out.add(i, j, v); });
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(ring_.make(-1)); }

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix out(ring_, rows_, cols_);
  for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& v) { out.set(i, j, v * c); });
  return out;
}

Vec Matrix::apply(const Vec& x) const {
  if (x.size() != cols_) throw InvariantViolation("matrix-vector dimension mismatch");
  Vec y(rows_, ring_.zero());
  for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& v) {
    if (!x[j].is_zero()) y[i] += v * x[j];
  });
  return y;
}

Matrix Matrix::transpose() const {
  Matrix out(ring_, cols_, rows_);
  for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& v) { out.set(j, i, v); });
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix out(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      const Scalar& v = at(r0 + i, c0 + j);
      if (!v.is_zero()) out.set(i, j, v);
    }
  return out;
}

bool Matrix::is_zero() const {
  bool z = true;
  for_each_nonzero([&](std::size_t, std::size_t, const Scalar&) { z = false; });
  return z;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || ring_ != o.ring_) return false;
  return (*this - o).is_zero();
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_, ring_.zero());
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

Matrix Matrix::from_columns(Ring ring, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw InvariantViolation("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i)
      if (!cols[j][i].is_zero()) m.set(i, j, cols[j][i]);
  }
  return m;
}

Vec zero_vec(const Ring& ring, std::size_t n) { return Vec(n, ring.zero()); }

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

void axpy(Vec& y, const Scalar& a, const Vec& x) {
  if (y.size() != x.size()) throw InvalidInput("vector length mismatch");
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

Vec operator+(Vec a, const Vec& b) {
  if (a.size() != b.size()) throw InvalidInput("vector length mismatch");
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) a[i] += b[i];
  return a;
}

Vec operator-(Vec a, const Vec& b) {
  if (a.size() != b.size()) throw InvalidInput("vector length mismatch");
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) a[i] -= b[i];
  return a;
}

Vec operator-(Vec a) {
  for (auto& x : a) x = -x;
  return a;
}

Vec operator*(const Scalar& c, Vec a) {
  for (auto& x : a) x *= c;
  return a;
}

Matrix read_matrix(std::istream& in) {
  std::size_t r, c;
  std::string ringname;
  if (!(in >> r >> c >> ringname)) throw InvalidInput("matrix header must be 'rows cols ring'");
  Ring ring = Ring::parse(ringname);
  Matrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::string tok;
      if (!(in >> tok)) throw InvalidInput("matrix body too short");
      Scalar v = ring.parse_scalar(tok);
      if (!v.is_zero()) m.set(i, j, v);
    }
  return m;
}

std::vector<Matrix> read_matrices(std::istream& in) {
  std::vector<Matrix> out;
  in >> std::ws;
  while (in.peek() != std::char_traits<char>::eof()) {
    out.push_back(read_matrix(in));
    in >> std::ws;
  }
  return out;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.ring().name() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m.at(i, j).str();
    out << '\n';
  }
}

}  // namespace infloc
