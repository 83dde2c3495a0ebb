#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace rydberg {

struct Entry {
  std::size_t row;
  std::size_t col;
  double value;
};

// Real symmetric operator stored as its upper triangle (row <= col) in
// row-compressed form. Every Hamiltonian here is real in its computational
// basis, so complex amplitudes only appear in the states it acts on.
class SparseOperator {
public:
  SparseOperator() = default;
  SparseOperator(std::size_t dim, std::vector<std::size_t> row_start, std::vector<std::size_t> cols,
                 std::vector<double> values);

  std::size_t dim() const { return dim_; }
  std::size_t nonzeros() const { return values_.size(); }

  // y = H x
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;
  Eigen::VectorXcd operator*(const Eigen::VectorXcd& x) const;

  double expectation(const Eigen::VectorXcd& psi) const;
  double diagonal(std::size_t i) const;
  std::vector<Entry> entries() const;
  Eigen::MatrixXd to_dense() const;

  // max_i sum_j |H_ij|, an upper bound on the spectral radius.
  double gershgorin_bound() const;
  double max_abs_entry() const;

  // Coordinate-list export: "dim <n> nnz <k>" then one "row col value" line per
  // stored upper-triangle entry, values with 17 significant digits.
  void write_coo(std::ostream& out) const;

private:
  template <typename Vec>
  void apply_impl(const Vec& x, Vec& y) const;

  std::size_t dim_ = 0;
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

// Accumulates matrix elements in any order. add(r, c, v) contributes v to both
// H_rc and H_cr (once on the diagonal); duplicates are summed and entries that
// sum to exactly zero are dropped.
class OperatorBuilder {
public:
  explicit OperatorBuilder(std::size_t dim) : dim_(dim) {}

  void add(std::size_t row, std::size_t col, double value);
  void add_diagonal(std::size_t i, double value) { add(i, i, value); }
  SparseOperator build();

private:
  std::size_t dim_;
  std::vector<Entry> pending_;
};

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
SparseOperator scaled(const SparseOperator& a, double factor);
SparseOperator shifted(const SparseOperator& a, double constant);

} // namespace rydberg
