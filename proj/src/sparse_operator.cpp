#include "rydberg/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>

#include "rydberg/common.hpp"

namespace rydberg {

SparseOperator::SparseOperator(std::size_t dim, std::vector<std::size_t> row_start,
                               std::vector<std::size_t> cols, std::vector<double> values)
    : dim_(dim), row_start_(std::move(row_start)), cols_(std::move(cols)),
      values_(std::move(values)) {}

template <typename Vec>
void SparseOperator::apply_impl(const Vec& x, Vec& y) const {
  if (static_cast<std::size_t>(x.size()) != dim_) {
    throw ConfigError("operator and vector dimensions differ");
  }
  y.setZero(static_cast<Eigen::Index>(dim_));
  for (std::size_t r = 0; r < dim_; ++r) {
    auto acc = y[r];
    const auto xr = x[r];
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      const std::size_t c = cols_[k];
      const double v = values_[k];
      acc += v * x[c];
      if (c != r) y[c] += v * xr;
    }
    y[r] = acc;
  }
}

void SparseOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const { apply_impl(x, y); }
void SparseOperator::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  apply_impl(x, y);
}

Eigen::VectorXd SparseOperator::operator*(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y;
  apply(x, y);
  return y;
}

Eigen::VectorXcd SparseOperator::operator*(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y;
  apply(x, y);
  return y;
}

double SparseOperator::expectation(const Eigen::VectorXcd& psi) const {
  return psi.dot(*this * psi).real();
}

double SparseOperator::diagonal(std::size_t i) const {
  const std::size_t k = row_start_[i];
  if (k < row_start_[i + 1] && cols_[k] == i) return values_[k];
  return 0.0;
}

std::vector<Entry> SparseOperator::entries() const {
  std::vector<Entry> out;
  out.reserve(values_.size());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      out.push_back({r, cols_[k], values_[k]});
    }
  }
  return out;
}

Eigen::MatrixXd SparseOperator::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_),
                                            static_cast<Eigen::Index>(dim_));
  for (const Entry& e : entries()) {
    m(e.row, e.col) = e.value;
    m(e.col, e.row) = e.value;
  }
  return m;
}

double SparseOperator::gershgorin_bound() const {
  std::vector<double> row_sum(dim_, 0.0);
  for (const Entry& e : entries()) {
    row_sum[e.row] += std::abs(e.value);
    if (e.row != e.col) row_sum[e.col] += std::abs(e.value);
  }
  return dim_ == 0 ? 0.0 : *std::max_element(row_sum.begin(), row_sum.end());
}

double SparseOperator::max_abs_entry() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void SparseOperator::write_coo(std::ostream& out) const {
  out << "dim " << dim_ << " nnz " << values_.size() << '\n';
  out << std::setprecision(17);
  for (const Entry& e : entries()) out << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

void OperatorBuilder::add(std::size_t row, std::size_t col, double value) {
  if (row >= dim_ || col >= dim_) throw ConfigError("matrix element outside operator dimension");
  if (row > col) std::swap(row, col);
  pending_.push_back({row, col, value});
}

SparseOperator OperatorBuilder::build() {
  std::sort(pending_.begin(), pending_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::size_t> row_start(dim_ + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> values;
  cols.reserve(pending_.size());
  values.reserve(pending_.size());
  std::size_t i = 0;
  while (i < pending_.size()) {
    const std::size_t r = pending_[i].row;
    const std::size_t c = pending_[i].col;
    double sum = 0.0;
    for (; i < pending_.size() && pending_[i].row == r && pending_[i].col == c; ++i) {
      sum += pending_[i].value;
    }
    if (sum == 0.0) continue;
    cols.push_back(c);
    values.push_back(sum);
    ++row_start[r + 1];
  }
  for (std::size_t r = 0; r < dim_; ++r) row_start[r + 1] += row_start[r];
  pending_.clear();
  pending_.shrink_to_fit();
  return SparseOperator(dim_, std::move(row_start), std::move(cols), std::move(values));
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim()) throw ConfigError("cannot add operators of different dimension");
  OperatorBuilder builder(a.dim());
  for (const Entry& e : a.entries()) builder.add(e.row, e.col, e.value);
  for (const Entry& e : b.entries()) builder.add(e.row, e.col, e.value);
  return builder.build();
}

SparseOperator scaled(const SparseOperator& a, double factor) {
  OperatorBuilder builder(a.dim());
  for (const Entry& e : a.entries()) builder.add(e.row, e.col, factor * e.value);
  return builder.build();
}

SparseOperator shifted(const SparseOperator& a, double constant) {
  OperatorBuilder builder(a.dim());
  for (const Entry& e : a.entries()) builder.add(e.row, e.col, e.value);
  for (std::size_t i = 0; i < a.dim(); ++i) builder.add_diagonal(i, constant);
  return builder.build();
}

} // namespace rydberg
