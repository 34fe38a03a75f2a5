#ifndef NOETHER_LATTICE_HPP
#define NOETHER_LATTICE_HPP

#include <string>
#include <vector>

#include "noether/common.hpp"

namespace noether {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, size_t cols);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  bool is_square() const { return r_ == c_; }
  Integer& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Integer& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  IntMatrix transpose() const;
  bool is_zero() const;
  bool is_diagonal() const;

  void swap_rows(size_t i, size_t j);
  void swap_cols(size_t i, size_t j);
  void add_row_multiple(size_t dst, size_t src, const Integer& f);  // row dst += f*row src
  void add_col_multiple(size_t dst, size_t src, const Integer& f);
  void negate_row(size_t i);
  void negate_col(size_t j);

  std::string to_string() const;

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<Integer> a_;
};

/// Bareiss fraction-free elimination. Throws AlgebraError on non-square input.
Integer determinant(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

struct SmithForm {
  IntMatrix U, D, V;  // U*M*V == D
};
SmithForm smith_normal_form(const IntMatrix& m);

/// Basis (as rows, Hermite normal form) of {e in Z^r : sum c_i e_i == 0 mod modulus}.
IntMatrix diagonal_invariant_lattice(const std::vector<long long>& weights, long long modulus);

/// Inverse of a unimodular matrix (exact, integral). Throws if not unimodular.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace noether

#endif
