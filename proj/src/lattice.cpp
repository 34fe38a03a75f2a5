#include "noether/lattice.hpp"

#include <sstream>

namespace noether {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  for (const auto& row : rows) {
    if (row.size() != c_) throw AlgebraError("IntMatrix: ragged rows");
    for (long v : row) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw AlgebraError("IntMatrix: ragged rows");
    for (size_t j = 0; j < cols; ++j) m(i, j) = Integer(static_cast<long>(rows[i][j]));
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (c_ != o.r_) throw AlgebraError("IntMatrix: dimension mismatch in product");
  IntMatrix r(r_, o.c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (size_t j = 0; j < o.c_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
    }
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

void IntMatrix::swap_rows(size_t i, size_t j) {
  if (i == j) return;
  for (size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}
void IntMatrix::swap_cols(size_t i, size_t j) {
  if (i == j) return;
  for (size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}
void IntMatrix::add_row_multiple(size_t dst, size_t src, const Integer& f) {
  if (f == 0) return;
  for (size_t k = 0; k < c_; ++k) (*this)(dst, k) += f * (*this)(src, k);
}
void IntMatrix::add_col_multiple(size_t dst, size_t src, const Integer& f) {
  if (f == 0) return;
  for (size_t k = 0; k < r_; ++k) (*this)(k, dst) += f * (*this)(k, src);
}
void IntMatrix::negate_row(size_t i) {
  for (size_t k = 0; k < c_; ++k) (*this)(i, k) = -(*this)(i, k);
}
void IntMatrix::negate_col(size_t j) {
  for (size_t k = 0; k < r_; ++k) (*this)(k, j) = -(*this)(k, j);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < r_; ++i) {
    os << (i ? ", [" : "[");
    for (size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw AlgebraError("determinant: matrix is not square");
  const size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      size_t piv = k + 1;
      while (piv < n && a(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

namespace {

// floor division keeping remainders in [0, |b|)
Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const size_t R = m.rows(), C = m.cols();
  SmithForm s{IntMatrix::identity(R), m, IntMatrix::identity(C)};
  IntMatrix& D = s.D;
  size_t t = 0;
  while (t < R && t < C) {
    // pick the smallest nonzero entry in the trailing block as pivot
    bool found = false;
    size_t pi = t, pj = t;
    for (size_t i = t; i < R; ++i)
      for (size_t j = t; j < C; ++j)
        if (D(i, j) != 0 && (!found || abs(D(i, j)) < abs(D(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    D.swap_rows(t, pi);
    s.U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    s.V.swap_cols(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < R; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = fdiv(D(i, t), D(t, t));
        D.add_row_multiple(i, t, -q);
        s.U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0) {
          D.swap_rows(t, i);
          s.U.swap_rows(t, i);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < C; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = fdiv(D(t, j), D(t, t));
        D.add_col_multiple(j, t, -q);
        s.V.add_col_multiple(j, t, -q);
        if (D(t, j) != 0) {
          D.swap_cols(t, j);
          s.V.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: fold in any entry not divisible by the pivot
      for (size_t i = t + 1; i < R && clean; ++i)
        for (size_t j = t + 1; j < C; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row_multiple(t, i, 1);
            s.U.add_row_multiple(t, i, 1);
            clean = false;
            break;
          }
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
    ++t;
  }
  return s;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (!m.is_square() || !is_unimodular(m)) throw AlgebraError("unimodular_inverse: matrix is not unimodular");
  // U M V = I  =>  M^{-1} = V U
  SmithForm s = smith_normal_form(m);
  return s.V * s.U;
}

IntMatrix diagonal_invariant_lattice(const std::vector<long long>& weights, long long modulus) {
  if (weights.empty()) throw AlgebraError("diagonal_invariant_lattice: empty weight vector");
  if (modulus < 1) throw AlgebraError("diagonal_invariant_lattice: modulus must be positive");
  const size_t r = weights.size();
  // kernel of [c | m] in Z^{r+1}, projected to the first r coordinates
  IntMatrix row(1, r + 1);
  for (size_t i = 0; i < r; ++i) row(0, i) = Integer(static_cast<long>(mod_floor(weights[i], modulus)));
  row(0, r) = Integer(static_cast<long>(modulus));
  SmithForm s = smith_normal_form(row);
  // D has one nonzero entry (column 0); columns 1..r of V span the kernel
  IntMatrix B(r, r);
  for (size_t k = 0; k < r; ++k)
    for (size_t i = 0; i < r; ++i) B(k, i) = s.V(i, k + 1);
  // row Hermite normal form (upper triangular, positive pivots, reduced above)
  size_t prow = 0;
  for (size_t col = 0; col < r && prow < r; ++col) {
    for (;;) {
      size_t best = r;
      for (size_t i = prow; i < r; ++i)
        if (B(i, col) != 0 && (best == r || abs(B(i, col)) < abs(B(best, col)))) best = i;
      if (best == r) break;
      B.swap_rows(prow, best);
      bool done = true;
      for (size_t i = prow + 1; i < r; ++i) {
        if (B(i, col) == 0) continue;
        B.add_row_multiple(i, prow, -fdiv(B(i, col), B(prow, col)));
        if (B(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (B(prow, col) == 0) continue;
    if (B(prow, col) < 0) B.negate_row(prow);
    for (size_t i = 0; i < prow; ++i) B.add_row_multiple(i, prow, -fdiv(B(i, col), B(prow, col)));
    ++prow;
  }
  return B;
}

}  // namespace noether
