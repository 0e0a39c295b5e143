#include <algorithm>
#include <utility>

#include "klab/abelian.hpp"

namespace klab {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw Error(ErrorKind::InvalidInput, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Integer> IntMatrix::apply(std::span<const Integer> v) const {
  if (v.size() != cols_) throw Error(ErrorKind::InvalidInput, "matrix/vector dimension mismatch");
  std::vector<Integer> out(rows_, Integer(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  // Bareiss: every intermediate division is exact.
  IntMatrix a = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidInput, "matrix product dimension mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

namespace {

// Row and column operations applied to the working matrix are mirrored into
// U (rows) and V (columns) so that U * m * V stays equal to the working matrix.
struct SmithState {
  IntMatrix a, u, v;

  void swap_rows(std::size_t i, std::size_t j) { a.swap_rows(i, j); u.swap_rows(i, j); }
  void swap_cols(std::size_t i, std::size_t j) { a.swap_cols(i, j); v.swap_cols(i, j); }
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    a.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    a.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
  }
  void negate_row(std::size_t r) { a.negate_row(r); u.negate_row(r); }

  // Smallest nonzero |entry| in the trailing block starting at (t, t).
  bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    Integer best;
    for (std::size_t r = t; r < a.rows(); ++r)
      for (std::size_t c = t; c < a.cols(); ++c) {
        if (a(r, c) == 0) continue;
        Integer mag = abs(a(r, c));
        if (!found || mag < best) {
          found = true;
          best = mag;
          pr = r;
          pc = c;
        }
      }
    return found;
  }

  // Clears row t and column t beyond the pivot. Returns false if a nonzero
  // remainder was left behind, in which case a smaller pivot exists.
  bool clear_cross(std::size_t t) {
    bool clean = true;
    for (std::size_t r = t + 1; r < a.rows(); ++r) {
      if (a(r, t) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(r, t).get_mpz_t(), a(t, t).get_mpz_t());
      add_row(r, t, -q);
      if (a(r, t) != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < a.cols(); ++c) {
      if (a(t, c) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(t, c).get_mpz_t(), a(t, t).get_mpz_t());
      add_col(c, t, -q);
      if (a(t, c) != 0) clean = false;
    }
    return clean;
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithState s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  const std::size_t steps = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      std::size_t pr = t, pc = t;
      if (!s.find_pivot(t, pr, pc)) break;
      s.swap_rows(t, pr);
      s.swap_cols(t, pc);
      if (!s.clear_cross(t)) continue;

      // Pivot must divide the rest of the trailing block; otherwise fold the
      // offending row into row t and reduce again.
      bool divides = true;
      for (std::size_t r = t + 1; r < s.a.rows() && divides; ++r)
        for (std::size_t c = t + 1; c < s.a.cols(); ++c)
          if (!mpz_divisible_p(s.a(r, c).get_mpz_t(), s.a(t, t).get_mpz_t())) {
            s.add_row(t, r, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s.a(t, t) < 0) s.negate_row(t);
  }
  return {std::move(s.u), std::move(s.a), std::move(s.v)};
}

}  // namespace klab
