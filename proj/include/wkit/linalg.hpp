#pragma once

// Dense exact linear algebra over a field type T providing +, -, *, /, is_zero().

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace wkit::linalg {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
bool is_zero_of(const T& x) { return x.is_zero(); }

// Reduced row echelon form in place. Returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && is_zero_of(a[p][col])) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    T inv = T(1) / a[row][col];
    for (std::size_t c = col; c < a[row].size(); ++c) a[row][c] = a[row][c] * inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || is_zero_of(a[r][col])) continue;
      T factor = a[r][col];
      for (std::size_t c = col; c < a[r].size(); ++c)
        if (!is_zero_of(a[row][c])) a[r][c] = a[r][c] - factor * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> a) {
  if (a.empty()) return 0;
  return rref(a, a[0].size()).size();
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  std::size_t n = m.size();
  Matrix<T> a(n, std::vector<T>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = T(1);
  }
  auto piv = rref(a, n);
  if (piv.size() != n) return std::nullopt;
  Matrix<T> out(n, std::vector<T>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

}  // namespace wkit::linalg
