#pragma once

#include <algorithm>
#include <vector>

#include "edmrank/matrix.hpp"
#include "edmrank/rational.hpp"

namespace edmrank::testsupport {

// Reference determinant: cofactor expansion along the first row. Slow but
// independent of the elimination code under test.
inline Rational cofactor_det(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m(0, 0);
  Rational acc(0);
  std::vector<std::size_t> tail_rows;
  for (std::size_t i = 1; i < n; ++i) tail_rows.push_back(i);
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    const Rational minor = cofactor_det(m.submatrix(tail_rows, cols));
    acc += (j % 2 == 0 ? m(0, j) : -m(0, j)) * minor;
  }
  return acc;
}

// Reference rank: size of the largest square submatrix with nonzero
// determinant, by exhaustive minor enumeration.
inline int minor_rank(const QMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  for (std::size_t k = std::min(r, c); k >= 1; --k) {
    std::vector<std::size_t> ri(k), ci(k);
    std::vector<bool> rsel(r, false), csel(c, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::size_t p = 0;
      for (std::size_t i = 0; i < r; ++i)
        if (rsel[i]) ri[p++] = i;
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        std::size_t q = 0;
        for (std::size_t j = 0; j < c; ++j)
          if (csel[j]) ci[q++] = j;
        if (!cofactor_det(m.submatrix(ri, ci)).is_zero())
          return static_cast<int>(k);
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

}  // namespace edmrank::testsupport
