#pragma once

#include <cstddef>

#include "gersh/complex_matrix.hpp"
#include "gersh/core_model.hpp"

namespace gersh {

/// tridiag(a, 4, a) - lambda tridiag(b, 4, b) of size n.
inline Pencil testmat(std::size_t n, double a, double b) {
  ComplexMatrix ma(n, n);
  ComplexMatrix mb(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    ma(i, i) = 4.0;
    mb(i, i) = 4.0;
    if (i + 1 < n) {
      ma(i, i + 1) = ma(i + 1, i) = a;
      mb(i, i + 1) = mb(i + 1, i) = b;
    }
  }
  return {std::move(ma), std::move(mb)};
}

/// [[2, 3], [3, 2]] - lambda [[2, 1], [1, 2]], eigenvalues -1 and 5/3.
inline Pencil example_pencil() {
  return {ComplexMatrix{{2.0, 3.0}, {3.0, 2.0}}, ComplexMatrix{{2.0, 1.0}, {1.0, 2.0}}};
}

}  // namespace gersh
