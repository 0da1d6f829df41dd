#pragma once

// Matrix Market reader and writer for dense complex matrices.
// Supports the coordinate and array formats with real, integer or complex
// fields and general, symmetric, skew-symmetric or hermitian symmetry.
// Symmetric storage is expanded to the full matrix on read.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "gersh/complex_matrix.hpp"
#include "gersh/error.hpp"

namespace gersh {

namespace detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] inline void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what);
}

enum class MmField { kReal, kInteger, kComplex };
enum class MmSymmetry { kGeneral, kSymmetric, kSkew, kHermitian };

inline Complex mirror(Complex v, MmSymmetry sym) {
  switch (sym) {
    case MmSymmetry::kSymmetric: return v;
    case MmSymmetry::kSkew: return -v;
    case MmSymmetry::kHermitian: return std::conj(v);
    case MmSymmetry::kGeneral: break;
  }
  return v;
}

}  // namespace detail

inline ComplexMatrix read_matrix_market(std::istream& in) {
  using detail::MmField;
  using detail::MmSymmetry;
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) detail::parse_error(1, "empty input");
  ++lineno;
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") detail::parse_error(lineno, "missing %%MatrixMarket banner");
  object = detail::lower(object);
  format = detail::lower(format);
  field = detail::lower(field);
  symmetry = detail::lower(symmetry);
  if (object != "matrix") detail::parse_error(lineno, "unsupported object '" + object + "'");
  const bool coordinate = format == "coordinate";
  if (!coordinate && format != "array") detail::parse_error(lineno, "unsupported format '" + format + "'");

  MmField fld;
  if (field == "real" || field == "double") fld = MmField::kReal;
  else if (field == "integer") fld = MmField::kInteger;
  else if (field == "complex") fld = MmField::kComplex;
  else detail::parse_error(lineno, "unsupported field '" + field + "'");

  MmSymmetry sym;
  if (symmetry == "general") sym = MmSymmetry::kGeneral;
  else if (symmetry == "symmetric") sym = MmSymmetry::kSymmetric;
  else if (symmetry == "skew-symmetric") sym = MmSymmetry::kSkew;
  else if (symmetry == "hermitian") sym = MmSymmetry::kHermitian;
  else detail::parse_error(lineno, "unsupported symmetry '" + symmetry + "'");
  if (sym == MmSymmetry::kHermitian && fld != MmField::kComplex) {
    detail::parse_error(lineno, "hermitian symmetry requires a complex field");
  }

  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      const auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '%') continue;
      return true;
    }
    return false;
  };

  if (!next_data_line(line)) detail::parse_error(lineno + 1, "missing size line");
  std::istringstream size_line(line);
  long long rows = -1, cols = -1, nnz = -1;
  size_line >> rows >> cols;
  if (coordinate) size_line >> nnz;
  if (size_line.fail() || rows < 0 || cols < 0 || (coordinate && nnz < 0)) {
    detail::parse_error(lineno, "malformed size line");
  }
  if (sym != MmSymmetry::kGeneral && rows != cols) {
    throw Error(ErrorCode::kDimensionMismatch, "symmetric storage requires a square matrix");
  }

  auto read_value = [&](std::istringstream& ss) -> Complex {
    double re = 0.0, im = 0.0;
    ss >> re;
    if (fld == MmField::kComplex) ss >> im;
    if (ss.fail()) detail::parse_error(lineno, "malformed value");
    return {re, im};
  };

  const auto n_rows = static_cast<std::size_t>(rows);
  const auto n_cols = static_cast<std::size_t>(cols);
  ComplexMatrix m(n_rows, n_cols);

  if (coordinate) {
    for (long long k = 0; k < nnz; ++k) {
      if (!next_data_line(line)) detail::parse_error(lineno + 1, "expected " + std::to_string(nnz) + " entries");
      std::istringstream ss(line);
      long long i = 0, j = 0;
      ss >> i >> j;
      if (ss.fail()) detail::parse_error(lineno, "malformed entry indices");
      if (i < 1 || j < 1 || i > rows || j > cols) {
        throw Error(ErrorCode::kDimensionMismatch, "line " + std::to_string(lineno) + ": index out of range");
      }
      const Complex v = read_value(ss);
      const auto r = static_cast<std::size_t>(i - 1);
      const auto c = static_cast<std::size_t>(j - 1);
      m(r, c) = v;
      if (sym != MmSymmetry::kGeneral && r != c) m(c, r) = detail::mirror(v, sym);
    }
  } else {
    // column-major; symmetric storage lists the lower triangle only
    for (std::size_t c = 0; c < n_cols; ++c) {
      const std::size_t start = sym == MmSymmetry::kGeneral ? 0 : (sym == MmSymmetry::kSkew ? c + 1 : c);
      for (std::size_t r = start; r < n_rows; ++r) {
        if (!next_data_line(line)) detail::parse_error(lineno + 1, "too few array entries");
        std::istringstream ss(line);
        const Complex v = read_value(ss);
        m(r, c) = v;
        if (sym != MmSymmetry::kGeneral && r != c) m(c, r) = detail::mirror(v, sym);
      }
    }
  }
  if (next_data_line(line)) detail::parse_error(lineno, "trailing data after the last entry");
  return m;
}

inline ComplexMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  return read_matrix_market(in);
}

/// Writes a general array-format file; the field is real when every entry
/// has zero imaginary part, complex otherwise.
inline void write_matrix_market(std::ostream& out, const ComplexMatrix& m) {
  const bool real = std::all_of(m.data().begin(), m.data().end(), [](const Complex& v) { return v.imag() == 0.0; });
  out << "%%MatrixMarket matrix array " << (real ? "real" : "complex") << " general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) {
      out << m(r, c).real();
      if (!real) out << ' ' << m(r, c).imag();
      out << '\n';
    }
}

inline void write_matrix_market(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  write_matrix_market(out, m);
}

}  // namespace gersh
