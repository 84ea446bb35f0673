#pragma once

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include "sunphase/matrix.hpp"

namespace sunphase {

// Complex scalar as text: "re+imi" / "re-imi", 17 significant digits so the
// doubles round-trip exactly. A bare real (no trailing 'i') parses back with
// zero imaginary part.
inline std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

inline Complex parse_complex(const std::string& token) {
  const char* s = token.c_str();
  char* end = nullptr;
  double re = std::strtod(s, &end);
  if (end == s) throw std::invalid_argument("bad complex token '" + token + "'");
  if (*end == '\0') return Complex(re, 0.0);
  const char* s2 = end;
  double im = std::strtod(s2, &end);
  if (end == s2 || *end != 'i' || *(end + 1) != '\0')
    throw std::invalid_argument("bad complex token '" + token + "'");
  return Complex(re, im);
}

// Matrix text format: first line is the dimension, then one row per line,
// entries separated by single spaces.
inline std::string matrix_to_text(const UnitaryMatrix& u) {
  std::ostringstream out;
  out << u.dim() << "\n";
  for (int r = 0; r < u.dim(); ++r) {
    for (int c = 0; c < u.dim(); ++c) {
      if (c) out << ' ';
      out << format_complex(u(r, c));
    }
    out << "\n";
  }
  return out.str();
}

inline UnitaryMatrix matrix_from_text(const std::string& text, double tol = kValidationTol) {
  std::istringstream in(text);
  int n = 0;
  if (!(in >> n) || n < 1) throw std::invalid_argument("matrix text: bad dimension line");
  std::vector<Complex> e;
  e.reserve(static_cast<size_t>(n) * n);
  std::string token;
  for (int k = 0; k < n * n; ++k) {
    if (!(in >> token))
      throw std::invalid_argument("matrix text: expected " + std::to_string(n * n) +
                                  " entries, got " + std::to_string(k));
    e.push_back(parse_complex(token));
  }
  if (in >> token) throw std::invalid_argument("matrix text: trailing content '" + token + "'");
  return UnitaryMatrix(n, std::move(e), tol);
}

}  // namespace sunphase
