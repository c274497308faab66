#include "gpesym/csv.hpp"

#include <cmath>
#include <cstdio>

namespace gpesym {

std::string fmt17(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_complex(std::complex<double> z) {
  const std::string im = fmt17(z.imag());
  const bool has_sign = !im.empty() && (im[0] == '-' || im[0] == '+');
  return fmt17(z.real()) + (has_sign ? "" : "+") + im + "i";
}

}  // namespace gpesym
