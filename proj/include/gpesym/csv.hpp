#pragma once

#include <complex>
#include <string>

namespace gpesym {

/// Shortest form that round-trips a double: printf "%.17g".
std::string fmt17(double v);
/// "re+imi" with explicit sign on the imaginary part.
std::string fmt_complex(std::complex<double> z);

}  // namespace gpesym
