#pragma once

#include <string>
#include <vector>

#include "frameopt/linalg.hpp"

namespace frameopt::cli {

/// Prints "p/q" when v is within 1e-12 of a rational with denominator
/// <= 1000, otherwise a 12-significant-digit decimal.
std::string format_real(double v);
std::string format_complex(Complex z);
std::string format_vector(const CVector& v);
std::string format_index_set(const std::vector<std::size_t>& zero_based);

}  // namespace frameopt::cli
