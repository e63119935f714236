#include "frameopt/cli/format.hpp"

#include <cmath>

#include <fmt/format.h>

namespace frameopt::cli {

namespace {

constexpr long kMaxDenominator = 1000;
constexpr double kRationalTol = 1e-12;

}  // namespace

std::string format_real(double v) {
  if (!std::isfinite(v)) return fmt::format("{}", v);
  if (std::abs(v) < 1e6) {
    for (long den = 1; den <= kMaxDenominator; ++den) {
      const double num = std::round(v * static_cast<double>(den));
      if (std::abs(v - num / static_cast<double>(den)) <= kRationalTol) {
        const auto n = static_cast<long long>(num);
        if (den == 1) return fmt::format("{}", n);
        return fmt::format("{}/{}", n, den);
      }
    }
  }
  return fmt::format("{:.12g}", v);
}

std::string format_complex(Complex z) {
  const bool has_re = std::abs(z.real()) > kRationalTol;
  const bool has_im = std::abs(z.imag()) > kRationalTol;
  if (!has_im) return format_real(has_re ? z.real() : 0.0);
  const std::string im = format_real(std::abs(z.imag()));
  const std::string im_part = (im == "1" ? "" : im) + "i";
  if (!has_re) return (z.imag() < 0 ? "-" : "") + im_part;
  return fmt::format("{} {} {}", format_real(z.real()), z.imag() < 0 ? "-" : "+", im_part);
}

std::string format_vector(const CVector& v) {
  std::string out = "(";
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += format_complex(v(k));
  }
  return out + ")";
}

std::string format_index_set(const std::vector<std::size_t>& zero_based) {
  std::string out = "{";
  for (std::size_t k = 0; k < zero_based.size(); ++k) {
    if (k) out += ", ";
    out += std::to_string(zero_based[k] + 1);
  }
  return out + "}";
}

}  // namespace frameopt::cli
