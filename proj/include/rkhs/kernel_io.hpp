#pragma once

#include "rkhs/kernel1d.hpp"

#include <json.hpp>

#include <iosfwd>

namespace rkhs {

/// {m, interval, constraints, left_coeffs, right_coeffs}. Coefficients are
/// written as decimal strings with enough digits to round-trip quad precision.
nlohmann::json kernel_to_json(const Kernel& kernel);
Kernel kernel_from_json(const nlohmann::json& doc);

void write_kernel(std::ostream& out, const Kernel& kernel);
Kernel read_kernel(std::istream& in);

}  // namespace rkhs
