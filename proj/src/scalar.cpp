#include "rkhs/scalar.hpp"

#include "rkhs/errors.hpp"

#include <sstream>

namespace rkhs {

std::string to_exact_string(const Real& x) {
  std::ostringstream os;
  os.precision(std::numeric_limits<Real>::max_digits10);
  os << std::scientific << x;
  return os.str();
}

Real real_from_string(const std::string& text) {
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + text + "'");
  }
}

}  // namespace rkhs
