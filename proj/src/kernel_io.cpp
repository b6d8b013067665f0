#include "rkhs/kernel_io.hpp"

#include "rkhs/errors.hpp"

#include <istream>
#include <ostream>

namespace rkhs {
namespace {

nlohmann::json table_to_json(const RealMatrix& t) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < t.cols(); ++j) row.push_back(to_exact_string(t(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Real real_from_json(const nlohmann::json& v) {
  if (v.is_string()) return real_from_string(v.get<std::string>());
  if (v.is_number()) return Real(v.get<double>());
  throw InvalidArgument("kernel document: expected a number");
}

RealMatrix table_from_json(const nlohmann::json& rows, int n) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw InvalidArgument("kernel document: coefficient table must have 2m rows");
  RealMatrix t(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw InvalidArgument("kernel document: coefficient rows must have 2m entries");
    for (int j = 0; j < n; ++j) t(i, j) = real_from_json(row[static_cast<std::size_t>(j)]);
  }
  return t;
}

}  // namespace

nlohmann::json kernel_to_json(const Kernel& kernel) {
  const KernelSpace& space = kernel.space();
  nlohmann::json doc;
  doc["m"] = space.m;
  doc["interval"] = {to_exact_string(space.interval.a), to_exact_string(space.interval.b)};
  auto constraints = nlohmann::json::array();
  for (const auto& c : space.constraints)
    constraints.push_back({{"point", to_exact_string(c.point)}, {"order", c.order}});
  doc["constraints"] = std::move(constraints);
  doc["left_coeffs"] = table_to_json(kernel.left());
  doc["right_coeffs"] = table_to_json(kernel.right());
  return doc;
}

Kernel kernel_from_json(const nlohmann::json& doc) {
  try {
    KernelSpace space;
    space.m = doc.at("m").get<int>();
    if (space.m < 1 || space.m > kMaxOrder) throw InvalidArgument("kernel document: bad m");
    const auto& iv = doc.at("interval");
    if (!iv.is_array() || iv.size() != 2) throw InvalidArgument("kernel document: bad interval");
    space.interval = make_interval(real_from_json(iv[0]), real_from_json(iv[1]));
    for (const auto& c : doc.at("constraints"))
      space.constraints.push_back({real_from_json(c.at("point")), c.at("order").get<int>()});
    const int n = 2 * space.m;
    auto left = table_from_json(doc.at("left_coeffs"), n);
    auto right = table_from_json(doc.at("right_coeffs"), n);
    return Kernel::from_tables(std::move(space), std::move(left), std::move(right));
  } catch (const nlohmann::json::exception& err) {
    throw InvalidArgument(std::string("kernel document: ") + err.what());
  }
}

void write_kernel(std::ostream& out, const Kernel& kernel) {
  out << kernel_to_json(kernel).dump(2) << '\n';
}

Kernel read_kernel(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& err) {
    throw InvalidArgument(std::string("kernel document: ") + err.what());
  }
  return kernel_from_json(doc);
}

}  // namespace rkhs
