#include "caz/test_function.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace caz {

TestFunction TestFunction::bump(Complex center, double radius, int exponent, double amplitude) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("bump radius must be positive");
  if (exponent < 3) throw std::invalid_argument("bump exponent must be at least 3");
  TestFunction h;
  h.kind_ = TestFunctionKind::RadialBump;
  h.center_ = center;
  h.radius_ = radius;
  h.exponent_ = exponent;
  h.amplitude_ = amplitude;
  return h;
}

TestFunction TestFunction::parse_bump(std::string_view text) {
  std::vector<double> parts;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bump must be 'x,y,r,p' with numeric fields, got '" + std::string(text) + "'");
    }
  }
  if (parts.size() != 4) throw std::invalid_argument("bump must have four fields x,y,r,p");
  if (std::floor(parts[3]) != parts[3]) throw std::invalid_argument("bump exponent must be an integer");
  return bump({parts[0], parts[1]}, parts[2], static_cast<int>(parts[3]));
}

TestFunction TestFunction::tabulated(std::function<double(Complex)> h, Complex center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("support radius must be positive");
  TestFunction f;
  f.kind_ = TestFunctionKind::GridTabulated;
  f.center_ = center;
  f.radius_ = radius;
  f.table_ = std::move(h);
  return f;
}

TestFunction TestFunction::tabulated_whole_sphere(std::function<double(Complex)> h) {
  TestFunction f;
  f.kind_ = TestFunctionKind::GridTabulated;
  f.radius_ = std::numeric_limits<double>::infinity();
  f.whole_sphere_ = true;
  f.table_ = std::move(h);
  return f;
}

bool TestFunction::in_support(Complex z) const {
  return whole_sphere_ || std::norm(z - center_) < radius_ * radius_;
}

double TestFunction::value(Complex z) const {
  if (!in_support(z)) return 0.0;
  if (kind_ == TestFunctionKind::GridTabulated) return amplitude_ * table_(z);
  const double s = std::norm(z - center_) / (radius_ * radius_);
  return amplitude_ * std::pow(1.0 - s, exponent_);
}

Complex TestFunction::gradient(Complex z) const {
  if (!in_support(z)) return 0.0;
  if (kind_ == TestFunctionKind::GridTabulated) {
    // Central differences, one Richardson step.
    const double step = 1e-3 * (whole_sphere_ ? 1.0 + std::abs(z) : radius_);
    auto central = [&](double hh) {
      return Complex{(value(z + hh) - value(z - hh)) / (2.0 * hh),
                     (value(z + Complex{0.0, hh}) - value(z - Complex{0.0, hh})) / (2.0 * hh)};
    };
    return (4.0 * central(0.5 * step) - central(step)) / 3.0;
  }
  const Complex d = z - center_;
  const double r2 = radius_ * radius_;
  const double s = std::norm(d) / r2;
  const double p = exponent_;
  return amplitude_ * (-2.0 * p / r2) * std::pow(1.0 - s, p - 1.0) * d;
}

double TestFunction::stencil_laplacian(Complex z, double step) const {
  const double center = value(z);
  return (value(z + step) + value(z - step) + value(z + Complex{0.0, step}) + value(z - Complex{0.0, step}) -
          4.0 * center) /
         (step * step);
}

double TestFunction::laplacian(Complex z) const {
  if (!in_support(z)) return 0.0;
  if (kind_ == TestFunctionKind::GridTabulated) {
    const double step = 1e-3 * (whole_sphere_ ? 1.0 + std::abs(z) : radius_);
    return (4.0 * stencil_laplacian(z, 0.5 * step) - stencil_laplacian(z, step)) / 3.0;
  }
  // h = A g(u), u = |z - z0|^2:  Lap h = 4 A (g' + u g'') = (4 A p / r^2) (1-s)^{p-2} (p s - 1).
  const double s = std::norm(z - center_) / (radius_ * radius_);
  const double p = exponent_;
  return amplitude_ * 4.0 * p / (radius_ * radius_) * std::pow(1.0 - s, p - 2.0) * (p * s - 1.0);
}

TestFunction TestFunction::scaled(double t) const {
  TestFunction h = *this;
  h.amplitude_ *= t;
  return h;
}

TestFunction TestFunction::shifted(Complex b) const {
  if (whole_sphere_) throw std::invalid_argument("whole-sphere test functions cannot be shifted");
  TestFunction h = *this;
  h.center_ += b;
  if (kind_ == TestFunctionKind::GridTabulated) {
    h.table_ = [inner = table_, b](Complex z) { return inner(z - b); };
  } else if (b != 0.0) {
    h.kind_ = TestFunctionKind::ShiftedBump;
  }
  return h;
}

nlohmann::json TestFunction::to_json() const {
  switch (kind_) {
    case TestFunctionKind::RadialBump:
    case TestFunctionKind::ShiftedBump:
      return {{"kind", kind_ == TestFunctionKind::RadialBump ? "radial_bump" : "shifted_bump"},
              {"center", {center_.real(), center_.imag()}},
              {"radius", radius_},
              {"exponent", exponent_},
              {"amplitude", amplitude_}};
    case TestFunctionKind::GridTabulated:
      if (whole_sphere_) return {{"kind", "tabulated"}, {"support", "whole_sphere"}};
      return {{"kind", "tabulated"}, {"center", {center_.real(), center_.imag()}}, {"radius", radius_}};
  }
  return {};
}

}  // namespace caz
