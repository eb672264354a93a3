#include "spiga/exact_solution.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <memory>
#include <sstream>

#include "spiga/error.hpp"

namespace spiga {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_quad;

std::string describe(double eps1, double eps2, double b, double c, double f) {
  std::ostringstream os;
  os.precision(6);
  os << "-" << eps1 << " u'' + " << eps2 << "*" << b << " u' + " << c << " u = " << f
     << ", u(0) = u(1) = 0";
  return os.str();
}

}  // namespace

ExactSolution constant_coefficient_solution(double eps1, double eps2, double b, double c,
                                            double f) {
  if (!(eps1 > 0.0) || !(eps2 > 0.0) || !(c > 0.0) || !(b >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "closed form needs eps1, eps2, c > 0 and b >= 0");
  }
  auto narrow = std::make_shared<const TwoExponentialSolution<double>>(eps1, eps2, b, c, f);
  auto wide = std::make_shared<const TwoExponentialSolution<Wide>>(Wide(eps1), Wide(eps2), Wide(b),
                                                                   Wide(c), Wide(f));
  ExactSolution out;
  out.u = [narrow](double x) { return narrow->value(x); };
  out.u_prime = [narrow](double x) { return narrow->slope(x); };
  out.u_second = [narrow](double x) { return narrow->curvature(x); };
  out.residual = [wide](double x) { return static_cast<double>(wide->residual(Wide(x))); };
  out.description = describe(eps1, eps2, b, c, f);
  return out;
}

ExactSolution exact_example1(double eps1) {
  // eps2 does not enter when b = 0.
  ExactSolution s = constant_coefficient_solution(eps1, 1.0, 0.0, 1.0, 1.0);
  s.description = "example 1 (reaction-diffusion): " + s.description;
  return s;
}

ExactSolution exact_example2(double eps1) {
  ExactSolution s = constant_coefficient_solution(eps1, 1.0, 1.0, 1.0, 1.0);
  s.description = "example 2 (convection-diffusion): " + s.description;
  return s;
}

ExactSolution exact_example3(double eps1, double eps2) {
  ExactSolution s = constant_coefficient_solution(eps1, eps2, 1.0, 1.0, 1.0);
  s.description = "example 3 (convection-reaction-diffusion): " + s.description;
  return s;
}

}  // namespace spiga
