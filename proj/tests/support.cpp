#include "support.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <stdexcept>

namespace testsupport {

namespace {

// 64-point Gauss-Legendre nodes/weights on [-1, 1], generated by Newton
// iteration on the Legendre polynomial at startup.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(std::size_t n) {
    nodes.resize(n);
    weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double x = std::cos(3.14159265358979323846 * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(n) + 0.5));
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
          p0 = p1;
          p1 = p2;
        }
        const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) {
          break;
        }
      }
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

double beta_log_pdf(double a, double b, double x) {
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) + boost::math::lgamma(a + b) -
         boost::math::lgamma(a) - boost::math::lgamma(b);
}

}  // namespace

std::vector<double> beta_argmax_masses(const std::vector<double>& alpha,
                                       const std::vector<double>& beta) {
  if (alpha.size() != beta.size() || alpha.empty()) {
    throw std::invalid_argument("beta_argmax_masses: parameter size mismatch");
  }
  static const GaussLegendre quad(256);
  const std::size_t arms = alpha.size();
  std::vector<double> masses(arms, 0.0);
  for (std::size_t target = 0; target < arms; ++target) {
    double integral = 0.0;
    for (std::size_t q = 0; q < quad.nodes.size(); ++q) {
      const double x = 0.5 * (quad.nodes[q] + 1.0);  // map to (0, 1)
      if (x <= 0.0 || x >= 1.0) {
        continue;
      }
      double value = std::exp(beta_log_pdf(alpha[target], beta[target], x));
      for (std::size_t other = 0; other < arms; ++other) {
        if (other == target) {
          continue;
        }
        value *= boost::math::ibeta(alpha[other], beta[other], x);
      }
      integral += quad.weights[q] * value;
    }
    masses[target] = 0.5 * integral;
  }
  return masses;
}

}  // namespace testsupport
