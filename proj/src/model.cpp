#include "optrev/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optrev {

namespace {

void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument(std::string(name) + " must be in [0,1]");
}

void check_visit(double v, double c) {
  if (!(v >= 0.0)) throw std::invalid_argument("visit period must be >= 0");
  if (!(v <= c)) throw std::invalid_argument("visit period must be <= frame time");
}

// Shared closed-form pieces for the exponential model, with
// a = exp(-nu*v), b = exp(-mu*v):
//   p = 1-a, q = b, r = 1 - a + a*b, phi = p/r
//   phi'  = w / r^2,             w  = a*b*(nu*a + (nu+mu)*(1-a))
//   phi'' = (w'*r - 2*w*r')/r^3, w' = a*b*(mu*nu*a - (nu+mu)*s), s = (nu+mu) - mu*a
//   r'    = nu*a - (nu+mu)*a*b
struct ExpTerms {
  double phi, dphi, ddphi;
};

ExpTerms exp_terms(double nu, double mu, double v) {
  const double a = std::exp(-nu * v);
  const double b = std::exp(-mu * v);
  const double p = 1.0 - a;
  const double r = 1.0 - a + a * b;
  const double w = a * b * (nu * a + (nu + mu) * (1.0 - a));
  const double s = (nu + mu) - mu * a;
  const double wp = a * b * (mu * nu * a - (nu + mu) * s);
  const double rp = nu * a - (nu + mu) * a * b;
  ExpTerms t;
  t.phi = p == 0.0 ? 0.0 : p / r;
  t.dphi = w / (r * r);
  t.ddphi = (wp * r - 2.0 * w * rp) / (r * r * r);
  return t;
}

}  // namespace

ProbabilityModel ProbabilityModel::exponential(double retry_rate, double drop_decay) {
  if (!(retry_rate > 0.0)) throw std::invalid_argument("retry rate must be > 0");
  if (!(drop_decay > 0.0)) throw std::invalid_argument("drop decay must be > 0");
  ProbabilityModel m;
  m.retrial = [retry_rate](double v) { return 1.0 - std::exp(-retry_rate * v); };
  m.drop = [drop_decay](double v) { return std::exp(-drop_decay * v); };
  return m;
}

double retrial_prob(const ProbabilityModel& m, double v) {
  if (!(v >= 0.0)) throw std::invalid_argument("visit period must be >= 0");
  const double p = m.retrial(v);
  check_probability(p, "p(v)");
  return p;
}

double drop_prob(const ProbabilityModel& m, double v) {
  if (!(v >= 0.0)) throw std::invalid_argument("visit period must be >= 0");
  const double q = m.drop(v);
  check_probability(q, "q(v)");
  return q;
}

double leave_prob(double p, double q) {
  check_probability(p, "p");
  check_probability(q, "q");
  return p + q - p * q;
}

double station_revenue(const StationParams& s, double c, double v) {
  check_visit(v, c);
  if (v == 0.0) return 0.0;
  if (v == c) return s.gamma * c;  // the (c-v) term vanishes identically
  const ExpTerms t = exp_terms(s.retry_rate, s.drop_decay, v);
  return s.gamma * ((c - v) * t.phi + v);
}

double net_revenue(const StationParams& s, double c, double v) {
  return station_revenue(s, c, v) - c * s.theta;
}

double revenue_derivative(const StationParams& s, double c, double v) {
  check_visit(v, c);
  const ExpTerms t = exp_terms(s.retry_rate, s.drop_decay, v);
  return s.gamma * (1.0 - t.phi + (c - v) * t.dphi);
}

double revenue_curvature(const StationParams& s, double c, double v) {
  check_visit(v, c);
  const ExpTerms t = exp_terms(s.retry_rate, s.drop_decay, v);
  return s.gamma * ((c - v) * t.ddphi - 2.0 * t.dphi);
}

double station_revenue(const ProbabilityModel& m, double gamma, double c, double v) {
  check_visit(v, c);
  const double p = retrial_prob(m, v);
  const double q = drop_prob(m, v);
  const double r = leave_prob(p, q);
  const double ratio = p == 0.0 ? 0.0 : p / r;
  return gamma * ((c - v) * ratio + v);
}

double revenue_derivative(const ProbabilityModel& m, double gamma, double c, double v) {
  check_visit(v, c);
  const double h = 1e-6 * c;
  const double lo = std::max(0.0, v - h);
  const double hi = std::min(c, v + h);
  return (station_revenue(m, gamma, c, hi) - station_revenue(m, gamma, c, lo)) /
         (hi - lo);
}

}  // namespace optrev
