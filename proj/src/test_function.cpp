#include "hadamard/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "hadamard/errors.hpp"

namespace hadamard {

namespace {

void require_width(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) throw UsageError("test function width must be positive");
}

double odd_hat_profile(double u) {
  const double a = std::abs(u);
  if (a <= 1.0) return u;
  if (a >= 2.0) return 0.0;
  return std::copysign(2.0 - a, u);
}

// sup_{u >= 0} exp(-u^2) - exp(-(u+rho)^2). The maximiser is the unique root
// of log(1 + rho/u) = rho (2u + rho).
double gaussian_oscillation(double rho) {
  if (rho <= 0.0) return 0.0;
  auto excess = [rho](double u) { return std::log1p(rho / u) - rho * (2.0 * u + rho); };
  auto value = [rho](double u) { return -std::exp(-u * u) * std::expm1(-rho * (2.0 * u + rho)); };
  double hi = 1.0;
  while (excess(hi) > 0.0) hi *= 2.0;
  double lo = hi;
  do {
    lo *= 0.5;
  } while (lo > 1e-300 && excess(lo) <= 0.0);
  if (lo <= 1e-300) return value(0.0) > 0.0 ? std::max(value(0.0), value(lo)) : value(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::max(value(0.5 * (lo + hi)), value(0.0));
}

// sup_a |g(a+rho) - g(a)| for g(u) = u exp(-u^2): coarse scan, then golden
// section on the best bracket.
double gaussian_times_t_oscillation(double rho) {
  if (rho <= 0.0) return 0.0;
  const double peak = std::exp(-0.5) / std::numbers::sqrt2;
  if (rho >= std::numbers::sqrt2) return 2.0 * peak;
  auto g = [](double u) { return u * std::exp(-u * u); };
  auto h = [&](double a) { return std::abs(g(a + rho) - g(a)); };
  const double step = 1e-2;
  const double lo = -rho - 6.0;
  const auto count = static_cast<int>(std::ceil((6.0 - lo) / step));
  double best_a = lo;
  double best = -1.0;
  for (int k = 0; k <= count; ++k) {
    const double a = lo + step * k;
    const double v = h(a);
    if (v > best) {
      best = v;
      best_a = a;
    }
  }
  double left = best_a - step;
  double right = best_a + step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = right - inv_phi * (right - left);
  double d = left + inv_phi * (right - left);
  double hc = h(c);
  double hd = h(d);
  for (int it = 0; it < 120; ++it) {
    if (hc > hd) {
      right = d;
      d = c;
      hd = hc;
      c = right - inv_phi * (right - left);
      hc = h(c);
    } else {
      left = c;
      c = d;
      hc = hd;
      d = left + inv_phi * (right - left);
      hd = h(d);
    }
  }
  return std::min(std::max({best, hc, hd}), 2.0 * peak);
}

double odd_hat_mean(double rho) {
  if (rho <= 1.0) return rho;
  if (rho <= 2.0) return 2.0 - rho;
  return 0.0;
}

TestFunction zero_function() { return TestFunction::gaussian(0.0, 1.0); }

}  // namespace

TestFunction TestFunction::gaussian(double amplitude, double width) {
  require_width(width);
  TestFunction f;
  f.family_ = Family::Gaussian;
  f.amplitude_ = amplitude;
  f.width_ = width;
  return f;
}

TestFunction TestFunction::hat(double amplitude, double width) {
  TestFunction f = gaussian(amplitude, width);
  f.family_ = Family::Hat;
  return f;
}

TestFunction TestFunction::odd_hat(double amplitude, double width) {
  TestFunction f = gaussian(amplitude, width);
  f.family_ = Family::OddHat;
  return f;
}

TestFunction TestFunction::gaussian_times_t(double amplitude, double width) {
  TestFunction f = gaussian(amplitude, width);
  f.family_ = Family::GaussianTimesT;
  return f;
}

TestFunction TestFunction::grid(std::vector<double> values, double step) {
  require_width(step);
  if (values.size() < 3 || values.size() % 2 == 0) {
    throw UsageError("grid function needs an odd number (>= 3) of samples centred at zero");
  }
  values.front() = 0.0;
  values.back() = 0.0;
  TestFunction f;
  f.family_ = Family::Grid;
  f.amplitude_ = 1.0;
  f.width_ = 1.0;
  f.step_ = step;
  f.samples_ = std::make_shared<const std::vector<double>>(std::move(values));
  return f;
}

TestFunction TestFunction::sampled(const TestFunction& other, double step, double half_range) {
  require_width(step);
  const auto half = static_cast<long>(std::ceil(half_range / step));
  std::vector<double> values(static_cast<std::size_t>(2 * half + 1));
  for (long k = -half; k <= half; ++k) {
    values[static_cast<std::size_t>(k + half)] = other(static_cast<double>(k) * step);
  }
  return grid(std::move(values), step);
}

double TestFunction::half_range() const {
  if (family_ != Family::Grid) return 0.0;
  return static_cast<double>((samples_->size() - 1) / 2) * step_;
}

std::string TestFunction::name() const {
  std::ostringstream out;
  switch (family_) {
    case Family::Gaussian:
      out << "gaussian";
      break;
    case Family::Hat:
      out << "hat";
      break;
    case Family::OddHat:
      out << "odd-hat";
      break;
    case Family::GaussianTimesT:
      out << "gaussian-times-t";
      break;
    case Family::Grid:
      out << "custom-grid(step=" << step_ << ",n=" << samples_->size() << ")";
      return out.str();
  }
  out << "(a=" << amplitude_ << ",w=" << width_ << ")";
  return out.str();
}

double TestFunction::operator()(double t) const {
  switch (family_) {
    case Family::Gaussian: {
      const double u = t / width_;
      return amplitude_ * std::exp(-u * u);
    }
    case Family::Hat:
      return amplitude_ * std::max(0.0, 1.0 - std::abs(t) / width_);
    case Family::OddHat:
      return amplitude_ * odd_hat_profile(t / width_);
    case Family::GaussianTimesT: {
      const double u = t / width_;
      return amplitude_ * u * std::exp(-u * u);
    }
    case Family::Grid: {
      const auto& v = *samples_;
      const auto half = static_cast<double>((v.size() - 1) / 2);
      const double x = t / step_ + half;
      if (!(x > 0.0) || !(x < static_cast<double>(v.size() - 1))) return 0.0;
      const auto k = static_cast<std::size_t>(x);
      const double frac = x - static_cast<double>(k);
      return v[k] + frac * (v[k + 1] - v[k]);
    }
  }
  return 0.0;
}

bool TestFunction::is_even() const {
  if (amplitude_ == 0.0) return true;
  switch (family_) {
    case Family::Gaussian:
    case Family::Hat:
      return true;
    case Family::OddHat:
    case Family::GaussianTimesT:
      return false;
    case Family::Grid:
      return std::equal(samples_->begin(), samples_->end(), samples_->rbegin());
  }
  return false;
}

bool TestFunction::is_odd() const {
  if (amplitude_ == 0.0) return true;
  switch (family_) {
    case Family::Gaussian:
    case Family::Hat:
      return false;
    case Family::OddHat:
    case Family::GaussianTimesT:
      return true;
    case Family::Grid: {
      const auto& v = *samples_;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] != -v[v.size() - 1 - k]) return false;
      }
      return true;
    }
  }
  return false;
}

double TestFunction::sup_norm() const {
  switch (family_) {
    case Family::Gaussian:
    case Family::Hat:
    case Family::OddHat:
      return std::abs(amplitude_);
    case Family::GaussianTimesT:
      return std::abs(amplitude_) * std::exp(-0.5) / std::numbers::sqrt2;
    case Family::Grid: {
      double m = 0.0;
      for (double v : *samples_) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return 0.0;
}

TestFunction TestFunction::rescale(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw UsageError("rescaling factor must be positive");
  TestFunction f = *this;
  if (family_ == Family::Grid) {
    f.step_ = step_ * s;
  } else {
    f.width_ = width_ * s;
  }
  return f;
}

TestFunction TestFunction::even_part() const {
  if (family_ == Family::Grid) {
    std::vector<double> v = *samples_;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = 0.5 * ((*samples_)[k] + (*samples_)[v.size() - 1 - k]);
    return grid(std::move(v), step_);
  }
  return is_even() ? *this : zero_function();
}

TestFunction TestFunction::odd_part() const {
  if (family_ == Family::Grid) {
    std::vector<double> v = *samples_;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = 0.5 * ((*samples_)[k] - (*samples_)[v.size() - 1 - k]);
    return grid(std::move(v), step_);
  }
  return is_odd() && amplitude_ != 0.0 ? *this : zero_function();
}

TestFunction TestFunction::product(const TestFunction& other) const {
  auto scale = [](const TestFunction& f) {
    return f.family_ == Family::Grid ? f.step_ * 1000.0 : f.width_;
  };
  auto reach = [](const TestFunction& f) {
    return f.family_ == Family::Grid ? f.half_range() : 10.0 * f.width_;
  };
  const double step = 1e-3 * std::min({1.0, scale(*this), scale(other)});
  const double half_range = std::max({50.0, reach(*this), reach(other)});
  const TestFunction& self = *this;
  const auto half = static_cast<long>(std::ceil(half_range / step));
  std::vector<double> values(static_cast<std::size_t>(2 * half + 1));
  for (long k = -half; k <= half; ++k) {
    const double t = static_cast<double>(k) * step;
    values[static_cast<std::size_t>(k + half)] = self(t) * other(t);
  }
  return grid(std::move(values), step);
}

namespace {

// Exact oscillation of a piecewise-linear function: an optimal pair always
// has one point at a node, and the best partner is the extreme value of the
// function on the window around that node.
double grid_oscillation(const TestFunction& f, double r) {
  const auto& v = f.samples();
  const double h = f.step();
  const auto n = static_cast<long>(v.size());
  const double half = static_cast<double>((n - 1) / 2);
  const auto q = static_cast<long>(std::floor(r / h));
  std::deque<long> maxq;
  std::deque<long> minq;
  long next = 0;
  double best = 0.0;
  for (long i = 0; i < n; ++i) {
    while (next < n && next <= i + q) {
      while (!maxq.empty() && v[static_cast<std::size_t>(maxq.back())] <= v[static_cast<std::size_t>(next)]) maxq.pop_back();
      maxq.push_back(next);
      while (!minq.empty() && v[static_cast<std::size_t>(minq.back())] >= v[static_cast<std::size_t>(next)]) minq.pop_back();
      minq.push_back(next);
      ++next;
    }
    while (maxq.front() < i - q) maxq.pop_front();
    while (minq.front() < i - q) minq.pop_front();
    const double t = (static_cast<double>(i) - half) * h;
    const double hi = std::max({v[static_cast<std::size_t>(maxq.front())], f(t - r), f(t + r)});
    const double lo = std::min({v[static_cast<std::size_t>(minq.front())], f(t - r), f(t + r)});
    const double vi = v[static_cast<std::size_t>(i)];
    best = std::max({best, hi - vi, vi - lo});
  }
  return best;
}

// On each interval between consecutive positive nodes f(t) - f(-t) is affine,
// so |f(t) - f(-t)| / t peaks at an interval endpoint.
double grid_mean(const TestFunction& f, double r) {
  auto ratio = [&](double t) { return std::abs(f(t) - f(-t)) / (2.0 * t); };
  double best = ratio(r);
  const auto& v = f.samples();
  const auto half = static_cast<long>((v.size() - 1) / 2);
  for (long k = 1; k <= half; ++k) {
    const double t = static_cast<double>(k) * f.step();
    if (t >= r) best = std::max(best, ratio(t));
  }
  return r * best;
}

}  // namespace

double oscillation(const TestFunction& f, double r) {
  if (!(r >= 0.0)) throw UsageError("oscillation radius must be nonnegative");
  if (r == 0.0) return 0.0;
  const double a = std::abs(f.amplitude());
  const double rho = r / f.width();
  switch (f.family()) {
    case Family::Gaussian:
      return a * gaussian_oscillation(rho);
    case Family::Hat:
      return a * std::min(rho, 1.0);
    case Family::OddHat:
      return a * std::min(rho, 2.0);
    case Family::GaussianTimesT:
      return a * gaussian_times_t_oscillation(rho);
    case Family::Grid:
      return grid_oscillation(f, r);
  }
  return 0.0;
}

double mean_functional(const TestFunction& f, double r) {
  if (!(r > 0.0)) throw UsageError("odd-mean functional needs r > 0");
  const double a = std::abs(f.amplitude());
  const double rho = r / f.width();
  switch (f.family()) {
    case Family::Gaussian:
    case Family::Hat:
      return 0.0;
    case Family::OddHat:
      return a * odd_hat_mean(rho);
    case Family::GaussianTimesT:
      return a * rho * std::exp(-rho * rho);
    case Family::Grid:
      return grid_mean(f, r);
  }
  return 0.0;
}

double base_point_bound(const TestFunction& f, double r) {
  if (r == 0.0) return 0.0;
  const double om = oscillation(f, r);
  const double om2 = oscillation(f, 2.0 * r);
  return 2.0 * om + std::max(std::sqrt(2.0 * om * om2), mean_functional(f, r));
}

}  // namespace hadamard
