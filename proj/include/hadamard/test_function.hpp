#pragma once

#include <memory>
#include <string>
#include <vector>

namespace hadamard {

enum class Family { Gaussian, Hat, OddHat, GaussianTimesT, Grid };

// A real function in C_0(R) drawn from a small parametric family with known
// oscillation and odd-mean functionals, or a piecewise-linear function on a
// uniform grid symmetric about zero (zero outside the grid).
//
//   Gaussian        a * exp(-(t/w)^2)
//   Hat             a * max(0, 1 - |t|/w)
//   OddHat          a * h(t/w), h(u) = u on [-1,1], sign(u)(2-|u|) on 1<=|u|<=2, 0 beyond
//   GaussianTimesT  a * (t/w) * exp(-(t/w)^2)
class TestFunction {
 public:
  static TestFunction gaussian(double amplitude = 1.0, double width = 1.0);
  static TestFunction hat(double amplitude = 1.0, double width = 1.0);
  static TestFunction odd_hat(double amplitude = 1.0, double width = 1.0);
  static TestFunction gaussian_times_t(double amplitude = 1.0, double width = 1.0);
  // Samples t_k = -half_range + k*step, k = 0..2*half_steps; endpoint values
  // are forced to zero.
  static TestFunction grid(std::vector<double> values, double step);
  // Piecewise-linear interpolant of `other` on a grid of the given step
  // covering [-half_range, half_range].
  static TestFunction sampled(const TestFunction& other, double step, double half_range);

  Family family() const { return family_; }
  double amplitude() const { return amplitude_; }
  double width() const { return width_; }
  std::string name() const;

  double operator()(double t) const;
  // Even part (f(t)+f(-t))/2 and odd part (f(t)-f(-t))/2.
  double even(double t) const { return 0.5 * ((*this)(t) + (*this)(-t)); }
  double odd(double t) const { return 0.5 * ((*this)(t) - (*this)(-t)); }
  bool is_even() const;
  bool is_odd() const;

  double sup_norm() const;

  // (s.f)(t) = f(t/s); stays in the family.
  TestFunction rescale(double s) const;
  TestFunction even_part() const;
  TestFunction odd_part() const;
  // Real-valued functions are self-conjugate.
  TestFunction conjugate() const { return *this; }
  // Pointwise product, represented on a grid fine enough for an
  // interpolation error below 1e-6 on the shipped parameters.
  TestFunction product(const TestFunction& other) const;

  // Grid accessors (Grid family only).
  double step() const { return step_; }
  double half_range() const;
  const std::vector<double>& samples() const { return *samples_; }

 private:
  Family family_ = Family::Gaussian;
  double amplitude_ = 1.0;
  double width_ = 1.0;
  double step_ = 0.0;
  std::shared_ptr<const std::vector<double>> samples_;
};

// Omega_r f = sup{|f(t) - f(t')| : |t - t'| <= r}.
double oscillation(const TestFunction& f, double r);
// Theta_r f = r * sup{|f(t) - f(-t)| / (2t) : t >= r}, r > 0.
double mean_functional(const TestFunction& f, double r);

// 2 Omega_r + max{sqrt(2 Omega_r Omega_2r), Theta_r}; zero at r = 0.
double base_point_bound(const TestFunction& f, double r);

}  // namespace hadamard
