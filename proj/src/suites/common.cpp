#include "common.hpp"

#include <cmath>

#include "hadamard/errors.hpp"

namespace hadamard::suites {

std::size_t param_count(const ExperimentConfig& config, const char* key, std::size_t fallback) {
  if (!config.params.contains(key)) return fallback;
  const auto& v = config.params.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw UsageError(std::string("parameter '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double param_real(const ExperimentConfig& config, const char* key, double fallback) {
  if (!config.params.contains(key)) return fallback;
  const auto& v = config.params.at(key);
  if (!v.is_number()) throw UsageError(std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<SpaceModel> param_models(const ExperimentConfig& config, const char* key,
                                     const std::vector<SpaceModel>& fallback) {
  if (!config.params.contains(key)) return fallback;
  const auto& v = config.params.at(key);
  if (!v.is_array() || v.empty()) throw UsageError(std::string("parameter '") + key + "' must be a list of models");
  std::vector<SpaceModel> out;
  for (const auto& m : v) out.push_back(io::model_from_json(m));
  return out;
}

Mat normal_matrix(CounterRng& rng, std::size_t rows, std::size_t cols) {
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.normal();
  }
  return m;
}

Vec normal_vector(CounterRng& rng, std::size_t n) {
  Vec v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  return v;
}

Mat random_orthogonal(CounterRng& rng, std::size_t n) {
  const Eigen::HouseholderQR<Mat> qr(normal_matrix(rng, n, n));
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

Mat random_unimodular(CounterRng& rng, std::size_t n, double spread) {
  const auto size = static_cast<Eigen::Index>(n);
  for (;;) {
    const Mat m = Mat::Identity(size, size) + spread * normal_matrix(rng, n, n);
    const double det = m.determinant();
    if (std::abs(det) < 1e-3) continue;
    return m / std::pow(std::abs(det), 1.0 / static_cast<double>(n));
  }
}

TestFunction random_family_member(CounterRng& rng) {
  const auto family = rng.below(4);
  const double amplitude = rng.uniform(0.5, 2.0) * (rng.below(2) ? -1.0 : 1.0);
  const double width = rng.uniform(0.3, 3.0);
  switch (family) {
    case 0:
      return TestFunction::gaussian(amplitude, width);
    case 1:
      return TestFunction::hat(amplitude, width);
    case 2:
      return TestFunction::odd_hat(amplitude, width);
    default:
      return TestFunction::gaussian_times_t(amplitude, width);
  }
}

const std::vector<TestFunction>& grid_functions() {
  static const std::vector<TestFunction> functions = {
      TestFunction::gaussian(1.0, 1.0).product(TestFunction::odd_hat(1.0, 1.5)),
      TestFunction::hat(1.0, 2.0).product(TestFunction::gaussian_times_t(1.5, 1.0)),
      TestFunction::sampled(TestFunction::gaussian_times_t(1.0, 0.7), 1e-3, 20.0),
  };
  return functions;
}

IsometryDescriptor random_isometry(const SpaceModel& model, CounterRng& rng, double spread) {
  switch (model.kind()) {
    case ModelKind::Euclidean:
      return IsometryDescriptor::euclidean_affine(random_orthogonal(rng, model.size()),
                                                  spread * normal_vector(rng, model.size()));
    case ModelKind::Spd:
      return IsometryDescriptor::spd_congruence(random_unimodular(rng, model.size(), spread));
    case ModelKind::Product: {
      std::vector<IsometryDescriptor> parts;
      for (const auto& f : model.factors()) parts.push_back(random_isometry(f.model, rng, spread));
      return IsometryDescriptor::componentwise(std::move(parts));
    }
  }
  return IsometryDescriptor::identity();
}

SpaceModel l2_product(const SpaceModel& factor, const std::vector<double>& weights) {
  return SpaceModel::power(factor, weights);
}

}  // namespace hadamard::suites
