#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hadamard/actions.hpp"
#include "hadamard/clifford.hpp"
#include "hadamard/continuum.hpp"
#include "hadamard/diffeo.hpp"
#include "hadamard/linalg.hpp"
#include "hadamard/parallel.hpp"
#include "hadamard/spaces.hpp"
#include "hadamard/suites.hpp"
#include "hadamard/test_function.hpp"

namespace hadamard::suites {

void run_cat0(const ExperimentConfig& config, SuiteResult& out);
void run_clifford(const ExperimentConfig& config, SuiteResult& out);
void run_bott_bound(const ExperimentConfig& config, SuiteResult& out);
void run_equivariance(const ExperimentConfig& config, SuiteResult& out);
void run_rescaling(const ExperimentConfig& config, SuiteResult& out);
void run_deformation(const ExperimentConfig& config, SuiteResult& out);
void run_properness(const ExperimentConfig& config, SuiteResult& out);
void run_diffeo_length(const ExperimentConfig& config, SuiteResult& out);
void run_continuum_approx(const ExperimentConfig& config, SuiteResult& out);

// Reads suite parameters with defaults; wrong types raise UsageError.
std::size_t param_count(const ExperimentConfig& config, const char* key, std::size_t fallback);
double param_real(const ExperimentConfig& config, const char* key, double fallback);
std::vector<SpaceModel> param_models(const ExperimentConfig& config, const char* key,
                                     const std::vector<SpaceModel>& fallback);

// Matrix with independent N(0,1) entries.
Mat normal_matrix(CounterRng& rng, std::size_t rows, std::size_t cols);
Vec normal_vector(CounterRng& rng, std::size_t n);
// Haar-distributed orthogonal matrix.
Mat random_orthogonal(CounterRng& rng, std::size_t n);
// I + spread * G rescaled to |det| = 1.
Mat random_unimodular(CounterRng& rng, std::size_t n, double spread);
// Random member of one of the four closed-form families.
TestFunction random_family_member(CounterRng& rng);
// A few products of family members, represented on grids.
const std::vector<TestFunction>& grid_functions();

// Random isometry of a model (congruences, affine maps, componentwise
// products of those).
IsometryDescriptor random_isometry(const SpaceModel& model, CounterRng& rng, double spread);

// Models of the form used throughout: "product[spd:2@w1,...]" for a random
// simple function over the given atom weights.
SpaceModel l2_product(const SpaceModel& factor, const std::vector<double>& weights);

}  // namespace hadamard::suites
