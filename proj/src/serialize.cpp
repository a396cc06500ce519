#include "hadamard/serialize.hpp"

#include <cctype>

#include "hadamard/errors.hpp"

namespace hadamard::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw UsageError("malformed JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  return j.get<double>();
}

Json matrix_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) malformed("matrix must be a nonempty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) malformed("matrix rows differ in length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = number(row[static_cast<std::size_t>(k)], "matrix entry");
  }
  return m;
}

Json vector_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vec vector_from(const Json& j) {
  if (!j.is_array()) malformed("vector must be a list");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], "vector entry");
  return v;
}

// Recursive-descent reader for model names.
class NameParser {
 public:
  explicit NameParser(const std::string& s) : s_(s) {}

  SpaceModel parse_all() {
    SpaceModel m = parse();
    if (pos_ != s_.size()) fail();
    return m;
  }

 private:
  SpaceModel parse() {
    if (take("product[")) {
      std::vector<ProductFactor> factors;
      do {
        SpaceModel m = parse();
        double w = 1.0;
        if (take("@")) w = read_number();
        factors.push_back({m, w});
      } while (take(","));
      if (!take("]")) fail();
      return SpaceModel::product(std::move(factors));
    }
    if (take("euclidean:")) return SpaceModel::euclidean(read_count());
    if (take("spd1:")) return SpaceModel::spd(read_count(), true);
    if (take("spd:")) return SpaceModel::spd(read_count(), false);
    fail();
  }

  bool take(const char* token) {
    const std::string t(token);
    if (s_.compare(pos_, t.size(), t) == 0) {
      pos_ += t.size();
      return true;
    }
    return false;
  }

  std::size_t read_count() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail();
    return std::stoul(s_.substr(start, pos_ - start));
  }

  double read_number() {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s_.substr(pos_), &used);
    } catch (const std::exception&) {
      fail();
    }
    pos_ += used;
    return v;
  }

  [[noreturn]] void fail() const { malformed("cannot parse model name '" + s_ + "'"); }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Json to_json(const SpaceModel& model) {
  if (model.kind() != ModelKind::Product) return model.name();
  Json factors = Json::array();
  for (const auto& f : model.factors()) factors.push_back({{"model", to_json(f.model)}, {"weight", f.weight}});
  return {{"kind", "product"}, {"factors", std::move(factors)}};
}

SpaceModel parse_model(const std::string& name) { return NameParser(name).parse_all(); }

SpaceModel model_from_json(const Json& j) {
  if (j.is_string()) return parse_model(j.get<std::string>());
  if (j.is_object() && j.value("kind", "") == "product") {
    std::vector<ProductFactor> factors;
    for (const Json& f : field(j, "factors")) {
      factors.push_back({model_from_json(field(f, "model")), f.contains("weight") ? number(f.at("weight"), "weight") : 1.0});
    }
    return SpaceModel::product(std::move(factors));
  }
  malformed("model must be a name or a product object");
}

namespace {

Json coords_json(const SpaceModel& model, const Point& p) {
  switch (model.kind()) {
    case ModelKind::Euclidean:
      return vector_json(p.vec());
    case ModelKind::Spd:
      return matrix_json(p.mat());
    case ModelKind::Product: {
      Json parts = Json::array();
      for (std::size_t i = 0; i < model.size(); ++i) parts.push_back(coords_json(model.factors()[i].model, p.parts()[i]));
      return parts;
    }
  }
  return {};
}

}  // namespace

Json to_json(const SpaceModel& model, const Point& p) {
  check_compatible(model, p);
  return {{"model", to_json(model)}, {"coords", coords_json(model, p)}};
}

Point point_from_json(const Json& coords, const SpaceModel& model) {
  Point p;
  switch (model.kind()) {
    case ModelKind::Euclidean:
      p = Point::vector(vector_from(coords));
      break;
    case ModelKind::Spd:
      p = Point::matrix(matrix_from(coords));
      break;
    case ModelKind::Product: {
      if (!coords.is_array() || coords.size() != model.size()) malformed("product point needs one entry per factor");
      std::vector<Point> parts;
      for (std::size_t i = 0; i < model.size(); ++i) parts.push_back(point_from_json(coords[i], model.factors()[i].model));
      p = Point::product(std::move(parts));
      break;
    }
  }
  validate(model, p);
  return p;
}

Point point_from_json(const Json& j) {
  return point_from_json(field(j, "coords"), model_from_json(field(j, "model")));
}

Json to_json(const FiniteMeasureSpace& space) {
  Json j = {{"weights", space.weights()}, {"labels", space.labels()}};
  if (space.has_intervals()) j["breakpoints"] = space.breakpoints();
  return j;
}

FiniteMeasureSpace space_from_json(const Json& j) {
  if (j.is_object() && j.contains("breakpoints")) {
    return FiniteMeasureSpace::unit_interval(j.at("breakpoints").get<std::vector<double>>());
  }
  if (j.is_object() && j.contains("uniform")) {
    return FiniteMeasureSpace::uniform(j.at("uniform").get<std::size_t>(), j.value("total", 1.0));
  }
  const auto weights = field(j, "weights").get<std::vector<double>>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return FiniteMeasureSpace(weights, labels);
}

Json to_json(const Partition& p) { return {{"index_size", p.index_size}, {"assignment", p.assignment}}; }

Partition partition_from_json(const Json& j) {
  Partition p;
  p.index_size = field(j, "index_size").get<std::size_t>();
  p.assignment = field(j, "assignment").get<std::vector<std::size_t>>();
  for (std::size_t a : p.assignment) {
    if (a >= p.index_size) malformed("partition assignment outside its index set");
  }
  return p;
}

Json to_json(const SimpleFunction& xi) {
  Json values = Json::array();
  for (const auto& v : xi.values()) values.push_back(coords_json(xi.model(), v));
  return {{"space", to_json(xi.space())}, {"model", to_json(xi.model())}, {"values", std::move(values)}};
}

SimpleFunction simple_function_from_json(const Json& j) {
  const SpaceModel model = model_from_json(field(j, "model"));
  std::vector<Point> values;
  for (const Json& v : field(j, "values")) values.push_back(point_from_json(v, model));
  return SimpleFunction(space_from_json(field(j, "space")), model, std::move(values));
}

Json to_json(const TorusDiffeo& phi) {
  switch (phi.kind()) {
    case DiffeoKind::Linear: {
      Json rows = Json::array();
      for (Eigen::Index i = 0; i < phi.matrix().rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < phi.matrix().cols(); ++k) row.push_back(phi.matrix()(i, k));
        rows.push_back(std::move(row));
      }
      return {{"kind", "linear"}, {"matrix", std::move(rows)}};
    }
    case DiffeoKind::Shear:
      return {{"kind", "shear"},         {"dim", phi.dim()},           {"target", phi.target()},
              {"source", phi.source()},  {"amplitude", phi.amplitude()}, {"frequency", phi.frequency()},
              {"phase", phi.phase()}};
    case DiffeoKind::Composite: {
      Json parts = Json::array();
      for (const auto& p : phi.parts()) parts.push_back(to_json(p));
      return {{"kind", "composite"}, {"parts", std::move(parts)}};
    }
  }
  return {};
}

TorusDiffeo diffeo_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "linear") {
    const Json& rows = field(j, "matrix");
    if (!rows.is_array() || rows.empty()) malformed("linear diffeomorphism needs a matrix");
    IntMat a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != rows.size()) malformed("toral matrix must be square");
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (!rows[i][k].is_number_integer()) malformed("toral matrix entries must be integers");
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k].get<long long>();
      }
    }
    return TorusDiffeo::linear(std::move(a));
  }
  if (kind == "shear") {
    return TorusDiffeo::shear(field(j, "dim").get<std::size_t>(), field(j, "target").get<std::size_t>(),
                              field(j, "source").get<std::size_t>(), number(field(j, "amplitude"), "amplitude"),
                              field(j, "frequency").get<int>(), j.value("phase", 0.0));
  }
  if (kind == "composite") {
    std::vector<TorusDiffeo> parts;
    for (const Json& p : field(j, "parts")) parts.push_back(diffeo_from_json(p));
    return TorusDiffeo::composite(std::move(parts));
  }
  malformed("unknown diffeomorphism kind '" + kind + "'");
}

Json to_json(const IsometryDescriptor& phi) {
  auto list = [&phi](const char* kind) {
    Json parts = Json::array();
    for (const auto& p : phi.parts()) parts.push_back(to_json(p));
    return Json{{"kind", kind}, {"parts", std::move(parts)}};
  };
  switch (phi.kind()) {
    case IsometryKind::Identity:
      return {{"kind", "identity"}};
    case IsometryKind::SpdCongruence:
      return {{"kind", "spd-congruence"}, {"matrix", matrix_json(phi.matrix())}};
    case IsometryKind::EuclideanAffine:
      return {{"kind", "euclidean-affine"}, {"matrix", matrix_json(phi.matrix())}, {"shift", vector_json(phi.shift())}};
    case IsometryKind::ProductComponentwise:
      return list("componentwise");
    case IsometryKind::AtomPermutation:
      return {{"kind", "atom-permutation"}, {"permutation", phi.permutation()}};
    case IsometryKind::PiecewiseDial:
      return list("dial");
    case IsometryKind::Composite:
      return list("composite");
  }
  return {};
}

IsometryDescriptor isometry_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  auto parts = [&j]() {
    std::vector<IsometryDescriptor> out;
    for (const Json& p : field(j, "parts")) out.push_back(isometry_from_json(p));
    return out;
  };
  if (kind == "identity") return IsometryDescriptor::identity();
  if (kind == "spd-congruence") return IsometryDescriptor::spd_congruence(matrix_from(field(j, "matrix")));
  if (kind == "euclidean-affine") {
    return IsometryDescriptor::euclidean_affine(matrix_from(field(j, "matrix")), vector_from(field(j, "shift")));
  }
  if (kind == "componentwise") return IsometryDescriptor::componentwise(parts());
  if (kind == "atom-permutation") {
    return IsometryDescriptor::atom_permutation(field(j, "permutation").get<std::vector<std::size_t>>());
  }
  if (kind == "dial") return IsometryDescriptor::piecewise_dial(parts());
  if (kind == "composite") return IsometryDescriptor::composite(parts());
  malformed("unknown isometry kind '" + kind + "'");
}

Json to_json(const TestFunction& f) {
  switch (f.family()) {
    case Family::Gaussian:
      return {{"family", "gaussian"}, {"amplitude", f.amplitude()}, {"width", f.width()}};
    case Family::Hat:
      return {{"family", "hat"}, {"amplitude", f.amplitude()}, {"width", f.width()}};
    case Family::OddHat:
      return {{"family", "odd-hat"}, {"amplitude", f.amplitude()}, {"width", f.width()}};
    case Family::GaussianTimesT:
      return {{"family", "gaussian-times-t"}, {"amplitude", f.amplitude()}, {"width", f.width()}};
    case Family::Grid:
      return {{"family", "custom-grid"}, {"step", f.step()}, {"values", f.samples()}};
  }
  return {};
}

TestFunction test_function_from_json(const Json& j) {
  const std::string family = field(j, "family").get<std::string>();
  const double a = j.value("amplitude", 1.0);
  const double w = j.value("width", 1.0);
  if (family == "gaussian") return TestFunction::gaussian(a, w);
  if (family == "hat") return TestFunction::hat(a, w);
  if (family == "odd-hat") return TestFunction::odd_hat(a, w);
  if (family == "gaussian-times-t") return TestFunction::gaussian_times_t(a, w);
  if (family == "custom-grid") {
    return TestFunction::grid(field(j, "values").get<std::vector<double>>(), number(field(j, "step"), "step"));
  }
  malformed("unknown test function family '" + family + "'");
}

Json to_json(const Tolerances& tol) {
  Json j = Json::object();
  for (const auto& [name, member] : tolerance_fields) j[std::string(name)] = tol.*member;
  return j;
}

Tolerances tolerances_from_json(const Json& j, Tolerances base) {
  if (j.is_null()) return base;
  if (!j.is_object()) malformed("tolerances must be an object");
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (const auto& [name, member] : tolerance_fields) {
      if (name == key) {
        const double v = number(value, "tolerance");
        if (!(v >= 0.0)) malformed("tolerance '" + key + "' must be nonnegative");
        base.*member = v;
        found = true;
      }
    }
    if (!found) malformed("unknown tolerance '" + key + "'");
  }
  return base;
}

}  // namespace hadamard::io
