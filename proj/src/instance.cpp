#include "ftkc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ftkc/errors.hpp"

namespace ftkc {

Distance Distance::from_value(const Rational& value) {
  if (value < 0) throw InputError("negative distance " + ftkc::to_string(value));
  return Distance(value * value);
}

Distance Distance::from_squared(const Rational& squared) {
  if (squared < 0) throw InputError("negative squared distance");
  return Distance(squared);
}

Distance Distance::scaled(std::int64_t factor) const {
  if (factor < 0) throw ContractViolation("negative distance scale");
  const Rational f(static_cast<long>(factor));
  return Distance(squared_ * f * f);
}

std::optional<Rational> Distance::exact() const { return exact_sqrt(squared_); }

double Distance::to_double() const { return std::sqrt(squared_.get_d()); }

std::string Distance::to_string() const {
  if (auto value = exact()) return ftkc::to_string(*value);
  return "sqrt(" + ftkc::to_string(squared_) + ")";
}

bool sum_at_least(const Distance& a, const Distance& b, const Distance& c) {
  // sqrt(A) + sqrt(B) >= sqrt(C)  <=>  A + B + 2 sqrt(AB) >= C.
  const Rational gap = c.squared() - a.squared() - b.squared();
  if (gap <= 0) return true;
  return gap * gap <= 4 * a.squared() * b.squared();
}

std::string to_string(Variant variant) {
  return variant == Variant::conservative ? "conservative" : "ft";
}

Variant parse_variant(const std::string& text) {
  if (text == "ft") return Variant::fault_tolerant;
  if (text == "conservative") return Variant::conservative;
  throw InputError("unknown variant '" + text + "' (expected \"ft\" or \"conservative\")");
}

MetricInstance MetricInstance::from_matrix(std::string name, std::vector<std::vector<Rational>> matrix,
                                           int k, int alpha, std::vector<Capacity> capacities,
                                           Variant variant) {
  MetricInstance inst;
  inst.name_ = std::move(name);
  inst.k_ = k;
  inst.alpha_ = alpha;
  inst.variant_ = variant;
  inst.capacities_ = std::move(capacities);
  const std::size_t n = inst.capacities_.size();
  if (matrix.size() != n) throw InputError("distance matrix has the wrong number of rows");
  inst.dist_.assign(n, std::vector<Distance>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw InputError("distance matrix row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) inst.dist_[i][j] = Distance::from_value(matrix[i][j]);
  }
  inst.matrix_ = std::move(matrix);
  inst.validate_parameters();
  inst.validate_metric();
  return inst;
}

MetricInstance MetricInstance::from_points(std::string name, std::vector<Point> points, int k, int alpha,
                                           std::vector<Capacity> capacities, Variant variant) {
  MetricInstance inst;
  inst.name_ = std::move(name);
  inst.k_ = k;
  inst.alpha_ = alpha;
  inst.variant_ = variant;
  inst.capacities_ = std::move(capacities);
  const std::size_t n = inst.capacities_.size();
  if (points.size() != n) throw InputError("number of points differs from number of capacities");
  inst.dist_.assign(n, std::vector<Distance>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational dx = points[i][0] - points[j][0];
      const Rational dy = points[i][1] - points[j][1];
      inst.dist_[i][j] = Distance::from_squared(dx * dx + dy * dy);
    }
  }
  inst.points_ = std::move(points);
  inst.validate_parameters();
  // Euclidean distances are a metric by construction.
  return inst;
}

void MetricInstance::validate_parameters() const {
  const int n = size();
  if (n == 0) throw InputError("instance has no vertices");
  if (k_ < 1) throw InputError("k must be positive");
  if (alpha_ < 0) throw InputError("alpha must be non-negative");
  if (alpha_ >= k_) throw InputError("alpha must be smaller than k");
  if (k_ > n) throw InputError("k must not exceed n");
  for (const Capacity c : capacities_) {
    if (c < 0) throw InputError("capacities must be non-negative");
  }
}

void MetricInstance::validate_metric() const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (distance(i, i) != Distance()) throw InputError("non-zero diagonal at vertex " + std::to_string(i));
    for (int j = i + 1; j < n; ++j) {
      if (distance(i, j) != distance(j, i)) {
        throw InputError("distance matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) {
        if (!sum_at_least(distance(i, m), distance(m, j), distance(i, j))) {
          throw InputError("triangle inequality fails for (" + std::to_string(i) + "," + std::to_string(m) + "," +
                           std::to_string(j) + ")");
        }
      }
    }
  }
}

std::vector<Distance> MetricInstance::thresholds() const {
  std::vector<Distance> values;
  const int n = size();
  values.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) values.push_back(distance(i, j));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

MetricInstance MetricInstance::with_parameters(int k, int alpha, std::vector<Capacity> capacities) const {
  MetricInstance copy = *this;
  copy.k_ = k;
  copy.alpha_ = alpha;
  if (capacities.size() != capacities_.size()) throw InputError("capacity vector has the wrong length");
  copy.capacities_ = std::move(capacities);
  copy.validate_parameters();
  return copy;
}

Rational rational_from_json(const nlohmann::json& value) {
  try {
    if (value.is_number_integer()) {
      if (value.is_number_unsigned()) return Rational(Integer(std::to_string(value.get<std::uint64_t>())));
      return Rational(Integer(std::to_string(value.get<std::int64_t>())));
    }
    if (value.is_number_float()) return rational_from_double(value.get<double>());
    if (value.is_string()) return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("expected a number, got " + value.dump());
}

nlohmann::json rational_to_json(const Rational& value) {
  if (is_integral(value) && value.get_num().fits_slong_p()) return value.get_num().get_si();
  const double d = value.get_d();
  if (std::isfinite(d) && rational_from_double(d) == value) return d;
  return ftkc::to_string(value);
}

namespace {

const nlohmann::json& require(const nlohmann::json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing key \"") + key + "\"");
  return *it;
}

int require_int(const nlohmann::json& doc, const char* key) {
  const auto& v = require(doc, key);
  if (!v.is_number_integer()) throw InputError(std::string("\"") + key + "\" must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < 0 || x > 1'000'000) throw InputError(std::string("\"") + key + "\" is out of range");
  return static_cast<int>(x);
}

}  // namespace

MetricInstance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  static const char* const known[] = {"name", "n", "k", "alpha", "variant", "capacities", "dist", "points"};
  for (const auto& item : doc.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return item.key() == k; }) ==
        std::end(known)) {
      throw InputError("unknown key \"" + item.key() + "\"");
    }
  }
  const auto& name_node = require(doc, "name");
  if (!name_node.is_string()) throw InputError("\"name\" must be a string");
  const int n = require_int(doc, "n");
  const int k = require_int(doc, "k");
  const int alpha = require_int(doc, "alpha");
  const auto& variant_node = require(doc, "variant");
  if (!variant_node.is_string()) throw InputError("\"variant\" must be a string");
  const Variant variant = parse_variant(variant_node.get<std::string>());

  const auto& caps_node = require(doc, "capacities");
  if (!caps_node.is_array()) throw InputError("\"capacities\" must be an array");
  std::vector<Capacity> capacities;
  for (const auto& c : caps_node) {
    if (!c.is_number_integer()) throw InputError("capacities must be integers");
    capacities.push_back(c.get<std::int64_t>());
  }
  if (static_cast<int>(capacities.size()) != n) throw InputError("\"capacities\" length differs from n");

  const bool has_dist = doc.contains("dist");
  const bool has_points = doc.contains("points");
  if (has_dist == has_points) throw InputError("exactly one of \"dist\" or \"points\" is required");

  if (has_dist) {
    const auto& rows = doc.at("dist");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw InputError("\"dist\" must be an n x n array");
    std::vector<std::vector<Rational>> matrix;
    for (const auto& row : rows) {
      if (!row.is_array()) throw InputError("\"dist\" rows must be arrays");
      std::vector<Rational> values;
      for (const auto& x : row) values.push_back(rational_from_json(x));
      matrix.push_back(std::move(values));
    }
    return MetricInstance::from_matrix(name_node.get<std::string>(), std::move(matrix), k, alpha,
                                       std::move(capacities), variant);
  }
  const auto& pts = doc.at("points");
  if (!pts.is_array() || static_cast<int>(pts.size()) != n) throw InputError("\"points\" must have n entries");
  std::vector<Point> points;
  for (const auto& p : pts) {
    if (!p.is_array() || p.size() != 2) throw InputError("each point must be a pair [x, y]");
    points.push_back({rational_from_json(p[0]), rational_from_json(p[1])});
  }
  return MetricInstance::from_points(name_node.get<std::string>(), std::move(points), k, alpha,
                                     std::move(capacities), variant);
}

nlohmann::json instance_to_json(const MetricInstance& instance) {
  nlohmann::json doc;
  doc["name"] = instance.name();
  doc["n"] = instance.size();
  doc["k"] = instance.k();
  doc["alpha"] = instance.alpha();
  doc["variant"] = to_string(instance.variant());
  doc["capacities"] = instance.capacities();
  if (instance.points()) {
    auto pts = nlohmann::json::array();
    for (const Point& p : *instance.points()) pts.push_back({rational_to_json(p[0]), rational_to_json(p[1])});
    doc["points"] = std::move(pts);
  } else {
    auto rows = nlohmann::json::array();
    for (const auto& row : *instance.matrix()) {
      auto values = nlohmann::json::array();
      for (const Rational& x : row) values.push_back(rational_to_json(x));
      rows.push_back(std::move(values));
    }
    doc["dist"] = std::move(rows);
  }
  return doc;
}

std::string serialize_instance(const MetricInstance& instance) { return instance_to_json(instance).dump(2) + "\n"; }

MetricInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return instance_from_json(doc);
}

std::optional<Capacity> uniform_capacity(const std::vector<Capacity>& capacities) {
  std::optional<Capacity> level;
  for (const Capacity c : capacities) {
    if (c == 0) continue;
    if (level && *level != c) return std::nullopt;
    level = c;
  }
  return level;
}

}  // namespace ftkc
