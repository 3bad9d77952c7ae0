#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftkc/rational.hpp"

namespace ftkc {

using Capacity = std::int64_t;

// A non-negative metric distance, held as its exact square. Euclidean
// distances between rational points are square roots of rationals, so the
// square is the one representation that is exact for both input forms.
class Distance {
 public:
  Distance() = default;

  static Distance from_value(const Rational& value);
  static Distance from_squared(const Rational& squared);

  const Rational& squared() const { return squared_; }

  // The distance multiplied by a non-negative integer factor.
  Distance scaled(std::int64_t factor) const;

  // Exact value when it is rational.
  std::optional<Rational> exact() const;
  double to_double() const;

  // Exact rational form when available, otherwise "sqrt(q)".
  std::string to_string() const;

  friend bool operator==(const Distance& a, const Distance& b) { return a.squared_ == b.squared_; }
  friend std::strong_ordering operator<=>(const Distance& a, const Distance& b) {
    const int c = cmp(a.squared_, b.squared_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Distance(Rational squared) : squared_(std::move(squared)) {}
  Rational squared_;
};

// True iff a + b >= c, decided exactly on the squared representation.
bool sum_at_least(const Distance& a, const Distance& b, const Distance& c);

enum class Variant { fault_tolerant, conservative };

std::string to_string(Variant variant);
Variant parse_variant(const std::string& text);

using Point = std::array<Rational, 2>;

// Vertices are 0..n-1. Immutable once built; both factories validate the
// metric (symmetry, zero diagonal, triangle inequality) and the parameters
// (alpha < k <= n, non-negative capacities) and throw InputError otherwise.
class MetricInstance {
 public:
  static MetricInstance from_matrix(std::string name, std::vector<std::vector<Rational>> matrix, int k,
                                    int alpha, std::vector<Capacity> capacities,
                                    Variant variant = Variant::fault_tolerant);
  static MetricInstance from_points(std::string name, std::vector<Point> points, int k, int alpha,
                                    std::vector<Capacity> capacities,
                                    Variant variant = Variant::fault_tolerant);

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(capacities_.size()); }
  int k() const { return k_; }
  int alpha() const { return alpha_; }
  Variant variant() const { return variant_; }
  const std::vector<Capacity>& capacities() const { return capacities_; }
  Capacity capacity(int v) const { return capacities_[static_cast<std::size_t>(v)]; }
  const Distance& distance(int u, int v) const {
    return dist_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
  }

  // Sorted distinct values of distance(u, v), including 0 from the diagonal.
  std::vector<Distance> thresholds() const;

  const std::optional<std::vector<std::vector<Rational>>>& matrix() const { return matrix_; }
  const std::optional<std::vector<Point>>& points() const { return points_; }

  // Same metric and capacities, different parameters.
  MetricInstance with_parameters(int k, int alpha, std::vector<Capacity> capacities) const;

 private:
  MetricInstance() = default;
  void validate_parameters() const;
  void validate_metric() const;

  std::string name_;
  int k_ = 0;
  int alpha_ = 0;
  Variant variant_ = Variant::fault_tolerant;
  std::vector<Capacity> capacities_;
  std::vector<std::vector<Distance>> dist_;
  std::optional<std::vector<std::vector<Rational>>> matrix_;
  std::optional<std::vector<Point>> points_;
};

// {"name", "n", "k", "alpha", "variant": "ft"|"conservative", "capacities",
//  and exactly one of "dist" or "points"}.
MetricInstance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const MetricInstance& instance);

// Canonical text: sorted keys, two-space indentation, trailing newline.
std::string serialize_instance(const MetricInstance& instance);
MetricInstance load_instance(const std::filesystem::path& path);

// JSON numbers are parsed exactly (integers directly, floats through their
// shortest round-trip decimal); strings such as "3/2" are also accepted.
Rational rational_from_json(const nlohmann::json& value);
nlohmann::json rational_to_json(const Rational& value);

// L when every capacity is 0 or L for a single L > 0.
std::optional<Capacity> uniform_capacity(const std::vector<Capacity>& capacities);

}  // namespace ftkc
