#pragma once

#include <cstddef>
#include <vector>

namespace tow {

// Real values indexed by the vertices of a graph. Entries must stay finite;
// the checked constructor rejects NaN and infinities.
class VertexFunction {
 public:
  VertexFunction() = default;
  explicit VertexFunction(std::vector<double> values);

  static VertexFunction zeros(int n);
  static VertexFunction constant(int n, double value);

  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }

  double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return values_[static_cast<size_t>(i)]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double max() const;
  double min() const;
  double sup_norm() const;
  double oscillation() const;  // max - min

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool operator==(const VertexFunction&) const = default;

 private:
  std::vector<double> values_;
};

VertexFunction operator+(const VertexFunction& a, const VertexFunction& b);
VertexFunction operator-(const VertexFunction& a, const VertexFunction& b);
VertexFunction operator*(double s, const VertexFunction& a);
VertexFunction operator+(const VertexFunction& a, double c);
VertexFunction operator-(const VertexFunction& a, double c);

// sup-norm of a - b
double sup_distance(const VertexFunction& a, const VertexFunction& b);

}  // namespace tow
