#include "tow/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tow {

VertexFunction::VertexFunction(std::vector<double> values)
    : values_(std::move(values)) {
  for (size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("vertex function entry " + std::to_string(i) +
                                  " is not finite");
    }
  }
}

VertexFunction VertexFunction::zeros(int n) {
  return VertexFunction(std::vector<double>(static_cast<size_t>(n), 0.0));
}

VertexFunction VertexFunction::constant(int n, double value) {
  return VertexFunction(std::vector<double>(static_cast<size_t>(n), value));
}

double VertexFunction::max() const {
  if (values_.empty()) throw std::invalid_argument("max of empty function");
  return *std::max_element(values_.begin(), values_.end());
}

double VertexFunction::min() const {
  if (values_.empty()) throw std::invalid_argument("min of empty function");
  return *std::min_element(values_.begin(), values_.end());
}

double VertexFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double VertexFunction::oscillation() const { return max() - min(); }

namespace {
void require_same_size(const VertexFunction& a, const VertexFunction& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("vertex function size mismatch: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}
}  // namespace

VertexFunction operator+(const VertexFunction& a, const VertexFunction& b) {
  require_same_size(a, b);
  std::vector<double> out(a.values());
  for (int i = 0; i < b.size(); ++i) out[static_cast<size_t>(i)] += b[i];
  return VertexFunction(std::move(out));
}

VertexFunction operator-(const VertexFunction& a, const VertexFunction& b) {
  require_same_size(a, b);
  std::vector<double> out(a.values());
  for (int i = 0; i < b.size(); ++i) out[static_cast<size_t>(i)] -= b[i];
  return VertexFunction(std::move(out));
}

VertexFunction operator*(double s, const VertexFunction& a) {
  std::vector<double> out(a.values());
  for (double& v : out) v *= s;
  return VertexFunction(std::move(out));
}

VertexFunction operator+(const VertexFunction& a, double c) {
  std::vector<double> out(a.values());
  for (double& v : out) v += c;
  return VertexFunction(std::move(out));
}

VertexFunction operator-(const VertexFunction& a, double c) { return a + (-c); }

double sup_distance(const VertexFunction& a, const VertexFunction& b) {
  require_same_size(a, b);
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace tow
