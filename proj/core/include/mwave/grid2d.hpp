#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace mwave {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Dense row-major scalar field; x (i) is the contiguous axis.
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(int nx, int ny, double fill = 0.0)
      : nx_(nx), ny_(ny), v_(static_cast<size_t>(nx) * static_cast<size_t>(ny), fill) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  size_t size() const { return v_.size(); }

  double& operator()(int i, int j) { return v_[idx(i, j)]; }
  double operator()(int i, int j) const { return v_[idx(i, j)]; }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  double* row(int j) { return v_.data() + static_cast<size_t>(j) * nx_; }
  const double* row(int j) const { return v_.data() + static_cast<size_t>(j) * nx_; }

  void fill(double value) { v_.assign(v_.size(), value); }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
  }

  friend bool operator==(const Grid2D& a, const Grid2D& b) {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.v_ == b.v_;
  }

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(j) * nx_ + i; }

  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> v_;
};

}  // namespace mwave
