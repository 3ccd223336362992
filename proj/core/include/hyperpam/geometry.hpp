#pragma once

#include <span>
#include <vector>

namespace hyperpam {

/// Lorentzian form <a, b> = a0 b0 - sum_{i>=1} ai bi.
double minkowski_dot(std::span<const double> a, std::span<const double> b);

/// A point of H^n_K on the upper sheet of the hyperboloid <x, x> = 1/K.
///
/// Sectional curvature is -K. The time coordinate is always recomputed from
/// the spatial ones, so the norm constraint holds to rounding.
class ModelPoint {
 public:
  /// The basepoint o = (1/sqrt(K), 0, ..., 0).
  static ModelPoint basepoint(int n, double K);

  /// Point at geodesic distance r from the basepoint along the first spatial axis.
  static ModelPoint along_axis(int n, double K, double r);

  /// Takes embedding coordinates of length n + 1. Throws DomainError when the
  /// point is off the upper sheet by more than 1e-9 relative.
  ModelPoint(std::vector<double> coords, double K);

  [[nodiscard]] std::span<const double> coords() const { return coords_; }
  [[nodiscard]] int dim() const { return static_cast<int>(coords_.size()) - 1; }
  [[nodiscard]] double curvature() const { return K_; }

  /// |K<x,x> - 1| / max(1, K x0^2): the floating-point relative norm defect.
  [[nodiscard]] double norm_defect() const;

  /// Direct mutable access for in-place stepping; callers renormalize after.
  std::span<double> mutable_coords() { return coords_; }
  void renormalize();

  friend bool operator==(const ModelPoint&, const ModelPoint&) = default;

 private:
  ModelPoint() = default;
  std::vector<double> coords_;
  double K_ = 1.0;
};

/// Relative norm defect of raw hyperboloid coordinates.
double norm_defect(std::span<const double> coords, double K);

/// Recompute coords[0] = sqrt(1/K + |spatial|^2).
void renormalize(std::span<double> coords, double K);

/// Geodesic distance (1/sqrt K) arccosh(K <x, y>), argument clamped at 1.
/// Throws MismatchError if dimension or curvature differ.
double distance(const ModelPoint& x, const ModelPoint& y);

/// Same as distance() on raw coordinates with shared K (no checks).
double distance(std::span<const double> x, std::span<const double> y, double K);

/// cosh(sqrt(K)|v|) x + sinh(sqrt(K)|v|) v / (sqrt(K)|v|), with |v|^2 = -<v, v>.
/// v is an ambient (n+1)-vector; throws DomainError unless <x, v> = 0 within 1e-9.
ModelPoint exp_map(const ModelPoint& x, std::span<const double> v);

/// Local inverse of exp_map: the tangent vector at x pointing to y with |v| = d(x, y).
std::vector<double> log_map(const ModelPoint& x, const ModelPoint& y);

/// Maps xi in R^n (tangent space at the basepoint) to T_x by the Lorentz boost
/// taking o to x. Isometric: |result| = |xi|.
void transport_from_basepoint(std::span<const double> x, double K, std::span<const double> xi,
                              std::span<double> out);

}  // namespace hyperpam
