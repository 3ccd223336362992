#include "hyperpam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperpam/errors.hpp"

namespace hyperpam {

double minkowski_dot(std::span<const double> a, std::span<const double> b) {
  double s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
  return s;
}

double norm_defect(std::span<const double> coords, double K) {
  const double q = K * minkowski_dot(coords, coords);
  return std::abs(q - 1.0) / std::max(1.0, K * coords[0] * coords[0]);
}

void renormalize(std::span<double> coords, double K) {
  double s = 0.0;
  for (std::size_t i = 1; i < coords.size(); ++i) s += coords[i] * coords[i];
  coords[0] = std::sqrt(1.0 / K + s);
}

ModelPoint ModelPoint::basepoint(int n, double K) {
  if (n < 2) throw DomainError("ModelPoint: dimension must be >= 2");
  if (!(K > 0.0)) throw DomainError("ModelPoint: curvature magnitude K must be > 0");
  ModelPoint p;
  p.coords_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  p.coords_[0] = 1.0 / std::sqrt(K);
  p.K_ = K;
  return p;
}

ModelPoint ModelPoint::along_axis(int n, double K, double r) {
  ModelPoint p = basepoint(n, K);
  const double s = std::sqrt(K);
  p.coords_[0] = std::cosh(s * r) / s;
  p.coords_[1] = std::sinh(s * r) / s;
  p.renormalize();
  return p;
}

ModelPoint::ModelPoint(std::vector<double> coords, double K) : coords_(std::move(coords)), K_(K) {
  if (coords_.size() < 3) throw DomainError("ModelPoint: need n + 1 >= 3 coordinates");
  if (!(K_ > 0.0)) throw DomainError("ModelPoint: curvature magnitude K must be > 0");
  if (!(coords_[0] > 0.0)) throw DomainError("ModelPoint: point is not on the upper sheet");
  const double defect = hyperpam::norm_defect(coords_, K_);
  if (!(defect <= 1e-9)) {
    std::ostringstream msg;
    msg << "ModelPoint: Minkowski norm defect " << defect << " exceeds 1e-9";
    throw DomainError(msg.str());
  }
  renormalize();
}

double ModelPoint::norm_defect() const { return hyperpam::norm_defect(coords_, K_); }

void ModelPoint::renormalize() { hyperpam::renormalize(coords_, K_); }

double distance(std::span<const double> x, std::span<const double> y, double K) {
  const double a = K * minkowski_dot(x, y);
  double scaled;
  if (a < 2.0) {
    // Near points: d = (2/sqrt K) asinh(sqrt(-K<x-y, x-y>) / 2) avoids arccosh(1 + tiny).
    double dt = x[0] - y[0];
    double chord2 = -dt * dt;
    for (std::size_t i = 1; i < x.size(); ++i) {
      const double di = x[i] - y[i];
      chord2 += di * di;
    }
    chord2 = std::max(0.0, K * chord2);
    scaled = 2.0 * std::asinh(0.5 * std::sqrt(chord2));
  } else {
    scaled = std::acosh(std::max(1.0, a));
  }
  return scaled / std::sqrt(K);
}

double distance(const ModelPoint& x, const ModelPoint& y) {
  if (x.dim() != y.dim() || x.curvature() != y.curvature()) {
    throw MismatchError("distance: points live in different model spaces");
  }
  return distance(x.coords(), y.coords(), x.curvature());
}

ModelPoint exp_map(const ModelPoint& x, std::span<const double> v) {
  const auto xc = x.coords();
  if (v.size() != xc.size()) throw MismatchError("exp_map: tangent vector has wrong length");
  double xnorm = 0.0, vnorm = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    xnorm += xc[i] * xc[i];
    vnorm += v[i] * v[i];
  }
  const double pairing = minkowski_dot(xc, v);
  if (std::abs(pairing) > 1e-9 * std::max(1.0, std::sqrt(xnorm * vnorm))) {
    std::ostringstream msg;
    msg << "exp_map: vector is not tangent, <x, v> = " << pairing;
    throw DomainError(msg.str());
  }
  const double len = std::sqrt(std::max(0.0, -minkowski_dot(v, v)));
  const double theta = std::sqrt(x.curvature()) * len;
  const double c = std::cosh(theta);
  const double s = theta > 1e-12 ? std::sinh(theta) / theta : 1.0;
  std::vector<double> out(xc.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * xc[i] + s * v[i];
  hyperpam::renormalize(out, x.curvature());
  return ModelPoint(std::move(out), x.curvature());
}

std::vector<double> log_map(const ModelPoint& x, const ModelPoint& y) {
  const double d = distance(x, y);
  const double K = x.curvature();
  const auto xc = x.coords();
  const auto yc = y.coords();
  const double a = K * minkowski_dot(xc, yc);
  std::vector<double> u(xc.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = yc[i] - a * xc[i];
  const double unorm = std::sqrt(std::max(0.0, -minkowski_dot(u, u)));
  if (d == 0.0 || unorm == 0.0) return std::vector<double>(xc.size(), 0.0);
  for (auto& ui : u) ui *= d / unorm;
  return u;
}

void transport_from_basepoint(std::span<const double> x, double K, std::span<const double> xi,
                              std::span<double> out) {
  const double sk = std::sqrt(K);
  const double y0 = sk * x[0];
  double dot = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) dot += sk * x[i + 1] * xi[i];
  out[0] = dot;
  const double w = dot / (1.0 + y0);
  for (std::size_t i = 0; i < xi.size(); ++i) out[i + 1] = xi[i] + sk * x[i + 1] * w;
}

}  // namespace hyperpam
