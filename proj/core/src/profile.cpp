#include "hyperpam/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperpam/errors.hpp"

namespace hyperpam {

std::string_view to_string(RadialProfile::Kind kind) {
  switch (kind) {
    case RadialProfile::Kind::Constant: return "constant";
    case RadialProfile::Kind::BallIndicator: return "ball";
    case RadialProfile::Kind::Hat: return "hat";
    case RadialProfile::Kind::Table: return "table";
  }
  return "constant";
}

RadialProfile RadialProfile::constant(double c) {
  if (!std::isfinite(c)) throw DomainError("RadialProfile: constant must be finite");
  RadialProfile p;
  p.kind_ = Kind::Constant;
  p.level_ = c;
  return p;
}

RadialProfile RadialProfile::ball_indicator(double R, double eps) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("RadialProfile: ball radius must be > 0");
  if (!std::isfinite(eps)) throw DomainError("RadialProfile: level must be finite");
  RadialProfile p;
  p.kind_ = Kind::BallIndicator;
  p.level_ = eps;
  p.radius_ = R;
  return p;
}

RadialProfile RadialProfile::hat(double R, double eps) {
  RadialProfile p = ball_indicator(R, eps);
  p.kind_ = Kind::Hat;
  return p;
}

RadialProfile RadialProfile::table(std::vector<double> radii, std::vector<double> values) {
  if (radii.size() < 2 || radii.size() != values.size()) {
    throw DomainError("RadialProfile: table needs >= 2 matching (radius, value) pairs");
  }
  if (radii.front() != 0.0) throw DomainError("RadialProfile: table must start at r = 0");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw DomainError("RadialProfile: table radii must increase");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("RadialProfile: table values must be finite");
  }
  RadialProfile p;
  p.kind_ = Kind::Table;
  p.radii_ = std::move(radii);
  p.values_ = std::move(values);
  p.radius_ = p.radii_.back();
  return p;
}

double RadialProfile::operator()(double r) const {
  switch (kind_) {
    case Kind::Constant: return level_;
    case Kind::BallIndicator: return r <= radius_ ? level_ : 0.0;
    case Kind::Hat: return r < radius_ ? level_ * (1.0 - r / radius_) : 0.0;
    case Kind::Table: {
      if (r >= radii_.back()) return values_.back();
      const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
      const auto i = static_cast<std::size_t>(it - radii_.begin()) - 1;
      const double w = (r - radii_[i]) / (radii_[i + 1] - radii_[i]);
      return (1.0 - w) * values_[i] + w * values_[i + 1];
    }
  }
  return 0.0;
}

double RadialProfile::support_radius() const {
  switch (kind_) {
    case Kind::Constant:
      return level_ == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    case Kind::BallIndicator:
    case Kind::Hat: return radius_;
    case Kind::Table:
      return values_.back() == 0.0 ? radii_.back() : std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

double RadialProfile::sup_norm() const {
  if (kind_ == Kind::Table) {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }
  return std::abs(level_);
}

std::vector<double> RadialProfile::breakpoints() const {
  switch (kind_) {
    case Kind::Constant: return {};
    case Kind::BallIndicator:
    case Kind::Hat: return {radius_};
    case Kind::Table: return {radii_.begin() + 1, radii_.end()};
  }
  return {};
}

RadialProfile RadialProfile::scaled(double factor) const {
  RadialProfile p = *this;
  p.level_ *= factor;
  for (auto& v : p.values_) v *= factor;
  return p;
}

}  // namespace hyperpam
