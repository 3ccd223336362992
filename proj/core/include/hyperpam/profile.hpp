#pragma once

#include <string_view>
#include <vector>

namespace hyperpam {

/// Bounded radial function r -> f(r) about some center.
class RadialProfile {
 public:
  enum class Kind { Constant, BallIndicator, Hat, Table };

  static RadialProfile constant(double c);
  /// eps on the closed ball of radius R, 0 outside.
  static RadialProfile ball_indicator(double R, double eps = 1.0);
  /// eps (1 - r/R) on the ball of radius R.
  static RadialProfile hat(double R, double eps = 1.0);
  /// Piecewise-linear through (radii[i], values[i]); holds the last value beyond the last radius.
  static RadialProfile table(std::vector<double> radii, std::vector<double> values);

  [[nodiscard]] double operator()(double r) const;
  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double level() const { return level_; }
  [[nodiscard]] double radius() const { return radius_; }
  /// Radius outside which the profile vanishes; +inf when it does not.
  [[nodiscard]] double support_radius() const;
  [[nodiscard]] double sup_norm() const;
  /// Radii where the profile is discontinuous or kinked.
  [[nodiscard]] std::vector<double> breakpoints() const;
  [[nodiscard]] RadialProfile scaled(double factor) const;

 private:
  Kind kind_ = Kind::Constant;
  double level_ = 1.0;
  double radius_ = 0.0;
  std::vector<double> radii_;
  std::vector<double> values_;
};

std::string_view to_string(RadialProfile::Kind kind);

}  // namespace hyperpam
