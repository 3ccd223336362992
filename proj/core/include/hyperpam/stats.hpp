#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace hyperpam {

/// Welford mean/variance with the pairwise (Chan et al.) merge.
class RunningStats {
 public:
  void push(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStats& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double total = na + nb;
    const double delta = other.mean_ - mean_;
    mean_ += delta * nb / total;
    m2_ += other.m2_ + delta * delta * na * nb / total;
    n_ += other.n_;
  }

  [[nodiscard]] std::size_t count() const { return n_; }
  [[nodiscard]] double mean() const { return mean_; }
  [[nodiscard]] double variance() const {
    return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
  }
  [[nodiscard]] double stderr_of_mean() const {
    return n_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Welford statistics of values Y = exp(log_y) kept as Y * exp(-shift).
///
/// The shift only ever grows; merging rescales the side with the smaller
/// shift. Values far below the running maximum underflow harmlessly to 0.
class LogScaledStats {
 public:
  void push_log(double log_y) {
    if (log_y == -std::numeric_limits<double>::infinity()) {
      push_scaled(0.0);
      return;
    }
    if (log_y > shift_) rescale(log_y);
    push_scaled(std::exp(log_y - shift_));
  }

  void merge(const LogScaledStats& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
      *this = other;
      return;
    }
    LogScaledStats rhs = other;
    if (rhs.shift_ > shift_) rescale(rhs.shift_);
    else if (shift_ > rhs.shift_) rhs.rescale(shift_);
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(rhs.n_);
    const double total = na + nb;
    const double delta = rhs.mean_ - mean_;
    mean_ += delta * nb / total;
    m2_ += rhs.m2_ + delta * delta * na * nb / total;
    n_ += rhs.n_;
  }

  [[nodiscard]] std::size_t count() const { return n_; }
  /// log of the sample mean of Y (-inf when every value was 0).
  [[nodiscard]] double log_mean() const {
    return mean_ > 0.0 ? std::log(mean_) + shift_ : -std::numeric_limits<double>::infinity();
  }
  /// log of the standard error of the mean of Y.
  [[nodiscard]] double log_stderr() const {
    if (n_ < 2 || m2_ <= 0.0) return -std::numeric_limits<double>::infinity();
    const double var = m2_ / static_cast<double>(n_ - 1);
    return 0.5 * std::log(var / static_cast<double>(n_)) + shift_;
  }

 private:
  void push_scaled(double y) {
    ++n_;
    const double delta = y - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (y - mean_);
  }

  void rescale(double new_shift) {
    if (n_ > 0) {
      const double f = std::exp(shift_ - new_shift);
      mean_ *= f;
      m2_ *= f * f;
    }
    shift_ = new_shift;
  }

  std::size_t n_ = 0;
  double shift_ = -std::numeric_limits<double>::infinity();
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Two-variable Welford (means, variances and covariance) with merge.
class RunningCovariance {
 public:
  void push(double x, double y) {
    ++n_;
    const double nn = static_cast<double>(n_);
    const double dx = x - mx_;
    mx_ += dx / nn;
    const double dy = y - my_;
    my_ += dy / nn;
    sxx_ += dx * (x - mx_);
    syy_ += dy * (y - my_);
    sxy_ += dx * (y - my_);
  }

  void merge(const RunningCovariance& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(o.n_);
    const double total = na + nb;
    const double dx = o.mx_ - mx_;
    const double dy = o.my_ - my_;
    mx_ += dx * nb / total;
    my_ += dy * nb / total;
    sxx_ += o.sxx_ + dx * dx * na * nb / total;
    syy_ += o.syy_ + dy * dy * na * nb / total;
    sxy_ += o.sxy_ + dx * dy * na * nb / total;
    n_ += o.n_;
  }

  [[nodiscard]] std::size_t count() const { return n_; }
  [[nodiscard]] double mean_x() const { return mx_; }
  [[nodiscard]] double mean_y() const { return my_; }
  [[nodiscard]] double var_x() const { return n_ < 2 ? 0.0 : sxx_ / static_cast<double>(n_ - 1); }
  [[nodiscard]] double var_y() const { return n_ < 2 ? 0.0 : syy_ / static_cast<double>(n_ - 1); }
  [[nodiscard]] double cov() const { return n_ < 2 ? 0.0 : sxy_ / static_cast<double>(n_ - 1); }

 private:
  std::size_t n_ = 0;
  double mx_ = 0.0, my_ = 0.0;
  double sxx_ = 0.0, syy_ = 0.0, sxy_ = 0.0;
};

}  // namespace hyperpam
