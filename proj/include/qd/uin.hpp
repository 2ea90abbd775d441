#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "qd/error.hpp"
#include "qd/linalg.hpp"

namespace qd {

/**
 * @brief A unitarily invariant norm, described by its symmetric gauge function.
 *
 * Supported families are Schatten-p (1 <= p <= inf) and Ky Fan k. The operator
 * norm is Schatten-inf, which is also Ky Fan 1.
 */
class UINorm {
 public:
  enum class Kind { Schatten, KyFan, Operator };

  static UINorm schatten(double p) {
    if (std::isnan(p) || p < 1.0) {
      throw Error(Errc::InvalidSpec, "schatten norm requires p >= 1");
    }
    return UINorm(Kind::Schatten, p, 0);
  }

  static UINorm kyfan(long k) {
    if (k < 1) {
      throw Error(Errc::InvalidSpec, "ky fan norm requires k >= 1");
    }
    return UINorm(Kind::KyFan, 0.0, k);
  }

  static UINorm operator_norm() { return UINorm(Kind::Operator, std::numeric_limits<double>::infinity(), 1); }

  /// Accepts "op", "s<p>" (p real >= 1), "sinf" and "kf<k>".
  static UINorm parse(std::string_view text) {
    if (text == "op") return operator_norm();
    if (text == "sinf") return schatten(std::numeric_limits<double>::infinity());
    if (text.size() > 2 && text.substr(0, 2) == "kf") {
      long k = 0;
      const auto digits = text.substr(2);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw Error(Errc::InvalidSpec, "bad ky fan spec '" + std::string(text) + "'");
      }
      return kyfan(k);
    }
    if (text.size() > 1 && text.front() == 's') {
      const std::string digits(text.substr(1));
      std::size_t used = 0;
      double p = 0.0;
      try {
        p = std::stod(digits, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != digits.size() || !std::isfinite(p)) {
        throw Error(Errc::InvalidSpec, "bad schatten spec '" + std::string(text) + "'");
      }
      return schatten(p);
    }
    throw Error(Errc::InvalidSpec, "unknown norm spec '" + std::string(text) + "'");
  }

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  long k() const { return k_; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Operator: return "op";
      case Kind::KyFan: return "kf" + std::to_string(k_);
      case Kind::Schatten: {
        if (std::isinf(p_)) return "sinf";
        std::ostringstream out;
        out << 's' << p_;
        return out.str();
      }
    }
    return "?";
  }

  /// Symmetric gauge function of v (sign and permutation invariant).
  double gauge(const RealVector& v) const {
    if (!v.allFinite()) {
      throw Error(Errc::InvalidSpec, "gauge: non-finite entry");
    }
    if (v.size() == 0) return 0.0;
    RealVector a = v.cwiseAbs();
    std::sort(a.data(), a.data() + a.size(), std::greater<>());
    switch (kind_) {
      case Kind::Operator: return a(0);
      case Kind::KyFan: {
        const Index take = std::min<Index>(static_cast<Index>(k_), a.size());
        return a.head(take).sum();
      }
      case Kind::Schatten: {
        if (std::isinf(p_)) return a(0);
        if (p_ == 1.0) return a.sum();
        const double top = a(0);
        if (top == 0.0) return 0.0;
        // Scaled to avoid overflow for large p.
        return top * std::pow((a / top).array().pow(p_).sum(), 1.0 / p_);
      }
    }
    return 0.0;
  }

  /// gauge of the singular values of M.
  double operator()(const Matrix& M) const { return gauge(singular_values(M)); }

  friend bool operator==(const UINorm& a, const UINorm& b) {
    return a.kind_ == b.kind_ && (a.p_ == b.p_) && a.k_ == b.k_;
  }

 private:
  UINorm(Kind kind, double p, long k) : kind_(kind), p_(p), k_(k) {}

  Kind kind_;
  double p_;
  long k_;
};

inline double gauge(const UINorm& norm, const RealVector& v) { return norm.gauge(v); }

inline double uin_norm(const UINorm& norm, const Matrix& M) { return norm(M); }

}  // namespace qd
