#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

namespace foxwright {

// Acceptance band for "margin >= 0" claims.
struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;

  double band(double lhs, double rhs) const {
    return abs + rel * std::max(std::abs(lhs), std::abs(rhs));
  }
};

// One checked inequality instance. `lhs` is always the side the inequality claims
// to be the larger one, so margin = lhs - rhs >= 0 means the inequality holds.
struct InequalityReport {
  std::string suite_id;
  std::string params_echo;  // compact JSON object
  double z = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  double err_estimate = 0.0;
  // Instance could not be certified (cancellation, overflow, no convergence).
  bool numerical_failure = false;
  std::string detail;
};

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Compact JSON builder for `params_echo`; non-finite numbers become strings.
class Echo {
 public:
  Echo& add(std::string_view key, double v) {
    std::string s = format_double(v);
    if (!std::isfinite(v)) s = "\"" + s + "\"";
    return raw(key, s);
  }
  Echo& add(std::string_view key, long v) { return raw(key, std::to_string(v)); }
  Echo& add(std::string_view key, int v) { return raw(key, std::to_string(v)); }
  Echo& add(std::string_view key, std::string_view v) {
    return raw(key, "\"" + std::string(v) + "\"");
  }
  Echo& add(std::string_view key, const char* v) { return add(key, std::string_view(v)); }
  Echo& raw(std::string_view key, std::string_view json) {
    if (!body_.empty()) body_ += ',';
    body_ += '"';
    body_ += key;
    body_ += "\":";
    body_ += json;
    return *this;
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

inline InequalityReport make_report(std::string suite_id, std::string params_echo, double z,
                                    double lhs, double rhs, double err_estimate,
                                    const Tolerance& tol) {
  InequalityReport r;
  r.suite_id = std::move(suite_id);
  r.params_echo = std::move(params_echo);
  r.z = z;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.err_estimate = err_estimate;
  r.pass = std::isfinite(r.margin) && r.margin >= -tol.band(lhs, rhs);
  return r;
}

inline InequalityReport numerical_failure_report(std::string suite_id, std::string params_echo,
                                                 double z, std::string why) {
  InequalityReport r;
  r.suite_id = std::move(suite_id);
  r.params_echo = std::move(params_echo);
  r.z = z;
  r.lhs = r.rhs = r.margin = std::nan("");
  r.err_estimate = std::nan("");
  r.numerical_failure = true;
  r.detail = std::move(why);
  return r;
}

}  // namespace foxwright
