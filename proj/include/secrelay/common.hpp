#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace secrelay {

// Rates are bits per channel use; log base 2 throughout.
inline double cap(double x) {
  if (x < 0.0) throw std::domain_error("cap: negative SNR argument");
  return std::log2(1.0 + x);
}

inline double pos(double x) { return x > 0.0 ? x : 0.0; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Raised when a scenario cannot support any transmission scheme
// (e.g. the decodability condition |c_TT| > |c_11| fails).
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised for malformed run configurations (bad key, missing unit, ...).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised for I/O failures on data or output paths.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace secrelay
