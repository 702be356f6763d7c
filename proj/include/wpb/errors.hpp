#pragma once

#include <stdexcept>
#include <string>

namespace wpb {

// Numerical failures during stepping or evolution. The CLI maps these to
// exit code 3.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

class domain_too_small_error : public numerical_error {
 public:
  explicit domain_too_small_error(const std::string& msg) : numerical_error(msg) {}
};

class step_size_error : public numerical_error {
 public:
  explicit step_size_error(const std::string& msg) : numerical_error(msg) {}
};

class decay_underflow_error : public numerical_error {
 public:
  explicit decay_underflow_error(const std::string& msg) : numerical_error(msg) {}
};

class degenerate_basis_error : public numerical_error {
 public:
  explicit degenerate_basis_error(const std::string& msg) : numerical_error(msg) {}
};

class no_stationary_solution_error : public numerical_error {
 public:
  explicit no_stationary_solution_error(const std::string& msg) : numerical_error(msg) {}
};

class no_instanton_error : public numerical_error {
 public:
  explicit no_instanton_error(const std::string& msg) : numerical_error(msg) {}
};

// Configuration problems (bad file, bad schema, out-of-range values).
// The CLI maps these to exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem problems while writing outputs. The CLI maps these to exit
// code 4.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wpb
