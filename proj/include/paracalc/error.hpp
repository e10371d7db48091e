#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace paracalc {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rejected inputs: NaN/Inf values, bad parameters, unusable symbols.
struct invalid_input : error {
  using error::error;
};

struct grid_mismatch : error {
  using error::error;
};

// Exponent regression with fewer than 4 usable blocks.
struct insufficient_data : error {
  using error::error;
};

// Operator called with exponents outside the hypotheses of the theorem
// backing it; `inequality` names the failed condition.
struct hypothesis_violation : error {
  std::string inequality;
  explicit hypothesis_violation(std::string ineq)
      : error("outside theorem hypotheses: " + ineq), inequality(std::move(ineq)) {}
};

struct unsupported_dimension : error {
  using error::error;
};

// Solver iterate became non-finite.
struct divergence_error : error {
  int iteration;
  divergence_error(const std::string& msg, int iter) : error(msg), iteration(iter) {}
};

// Picard loop hit max_iters; carries the residual trace.
struct non_convergence : error {
  std::vector<double> residual_history;
  non_convergence(const std::string& msg, std::vector<double> hist)
      : error(msg), residual_history(std::move(hist)) {}
};

struct io_error : error {
  using error::error;
};

struct config_error : error {
  using error::error;
};

}  // namespace paracalc
