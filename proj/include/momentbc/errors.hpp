#ifndef MOMENTBC_ERRORS_HPP
#define MOMENTBC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace momentbc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientMoments : Error {
  using Error::Error;
};

struct InsufficientResponse : Error {
  using Error::Error;
};

// A matrix required to be positive definite has a negative pivot.
struct NotPositiveDefinite : Error {
  int order;  // leading order at which the factorization failed (1-based)
  NotPositiveDefinite(const std::string& msg, int order_)
      : Error(msg), order(order_) {}
};

// Numerically singular leading block; a smaller order may still be usable.
struct DegenerateProblem : Error {
  int suggested_order;
  DegenerateProblem(const std::string& msg, int suggested)
      : Error(msg), suggested_order(suggested) {}
};

struct ResidualTooLarge : Error {
  double max_residual;
  ResidualTooLarge(const std::string& msg, double res)
      : Error(msg), max_residual(res) {}
};

struct SingularSystem : Error {
  using Error::Error;
};

struct SizeTooSmall : Error {
  using Error::Error;
};

struct DegenerateString : Error {
  using Error::Error;
};

struct IllConditioned : Error {
  double condition_estimate;
  IllConditioned(const std::string& msg, double cond)
      : Error(msg), condition_estimate(cond) {}
};

}  // namespace momentbc

#endif
