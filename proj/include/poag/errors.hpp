#pragma once

#include <stdexcept>
#include <string>

namespace poag {

enum class ErrorCode {
  InvalidGame,
  DimensionMismatch,
  UndefinedHistory,
  ZeroProbabilityHistory,
  InconsistentHistory,
  BudgetExceeded,
  NoCrossing,
  MultipleCrossing,
  Io,
};

class PoagError : public std::runtime_error {
 public:
  PoagError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw PoagError(code, what);
}

}  // namespace poag
