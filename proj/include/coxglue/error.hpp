#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace coxglue {

// Every checked failure carries a stable machine-readable code alongside the
// human message, so callers (and the CLI) can tell bad input apart from a
// mathematical check that came out false.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, const std::string& code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace coxglue
