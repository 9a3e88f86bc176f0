#pragma once

#include <stdexcept>
#include <string>

namespace mubg {

// Every engine failure carries the module that raised it; the CLI prints it
// as "[module] message".
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

struct ArithError : Error {
  explicit ArithError(const std::string& what) : Error("arith", what) {}
};
struct SeriesError : Error {
  explicit SeriesError(const std::string& what) : Error("series", what) {}
};
struct FglError : Error {
  explicit FglError(const std::string& what) : Error("fgl", what) {}
};
struct BclassError : Error {
  explicit BclassError(const std::string& what) : Error("bclass", what) {}
};
struct RepError : Error {
  explicit RepError(const std::string& what) : Error("rep", what) {}
};
struct ChernError : Error {
  explicit ChernError(const std::string& what) : Error("chern", what) {}
};
struct AswError : Error {
  explicit AswError(const std::string& what) : Error("asw", what) {}
};

}  // namespace mubg
