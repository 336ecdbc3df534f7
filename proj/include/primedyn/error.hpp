#pragma once

#include <stdexcept>
#include <string>

namespace primedyn {

// Raised whenever an operation's precondition on its inputs is violated.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

inline void require(bool condition, const char* message) {
  if (!condition) throw DomainError(message);
}

}  // namespace primedyn
