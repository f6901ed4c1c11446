#ifndef STIF_ERROR_HPP
#define STIF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace stif {

// All recoverable toolkit failures (bad input files, format violations,
// precondition breaches) are reported as Error; the CLI turns them into a
// nonzero exit naming the failing stage.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stif

#endif  // STIF_ERROR_HPP
