#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rbw {

/// Malformed ring spec, flag, or argument outside an operation's domain.
class InvalidInput : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A configured size budget would be exceeded. Never approximated around.
class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(const std::string& what, std::uint64_t requested, std::uint64_t budget)
        : std::runtime_error(what + ": requested " + std::to_string(requested) + ", budget " +
                             std::to_string(budget)),
          requested_(requested),
          budget_(budget) {}

    std::uint64_t requested() const noexcept { return requested_; }
    std::uint64_t budget() const noexcept { return budget_; }

  private:
    std::uint64_t requested_;
    std::uint64_t budget_;
};

/// An internal consistency check failed (a relator with nonzero image, a map
/// that does not respect relations). Always a bug, never a user error.
class ConstructionError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace rbw
