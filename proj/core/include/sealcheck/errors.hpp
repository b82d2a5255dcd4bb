#pragma once

#include <stdexcept>
#include <string>

#include "sealcheck/model.hpp"

namespace sealcheck {

// Base of every error raised by the analyses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Some channel's k'th receive has no k'th send, or vice versa.
class UnbalancedError : public Error {
 public:
  explicit UnbalancedError(Channel channel)
      : Error("unbalanced channel " + to_string(channel)), channel_(channel) {}

  Channel channel() const { return channel_; }

 private:
  Channel channel_;
};

class CyclicGraphError : public Error {
 public:
  CyclicGraphError() : Error("program graph contains a cycle") {}
};

class ProcessCountMismatch : public Error {
 public:
  ProcessCountMismatch(int lhs, int rhs)
      : Error("process count mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

// The oracle refuses to enumerate a world larger than its budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Some channel has more receives than sends, so no receive-total matching
// can exist.
class ShapeError : public Error {
 public:
  explicit ShapeError(Channel channel)
      : Error("channel " + to_string(channel) + " has more receives than sends"),
        channel_(channel) {}

  Channel channel() const { return channel_; }

 private:
  Channel channel_;
};

}  // namespace sealcheck
