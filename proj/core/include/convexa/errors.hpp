#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace convexa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CONVEXA_ERROR(Name)          \
  class Name : public Error {        \
   public:                           \
    using Error::Error;              \
  }

CONVEXA_ERROR(RangeError);
CONVEXA_ERROR(CycleError);
CONVEXA_ERROR(SizeError);
CONVEXA_ERROR(BudgetError);
CONVEXA_ERROR(UnboundVariable);
CONVEXA_ERROR(UnknownTag);
CONVEXA_ERROR(InternalError);

// jdep
CONVEXA_ERROR(NotDRelated);
CONVEXA_ERROR(NotInSUB);
CONVEXA_ERROR(WellDefinednessViolation);
CONVEXA_ERROR(PartitionViolation);

// embed
CONVEXA_ERROR(AcyclicityViolation);
CONVEXA_ERROR(ConvexityViolation);
CONVEXA_ERROR(HomomorphismViolation);
CONVEXA_ERROR(DCycleError);
CONVEXA_ERROR(DepthCapExceeded);
CONVEXA_ERROR(TreeLikenessViolation);

#undef CONVEXA_ERROR

class NotALattice : public Error {
 public:
  NotALattice(std::uint32_t x, std::uint32_t y, const std::string& what)
      : Error(what), x_(x), y_(y) {}
  std::uint32_t x() const { return x_; }
  std::uint32_t y() const { return y_; }

 private:
  std::uint32_t x_, y_;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& msg)
      : Error(source + ":" + std::to_string(line) + ": " + msg),
        source_(std::move(source)),
        line_(line) {}
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace convexa
