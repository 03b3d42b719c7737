#ifndef SGEMBED_ERRORS_HPP_
#define SGEMBED_ERRORS_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sgembed {

//! Input text could not be parsed. Positions are 1-based.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column);

  std::size_t line;
  std::size_t column;
};

//! A table entry lies outside 1..n. Fields are 1-based.
struct MalformedTableError : std::runtime_error {
  MalformedTableError(std::uint32_t row,
                      std::uint32_t column,
                      std::uint32_t value,
                      std::uint32_t order);

  std::uint32_t row;
  std::uint32_t column;
  std::uint32_t value;
  std::uint32_t order;
};

//! A closure or family enumeration grew past the configured element cap.
struct GrowthCapError : std::runtime_error {
  GrowthCapError(std::size_t cap, const std::string& what_grew);

  std::size_t cap;
};

//! A group action was requested on a table that cannot support it.
struct UnsupportedActionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sgembed

#endif  // SGEMBED_ERRORS_HPP_
