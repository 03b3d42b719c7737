#include "sgembed/errors.hpp"

#include <sstream>

namespace sgembed {

namespace {
  std::string parse_msg(const std::string& msg, std::size_t line, std::size_t column) {
    std::ostringstream os;
    os << "parse error at line " << line << ", column " << column << ": " << msg;
    return os.str();
  }

  std::string malformed_msg(std::uint32_t row,
                            std::uint32_t column,
                            std::uint32_t value,
                            std::uint32_t order) {
    std::ostringstream os;
    os << "table entry at row " << row << ", column " << column << " is " << value
       << ", outside 1.." << order;
    return os.str();
  }

  std::string cap_msg(std::size_t cap, const std::string& what_grew) {
    std::ostringstream os;
    os << what_grew << " exceeds the element cap of " << cap;
    return os.str();
  }
}  // namespace

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(parse_msg(msg, line, column)), line(line), column(column) {}

MalformedTableError::MalformedTableError(std::uint32_t row,
                                         std::uint32_t column,
                                         std::uint32_t value,
                                         std::uint32_t order)
    : std::runtime_error(malformed_msg(row, column, value, order)),
      row(row),
      column(column),
      value(value),
      order(order) {}

GrowthCapError::GrowthCapError(std::size_t cap, const std::string& what_grew)
    : std::runtime_error(cap_msg(cap, what_grew)), cap(cap) {}

}  // namespace sgembed
