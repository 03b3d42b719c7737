#include "sgembed/cayley_table.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sgembed/errors.hpp"
#include "sgembed/kernels.hpp"

namespace sgembed {

CayleyTable::CayleyTable(uint32_t order, std::vector<uint32_t> entries)
    : _order(order), _entries(std::move(entries)) {
  if (_order == 0) {
    throw std::invalid_argument("a table must have order at least 1");
  }
  if (_entries.size() != static_cast<size_t>(_order) * _order) {
    throw std::invalid_argument("entry count does not match order * order");
  }
}

bool validate_associativity(const CayleyTable& table, AssocCounterexample* fail, int threads) {
  if (threads > 1) {
    return kernels::assoc_parallel(table, fail, threads);
  }
  return kernels::assoc_serial(table, fail);
}

namespace {

  // Splits text into significant lines (comments stripped, blanks dropped),
  // remembering 1-based line numbers.
  struct Line {
    std::string_view text;
    std::size_t number;
  };

  std::vector<Line> significant_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
      ++lineno;
      if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      bool blank = true;
      for (char c : line) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
          blank = false;
          break;
        }
      }
      if (!blank) {
        out.push_back({line, lineno});
      }
      if (eol == std::string_view::npos) {
        break;
      }
      pos = eol + 1;
    }
    return out;
  }

  struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
  };

  std::vector<Token> tokens_of(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
  }

  uint64_t parse_uint(const Token& tok, std::size_t lineno) {
    uint64_t value = 0;
    if (tok.text.empty()) {
      throw ParseError("expected an integer", lineno, tok.column);
    }
    for (char c : tok.text) {
      if (c < '0' || c > '9') {
        throw ParseError("expected an integer, got '" + std::string(tok.text) + "'", lineno,
                         tok.column);
      }
      value = value * 10 + static_cast<uint64_t>(c - '0');
      if (value > 0xFFFFFFFFull) {
        throw ParseError("integer too large", lineno, tok.column);
      }
    }
    return value;
  }

}  // namespace

CayleyTable read_table(std::string_view text) {
  auto lines = significant_lines(text);
  if (lines.empty()) {
    throw ParseError("empty input, expected a table", 1, 1);
  }
  auto header = tokens_of(lines[0].text);
  if (header.size() != 1) {
    throw ParseError("expected a single integer (the order) on the first line", lines[0].number,
                     header.size() > 1 ? header[1].column : 1);
  }
  uint64_t n = parse_uint(header[0], lines[0].number);
  if (n == 0) {
    throw ParseError("the order must be at least 1", lines[0].number, header[0].column);
  }
  if (lines.size() < n + 1) {
    throw ParseError("expected " + std::to_string(n) + " table rows, got "
                         + std::to_string(lines.size() - 1),
                     lines.back().number, 1);
  }
  if (lines.size() > n + 1) {
    throw ParseError("unexpected extra content after the table", lines[n + 1].number, 1);
  }
  std::vector<uint32_t> entries;
  entries.reserve(static_cast<size_t>(n) * n);
  for (uint64_t i = 0; i < n; ++i) {
    const Line& line = lines[i + 1];
    auto toks = tokens_of(line.text);
    if (toks.size() != n) {
      throw ParseError("expected " + std::to_string(n) + " entries in row "
                           + std::to_string(i + 1) + ", got " + std::to_string(toks.size()),
                       line.number, toks.empty() ? 1 : toks.back().column);
    }
    for (uint64_t j = 0; j < n; ++j) {
      uint64_t v = parse_uint(toks[j], line.number);
      if (v < 1 || v > n) {
        throw MalformedTableError(static_cast<uint32_t>(i + 1), static_cast<uint32_t>(j + 1),
                                  static_cast<uint32_t>(v), static_cast<uint32_t>(n));
      }
      entries.push_back(static_cast<uint32_t>(v - 1));
    }
  }
  return CayleyTable(static_cast<uint32_t>(n), std::move(entries));
}

CayleyTable read_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_table(buf.str());
}

std::string write_table(const CayleyTable& table) {
  std::ostringstream os;
  uint32_t n = table.order();
  os << n << '\n';
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      if (j > 0) {
        os << ' ';
      }
      os << table.product(i, j) + 1;
    }
    os << '\n';
  }
  return os.str();
}

CayleyTable relabel(const CayleyTable& table, std::span<const uint32_t> perm) {
  uint32_t n = table.order();
  if (perm.size() != n) {
    throw std::invalid_argument("permutation size does not match table order");
  }
  std::vector<uint8_t> seen(n, 0);
  for (uint32_t v : perm) {
    if (v >= n || seen[v]) {
      throw std::invalid_argument("not a permutation of 0..n-1");
    }
    seen[v] = 1;
  }
  std::vector<uint32_t> entries(static_cast<size_t>(n) * n);
  CayleyTable out(n, std::move(entries));
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      out.set_product(perm[i], perm[j], perm[table.product(i, j)]);
    }
  }
  return out;
}

}  // namespace sgembed
