#include "sgembed/closure.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sgembed/errors.hpp"

namespace sgembed {

uint32_t GeneratedTable::find(const Element& e) const {
  auto it = index_of.find(encode(e));
  return it == index_of.end() ? table.order() : it->second;
}

GeneratedTable close_generators(const std::vector<Element>& generators,
                                std::size_t cap,
                                int threads) {
  if (generators.empty()) {
    throw std::invalid_argument("at least one generator is required");
  }
  ElementKind kind = kind_of(generators.front());
  uint32_t degree = degree_of(generators.front());
  for (const Element& g : generators) {
    if (kind_of(g) != kind || degree_of(g) != degree) {
      throw std::invalid_argument("generators must share one kind and degree");
    }
  }
  GeneratedTable out;
  out.degree = degree;
  std::string key;
  for (const Element& g : generators) {
    encode(g, key);
    if (out.index_of.emplace(key, out.elements.size()).second) {
      out.elements.push_back(g);
    }
  }
  // Breadth-first by word length: every product of the frontier with each
  // generator, in (frontier index, generator position) order.
  std::size_t frontier_begin = 0;
  while (frontier_begin < out.elements.size()) {
    std::size_t frontier_end = out.elements.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (std::size_t g = 0; g < generators.size(); ++g) {
        Element product = compose(out.elements[i], generators[g]);
        encode(product, key);
        if (out.index_of.emplace(key, out.elements.size()).second) {
          if (out.elements.size() >= cap) {
            throw GrowthCapError(cap, "the closure of " + std::to_string(generators.size())
                                          + " generators");
          }
          out.elements.push_back(std::move(product));
        }
      }
    }
    frontier_begin = frontier_end;
  }
  out.table = table_from_elements(out.elements, out.index_of, threads);
  return out;
}

std::vector<uint32_t> close_indices(const CayleyTable& table, std::span<const uint32_t> seed) {
  uint32_t n = table.order();
  std::vector<uint8_t> member(n, 0);
  std::vector<uint32_t> elems;
  for (uint32_t s : seed) {
    if (s >= n) {
      throw std::invalid_argument("seed index out of range");
    }
    if (!member[s]) {
      member[s] = 1;
      elems.push_back(s);
    }
  }
  auto add = [&](uint32_t v) {
    if (!member[v]) {
      member[v] = 1;
      elems.push_back(v);
    }
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      add(table.product(elems[i], elems[j]));
      add(table.product(elems[j], elems[i]));
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

CayleyTable subtable(const CayleyTable& table, std::span<const uint32_t> closed) {
  uint32_t m = static_cast<uint32_t>(closed.size());
  std::vector<uint32_t> local(table.order(), static_cast<uint32_t>(-1));
  for (uint32_t i = 0; i < m; ++i) {
    local[closed[i]] = i;
  }
  std::vector<uint32_t> entries(static_cast<size_t>(m) * m);
  for (uint32_t i = 0; i < m; ++i) {
    for (uint32_t j = 0; j < m; ++j) {
      uint32_t p = local[table.product(closed[i], closed[j])];
      if (p == static_cast<uint32_t>(-1)) {
        throw std::invalid_argument("index set is not closed under products");
      }
      entries[static_cast<size_t>(i) * m + j] = p;
    }
  }
  return CayleyTable(m, std::move(entries));
}

CayleyTable table_from_elements(const std::vector<Element>& elements,
                                const std::unordered_map<std::string, uint32_t>& index_of,
                                int threads) {
  uint32_t n = static_cast<uint32_t>(elements.size());
  std::vector<uint32_t> entries(static_cast<size_t>(n) * n);
  bool closed = true;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1) \
    reduction(&& : closed)
#endif
  for (uint32_t i = 0; i < n; ++i) {
    std::string key;
    for (uint32_t j = 0; j < n; ++j) {
      encode(compose(elements[i], elements[j]), key);
      auto it = index_of.find(key);
      if (it == index_of.end()) {
        closed = false;
        break;
      }
      entries[static_cast<size_t>(i) * n + j] = it->second;
    }
  }
  (void) threads;
  if (!closed) {
    throw std::logic_error("element list is not closed under composition");
  }
  return CayleyTable(n, std::move(entries));
}

namespace {

  struct GenLine {
    std::string text;
    std::size_t number;
  };

  std::vector<GenLine> significant_lines(std::string_view text) {
    std::vector<GenLine> out;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
      ++lineno;
      if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      std::size_t begin = 0;
      std::size_t end = line.size();
      while (begin < end && std::isspace(static_cast<unsigned char>(line[begin]))) {
        ++begin;
      }
      while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1]))) {
        --end;
      }
      if (end > begin) {
        out.push_back({std::string(line.substr(begin, end - begin)), lineno});
      }
      if (eol == std::string_view::npos) {
        break;
      }
      pos = eol + 1;
    }
    return out;
  }

}  // namespace

GeneratorFile read_generators(std::string_view text) {
  auto lines = significant_lines(text);
  if (lines.empty()) {
    throw ParseError("empty input, expected a generator file", 1, 1);
  }
  std::istringstream header(lines[0].text);
  std::string kind_name;
  uint32_t degree = 0;
  header >> kind_name >> degree;
  GeneratorFile out;
  if (kind_name == "transformation") {
    out.kind = ElementKind::transformation;
  } else if (kind_name == "bipartition") {
    out.kind = ElementKind::bipartition;
  } else if (kind_name == "binary-relation") {
    out.kind = ElementKind::binary_relation;
  } else {
    throw ParseError("expected 'transformation', 'bipartition' or 'binary-relation'",
                     lines[0].number, 1);
  }
  std::string rest;
  if (header.fail() || degree == 0 || (header >> rest, !rest.empty())) {
    throw ParseError("expected '" + kind_name + " <degree>'", lines[0].number, 1);
  }
  out.degree = degree;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    Element e = parse_element(lines[i].text, out.kind, lines[i].number);
    if (degree_of(e) != out.degree) {
      throw ParseError("generator degree " + std::to_string(degree_of(e))
                           + " does not match the declared degree " + std::to_string(out.degree),
                       lines[i].number, 1);
    }
    out.generators.push_back(std::move(e));
  }
  if (out.generators.empty()) {
    throw ParseError("at least one generator is required", lines[0].number, 1);
  }
  return out;
}

GeneratorFile read_generators_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_generators(buf.str());
}

}  // namespace sgembed
