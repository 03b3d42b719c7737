#include "sgembed/elements.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sgembed/errors.hpp"

namespace sgembed {

Transformation::Transformation(uint32_t degree, std::vector<uint32_t> images)
    : _degree(degree), _images(std::move(images)) {
  if (_degree == 0) {
    throw std::invalid_argument("degree must be at least 1");
  }
  if (_images.size() != _degree) {
    throw std::invalid_argument("image count does not match degree");
  }
  for (uint32_t v : _images) {
    if (v > _degree) {
      throw std::invalid_argument("image value out of range");
    }
  }
}

Transformation Transformation::identity(uint32_t degree) {
  std::vector<uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 1);
  return Transformation(degree, std::move(images));
}

bool Transformation::is_total() const {
  return std::find(_images.begin(), _images.end(), undefined) == _images.end();
}

bool Transformation::is_injective() const {
  std::vector<uint8_t> hit(_degree + 1, 0);
  for (uint32_t v : _images) {
    if (v != undefined && hit[v]++) {
      return false;
    }
  }
  return true;
}

bool Transformation::is_permutation() const {
  return is_total() && is_injective();
}

namespace {

  // Renumbers block ids by first appearance, in place.
  void normalize_blocks(std::vector<uint32_t>& block_of) {
    std::vector<uint32_t> relabel(block_of.size(), static_cast<uint32_t>(-1));
    uint32_t next = 0;
    for (uint32_t& b : block_of) {
      if (relabel[b] == static_cast<uint32_t>(-1)) {
        relabel[b] = next++;
      }
      b = relabel[b];
    }
  }

}  // namespace

Bipartition::Bipartition(uint32_t degree, std::vector<uint32_t> block_of)
    : _degree(degree), _block_of(std::move(block_of)) {
  if (_degree == 0) {
    throw std::invalid_argument("degree must be at least 1");
  }
  if (_block_of.size() != 2 * static_cast<size_t>(_degree)) {
    throw std::invalid_argument("block list must cover all 2d points");
  }
  for (uint32_t b : _block_of) {
    if (b >= 2 * _degree) {
      throw std::invalid_argument("block id out of range");
    }
  }
  normalize_blocks(_block_of);
}

Bipartition Bipartition::identity(uint32_t degree) {
  std::vector<uint32_t> block_of(2 * static_cast<size_t>(degree));
  for (uint32_t i = 0; i < degree; ++i) {
    block_of[i] = i;
    block_of[degree + i] = i;
  }
  return Bipartition(degree, std::move(block_of));
}

uint32_t Bipartition::block_count() const {
  return _block_of.empty() ? 0 : *std::max_element(_block_of.begin(), _block_of.end()) + 1;
}

BinaryRelation::BinaryRelation(uint32_t degree, std::vector<uint8_t> bits)
    : _degree(degree), _bits(std::move(bits)) {
  if (_degree == 0) {
    throw std::invalid_argument("degree must be at least 1");
  }
  if (_bits.size() != static_cast<size_t>(_degree) * _degree) {
    throw std::invalid_argument("bit count does not match degree squared");
  }
  for (uint8_t b : _bits) {
    if (b > 1) {
      throw std::invalid_argument("bits must be 0 or 1");
    }
  }
}

BinaryRelation BinaryRelation::identity(uint32_t degree) {
  std::vector<uint8_t> bits(static_cast<size_t>(degree) * degree, 0);
  for (uint32_t i = 0; i < degree; ++i) {
    bits[static_cast<size_t>(i) * degree + i] = 1;
  }
  return BinaryRelation(degree, std::move(bits));
}

namespace {

  void require_equal_degrees(uint32_t a, uint32_t b) {
    if (a != b) {
      throw std::invalid_argument("degree mismatch");
    }
  }

}  // namespace

Transformation compose(const Transformation& s, const Transformation& t) {
  require_equal_degrees(s.degree(), t.degree());
  uint32_t d = s.degree();
  std::vector<uint32_t> images(d);
  for (uint32_t x = 1; x <= d; ++x) {
    uint32_t mid = s.image(x);
    images[x - 1] = mid == Transformation::undefined ? Transformation::undefined : t.image(mid);
  }
  return Transformation(d, std::move(images));
}

namespace {

  struct UnionFind {
    explicit UnionFind(uint32_t n) : parent(n) {
      std::iota(parent.begin(), parent.end(), 0);
    }

    uint32_t find(uint32_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    }

    void unite(uint32_t a, uint32_t b) {
      parent[find(a)] = find(b);
    }

    std::vector<uint32_t> parent;
  };

}  // namespace

Bipartition compose(const Bipartition& a, const Bipartition& b) {
  require_equal_degrees(a.degree(), b.degree());
  uint32_t d = a.degree();
  // Stack a over b: nodes 0..d-1 are the result's top row, d..2d-1 the
  // glued middle row (a's bottom = b's top), 2d..3d-1 the result's bottom.
  UnionFind uf(3 * d);
  std::vector<uint32_t> first_of(2 * static_cast<size_t>(d), static_cast<uint32_t>(-1));
  for (uint32_t pos = 0; pos < 2 * d; ++pos) {
    uint32_t blk = a.block_of()[pos];
    if (first_of[blk] == static_cast<uint32_t>(-1)) {
      first_of[blk] = pos;
    } else {
      uf.unite(first_of[blk], pos);
    }
  }
  std::fill(first_of.begin(), first_of.end(), static_cast<uint32_t>(-1));
  for (uint32_t pos = 0; pos < 2 * d; ++pos) {
    uint32_t blk = b.block_of()[pos];
    uint32_t node = d + pos;  // b's top at d.., b's bottom at 2d..
    if (first_of[blk] == static_cast<uint32_t>(-1)) {
      first_of[blk] = node;
    } else {
      uf.unite(first_of[blk], node);
    }
  }
  std::vector<uint32_t> block_of(2 * static_cast<size_t>(d));
  std::vector<uint32_t> root_block(3 * static_cast<size_t>(d), static_cast<uint32_t>(-1));
  uint32_t next = 0;
  auto block_at = [&](uint32_t node) {
    uint32_t r = uf.find(node);
    if (root_block[r] == static_cast<uint32_t>(-1)) {
      root_block[r] = next++;
    }
    return root_block[r];
  };
  for (uint32_t i = 0; i < d; ++i) {
    block_of[i] = block_at(i);
  }
  for (uint32_t i = 0; i < d; ++i) {
    block_of[d + i] = block_at(2 * d + i);
  }
  return Bipartition(d, std::move(block_of));
}

BinaryRelation compose(const BinaryRelation& a, const BinaryRelation& b) {
  require_equal_degrees(a.degree(), b.degree());
  uint32_t d = a.degree();
  std::vector<uint8_t> bits(static_cast<size_t>(d) * d, 0);
  for (uint32_t i = 0; i < d; ++i) {
    for (uint32_t k = 0; k < d; ++k) {
      if (a.at(i, k)) {
        for (uint32_t j = 0; j < d; ++j) {
          bits[static_cast<size_t>(i) * d + j] |= b.at(k, j);
        }
      }
    }
  }
  return BinaryRelation(d, std::move(bits));
}

Element compose(const Element& a, const Element& b) {
  if (a.index() != b.index()) {
    throw std::invalid_argument("cannot compose elements of different kinds");
  }
  return std::visit(
      [&b](const auto& x) -> Element {
        return compose(x, std::get<std::decay_t<decltype(x)>>(b));
      },
      a);
}

namespace {

  void require_permutation(const Transformation& g, uint32_t degree) {
    if (g.degree() != degree) {
      throw std::invalid_argument("degree mismatch");
    }
    if (!g.is_permutation()) {
      throw std::invalid_argument("conjugation requires a permutation");
    }
  }

}  // namespace

Transformation conjugate(const Transformation& s, const Transformation& g) {
  require_permutation(g, s.degree());
  uint32_t d = s.degree();
  std::vector<uint32_t> images(d);
  for (uint32_t x = 1; x <= d; ++x) {
    uint32_t sx = s.image(x);
    images[g.image(x) - 1] = sx == Transformation::undefined ? Transformation::undefined
                                                             : g.image(sx);
  }
  return Transformation(d, std::move(images));
}

Bipartition conjugate(const Bipartition& a, const Transformation& g) {
  require_permutation(g, a.degree());
  uint32_t d = a.degree();
  std::vector<uint32_t> block_of(2 * static_cast<size_t>(d));
  for (uint32_t i = 1; i <= d; ++i) {
    block_of[g.image(i) - 1] = a.block_of()[i - 1];
    block_of[d + g.image(i) - 1] = a.block_of()[d + i - 1];
  }
  return Bipartition(d, std::move(block_of));
}

BinaryRelation conjugate(const BinaryRelation& r, const Transformation& g) {
  require_permutation(g, r.degree());
  uint32_t d = r.degree();
  std::vector<uint8_t> bits(static_cast<size_t>(d) * d, 0);
  for (uint32_t i = 0; i < d; ++i) {
    for (uint32_t j = 0; j < d; ++j) {
      if (r.at(i, j)) {
        bits[static_cast<size_t>(g.image(i + 1) - 1) * d + (g.image(j + 1) - 1)] = 1;
      }
    }
  }
  return BinaryRelation(d, std::move(bits));
}

Element conjugate(const Element& e, const Transformation& g) {
  return std::visit([&g](const auto& x) -> Element { return conjugate(x, g); }, e);
}

Bipartition flip(const Bipartition& a) {
  uint32_t d = a.degree();
  std::vector<uint32_t> block_of(a.block_of().begin() + d, a.block_of().end());
  block_of.insert(block_of.end(), a.block_of().begin(), a.block_of().begin() + d);
  return Bipartition(d, std::move(block_of));
}

BinaryRelation transpose(const BinaryRelation& r) {
  uint32_t d = r.degree();
  std::vector<uint8_t> bits(static_cast<size_t>(d) * d, 0);
  for (uint32_t i = 0; i < d; ++i) {
    for (uint32_t j = 0; j < d; ++j) {
      if (r.at(i, j)) {
        bits[static_cast<size_t>(j) * d + i] = 1;
      }
    }
  }
  return BinaryRelation(d, std::move(bits));
}

BinaryRelation relation_of(const Transformation& s) {
  uint32_t d = s.degree();
  std::vector<uint8_t> bits(static_cast<size_t>(d) * d, 0);
  for (uint32_t x = 1; x <= d; ++x) {
    if (s.image(x) != Transformation::undefined) {
      bits[static_cast<size_t>(x - 1) * d + (s.image(x) - 1)] = 1;
    }
  }
  return BinaryRelation(d, std::move(bits));
}

ElementKind kind_of(const Element& e) {
  switch (e.index()) {
    case 0: return ElementKind::transformation;
    case 1: return ElementKind::bipartition;
    default: return ElementKind::binary_relation;
  }
}

uint32_t degree_of(const Element& e) {
  return std::visit([](const auto& x) { return x.degree(); }, e);
}

namespace {

  void push_u16(std::string& out, uint32_t v) {
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>(v & 0xFF));
  }

}  // namespace

void encode(const Element& e, std::string& out) {
  out.clear();
  if (const auto* t = std::get_if<Transformation>(&e)) {
    out.push_back('T');
    push_u16(out, t->degree());
    for (uint32_t v : t->images()) {
      push_u16(out, v);
    }
  } else if (const auto* b = std::get_if<Bipartition>(&e)) {
    out.push_back('B');
    push_u16(out, b->degree());
    for (uint32_t v : b->block_of()) {
      push_u16(out, v);
    }
  } else {
    const auto& r = std::get<BinaryRelation>(e);
    out.push_back('R');
    push_u16(out, r.degree());
    for (uint8_t bit : r.bits()) {
      out.push_back(static_cast<char>(bit));
    }
  }
}

std::string encode(const Element& e) {
  std::string out;
  encode(e, out);
  return out;
}

std::string format_element(const Element& e) {
  std::ostringstream os;
  if (const auto* t = std::get_if<Transformation>(&e)) {
    os << '[';
    for (uint32_t x = 1; x <= t->degree(); ++x) {
      if (x > 1) {
        os << ',';
      }
      if (t->image(x) == Transformation::undefined) {
        os << '-';
      } else {
        os << t->image(x);
      }
    }
    os << ']';
  } else if (const auto* b = std::get_if<Bipartition>(&e)) {
    uint32_t d = b->degree();
    os << '{';
    // Blocks are numbered by first appearance in point order, so listing
    // block ids ascending lists blocks by least point.
    for (uint32_t blk = 0; blk < b->block_count(); ++blk) {
      if (blk > 0) {
        os << ',';
      }
      os << '{';
      bool first = true;
      for (uint32_t pos = 0; pos < 2 * d; ++pos) {
        if (b->block_of()[pos] != blk) {
          continue;
        }
        if (!first) {
          os << ',';
        }
        first = false;
        if (pos < d) {
          os << pos + 1;
        } else {
          os << pos - d + 1 << '\'';
        }
      }
      os << '}';
    }
    os << '}';
  } else {
    const auto& r = std::get<BinaryRelation>(e);
    for (uint32_t i = 0; i < r.degree(); ++i) {
      if (i > 0) {
        os << '|';
      }
      for (uint32_t j = 0; j < r.degree(); ++j) {
        os << (r.at(i, j) ? '1' : '0');
      }
    }
  }
  return os.str();
}

namespace {

  // Cursor over one element's text, reporting 1-based columns.
  struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line;

    void skip_space() {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) {
        ++pos;
      }
    }

    [[noreturn]] void fail(const std::string& msg) const {
      throw ParseError(msg, line, pos + 1);
    }

    char peek() {
      skip_space();
      if (pos >= text.size()) {
        fail("unexpected end of input");
      }
      return text[pos];
    }

    void expect(char c) {
      if (peek() != c) {
        fail(std::string("expected '") + c + "'");
      }
      ++pos;
    }

    bool try_consume(char c) {
      skip_space();
      if (pos < text.size() && text[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }

    uint32_t integer() {
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        fail("expected a number");
      }
      uint64_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<uint64_t>(text[pos] - '0');
        if (v > 0xFFFF) {
          fail("number too large");
        }
        ++pos;
      }
      return static_cast<uint32_t>(v);
    }

    void expect_end() {
      skip_space();
      if (pos < text.size()) {
        fail("unexpected trailing text");
      }
    }
  };

  Element parse_transformation(Cursor& cur) {
    cur.expect('[');
    std::vector<uint32_t> images;
    do {
      if (cur.try_consume('-')) {
        images.push_back(Transformation::undefined);
      } else {
        uint32_t v = cur.integer();
        if (v == 0) {
          cur.fail("image values are 1-based ('-' marks undefined)");
        }
        images.push_back(v);
      }
    } while (cur.try_consume(','));
    cur.expect(']');
    cur.expect_end();
    uint32_t d = static_cast<uint32_t>(images.size());
    for (uint32_t v : images) {
      if (v > d) {
        cur.fail("image value exceeds the degree " + std::to_string(d));
      }
    }
    return Transformation(d, std::move(images));
  }

  Element parse_bipartition(Cursor& cur) {
    cur.expect('{');
    // Collect blocks as (point, primed) lists, then infer the degree.
    std::vector<std::vector<std::pair<uint32_t, bool>>> blocks;
    do {
      cur.expect('{');
      std::vector<std::pair<uint32_t, bool>> block;
      do {
        uint32_t v = cur.integer();
        if (v == 0) {
          cur.fail("points are 1-based");
        }
        block.emplace_back(v, cur.try_consume('\''));
      } while (cur.try_consume(','));
      cur.expect('}');
      blocks.push_back(std::move(block));
    } while (cur.try_consume(','));
    cur.expect('}');
    cur.expect_end();
    uint32_t d = 0;
    for (const auto& block : blocks) {
      for (auto [v, primed] : block) {
        d = std::max(d, v);
      }
    }
    std::vector<uint32_t> block_of(2 * static_cast<size_t>(d), static_cast<uint32_t>(-1));
    for (uint32_t blk = 0; blk < blocks.size(); ++blk) {
      for (auto [v, primed] : blocks[blk]) {
        std::size_t pos = primed ? d + v - 1 : v - 1;
        if (block_of[pos] != static_cast<uint32_t>(-1)) {
          cur.fail("point listed twice: " + std::to_string(v) + (primed ? "'" : ""));
        }
        block_of[pos] = blk;
      }
    }
    for (uint32_t pos = 0; pos < block_of.size(); ++pos) {
      if (block_of[pos] == static_cast<uint32_t>(-1)) {
        uint32_t point = pos < d ? pos + 1 : pos - d + 1;
        cur.fail("point missing from the blocks: " + std::to_string(point)
                 + (pos < d ? "" : "'"));
      }
    }
    return Bipartition(d, std::move(block_of));
  }

  Element parse_relation(Cursor& cur) {
    std::vector<uint8_t> bits;
    std::size_t rows = 0;
    std::size_t row_len = 0;
    std::size_t current = 0;
    cur.skip_space();
    while (cur.pos < cur.text.size()) {
      char c = cur.text[cur.pos];
      if (c == '0' || c == '1') {
        bits.push_back(c == '1');
        ++current;
        ++cur.pos;
      } else if (c == '|') {
        if (rows == 0) {
          row_len = current;
        } else if (current != row_len) {
          cur.fail("rows have different lengths");
        }
        ++rows;
        current = 0;
        ++cur.pos;
      } else if (c == ' ' || c == '\t') {
        break;
      } else {
        cur.fail("expected '0', '1' or '|'");
      }
    }
    cur.expect_end();
    if (rows == 0) {
      row_len = current;
    } else if (current != row_len) {
      cur.fail("rows have different lengths");
    }
    ++rows;
    if (row_len == 0) {
      cur.fail("empty relation");
    }
    if (rows != row_len) {
      cur.fail("expected a square matrix, got " + std::to_string(rows) + " rows of "
               + std::to_string(row_len));
    }
    return BinaryRelation(static_cast<uint32_t>(row_len), std::move(bits));
  }

}  // namespace

Element parse_element(std::string_view text, ElementKind kind, std::size_t line) {
  Cursor cur{text, 0, line};
  switch (kind) {
    case ElementKind::transformation: return parse_transformation(cur);
    case ElementKind::bipartition: return parse_bipartition(cur);
    case ElementKind::binary_relation: return parse_relation(cur);
  }
  throw std::invalid_argument("unknown element kind");
}

}  // namespace sgembed
