#include "sgembed/families.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sgembed/errors.hpp"

namespace sgembed {

std::optional<Family> family_from_name(std::string_view name) {
  if (name == "T") return Family::full_transformation;
  if (name == "S") return Family::symmetric_group;
  if (name == "PT") return Family::partial_transformation;
  if (name == "I") return Family::symmetric_inverse;
  if (name == "P") return Family::partition;
  if (name == "Brauer") return Family::brauer;
  if (name == "TL") return Family::temperley_lieb;
  if (name == "Istar") return Family::dual_symmetric_inverse;
  if (name == "BinRel") return Family::binary_relation;
  return std::nullopt;
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::full_transformation: return "T";
    case Family::symmetric_group: return "S";
    case Family::partial_transformation: return "PT";
    case Family::symmetric_inverse: return "I";
    case Family::partition: return "P";
    case Family::brauer: return "Brauer";
    case Family::temperley_lieb: return "TL";
    case Family::dual_symmetric_inverse: return "Istar";
    case Family::binary_relation: return "BinRel";
  }
  return "?";
}

ElementKind family_kind(Family family) {
  switch (family) {
    case Family::full_transformation:
    case Family::symmetric_group:
    case Family::partial_transformation:
    case Family::symmetric_inverse: return ElementKind::transformation;
    case Family::partition:
    case Family::brauer:
    case Family::temperley_lieb:
    case Family::dual_symmetric_inverse: return ElementKind::bipartition;
    case Family::binary_relation: return ElementKind::binary_relation;
  }
  return ElementKind::transformation;
}

namespace {

  Bigint factorial(uint32_t n) {
    Bigint out = 1;
    for (uint32_t i = 2; i <= n; ++i) {
      out *= i;
    }
    return out;
  }

  Bigint power(Bigint base, uint32_t exp) {
    Bigint out = 1;
    for (uint32_t i = 0; i < exp; ++i) {
      out *= base;
    }
    return out;
  }

  Bigint binomial(uint32_t n, uint32_t k) {
    if (k > n) {
      return 0;
    }
    Bigint out = 1;
    for (uint32_t i = 0; i < k; ++i) {
      out *= n - i;
      out /= i + 1;
    }
    return out;
  }

  Bigint bell(uint32_t n) {
    // Bell triangle.
    std::vector<Bigint> row = {1};
    for (uint32_t i = 1; i <= n; ++i) {
      std::vector<Bigint> next;
      next.reserve(i + 1);
      next.push_back(row.back());
      for (const Bigint& v : row) {
        next.push_back(next.back() + v);
      }
      row = std::move(next);
    }
    return row.front();
  }

  Bigint double_factorial_odd(uint32_t d) {
    // (2d - 1)!! = 1 * 3 * ... * (2d - 1)
    Bigint out = 1;
    for (uint32_t i = 1; i < 2 * d; i += 2) {
      out *= i;
    }
    return out;
  }

  Bigint catalan(uint32_t d) {
    return binomial(2 * d, d) / (d + 1);
  }

  // Stirling numbers of the second kind S(n, 0..n).
  std::vector<Bigint> stirling2_row(uint32_t n) {
    std::vector<Bigint> row = {1};  // S(0,0) = 1
    for (uint32_t i = 1; i <= n; ++i) {
      std::vector<Bigint> next(i + 1, 0);
      for (uint32_t k = 1; k <= i; ++k) {
        next[k] = row[k - 1];
        if (k < row.size()) {
          next[k] += row[k] * k;
        }
      }
      row = std::move(next);
    }
    return row;
  }

}  // namespace

Bigint family_order(Family family, uint32_t degree) {
  if (degree == 0) {
    throw std::invalid_argument("degree must be at least 1");
  }
  switch (family) {
    case Family::full_transformation: return power(degree, degree);
    case Family::symmetric_group: return factorial(degree);
    case Family::partial_transformation: return power(degree + 1, degree);
    case Family::symmetric_inverse: {
      Bigint out = 0;
      for (uint32_t k = 0; k <= degree; ++k) {
        out += binomial(degree, k) * binomial(degree, k) * factorial(k);
      }
      return out;
    }
    case Family::partition: return bell(2 * degree);
    case Family::brauer: return double_factorial_odd(degree);
    case Family::temperley_lieb: return catalan(degree);
    case Family::dual_symmetric_inverse: {
      auto s2 = stirling2_row(degree);
      Bigint out = 0;
      for (uint32_t k = 1; k <= degree; ++k) {
        out += s2[k] * s2[k] * factorial(k);
      }
      return out;
    }
    case Family::binary_relation: return power(2, degree * degree);
  }
  throw std::invalid_argument("unknown family");
}

namespace {

  // Every tuple in {low..high}^len, ascending; the visitor sees each once.
  template <typename F>
  void for_each_tuple(uint32_t len, uint32_t low, uint32_t high, F&& visit) {
    std::vector<uint32_t> tuple(len, low);
    while (true) {
      visit(tuple);
      uint32_t pos = len;
      while (pos > 0 && tuple[pos - 1] == high) {
        tuple[--pos] = low;
      }
      if (pos == 0) {
        return;
      }
      ++tuple[pos - 1];
    }
  }

  // Every restricted growth string of the length (set partitions in
  // canonical block numbering), in ascending lexicographic order.
  template <typename F>
  void for_each_rgs(uint32_t len, F&& visit) {
    std::vector<uint32_t> rgs(len, 0);
    std::vector<uint32_t> max_prefix(len + 1, 0);  // 1 + max of rgs[0..i-1]
    max_prefix[0] = 0;
    while (true) {
      for (uint32_t i = 0; i < len; ++i) {
        max_prefix[i + 1] = std::max(max_prefix[i], rgs[i] + 1);
      }
      visit(rgs);
      uint32_t pos = len;
      while (pos > 1 && rgs[pos - 1] == max_prefix[pos - 1]) {
        rgs[--pos] = 0;
      }
      if (pos <= 1) {
        return;
      }
      ++rgs[pos - 1];
    }
  }

  bool all_blocks_size_two(const std::vector<uint32_t>& rgs) {
    std::vector<uint32_t> count;
    for (uint32_t b : rgs) {
      if (b >= count.size()) {
        count.resize(b + 1, 0);
      }
      if (++count[b] > 2) {
        return false;
      }
    }
    return std::all_of(count.begin(), count.end(), [](uint32_t c) { return c == 2; });
  }

  // Non-crossing check on the circle: top points 0..d-1 left to right, then
  // bottom points right to left, so chords of a planar diagram never
  // interleave.
  bool is_planar_matching(const std::vector<uint32_t>& rgs, uint32_t d) {
    uint32_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::pair<uint32_t, uint32_t>> chord(blocks, {UINT32_MAX, UINT32_MAX});
    for (uint32_t pos = 0; pos < 2 * d; ++pos) {
      uint32_t circle = pos < d ? pos : 3 * d - 1 - pos;
      auto& c = chord[rgs[pos]];
      if (c.first == UINT32_MAX) {
        c.first = circle;
      } else {
        c.second = circle;
      }
    }
    for (auto& c : chord) {
      if (c.first > c.second) {
        std::swap(c.first, c.second);
      }
    }
    for (uint32_t a = 0; a < blocks; ++a) {
      for (uint32_t b = a + 1; b < blocks; ++b) {
        bool a_in_b = chord[b].first < chord[a].first && chord[a].first < chord[b].second;
        bool a2_in_b = chord[b].first < chord[a].second && chord[a].second < chord[b].second;
        if (a_in_b != a2_in_b) {
          return false;
        }
      }
    }
    return true;
  }

  bool every_block_meets_both_rows(const std::vector<uint32_t>& rgs, uint32_t d) {
    uint32_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<uint8_t> top(blocks, 0);
    std::vector<uint8_t> bottom(blocks, 0);
    for (uint32_t pos = 0; pos < 2 * d; ++pos) {
      (pos < d ? top : bottom)[rgs[pos]] = 1;
    }
    for (uint32_t b = 0; b < blocks; ++b) {
      if (!top[b] || !bottom[b]) {
        return false;
      }
    }
    return true;
  }

  std::vector<Element> enumerate_family(Family family, uint32_t degree) {
    std::vector<Element> out;
    uint32_t d = degree;
    switch (family) {
      case Family::full_transformation:
        for_each_tuple(d, 1, d, [&](const std::vector<uint32_t>& t) {
          out.emplace_back(Transformation(d, t));
        });
        break;
      case Family::symmetric_group: {
        std::vector<uint32_t> t(d);
        std::iota(t.begin(), t.end(), 1);
        do {
          out.emplace_back(Transformation(d, t));
        } while (std::next_permutation(t.begin(), t.end()));
        break;
      }
      case Family::partial_transformation:
        for_each_tuple(d, 0, d, [&](const std::vector<uint32_t>& t) {
          out.emplace_back(Transformation(d, t));
        });
        break;
      case Family::symmetric_inverse:
        for_each_tuple(d, 0, d, [&](const std::vector<uint32_t>& t) {
          Transformation candidate(d, t);
          if (candidate.is_injective()) {
            out.emplace_back(std::move(candidate));
          }
        });
        break;
      case Family::partition:
        for_each_rgs(2 * d, [&](const std::vector<uint32_t>& rgs) {
          out.emplace_back(Bipartition(d, rgs));
        });
        break;
      case Family::brauer:
        for_each_rgs(2 * d, [&](const std::vector<uint32_t>& rgs) {
          if (all_blocks_size_two(rgs)) {
            out.emplace_back(Bipartition(d, rgs));
          }
        });
        break;
      case Family::temperley_lieb:
        for_each_rgs(2 * d, [&](const std::vector<uint32_t>& rgs) {
          if (all_blocks_size_two(rgs) && is_planar_matching(rgs, d)) {
            out.emplace_back(Bipartition(d, rgs));
          }
        });
        break;
      case Family::dual_symmetric_inverse:
        for_each_rgs(2 * d, [&](const std::vector<uint32_t>& rgs) {
          if (every_block_meets_both_rows(rgs, d)) {
            out.emplace_back(Bipartition(d, rgs));
          }
        });
        break;
      case Family::binary_relation:
        for_each_tuple(d * d, 0, 1, [&](const std::vector<uint32_t>& bits) {
          out.emplace_back(BinaryRelation(d, std::vector<uint8_t>(bits.begin(), bits.end())));
        });
        break;
    }
    return out;
  }

}  // namespace

GeneratedTable build_family(Family family, uint32_t degree, std::size_t cap, int threads) {
  Bigint order = family_order(family, degree);
  if (order > cap) {
    std::ostringstream os;
    os << "family " << family_name(family) << " at degree " << degree << " (order " << order
       << ")";
    throw GrowthCapError(cap, os.str());
  }
  GeneratedTable out;
  out.degree = degree;
  out.elements = enumerate_family(family, degree);
  if (Bigint(out.elements.size()) != order) {
    throw std::logic_error("family enumeration does not match the order formula");
  }
  std::sort(out.elements.begin(), out.elements.end(), [](const Element& a, const Element& b) {
    return encode(a) < encode(b);
  });
  out.index_of.reserve(out.elements.size());
  std::string key;
  for (uint32_t i = 0; i < out.elements.size(); ++i) {
    encode(out.elements[i], key);
    if (!out.index_of.emplace(key, i).second) {
      throw std::logic_error("family enumeration produced a duplicate element");
    }
  }
  out.table = table_from_elements(out.elements, out.index_of, threads);
  return out;
}

std::vector<std::vector<uint32_t>> conjugation_action(const GeneratedTable& table) {
  uint32_t n = table.table.order();
  if (table.elements.size() != n || n == 0) {
    throw UnsupportedActionError("conjugation requires element payloads");
  }
  uint32_t d = table.degree;
  std::vector<std::vector<uint32_t>> perms;
  std::vector<uint32_t> g(d);
  std::iota(g.begin(), g.end(), 1);
  std::string key;
  do {
    Transformation perm(d, g);
    std::vector<uint32_t> pi(n);
    for (uint32_t i = 0; i < n; ++i) {
      encode(conjugate(table.elements[i], perm), key);
      auto it = table.index_of.find(key);
      if (it == table.index_of.end()) {
        throw UnsupportedActionError("the table is not closed under conjugation by degree-"
                                     + std::to_string(d) + " permutations");
      }
      pi[i] = it->second;
    }
    perms.push_back(std::move(pi));
  } while (std::next_permutation(g.begin(), g.end()));
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  return perms;
}

std::optional<std::vector<uint32_t>> duality_action(const GeneratedTable& table) {
  uint32_t n = table.table.order();
  if (table.elements.size() != n || n == 0) {
    return std::nullopt;
  }
  std::vector<uint32_t> out(n);
  std::string key;
  for (uint32_t i = 0; i < n; ++i) {
    const Element& e = table.elements[i];
    if (const auto* b = std::get_if<Bipartition>(&e)) {
      encode(flip(*b), key);
    } else if (const auto* r = std::get_if<BinaryRelation>(&e)) {
      encode(transpose(*r), key);
    } else {
      return std::nullopt;  // transformations carry no canonical duality
    }
    auto it = table.index_of.find(key);
    if (it == table.index_of.end()) {
      return std::nullopt;  // not closed under the flip
    }
    out[i] = it->second;
  }
  return out;
}

}  // namespace sgembed
