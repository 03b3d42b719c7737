#include <doctest.h>

#include <string>
#include <vector>

#include "sgembed/closure.hpp"
#include "sgembed/elements.hpp"
#include "sgembed/errors.hpp"
#include "sgembed/families.hpp"

using namespace sgembed;

namespace {

Transformation t(std::vector<uint32_t> images) {
  const uint32_t degree = static_cast<uint32_t>(images.size());
  return Transformation(degree, std::move(images));
}

}  // namespace

TEST_CASE("close_generators discovery order is breadth-first and deterministic") {
  GeneratedTable g = close_generators({Element(t({2, 1})), Element(t({1, 1}))});
  REQUIRE(g.table.order() == 4);
  // generators first, then products by word length: [2,1]*[2,1] = [1,2],
  // then [1,1]*[2,1] = [2,2].
  CHECK(std::get<Transformation>(g.elements[0]).images() == std::vector<uint32_t>{2, 1});
  CHECK(std::get<Transformation>(g.elements[1]).images() == std::vector<uint32_t>{1, 1});
  CHECK(std::get<Transformation>(g.elements[2]).images() == std::vector<uint32_t>{1, 2});
  CHECK(std::get<Transformation>(g.elements[3]).images() == std::vector<uint32_t>{2, 2});
  // the table composes the payloads: index i * index j = index of their product
  for (uint32_t i = 0; i < 4; ++i) {
    for (uint32_t j = 0; j < 4; ++j) {
      Element product = compose(g.elements[i], g.elements[j]);
      CHECK(g.table.product(i, j) == g.find(product));
    }
  }
}

TEST_CASE("close_generators drops duplicate generators") {
  GeneratedTable g = close_generators({Element(t({2, 1})), Element(t({2, 1}))});
  CHECK(g.table.order() == 2);  // [2,1] and its square [1,2]
}

TEST_CASE("a single idempotent generator closes to the trivial semigroup") {
  GeneratedTable g = close_generators({Element(t({1, 1}))});
  CHECK(g.table.order() == 1);
  CHECK(g.table.product(0, 0) == 0);
}

TEST_CASE("standard generating sets reach the full monoid") {
  GeneratedTable t3 = close_generators(
      {Element(t({2, 3, 1})), Element(t({2, 1, 3})), Element(t({1, 1, 3}))});
  CHECK(t3.table.order() == 27);
}

TEST_CASE("closure is idempotent on a full element list") {
  GeneratedTable t2 = build_family(Family::full_transformation, 2);
  GeneratedTable again = close_generators(t2.elements);
  CHECK(again.table.order() == t2.table.order());
  CHECK(again.table == t2.table);  // canonical order in, canonical order out
}

TEST_CASE("closure of every full family list equals the tabulated table") {
  for (Family family : {Family::full_transformation, Family::temperley_lieb, Family::brauer}) {
    GeneratedTable direct = build_family(family, 3);
    GeneratedTable closed = close_generators(direct.elements);
    CHECK(closed.table == direct.table);
  }
}

TEST_CASE("growth cap aborts runaway closures") {
  CHECK_THROWS_AS(close_generators({Element(t({2, 1})), Element(t({1, 1}))}, 3), GrowthCapError);
  try {
    close_generators({Element(t({2, 1})), Element(t({1, 1}))}, 3);
  } catch (const GrowthCapError& e) {
    CHECK(e.cap == 3);
  }
}

TEST_CASE("close_indices and subtable induce the right subsemigroup") {
  CayleyTable t2 = read_table("4\n1 1 4 4\n1 2 3 4\n1 3 2 4\n1 4 1 4\n");
  // element 3 ([2,1]) squares to element 2 ([1,2]): a copy of Z2
  std::vector<uint32_t> seed{2};
  std::vector<uint32_t> closed = close_indices(t2, seed);
  CHECK(closed == std::vector<uint32_t>{1, 2});
  CayleyTable sub = subtable(t2, closed);
  CHECK(sub == read_table("2\n1 2\n2 1\n"));

  SUBCASE("already closed sets are returned as-is") {
    std::vector<uint32_t> all{0, 1, 2, 3};
    CHECK(close_indices(t2, all) == all);
  }
  SUBCASE("subtable of a non-closed set is rejected") {
    std::vector<uint32_t> open{2};
    CHECK_THROWS_AS(subtable(t2, open), std::invalid_argument);
  }
}

TEST_CASE("table_from_elements agrees across thread counts") {
  GeneratedTable p2 = build_family(Family::partition, 2);
  CayleyTable serial = table_from_elements(p2.elements, p2.index_of, 1);
  CayleyTable parallel = table_from_elements(p2.elements, p2.index_of, 4);
  CHECK(serial == parallel);
  CHECK(serial == p2.table);
}

TEST_CASE("read_generators parses all three kinds") {
  GeneratorFile f = read_generators("transformation 2\n[2,1]\n[1,1]\n");
  CHECK(f.kind == ElementKind::transformation);
  CHECK(f.degree == 2);
  REQUIRE(f.generators.size() == 2);
  CHECK(std::get<Transformation>(f.generators[0]).images() == std::vector<uint32_t>{2, 1});

  GeneratorFile b = read_generators("bipartition 2\n{{1,2},{1',2'}}\n");
  CHECK(b.kind == ElementKind::bipartition);
  REQUIRE(b.generators.size() == 1);

  GeneratorFile r = read_generators("binary-relation 2\n01|00\n");
  CHECK(r.kind == ElementKind::binary_relation);
  REQUIRE(r.generators.size() == 1);
  CHECK(std::get<BinaryRelation>(r.generators[0]).at(0, 1));
  CHECK_FALSE(std::get<BinaryRelation>(r.generators[0]).at(0, 0));

  SUBCASE("bad headers are parse errors") {
    CHECK_THROWS_AS(read_generators("frobnication 2\n"), ParseError);
    CHECK_THROWS_AS(read_generators("transformation 0\n[1]\n"), ParseError);
    CHECK_THROWS_AS(read_generators("transformation 2\n"), ParseError);
  }
  SUBCASE("degree mismatches inside the body are parse errors") {
    CHECK_THROWS_AS(read_generators("transformation 2\n[2,1,3]\n"), ParseError);
  }
}

TEST_CASE("GeneratedTable::find locates payloads and misses cleanly") {
  GeneratedTable t2 = build_family(Family::full_transformation, 2);
  CHECK(t2.find(Element(t({1, 2}))) == 1);
  GeneratedTable z2 = close_generators({Element(t({2, 1}))});
  CHECK(z2.find(Element(t({1, 1}))) == z2.table.order());
}
