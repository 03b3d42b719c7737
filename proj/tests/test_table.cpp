#include <doctest.h>

#include <random>
#include <string>

#include "sgembed/cayley_table.hpp"
#include "sgembed/errors.hpp"
#include "sgembed/kernels.hpp"

#include "corpus.hpp"
#include "oracle.hpp"

using namespace sgembed;
using namespace testsupport;

namespace {

const std::string kT2Text = "4\n1 1 4 4\n1 2 3 4\n1 3 2 4\n1 4 1 4\n";

}  // namespace

TEST_CASE("table constructor rejects bad shapes") {
  CHECK_THROWS_AS(CayleyTable(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(CayleyTable(2, {0, 1, 1}), std::invalid_argument);
  CHECK_NOTHROW(CayleyTable(2, {0, 1, 1, 0}));
}

TEST_CASE("read_table parses the canonical format") {
  CayleyTable z2 = read_table("2\n1 2\n2 1\n");
  CHECK(z2.order() == 2);
  CHECK(z2.product(0, 0) == 0);
  CHECK(z2.product(0, 1) == 1);
  CHECK(z2.product(1, 1) == 0);

  SUBCASE("comments and blank lines are skipped") {
    CayleyTable t = read_table("# a comment\n\n2\n1 2 # trailing\n\n2 1\n");
    CHECK(t == z2);
  }
  SUBCASE("missing trailing newline is fine") {
    CHECK(read_table("2\n1 2\n2 1") == z2);
  }
}

TEST_CASE("read_table reports precise errors") {
  CHECK_THROWS_AS(read_table(""), ParseError);
  CHECK_THROWS_AS(read_table("x\n"), ParseError);
  CHECK_THROWS_AS(read_table("2\n1 2\n"), ParseError);        // missing row
  CHECK_THROWS_AS(read_table("2\n1 2 1\n2 1\n"), ParseError); // extra entry
  CHECK_THROWS_AS(read_table("2\n1 2\n2 1\n3\n"), ParseError);
  CHECK_THROWS_AS(read_table("0\n"), ParseError);

  SUBCASE("out-of-range entry names row, column and value") {
    try {
      read_table("2\n1 3\n2 1\n");
      FAIL("expected MalformedTableError");
    } catch (const MalformedTableError& e) {
      CHECK(e.row == 1);
      CHECK(e.column == 2);
      CHECK(e.value == 3);
      CHECK(e.order == 2);
    }
  }
}

TEST_CASE("write_table round-trips and matches the golden text") {
  CayleyTable t2 = read_table(kT2Text);
  CHECK(write_table(t2) == kT2Text);
  CHECK(read_table(write_table(t2)) == t2);

  for (const CayleyTable& t : corpus_targets()) {
    CHECK(read_table(write_table(t)) == t);
  }
}

TEST_CASE("validate_associativity accepts semigroups") {
  CHECK(validate_associativity(read_table("2\n1 2\n2 1\n")));
  CHECK(validate_associativity(read_table(kT2Text)));
  for (const CayleyTable& t : corpus_targets()) {
    CHECK(validate_associativity(t));
  }
}

TEST_CASE("validate_associativity reports the first bad triple in scan order") {
  CayleyTable bad = read_table("2\n1 2\n1 1\n");
  AssocCounterexample fail;
  CHECK_FALSE(validate_associativity(bad, &fail));
  // (2*1)*2 = 2 but 2*(1*2) = 1, and no earlier row-major triple fails.
  CHECK(fail == AssocCounterexample{1, 0, 1, false});
}

TEST_CASE("validate_associativity flags out-of-range entries before triples") {
  CayleyTable bad(2, {0, 2, 1, 0});
  AssocCounterexample fail;
  CHECK_FALSE(validate_associativity(bad, &fail));
  CHECK(fail.out_of_range);
  CHECK(fail.i == 0);
  CHECK(fail.j == 1);
}

TEST_CASE("validate_associativity agrees with the naive oracle on random tables") {
  std::mt19937 rng(20240811);
  for (int round = 0; round < 100; ++round) {
    uint32_t n = 1 + rng() % 5;
    std::vector<uint32_t> entries(static_cast<std::size_t>(n) * n);
    if (round % 2 == 0) {
      // random table, usually non-associative
      for (auto& e : entries) {
        e = rng() % n;
      }
    } else {
      // a valid semigroup with one mutated cell (possibly out of range)
      CayleyTable base = chain_semilattice(n);
      entries = base.entries();
      entries[rng() % entries.size()] = rng() % (n + 1);
    }
    CayleyTable t(n, entries);
    AssocCounterexample expected;
    AssocCounterexample actual;
    bool expected_ok = naive_assoc(t, &expected);
    bool actual_ok = validate_associativity(t, &actual);
    CHECK(expected_ok == actual_ok);
    if (!expected_ok) {
      CHECK(expected == actual);
    }
  }
}

TEST_CASE("associativity kernels: parallel equals serial, counterexample included") {
  std::mt19937 rng(7);
  std::vector<CayleyTable> cases = corpus_targets();
  for (int round = 0; round < 20; ++round) {
    uint32_t n = 2 + rng() % 4;
    std::vector<uint32_t> entries(static_cast<std::size_t>(n) * n);
    for (auto& e : entries) {
      e = rng() % n;
    }
    cases.emplace_back(n, entries);
  }
  for (const CayleyTable& t : cases) {
    AssocCounterexample serial_fail;
    AssocCounterexample parallel_fail;
    bool serial_ok = kernels::assoc_serial(t, &serial_fail);
    for (int threads : {2, 4}) {
      bool parallel_ok = kernels::assoc_parallel(t, &parallel_fail, threads);
      CHECK(serial_ok == parallel_ok);
      if (!serial_ok) {
        CHECK(serial_fail == parallel_fail);
      }
    }
  }
}

TEST_CASE("relabel renames consistently") {
  CayleyTable t2 = read_table(kT2Text);
  std::vector<uint32_t> identity{0, 1, 2, 3};
  CHECK(relabel(t2, identity) == t2);

  std::vector<uint32_t> perm{2, 0, 3, 1};
  CayleyTable moved = relabel(t2, perm);
  CHECK(moved != t2);
  // applying the inverse relabeling restores the table
  std::vector<uint32_t> inverse(4);
  for (uint32_t i = 0; i < 4; ++i) {
    inverse[perm[i]] = i;
  }
  CHECK(relabel(moved, inverse) == t2);
  // a relabeled semigroup is still a semigroup
  CHECK(validate_associativity(moved));
}

TEST_CASE("corpus enumeration sizes are the known semigroup counts") {
  CHECK(all_semigroups(1).size() == 1);
  CHECK(all_semigroups(2).size() == 8);
  CHECK(all_semigroups(3).size() == 113);
  CHECK(corpus_sources().size() == 122);
}
