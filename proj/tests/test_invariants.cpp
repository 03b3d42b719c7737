#include <doctest.h>

#include <numeric>
#include <random>

#include "sgembed/cayley_table.hpp"
#include "sgembed/closure.hpp"
#include "sgembed/invariants.hpp"
#include "sgembed/kernels.hpp"

#include "corpus.hpp"

using namespace sgembed;
using namespace testsupport;

namespace {

const char* kT2Text = "4\n1 1 4 4\n1 2 3 4\n1 3 2 4\n1 4 1 4\n";

CayleyTable z_n(uint32_t n) {
  return cyclic_group(n);
}

}  // namespace

TEST_CASE("index_period minimal pairs") {
  CayleyTable t2 = read_table(kT2Text);
  // idempotents have index-period (1,1)
  CHECK(index_period(t2, 0) == IndexPeriod{1, 1});
  CHECK(index_period(t2, 1) == IndexPeriod{1, 1});
  CHECK(index_period(t2, 3) == IndexPeriod{1, 1});
  // the transposition satisfies a^3 = a, a^2 != a
  CHECK(index_period(t2, 2) == IndexPeriod{1, 2});
  CHECK(index_period(z_n(2), 1) == IndexPeriod{1, 2});
  CHECK(index_period(z_n(4), 1) == IndexPeriod{1, 4});

  // [1,1,2] squares to the constant [1,1,1], which is idempotent
  GeneratedTable t3 = close_generators(
      {Element(Transformation(3, {2, 3, 1})), Element(Transformation(3, {2, 1, 3})),
       Element(Transformation(3, {1, 1, 3}))});
  uint32_t idx = t3.find(Element(Transformation(3, {1, 1, 2})));
  REQUIRE(idx < t3.table.order());
  CHECK(index_period(t3.table, idx) == IndexPeriod{2, 1});

  CHECK_THROWS_AS(index_period(t2, 4), std::invalid_argument);
  CHECK_THROWS_AS(element_profile(t2, 4), std::invalid_argument);
}

TEST_CASE("element_profile counts the table") {
  CayleyTable t2 = read_table(kT2Text);
  ElementProfile first = element_profile(t2, 0);
  CHECK(first.frequency == 6);
  CHECK(first.diagonal_frequency == 1);
  CHECK(first.row_frequency == 2);
  CHECK(first.column_frequency == 4);
  CHECK(first.index_period == IndexPeriod{1, 1});
  CHECK(first.is_idempotent);

  // the identity [1,2]: appears at (2,2) and, as a value, at (3,3) too
  ElementProfile identity = element_profile(t2, 1);
  CHECK(identity.frequency == 2);
  CHECK(identity.diagonal_frequency == 2);
  CHECK(identity.row_frequency == 1);
  CHECK(identity.column_frequency == 1);
  CHECK(identity.is_idempotent);

  ElementProfile trivial = element_profile(CayleyTable(1, {0}), 0);
  CHECK(trivial.frequency == 1);
  CHECK(trivial.diagonal_frequency == 1);
  CHECK(trivial.row_frequency == 1);
  CHECK(trivial.column_frequency == 1);
  CHECK(trivial.index_period == IndexPeriod{1, 1});
}

TEST_CASE("profile counting identities hold corpus-wide") {
  for (const CayleyTable& t : corpus_targets()) {
    uint32_t n = t.order();
    std::vector<ElementProfile> profiles = element_profiles(t);
    uint64_t frequency_sum = 0;
    uint64_t diagonal_sum = 0;
    for (const ElementProfile& p : profiles) {
      frequency_sum += p.frequency;
      diagonal_sum += p.diagonal_frequency;
      CHECK(p.frequency >= p.row_frequency);
      CHECK(p.frequency >= p.column_frequency);
      CHECK(p.row_frequency <= n);
      CHECK(p.column_frequency <= n);
      CHECK(p.diagonal_frequency <= n);
    }
    CHECK(frequency_sum == static_cast<uint64_t>(n) * n);
    CHECK(diagonal_sum == n);
  }
}

TEST_CASE("profile kernels: parallel equals serial") {
  for (const CayleyTable& t : corpus_targets()) {
    auto serial = kernels::profiles_serial(t);
    CHECK(kernels::profiles_parallel(t, 2) == serial);
    CHECK(kernels::profiles_parallel(t, 4) == serial);
  }
}

TEST_CASE("table_profile basics") {
  TableProfile z2 = table_profile(z_n(2));
  CHECK(z2.order == 2);
  CHECK(z2.frequencies == std::vector<uint32_t>{2, 2});
  CHECK(z2.idempotent_count == 1);

  TableProfile t2 = table_profile(read_table(kT2Text));
  CHECK(t2.idempotent_count == 3);
}

TEST_CASE("table_profile is relabeling-invariant: 200 random permutations") {
  std::mt19937 rng(31337);
  const CayleyTable t2 = read_table(kT2Text);
  const CayleyTable smat = matrix_example();
  const TableProfile t2_profile = table_profile(t2);
  const TableProfile smat_profile = table_profile(smat);
  const auto t2_elements = element_profiles(t2);
  const auto smat_elements = element_profiles(smat);
  for (int round = 0; round < 200; ++round) {
    const CayleyTable& base = (round % 2 == 0) ? t2 : smat;
    uint32_t n = base.order();
    std::vector<uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CayleyTable moved = relabel(base, perm);
    CHECK(table_profile(moved) == ((round % 2 == 0) ? t2_profile : smat_profile));
    auto moved_elements = element_profiles(moved);
    const auto& base_elements = (round % 2 == 0) ? t2_elements : smat_elements;
    for (uint32_t i = 0; i < n; ++i) {
      CHECK(moved_elements[perm[i]] == base_elements[i]);
    }
  }
}

TEST_CASE("first_profile_difference names the first differing field") {
  TableProfile a = table_profile(z_n(2));
  CHECK(first_profile_difference(a, a).empty());
  CHECK(first_profile_difference(a, table_profile(z_n(3))) == "order");
  // both order-4 groups have every frequency equal to 4; the squares differ
  CHECK(first_profile_difference(table_profile(z_n(4)), table_profile(klein_four()))
        == "diagonal-frequencies");
}

TEST_CASE("profile_report is deterministic") {
  CayleyTable t2 = read_table(kT2Text);
  std::string report = profile_report(table_profile(t2));
  CHECK(report == profile_report(table_profile(t2)));
  CHECK(report.find("order") != std::string::npos);
}

TEST_CASE("build_partition matches classes by key") {
  CayleyTable z2 = z_n(2);
  CayleyTable t2 = read_table(kT2Text);
  PartitionOutcome outcome = build_partition(z2, t2, PartitionMode::embedding);
  REQUIRE(outcome.partition.has_value());
  const ClassPartition& partition = *outcome.partition;
  CHECK(partition.mode == PartitionMode::embedding);
  REQUIRE(partition.classes.size() == 2);
  // classes are sorted by key: (1,1) before (1,2)
  CHECK(partition.classes[0].key.index_period == IndexPeriod{1, 1});
  CHECK(partition.classes[0].source_elements == std::vector<uint32_t>{0});
  CHECK(partition.classes[0].target_elements == std::vector<uint32_t>{0, 1, 3});
  CHECK(partition.classes[1].key.index_period == IndexPeriod{1, 2});
  CHECK(partition.classes[1].source_elements == std::vector<uint32_t>{1});
  CHECK(partition.classes[1].target_elements == std::vector<uint32_t>{2});
  CHECK(partition.target_only_keys.empty());
}

TEST_CASE("build_partition reports infeasibility with the violated key") {
  PartitionOutcome outcome =
      build_partition(z_n(3), read_table(kT2Text), PartitionMode::embedding);
  CHECK_FALSE(outcome.partition.has_value());
  CHECK(outcome.infeasible_reason.find("period=3") != std::string::npos);
}

TEST_CASE("target-only keys are harmless for embeddings") {
  // the target has idempotents *and* period-3 elements; Z2 needs none of
  // the latter
  GeneratedTable t3 = close_generators(
      {Element(Transformation(3, {2, 3, 1})), Element(Transformation(3, {2, 1, 3})),
       Element(Transformation(3, {1, 1, 3}))});
  PartitionOutcome outcome = build_partition(z_n(2), t3.table, PartitionMode::embedding);
  REQUIRE(outcome.partition.has_value());
  CHECK_FALSE(outcome.partition->target_only_keys.empty());
}

TEST_CASE("isomorphism partition of a table against itself is exact") {
  CayleyTable smat = matrix_example();
  PartitionOutcome outcome = build_partition(smat, smat, PartitionMode::isomorphism);
  REQUIRE(outcome.partition.has_value());
  for (const auto& cls : outcome.partition->classes) {
    CHECK(cls.source_elements == cls.target_elements);
  }
  CHECK(outcome.partition->target_only_keys.empty());
}

TEST_CASE("isomorphism-mode feasibility is symmetric") {
  const auto& targets = corpus_targets();
  for (std::size_t a = 0; a < targets.size(); ++a) {
    for (std::size_t b = 0; b < targets.size(); ++b) {
      bool ab = build_partition(targets[a], targets[b], PartitionMode::isomorphism)
                    .partition.has_value();
      bool ba = build_partition(targets[b], targets[a], PartitionMode::isomorphism)
                    .partition.has_value();
      CHECK(ab == ba);
    }
  }
}

TEST_CASE("falling_factorial and search_space_size are exact") {
  CHECK(falling_factorial(10, 5) == 30240);
  CHECK(falling_factorial(5, 0) == 1);
  CHECK(falling_factorial(12, 12) == 479001600);
  for (uint64_t n = 0; n <= 12; ++n) {
    for (uint64_t m = 0; m <= n; ++m) {
      Bigint direct = 1;
      for (uint64_t x = n - m + 1; x <= n; ++x) {
        direct *= x;
      }
      CHECK(falling_factorial(n, m) == direct);
    }
  }

  auto single_class = [](uint32_t m, uint32_t n) {
    ClassPartition p;
    p.mode = PartitionMode::embedding;
    ClassPartition::Class cls;
    for (uint32_t i = 0; i < m; ++i) {
      cls.source_elements.push_back(i);
    }
    for (uint32_t i = 0; i < n; ++i) {
      cls.target_elements.push_back(i);
    }
    p.classes.push_back(cls);
    return p;
  };
  CHECK(search_space_size(single_class(5, 10)) == 30240);

  ClassPartition two = single_class(2, 3);
  ClassPartition::Class second;
  second.source_elements = {10, 11, 12};
  second.target_elements = {20, 21, 22, 23, 24};
  two.classes.push_back(second);
  CHECK(search_space_size(two) == 360);  // 3!/1! * 5!/2!
}

TEST_CASE("the fifteen-element closure sizes its search spaces") {
  GeneratedTable g = close_generators(
      {Element(Transformation(3, {2, 1, 1})), Element(Transformation(3, {2, 3, 2})),
       Element(Transformation(3, {3, 1, 3}))});
  REQUIRE(g.table.order() == 15);

  // an isomorphic copy by an arbitrary fixed relabeling
  std::vector<uint32_t> perm(15);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(99);
  std::shuffle(perm.begin(), perm.end(), rng);
  CayleyTable copy = relabel(g.table, perm);

  PartitionOutcome embed = build_partition(g.table, copy, PartitionMode::embedding);
  REQUIRE(embed.partition.has_value());
  CHECK(embed.partition->classes.size() == 3);
  CHECK(search_space_size(*embed.partition) == 2903040);

  PartitionOutcome iso = build_partition(g.table, copy, PartitionMode::isomorphism);
  REQUIRE(iso.partition.has_value());
  CHECK(iso.partition->classes.size() == 7);
  CHECK(search_space_size(*iso.partition) == 768);
}
