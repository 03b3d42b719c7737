#include "sgembed/invariants.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sgembed/kernels.hpp"

namespace sgembed {

IndexPeriod index_period(const CayleyTable& table, uint32_t element) {
  if (element >= table.order()) {
    throw std::invalid_argument("element index out of range");
  }
  // First repeat in the power sequence a, a^2, ...: if a^e is the first
  // power seen twice and was first seen as a^s, then (m, r) = (s, e - s).
  std::vector<uint32_t> seen(table.order(), 0);
  uint32_t power = element;
  uint32_t exponent = 1;
  while (seen[power] == 0) {
    seen[power] = exponent;
    power = table.product(power, element);
    ++exponent;
  }
  return {seen[power], exponent - seen[power]};
}

ElementProfile element_profile(const CayleyTable& table, uint32_t element) {
  if (element >= table.order()) {
    throw std::invalid_argument("element index out of range");
  }
  uint32_t n = table.order();
  ElementProfile out;
  out.index_period = index_period(table, element);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      out.frequency += table.product(i, j) == element;
    }
    out.diagonal_frequency += table.product(i, i) == element;
    out.row_frequency += table.product(element, i) == element;
    out.column_frequency += table.product(i, element) == element;
  }
  out.is_idempotent = table.product(element, element) == element;
  return out;
}

std::vector<ElementProfile> element_profiles(const CayleyTable& table, int threads) {
  if (threads > 1) {
    return kernels::profiles_parallel(table, threads);
  }
  return kernels::profiles_serial(table);
}

TableProfile table_profile(const CayleyTable& table, int threads) {
  auto profiles = element_profiles(table, threads);
  TableProfile out;
  out.order = table.order();
  for (const auto& p : profiles) {
    out.frequencies.push_back(p.frequency);
    out.diagonal_frequencies.push_back(p.diagonal_frequency);
    out.row_frequencies.push_back(p.row_frequency);
    out.column_frequencies.push_back(p.column_frequency);
    if (p.is_idempotent) {
      ++out.idempotent_count;
      out.idempotent_frequencies.push_back(p.frequency);
    }
  }
  std::sort(out.frequencies.begin(), out.frequencies.end());
  std::sort(out.diagonal_frequencies.begin(), out.diagonal_frequencies.end());
  std::sort(out.row_frequencies.begin(), out.row_frequencies.end());
  std::sort(out.column_frequencies.begin(), out.column_frequencies.end());
  std::sort(out.idempotent_frequencies.begin(), out.idempotent_frequencies.end());
  std::sort(profiles.begin(), profiles.end());
  out.element_profiles = std::move(profiles);
  return out;
}

std::string first_profile_difference(const TableProfile& a, const TableProfile& b) {
  if (a.order != b.order) {
    return "order";
  }
  if (a.frequencies != b.frequencies) {
    return "frequencies";
  }
  if (a.diagonal_frequencies != b.diagonal_frequencies) {
    return "diagonal-frequencies";
  }
  if (a.row_frequencies != b.row_frequencies) {
    return "row-frequencies";
  }
  if (a.column_frequencies != b.column_frequencies) {
    return "column-frequencies";
  }
  if (a.idempotent_count != b.idempotent_count) {
    return "idempotent-count";
  }
  if (a.idempotent_frequencies != b.idempotent_frequencies) {
    return "idempotent-frequencies";
  }
  if (a.element_profiles != b.element_profiles) {
    return "element-profiles";
  }
  return "";
}

namespace {

  void print_sorted(std::ostringstream& os, const char* label, const std::vector<uint32_t>& v) {
    os << label << ':';
    for (uint32_t x : v) {
      os << ' ' << x;
    }
    os << '\n';
  }

  std::string profile_key_string(const ElementProfile& p) {
    std::ostringstream os;
    os << "(index=" << p.index_period.index << ", period=" << p.index_period.period
       << ", freq=" << p.frequency << ", diag=" << p.diagonal_frequency
       << ", row=" << p.row_frequency << ", col=" << p.column_frequency << ")";
    return os.str();
  }

}  // namespace

std::string profile_report(const TableProfile& profile) {
  std::ostringstream os;
  os << "order: " << profile.order << '\n';
  os << "idempotents: " << profile.idempotent_count << '\n';
  print_sorted(os, "frequencies", profile.frequencies);
  print_sorted(os, "diagonal frequencies", profile.diagonal_frequencies);
  print_sorted(os, "row frequencies", profile.row_frequencies);
  print_sorted(os, "column frequencies", profile.column_frequencies);
  print_sorted(os, "idempotent frequencies", profile.idempotent_frequencies);
  os << "element profiles:\n";
  for (size_t i = 0; i < profile.element_profiles.size();) {
    size_t j = i;
    while (j < profile.element_profiles.size()
           && profile.element_profiles[j] == profile.element_profiles[i]) {
      ++j;
    }
    os << "  " << (j - i) << " x " << profile_key_string(profile.element_profiles[i]) << '\n';
    i = j;
  }
  return os.str();
}

std::string ClassKey::to_string() const {
  if (profile.has_value()) {
    return profile_key_string(*profile);
  }
  std::ostringstream os;
  os << "(index=" << index_period.index << ", period=" << index_period.period << ")";
  return os.str();
}

PartitionOutcome build_partition(const CayleyTable& source,
                                 const CayleyTable& target,
                                 PartitionMode mode,
                                 int threads) {
  auto sprof = element_profiles(source, threads);
  auto tprof = element_profiles(target, threads);
  auto key_of = [mode](const ElementProfile& p) {
    ClassKey key{p.index_period, std::nullopt};
    if (mode == PartitionMode::isomorphism) {
      key.profile = p;
    }
    return key;
  };
  std::map<ClassKey, std::pair<std::vector<uint32_t>, std::vector<uint32_t>>> classes;
  for (uint32_t i = 0; i < source.order(); ++i) {
    classes[key_of(sprof[i])].first.push_back(i);
  }
  for (uint32_t i = 0; i < target.order(); ++i) {
    classes[key_of(tprof[i])].second.push_back(i);
  }
  ClassPartition partition;
  partition.mode = mode;
  for (auto& [key, pair] : classes) {
    auto& [src, tgt] = pair;
    if (src.empty()) {
      partition.target_only_keys.push_back(key);
      if (mode == PartitionMode::isomorphism) {
        return {std::nullopt, "target class " + key.to_string() + " has no matching source class"};
      }
      continue;
    }
    if (tgt.empty()) {
      return {std::nullopt, "source class " + key.to_string() + " has no matching target class"};
    }
    bool ok = mode == PartitionMode::embedding ? src.size() <= tgt.size() : src.size() == tgt.size();
    if (!ok) {
      std::ostringstream os;
      os << "source class " << key.to_string() << " has " << src.size()
         << " elements but the target class has " << tgt.size();
      return {std::nullopt, os.str()};
    }
    partition.classes.push_back({key, std::move(src), std::move(tgt)});
  }
  return {std::move(partition), ""};
}

Bigint falling_factorial(uint64_t n, uint64_t k) {
  if (k > n) {
    return 0;
  }
  Bigint out = 1;
  for (uint64_t i = 0; i < k; ++i) {
    out *= n - i;
  }
  return out;
}

Bigint search_space_size(const ClassPartition& partition) {
  Bigint out = 1;
  for (const auto& cls : partition.classes) {
    out *= falling_factorial(cls.target_elements.size(), cls.source_elements.size());
  }
  return out;
}

}  // namespace sgembed
