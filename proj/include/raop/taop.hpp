#pragma once

// Traditional (binary) assortment optimization.

#include <cstddef>
#include <cstdint>
#include <span>

#include "raop/instance.hpp"

namespace raop {

inline constexpr std::size_t kDefaultEnumCap = 25;

// Bit i set means product i is offered in full.
struct AssortmentSubset {
  std::uint64_t mask = 0;

  RefinementVector to_refinement(std::size_t n) const;
  static AssortmentSubset from_refinement(std::span<const double> x);
};

struct EnumerationOptions {
  std::size_t cap = kDefaultEnumCap;
  int threads = 0;
};

// Exact TAOP optimum over all 2^n subsets; revenue ties go to the smallest
// bitmask. Throws SizeLimit when n exceeds the cap. Parallel over fixed
// Gray-code chunks, so the answer does not depend on the thread count.
SolveResult enumerate_taop(const Instance& instance, const EnumerationOptions& options = {});

// Best of the nested sets e^0 (empty), e^1, ..., e^n.
SolveResult revenue_ordered(const Instance& instance);

// Optimal assortment for a single MNL segment via the revenue-ordered scan.
SolveResult mnl_segment_optimum(const MNLSegment& segment, std::span<const double> r);

namespace reference {

// Plain loop over masks in increasing order with full re-evaluation.
SolveResult enumerate_taop(const Instance& instance, std::size_t cap = kDefaultEnumCap);

}  // namespace reference

}  // namespace raop
