#pragma once

#include <cstdint>

#include "ramgrs/dataset.hpp"

namespace ramgrs {

// Seeded synthetic datasets. Values are produced by an explicit integer ->
// double transform (not std::uniform_*_distribution), so identical seeds give
// bit-identical datasets on any platform.

/// n units with m inputs and s outputs drawn uniformly from [1, 100].
Dataset generate_uniform_dataset(std::size_t n, std::size_t m, std::size_t s,
                                 std::uint64_t seed);

/// Integer-valued data drawn uniformly from {lo, ..., hi}.
Dataset generate_integer_dataset(std::size_t n, std::size_t m, std::size_t s,
                                 int lo, int hi, std::uint64_t seed);

}  // namespace ramgrs
