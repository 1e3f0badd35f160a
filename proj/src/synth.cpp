#include "ramgrs/synth.hpp"

#include <random>
#include <string>

#include "ramgrs/errors.hpp"

namespace ramgrs {

namespace {

double unit_interval(std::mt19937_64& rng) {
  // 53 mantissa bits -> [0, 1); avoids distribution objects whose output is
  // implementation-defined.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string padded_id(const char* prefix, std::size_t j, std::size_t n) {
  std::size_t width = 1;
  for (std::size_t v = n; v >= 10; v /= 10) ++width;
  std::string num = std::to_string(j + 1);
  while (num.size() < width) num.insert(num.begin(), '0');
  return prefix + num;
}

}  // namespace

Dataset generate_uniform_dataset(std::size_t n, std::size_t m, std::size_t s,
                                 std::uint64_t seed) {
  if (n == 0 || m == 0 || s == 0) throw InputError("dataset dimensions must be positive");
  std::mt19937_64 rng(seed);
  std::vector<DmuRecord> records(n);
  for (std::size_t j = 0; j < n; ++j) {
    records[j].id = padded_id("U", j, n);
    records[j].inputs.resize(m);
    records[j].outputs.resize(s);
    for (std::size_t i = 0; i < m; ++i) records[j].inputs[i] = 1.0 + 99.0 * unit_interval(rng);
    for (std::size_t r = 0; r < s; ++r) records[j].outputs[r] = 1.0 + 99.0 * unit_interval(rng);
  }
  return Dataset::from_records(std::move(records));
}

Dataset generate_integer_dataset(std::size_t n, std::size_t m, std::size_t s,
                                 int lo, int hi, std::uint64_t seed) {
  if (n == 0 || m == 0 || s == 0) throw InputError("dataset dimensions must be positive");
  if (lo > hi || lo < 0) throw InputError("invalid integer data range");
  std::mt19937_64 rng(seed);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  auto draw = [&] { return static_cast<double>(lo + static_cast<int>(rng() % span)); };
  std::vector<DmuRecord> records(n);
  for (std::size_t j = 0; j < n; ++j) {
    records[j].id = padded_id("D", j, n);
    records[j].inputs.resize(m);
    records[j].outputs.resize(s);
    for (std::size_t i = 0; i < m; ++i) records[j].inputs[i] = draw();
    for (std::size_t r = 0; r < s; ++r) records[j].outputs[r] = draw();
  }
  return Dataset::from_records(std::move(records));
}

}  // namespace ramgrs
