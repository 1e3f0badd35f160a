#include "ramgrs/util.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ramgrs {

void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  if (jobs <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  unsigned workers = jobs;
  if (workers > count) workers = static_cast<unsigned>(count);

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

std::string format_with_precision(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

}  // namespace

std::string format_double_exact(double v) {
  for (int p = 1; p <= 17; ++p) {
    std::string s = format_with_precision(v, p);
    if (std::strtod(s.c_str(), nullptr) == v) return s;
  }
  return format_with_precision(v, 17);
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  std::string s = format_with_precision(v, 12);
  return std::strtod(s.c_str(), nullptr);
}

}  // namespace ramgrs
