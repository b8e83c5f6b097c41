#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

namespace levylab {

/// FNV-1a hash of a label, used to name random substreams.
constexpr std::uint64_t stream_tag(std::string_view label) noexcept {
  std::uint64_t h = UINT64_C(0xCBF29CE484222325);
  for (const char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= UINT64_C(0x100000001B3);
  }
  return h;
}

/// Worker count from LEVYLAB_WORKERS, else the hardware concurrency.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("LEVYLAB_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<std::size_t>(n);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Evaluates f(0), ..., f(n-1) on `workers` threads and returns the results in
/// index order. Each call must depend only on its index (derive its random
/// stream from it), which makes the output independent of scheduling. The
/// exception of the lowest failing index is rethrown.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, F&& f, std::size_t workers = worker_count()) {
  std::vector<std::optional<R>> slots(n);
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_index = n;
  std::exception_ptr err;
  constexpr std::size_t chunk = 16;

  const auto work = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          slots[i].emplace(f(i));
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (i < err_index) {
            err_index = i;
            err = std::current_exception();
          }
        }
      }
    }
  };

  workers = std::max<std::size_t>(1, std::min(workers, (n + chunk - 1) / chunk));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);

  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace levylab
