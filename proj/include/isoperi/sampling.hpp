#pragma once

// Seeded block sampling. Work is cut into fixed-size blocks, each with its
// own generator seeded from (seed, block index); workers pick up blocks and
// the caller reduces the per-block results in block order. Output therefore
// depends on (seed, samples) only, never on the worker count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <random>
#include <thread>
#include <vector>

namespace isoperi {

inline constexpr std::size_t kSampleBlock = std::size_t{1} << 16;

// splitmix64 finalizer over the pair.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller; portable, unlike std::normal_distribution.
double gaussian(Rng& rng);
// Uniform on the unit sphere.
std::vector<double> random_unit(std::size_t dim, Rng& rng);

// Calls body(rng, count, acc) once per block; returns the block
// accumulators in block order.
template <class Acc, class Body>
std::vector<Acc> run_blocks(std::size_t samples, std::uint64_t seed, unsigned workers, Body body) {
  const std::size_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<Acc> out(blocks);
  auto task = [&](std::size_t b) {
    Rng rng(mix_seed(seed, b));
    const std::size_t count = std::min(kSampleBlock, samples - b * kSampleBlock);
    body(rng, count, out[b]);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));
  if (workers == 1) {
    for (std::size_t b = 0; b < blocks; ++b) task(b);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t b = next++; b < blocks; b = next++) task(b);
    });
  for (auto& t : pool) t.join();
  return out;
}

// Runs f(i) for i in [0, count) on a pool; results land in index order.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, unsigned workers, F f) {
  std::vector<R> out(count);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          out[i] = f(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace isoperi
