// Copyright 2026 The mmest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Keyed pseudorandom function and the counter streams built on it.
//
// Every random decision in the library is a deterministic function of a
// 64-bit key and a short tuple of integers. The PRF is SipHash-2-4 as exposed
// by libsodium's crypto_shorthash.

#include <sodium.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace mmest {

// Domain tags keep independent uses of one key apart.
enum class Domain : std::uint64_t {
  kStream = 1,
  kVertex = 2,
  kEdge = 3,
  kTrial = 4,
  kShuffle = 5,
  kSampler = 6,
  kRank = 7,
  kGraph = 8,
  kPrefix = 9,
  kCoin = 10,
};

namespace detail {

inline void store_le(unsigned char* out, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(x >> (8 * i));
}

inline std::uint64_t load_le(const unsigned char* in) {
  std::uint64_t x = 0;
  for (int i = 7; i >= 0; --i) x = (x << 8) | in[i];
  return x;
}

inline bool sodium_ready() {
  static const bool ok = sodium_init() >= 0;
  return ok;
}

}  // namespace detail

static_assert(crypto_shorthash_KEYBYTES == 16);
static_assert(crypto_shorthash_BYTES == 8);

// prf(key, tag, a, b, c, e): 64 pseudorandom bits.
inline std::uint64_t prf(std::uint64_t key, Domain tag, std::uint64_t a,
                         std::uint64_t b = 0, std::uint64_t c = 0,
                         std::uint64_t e = 0) {
  if (!detail::sodium_ready()) throw std::runtime_error("libsodium init failed");
  unsigned char k[16];
  detail::store_le(k, key);
  detail::store_le(k + 8, 0x6d6d657374ULL);
  unsigned char msg[40];
  detail::store_le(msg, static_cast<std::uint64_t>(tag));
  detail::store_le(msg + 8, a);
  detail::store_le(msg + 16, b);
  detail::store_le(msg + 24, c);
  detail::store_le(msg + 32, e);
  unsigned char out[8];
  crypto_shorthash(out, msg, sizeof msg, k);
  return detail::load_le(out);
}

// Child seed for trial i of an experiment seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i,
                                 std::uint64_t salt = 0) {
  return prf(seed, Domain::kTrial, i, salt);
}

// Counter-mode stream: the n-th draw is prf(key, tag, id, sub, n).
// Satisfies UniformRandomBitGenerator.
class PrfStream {
 public:
  using result_type = std::uint64_t;

  PrfStream() = default;
  PrfStream(std::uint64_t key, Domain tag, std::uint64_t id = 0,
            std::uint64_t sub = 0)
      : key_(key), tag_(tag), id_(id), sub_(sub) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    return prf(key_, tag_, id_, sub_, counter_++);
  }

  // Uniform integer in [0, n). Lemire's multiply-and-reject; exact.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    std::uint64_t x = (*this)();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        x = (*this)();
        m = static_cast<unsigned __int128>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_ = 0;
  Domain tag_ = Domain::kStream;
  std::uint64_t id_ = 0;
  std::uint64_t sub_ = 0;
  std::uint64_t counter_ = 0;
};

// Exact Binomial(n, p) by CDF inversion on uniform draws from `rng`.
// Large means are split into independent chunks of mean <= 64 so that the
// starting probability (1-p)^k never underflows.
template <class Rng>
std::uint64_t sample_binomial(std::uint64_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial p");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - sample_binomial(n, 1.0 - p, rng);
  const double q = 1.0 - p;
  const double ratio = p / q;
  const auto chunk = static_cast<std::uint64_t>(
      std::max(1.0, std::floor(64.0 / p)));
  std::uint64_t total = 0;
  std::uint64_t left = n;
  while (left > 0) {
    const std::uint64_t k = left < chunk ? left : chunk;
    left -= k;
    double u = rng.uniform();
    double pmf = std::exp(static_cast<double>(k) * std::log1p(-p));
    std::uint64_t x = 0;
    while (u >= pmf && x < k) {
      u -= pmf;
      pmf *= ratio * static_cast<double>(k - x) / static_cast<double>(x + 1);
      ++x;
    }
    total += x;
  }
  return total;
}

}  // namespace mmest
