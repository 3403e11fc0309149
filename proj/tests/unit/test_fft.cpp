#include <complex>
#include <random>
#include <vector>

#include "aus/fft.hpp"
#include "doctest.h"

using aus::dft_naive;
using aus::fft_pow2;
using Cplx = std::complex<double>;

namespace {

std::vector<Cplx> random_signal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  std::vector<Cplx> v(n);
  for (Cplx& z : v) z = Cplx(2.0 * unit() - 1.0, 2.0 * unit() - 1.0);
  return v;
}

}  // namespace

TEST_CASE("pow2 predicates") {
  CHECK(aus::is_pow2(1));
  CHECK(aus::is_pow2(2));
  CHECK(aus::is_pow2(1024));
  CHECK_FALSE(aus::is_pow2(0));
  CHECK_FALSE(aus::is_pow2(3));
  CHECK_FALSE(aus::is_pow2(1023));
  CHECK(aus::next_pow2(0) == 1);
  CHECK(aus::next_pow2(1) == 1);
  CHECK(aus::next_pow2(2) == 2);
  CHECK(aus::next_pow2(3) == 4);
  CHECK(aus::next_pow2(1025) == 2048);
}

TEST_CASE("fft matches the direct transform in both directions") {
  for (const std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(8), std::size_t(64),
                              std::size_t(256)}) {
    const std::vector<Cplx> v = random_signal(n, 0xF17 + n);
    for (const int dir : {+1, -1}) {
      std::vector<Cplx> got = v;
      fft_pow2(got, dir);
      const std::vector<Cplx> want = dft_naive(v, dir);
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
      CHECK(worst < 1e-11 * static_cast<double>(n));
    }
  }
}

TEST_CASE("forward then inverse recovers the signal up to the length factor") {
  const std::vector<Cplx> v = random_signal(128, 0xABC);
  std::vector<Cplx> w = v;
  fft_pow2(w, +1);
  fft_pow2(w, -1);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(w[i] / 128.0 - v[i]) < 1e-12);
}

TEST_CASE("long transforms stay accurate under the phase resync") {
  const std::size_t n = 1 << 14;
  std::vector<Cplx> v(n, Cplx(0.0, 0.0));
  v[3] = Cplx(1.0, 0.0);
  std::vector<Cplx> got = v;
  fft_pow2(got, +1);
  // A single tone transforms to pure phases of modulus one.
  for (std::size_t i = 0; i < n; i += 997) {
    const double ang = 2.0 * 3.14159265358979323846 * 3.0 * static_cast<double>(i) /
                       static_cast<double>(n);
    CHECK(std::abs(got[i] - std::polar(1.0, ang)) < 1e-12);
  }
}
