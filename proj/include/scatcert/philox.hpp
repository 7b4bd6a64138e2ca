#pragma once

#include <array>
#include <cstdint>

namespace scatcert {

// Philox4x32-10 (Salmon et al., SC'11). Stateless: a (counter, key) pair maps
// to four 32-bit words, so any stream position can be computed directly.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }
};

// Sequential uniform doubles in (0, 1) from one Philox stream. The stream is
// fixed by (key, c1, c2, c3); word 0 of the counter advances.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint32_t c1, std::uint32_t c2, std::uint32_t c3)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, c1, c2, c3} {}

  double uniform() {
    if (pos_ == 4) refill();
    const std::uint64_t hi = buf_[pos_++];
    const std::uint64_t lo = buf_[pos_++];
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

 private:
  void refill() {
    buf_ = Philox4x32::block(ctr_, key_);
    ++ctr_[0];
    pos_ = 0;
  }

  Philox4x32::Key key_;
  Philox4x32::Counter ctr_;
  Philox4x32::Counter buf_{};
  int pos_ = 4;
};

}  // namespace scatcert
