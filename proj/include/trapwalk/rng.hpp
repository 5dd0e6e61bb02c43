#pragma once

#include <array>
#include <cstdint>

namespace trapwalk {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random stream keyed by (seed, stream id).
///
/// The key is the 64-bit seed; the upper counter half is the stream id and the
/// lower half counts blocks. Streams with different ids never overlap, so walker
/// i of an ensemble sees the same numbers no matter which thread runs it.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_{static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)} {}

  std::uint64_t next_u64() {
    if (cached_ == 0) refill();
    --cached_;
    return buffer_[cached_];
  }

  /// Uniform on (0, 1] with 53 random bits.
  double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// One fair bit; bits are drawn from a buffered word, least significant first.
  bool next_bit() {
    if (bits_left_ == 0) {
      bits_ = next_u64();
      bits_left_ = 64;
    }
    const bool b = bits_ & 1u;
    bits_ >>= 1;
    --bits_left_;
    return b;
  }

  std::uint64_t blocks_used() const { return block_; }

 private:
  void refill() {
    const auto out = philox4x32_10({static_cast<std::uint32_t>(block_),
                                    static_cast<std::uint32_t>(block_ >> 32), stream_[0], stream_[1]},
                                   key_);
    ++block_;
    // consumed back to front, so store the first word last
    buffer_[1] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    buffer_[0] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    cached_ = 2;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int cached_ = 0;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

}  // namespace trapwalk
