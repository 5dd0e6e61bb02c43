#pragma once

#include <cstdint>
#include <vector>

#include "trapwalk/distribution.hpp"
#include "trapwalk/rng.hpp"

namespace trapwalk {

/// Exact sampler for a trapping-time law.
///
/// Inverse CDF over a prefix table [0, cut] with a guide table for O(1) lookup.
/// Mass beyond the prefix is handled per law: geometric laws restart past the
/// cut (memorylessness), zeta laws draw from a discretised Pareto envelope with
/// an exact accept/reject step, finite laws have none.
class TrapSampler {
 public:
  /// Draws at least this large are reported as this value.
  static constexpr Tau kSaturated = Tau{1} << 62;
  /// Prefix length for zeta laws.
  static constexpr Tau kZetaCut = Tau{1} << 20;

  explicit TrapSampler(const TrappingDistribution& d);

  Tau operator()(PhiloxStream& rng) const;

 private:
  enum class TailMode { None, Restart, Pareto };

  Tau tail_draw(PhiloxStream& rng) const;
  double envelope_ratio(double k) const;

  std::vector<double> exceed_;  // exceed_[tau] = P(T > tau) for tau <= cut_
  std::vector<std::uint32_t> guide_;
  double guide_scale_ = 1.0;
  Tau cut_ = 0;
  TailMode mode_ = TailMode::None;
  bool constant_ = false;
  Tau constant_value_ = 0;
  double q_ = 0.0;
  double ratio_at_origin_ = 1.0;
};

}  // namespace trapwalk
