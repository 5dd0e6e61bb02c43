#include "trapwalk/sampler.hpp"

#include <bit>
#include <cmath>

namespace trapwalk {

TrapSampler::TrapSampler(const TrappingDistribution& d) {
  const auto& v = d.variant();
  if (const auto* det = std::get_if<Deterministic>(&v)) {
    constant_ = true;
    constant_value_ = det->tau0;
    return;
  }
  if (const auto* e = std::get_if<Exponential>(&v)) {
    // cut where P(T > cut) <= 2^-32; the remainder restarts at cut + 1
    const double n = std::ceil(32.0 * std::log(2.0) / -std::log(e->lambda));
    cut_ = static_cast<Tau>(std::max(0.0, n - 1.0));
    mode_ = TailMode::Restart;
  } else if (const auto* z = std::get_if<PowerLawZeta>(&v)) {
    cut_ = kZetaCut;
    mode_ = TailMode::Pareto;
    q_ = z->q;
    ratio_at_origin_ = envelope_ratio(static_cast<double>(cut_) + 2.0);
  } else {
    cut_ = *d.support_max();
    mode_ = TailMode::None;
  }

  exceed_.resize(cut_ + 1);
  if (mode_ == TailMode::Pareto) {
    // sum upward from the certified tail so small values keep full precision
    double acc = d.tail(cut_ + 1);
    for (Tau t = cut_ + 1; t-- > 0;) {
      exceed_[t] = acc;
      acc += d.pmf(t);
    }
  } else {
    for (Tau t = 0; t <= cut_; ++t) exceed_[t] = d.tail(t + 1);
  }
  if (mode_ == TailMode::None) exceed_[cut_] = 0.0;

  const std::size_t g = std::bit_ceil(std::min<std::size_t>(std::max<std::size_t>(exceed_.size(), 16),
                                                            std::size_t{1} << 20));
  guide_.resize(g);
  guide_scale_ = static_cast<double>(g);
  Tau tau = 0;
  for (std::size_t i = 0; i < g; ++i) {
    const double u = 1.0 - static_cast<double>(i) / guide_scale_;
    while (tau <= cut_ && exceed_[tau] >= u) ++tau;
    guide_[i] = static_cast<std::uint32_t>(tau);
  }
}

double TrapSampler::envelope_ratio(double k) const {
  // k^-q over the integral of y^-q on [k, k+1]
  return (q_ - 1.0) / (k * -std::expm1((1.0 - q_) * std::log1p(1.0 / k)));
}

Tau TrapSampler::operator()(PhiloxStream& rng) const {
  if (constant_) return constant_value_;
  Tau offset = 0;
  for (;;) {
    const double v = rng.uniform_pos();
    const auto i = static_cast<std::size_t>((1.0 - v) * guide_scale_);
    Tau tau = guide_[i];
    while (tau <= cut_ && exceed_[tau] >= v) ++tau;
    if (tau <= cut_) return offset + tau;
    if (mode_ == TailMode::Pareto) return tail_draw(rng);
    // geometric: T - (cut + 1) given T > cut has the original law
    offset += cut_ + 1;
    if (offset >= kSaturated) return kSaturated;
  }
}

Tau TrapSampler::tail_draw(PhiloxStream& rng) const {
  const double origin = static_cast<double>(cut_) + 2.0;  // k = T + 1 >= origin
  const double inv = -1.0 / (q_ - 1.0);
  for (;;) {
    const double y = origin * std::pow(rng.uniform_pos(), inv);
    const double accept = rng.uniform_pos();
    if (!(y < static_cast<double>(kSaturated))) return kSaturated;
    const double k = std::floor(y);
    if (accept * ratio_at_origin_ <= envelope_ratio(k)) return static_cast<Tau>(k) - 1;
  }
}

}  // namespace trapwalk
