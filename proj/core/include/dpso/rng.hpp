#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace dpso {

// Counter-based random source. Every uniform draw the optimizer makes is a
// pure function of where it is made (seed, run, iteration, particle, slot),
// so results do not depend on evaluation order or thread count.

enum class SlotKind : std::uint32_t {
  R1 = 0,       // cognitive coefficient draw
  R2 = 1,       // social coefficient draw
  R3 = 2,       // modulation draw
  InitDim = 3,  // initial position, coordinate k
  R1Dim = 4,    // per-coordinate cognitive draw (optional mode)
  R2Dim = 5,    // per-coordinate social draw (optional mode)
};

struct Slot {
  SlotKind kind = SlotKind::R1;
  std::uint32_t index = 0;  // coordinate for the *Dim kinds, 0 otherwise

  static constexpr Slot r1() { return {SlotKind::R1, 0}; }
  static constexpr Slot r2() { return {SlotKind::R2, 0}; }
  static constexpr Slot r3() { return {SlotKind::R3, 0}; }
  static constexpr Slot init(std::uint32_t k) { return {SlotKind::InitDim, k}; }
  static constexpr Slot r1_dim(std::uint32_t k) { return {SlotKind::R1Dim, k}; }
  static constexpr Slot r2_dim(std::uint32_t k) { return {SlotKind::R2Dim, k}; }

  // 4 bits of kind, 28 bits of coordinate.
  constexpr std::uint32_t code() const {
    return (static_cast<std::uint32_t>(kind) << 28) | (index & 0x0FFFFFFFu);
  }
  friend constexpr bool operator==(const Slot&, const Slot&) = default;
};

inline constexpr std::uint64_t kDefaultMasterSeed = 42;

/// Run index, iteration and particle are used modulo 2^32.
struct DrawAddress {
  std::uint64_t master_seed = kDefaultMasterSeed;
  std::uint64_t run_index = 0;
  std::uint64_t iteration = 0;
  std::uint64_t particle = 0;
  Slot slot{};
};

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Uniform in [0, 1) with 53 random bits.
double uniform01(const DrawAddress& addr);

/// lb_k + u_k (ub_k - lb_k), u_k drawn at slot InitDim(k) of
/// (seed, run, iteration 0, particle). Throws BoundsInverted, LengthMismatch.
std::vector<double> uniform_box(std::uint64_t master_seed, std::uint64_t run_index, std::uint64_t particle,
                                std::span<const double> lb, std::span<const double> ub);

/// Allocation-free variant writing into out (same length as lb).
void uniform_box_into(std::uint64_t master_seed, std::uint64_t run_index, std::uint64_t particle,
                      std::span<const double> lb, std::span<const double> ub, std::span<double> out);

}  // namespace dpso
