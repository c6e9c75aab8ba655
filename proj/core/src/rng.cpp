#include "dpso/rng.hpp"

#include "dpso/error.hpp"

namespace dpso {
namespace {

constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline PhiloxCounter round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMulA, c[0], hi0, lo0);
  mulhilo(kMulB, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeylA;
      key[1] += kWeylB;
    }
    counter = round(counter, key);
  }
  return counter;
}

double uniform01(const DrawAddress& addr) {
  const PhiloxCounter ctr = {addr.slot.code(), static_cast<std::uint32_t>(addr.particle),
                             static_cast<std::uint32_t>(addr.iteration),
                             static_cast<std::uint32_t>(addr.run_index)};
  const PhiloxKey key = {static_cast<std::uint32_t>(addr.master_seed),
                         static_cast<std::uint32_t>(addr.master_seed >> 32)};
  const PhiloxCounter out = philox4x32_10(ctr, key);
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void uniform_box_into(std::uint64_t master_seed, std::uint64_t run_index, std::uint64_t particle,
                      std::span<const double> lb, std::span<const double> ub, std::span<double> out) {
  if (lb.size() != ub.size() || out.size() != lb.size()) {
    throw LengthMismatch("uniform_box: lb, ub and output lengths differ");
  }
  for (std::size_t k = 0; k < lb.size(); ++k) {
    if (!(lb[k] <= ub[k])) throw BoundsInverted("uniform_box: lb > ub at coordinate " + std::to_string(k));
  }
  DrawAddress addr{master_seed, run_index, 0, particle, {}};
  for (std::size_t k = 0; k < lb.size(); ++k) {
    addr.slot = Slot::init(static_cast<std::uint32_t>(k));
    out[k] = lb[k] + uniform01(addr) * (ub[k] - lb[k]);
  }
}

std::vector<double> uniform_box(std::uint64_t master_seed, std::uint64_t run_index, std::uint64_t particle,
                                std::span<const double> lb, std::span<const double> ub) {
  std::vector<double> out(lb.size());
  uniform_box_into(master_seed, run_index, particle, lb, ub, out);
  return out;
}

}  // namespace dpso
