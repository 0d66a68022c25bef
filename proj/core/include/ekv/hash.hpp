#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "ekv/objective.hpp"
#include "ekv/space.hpp"

namespace ekv {

/// 64-bit FNV-1a accumulator.
class Fnv1a {
 public:
  void bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

/// Digest of (space, objective, kind, params, x0) over a canonical byte
/// encoding. Certificates and oracle results carry it so that cross-checks
/// can refuse mismatched runs.
std::uint64_t instance_hash(const FiniteSpace& space, const Objective& f, std::string_view kind,
                            std::span<const double> params, PointId x0);

std::string hash_hex(std::uint64_t h);

}  // namespace ekv
