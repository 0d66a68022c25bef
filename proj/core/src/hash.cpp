#include "ekv/hash.hpp"

#include <cstdio>

namespace ekv {

std::uint64_t instance_hash(const FiniteSpace& space, const Objective& f, std::string_view kind,
                            std::span<const double> params, PointId x0) {
  Fnv1a h;
  h.str(kind);
  h.u64(space.size());
  for (const auto& id : space.ids()) h.str(id);
  for (double v : space.matrix()) h.f64(v);
  h.u64(f.size());
  for (const ExtReal v : f.values()) h.f64(v.raw());
  h.u64(params.size());
  for (double p : params) h.f64(p);
  h.u64(x0);
  return h.value();
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ekv
