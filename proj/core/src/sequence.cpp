#include "ekv/sequence.hpp"

namespace ekv {

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(SeparationClass c) {
  switch (c) {
    case SeparationClass::not_t0: return "not_T0";
    case SeparationClass::t0_not_t1: return "T0_not_T1";
    case SeparationClass::t1: return "T1";
  }
  return "?";
}

std::vector<double> default_eps_schedule() {
  std::vector<double> eps;
  double e = 0.5;
  for (int k = 0; k < 10; ++k, e *= 0.5) eps.push_back(e);
  return eps;
}

SeparationClass separation_class(const FiniteSpace& space) {
  bool t1 = true;
  for (PointId x = 0; x < space.size(); ++x) {
    for (PointId y = 0; y < space.size(); ++y) {
      if (x == y || space(x, y) != 0.0) continue;
      if (space(y, x) == 0.0) return SeparationClass::not_t0;
      t1 = false;
    }
  }
  return t1 ? SeparationClass::t1 : SeparationClass::t0_not_t1;
}

std::vector<PointId> random_right_cauchy_sequence(const FiniteSpace& space, std::mt19937_64& rng,
                                                  std::size_t transient_max, std::size_t settle) {
  const std::size_t n = space.size();
  std::vector<PointId> seq;
  const std::size_t transient = uniform_index(rng, 0, transient_max);
  for (std::size_t k = 0; k < transient; ++k) seq.push_back(uniform_index(rng, 0, n - 1));

  std::vector<PointId> cand(n);
  for (PointId p = 0; p < n; ++p) cand[p] = p;

  auto is_class = [&] {
    for (PointId a : cand)
      for (PointId b : cand)
        if (space(a, b) != 0.0) return false;
    return true;
  };
  auto shrink_by = [&](PointId w) {
    std::erase_if(cand, [&](PointId y) { return space(y, w) != 0.0; });
  };

  std::size_t guard = 0;
  while (!is_class()) {
    PointId w = cand[uniform_index(rng, 0, cand.size() - 1)];
    if (++guard > 64 * n) {
      // force progress: pick a point that excludes someone
      for (PointId c : cand) {
        if (std::any_of(cand.begin(), cand.end(), [&](PointId y) { return space(y, c) != 0.0; })) {
          w = c;
          break;
        }
      }
    }
    seq.push_back(w);
    shrink_by(w);
  }
  const std::size_t settle_len = std::max(settle, 3 * seq.size() + 1);
  for (std::size_t k = 0; k < settle_len; ++k) seq.push_back(cand[uniform_index(rng, 0, cand.size() - 1)]);
  return seq;
}

}  // namespace ekv
