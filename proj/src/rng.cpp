#include "bmt/rng.hpp"

#include <set>

namespace bmt {

FiniteSequence draw_sequence(Rng& rng, CoefficientLaw law, long radius, long sparse_k) {
  const long len = 2 * radius + 1;
  std::vector<cplx> v(static_cast<size_t>(len), cplx{0.0, 0.0});
  switch (law) {
    case CoefficientLaw::GAUSSIAN:
      for (auto& z : v) z = rng.cnormal();
      break;
    case CoefficientLaw::SPARSE: {
      std::set<long> pos;
      while (static_cast<long>(pos.size()) < std::min(sparse_k, len))
        pos.insert(rng.uniform_int(0, len - 1));
      for (long i : pos) v[static_cast<size_t>(i)] = rng.cnormal();
      break;
    }
    case CoefficientLaw::RADEMACHER:
      for (auto& z : v) z = cplx{rng.rademacher(), 0.0};
      break;
  }
  return FiniteSequence(-radius, std::move(v));
}

} // namespace bmt
