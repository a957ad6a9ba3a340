#include <boxlogic/logic.hpp>

#include <boxlogic/errors.hpp>

#include <bit>

namespace boxlogic {

EvenSetLogic even_set_logic(std::size_t k) {
  if (k < 1 || k > 6) throw CapExceeded("even-set logic supports 1 <= k <= 6");
  const std::size_t ground = 2 * k;
  std::vector<PointSet> family;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground); ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    PointSet s(ground);
    for (std::size_t i = 0; i < ground; ++i) {
      if ((mask >> i) & 1) s.set(i);
    }
    family.push_back(std::move(s));
  }
  return {k, Logic::from_family(ground, std::move(family))};
}

}  // namespace boxlogic
