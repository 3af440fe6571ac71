#include "coxglue/braidrep.hpp"

namespace coxglue {

std::vector<BraidWord> pure_braid_generators(const CoxeterSystem& sys) {
  std::vector<BraidWord> out;
  out.reserve(sys.order() * static_cast<std::size_t>(sys.rank()));
  for (std::uint32_t i = 0; i < sys.order(); ++i) {
    const Word& w = sys.word(sys.element(i));
    for (int s = 0; s < sys.rank(); ++s) {
      BraidWord b;
      for (int letter : w) b.push_back({letter, false});
      b.push_back({s, false});
      b.push_back({s, false});
      for (auto it = w.rbegin(); it != w.rend(); ++it) b.push_back({*it, true});
      out.push_back(std::move(b));
    }
  }
  return out;
}

}  // namespace coxglue
