#include "ban/duality.hpp"

namespace ban {

DualityResult check_and_or_duality(int l, int r, Sign left, Sign right,
                                   const UpdateMode& mode, const Caps& caps) {
  const DoubleCycleDescriptor conj{l, r, left, right, Junction::And};
  DoubleCycleDescriptor disj = conj;
  disj.junction = Junction::Or;
  const TransitionGraph a(canonical_double_cycle(conj), mode, caps);
  const TransitionGraph b(canonical_double_cycle(disj), mode, caps);
  const int n = a.width();
  const std::uint64_t all = full_set(n);

  DualityResult result;
  // Both graphs carry one arc per (vertex, label), so comparing the targets
  // label by label is a complete isomorphism check.
  std::vector<std::uint64_t> targets;
  for (std::uint64_t x = 0; x < a.vertex_count() && result.isomorphic; ++x) {
    targets.clear();
    b.for_each_arc(x ^ all, [&](AutomatonSet, std::uint64_t t) {
      targets.push_back(t);
    });
    std::size_t k = 0;
    a.for_each_arc(x, [&](AutomatonSet w, std::uint64_t t) {
      if (!result.isomorphic) return;
      if ((t ^ all) != targets[k++]) {
        result.isomorphic = false;
        result.counterexample = state_string(x, n) + " -[" +
                                state_string(w, n) + "]-> " +
                                state_string(t, n);
      }
    });
  }
  return result;
}

}  // namespace ban
