#pragma once

#include <string>

#include "ban/dynamics.hpp"
#include "ban/topologies.hpp"

namespace ban {

struct DualityResult {
  bool isomorphic = true;
  /// First arc of the conjunctive graph with no complemented image, if any.
  std::string counterexample;
};

/// Checks that complementing every configuration maps the labelled
/// transition graph of D_{l,r} with junction "and" onto the one with
/// junction "or", for the given signs and mode.
DualityResult check_and_or_duality(int l, int r, Sign left, Sign right,
                                   const UpdateMode& mode,
                                   const Caps& caps = Caps{});

}  // namespace ban
