#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ucq {

/// Outcome of one invariant check. `margin` is the worst slack observed over
/// all instances (negative means the inequality was violated by that much);
/// a check passes when margin >= -tol.
struct VerifyResult {
  std::string name;
  std::string params;
  double margin = 0.0;
  double tol = 1e-9;
  bool pass = false;
};

/// Runs every operator-inequality and combinatorial invariant suite at its
/// desk-scale parameters. Deterministic given the seed.
std::vector<VerifyResult> run_verify_suite(std::uint64_t seed);

}  // namespace ucq
