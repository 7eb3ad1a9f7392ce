#pragma once

#include "ucq/packing.hpp"
#include "ucq/private_code.hpp"

#include <stdexcept>
#include <string>

namespace ucq {

/// Error in a channel fixture file; message names the offending letter.
struct ChannelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// On-disk channel fixture: alphabet size, input distribution, and per-letter
/// output matrices as nested arrays of [re, im] entry pairs. Matrices must be
/// Hermitian, PSD, unit-trace within 1e-8 (checked on load).
struct ChannelSpec {
  int k = 2;
  std::vector<double> p;
  bool bipartite = false;
  int d_B = 2;
  int d_E = 1;  // meaningful only when bipartite
  std::vector<Mat> outputs;

  InputDist dist() const { return InputDist(p); }
};

ChannelSpec load_channel(const std::string& path);
void save_channel(const ChannelSpec& spec, const std::string& path);

CqChannel to_cq(const ChannelSpec& spec);
BipartiteCqChannel to_bipartite(const ChannelSpec& spec);

}  // namespace ucq
