#pragma once

// Choice of the K1 pairs that operate in energy-harvesting mode: every
// candidate EH set is scored by the sum of its members' SLER values.

#include <utility>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/config.hpp"

namespace swipt {

struct SelectionResult {
  std::vector<int> eh_set;  // ascending
  std::vector<int> id_set;  // ascending
  double sler_sum = 0.0;
  std::vector<std::pair<std::vector<int>, double>> per_candidate_scores;  // lexicographic order
};

/// All K1-subsets of {0..K−1} in lexicographic order.
std::vector<std::vector<int>> eh_candidates(int k, int k1);

/// Sum of the generalized eigenvalues of the SLER problem of every member of
/// `eh_set`, evaluated at raw energy target `ebar`.
double sler_score(const ChannelSet& channels, const std::vector<int>& eh_set, double ebar,
                  double p_max);

/// Exhaustive argmax over all candidates at delivered energy target `ebar`
/// (watts); ties go to the lexicographically smallest set.
SelectionResult select_eh_set(const ChannelSet& channels, const SystemConfig& config, double ebar);

/// Selection target used when a sweep does not reselect per point: half the
/// maximum energy of the default split under maximum-energy beams.
double default_selection_target(const ChannelSet& channels, const SystemConfig& config);

}  // namespace swipt
