#include "swipt/selection.hpp"

#include <algorithm>

#include "swipt/beamforming.hpp"
#include "swipt/errors.hpp"
#include "swipt/optimizer.hpp"

namespace swipt {

std::vector<std::vector<int>> eh_candidates(int k, int k1) {
  if (k1 < 1 || k1 >= k) throw InvalidArgument("eh_candidates: need 1 <= k1 < k");
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(k1));
  for (int i = 0; i < k1; ++i) current[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(current);
    int pos = k1 - 1;
    while (pos >= 0 && current[static_cast<std::size_t>(pos)] == k - k1 + pos) --pos;
    if (pos < 0) break;
    ++current[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k1; ++i) {
      current[static_cast<std::size_t>(i)] = current[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return out;
}

namespace {

std::vector<int> complement(int k, const std::vector<int>& set) {
  std::vector<int> out;
  for (int i = 0; i < k; ++i) {
    if (!std::binary_search(set.begin(), set.end(), i)) out.push_back(i);
  }
  return out;
}

}  // namespace

double sler_score(const ChannelSet& channels, const std::vector<int>& eh_set, double ebar,
                  double p_max) {
  const std::vector<int> id_set = complement(channels.k(), eh_set);
  const EffectiveChannels eff = assemble_effective(channels, eh_set, id_set);
  const int k1 = static_cast<int>(eh_set.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < eff.eh.size(); ++j) {
    sum += sler_beam(eff.h11[j], eff.h21[j], ebar, p_max, k1).ratio;
  }
  return sum;
}

SelectionResult select_eh_set(const ChannelSet& channels, const SystemConfig& config,
                              double ebar) {
  if (config.k1 < 1 || config.k1 >= channels.k()) {
    throw InvalidArgument("select_eh_set: need 1 <= k1 < k");
  }
  double noise = 0.0;
  if (config.noise_in_energy) noise = config.zeta * config.k1 * config.m * config.noise_power;
  const double raw = std::max((ebar - noise) / config.zeta, 0.0);
  SelectionResult out;
  bool first = true;
  for (auto& candidate : eh_candidates(channels.k(), config.k1)) {
    const double score = sler_score(channels, candidate, raw, config.p_max);
    if (first || score > out.sler_sum) {
      out.sler_sum = score;
      out.eh_set = candidate;
      first = false;
    }
    out.per_candidate_scores.emplace_back(std::move(candidate), score);
  }
  out.id_set = complement(channels.k(), out.eh_set);
  return out;
}

double default_selection_target(const ChannelSet& channels, const SystemConfig& config) {
  const auto [eh, id] = default_partition(config.k, config.k1);
  const FrontierProblem problem = FrontierProblem::from_config(config, channels, eh, id);
  return 0.5 * scheme_e_max(problem, Scheme::MEB);
}

}  // namespace swipt
