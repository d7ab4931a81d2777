#pragma once

// Text dump of one channel realization.
//
//   swipt-channels 1
//   k <K>
//   k1 <K1>
//   m <M>
//   seed <seed>
//   trial <trial>
//   link <rx> <tx>          (one block per link, rx-major, zero-based)
//   <re> <im>               (M·M lines, row-major, shortest round-trip decimal)
//
// Every double is printed with the shortest representation that parses back
// to the same bits, so a dump/load cycle is exact.

#include <filesystem>
#include <iosfwd>

#include "swipt/channel.hpp"

namespace swipt {

struct ChannelFile {
  ChannelSet channels;
  int k1 = 0;
};

void write_channels(std::ostream& out, const ChannelSet& channels, int k1);
void save_channels(const std::filesystem::path& path, const ChannelSet& channels, int k1);

ChannelFile read_channels(std::istream& in);
ChannelFile load_channels(const std::filesystem::path& path);

}  // namespace swipt
