#include "swipt/channel_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "swipt/errors.hpp"
#include "swipt/format.hpp"

namespace swipt {

namespace {

constexpr const char* kMagic = "swipt-channels";

std::string expect_key(std::istream& in, const std::string& key) {
  std::string name, value;
  if (!(in >> name >> value) || name != key) {
    throw IoError("channel file: expected '" + key + "'");
  }
  return value;
}

}  // namespace

void write_channels(std::ostream& out, const ChannelSet& channels, int k1) {
  out << kMagic << " 1\n";
  out << "k " << channels.k() << "\n";
  out << "k1 " << k1 << "\n";
  out << "m " << channels.m() << "\n";
  out << "seed " << channels.seed << "\n";
  out << "trial " << channels.trial << "\n";
  for (int rx = 0; rx < channels.k(); ++rx) {
    for (int tx = 0; tx < channels.k(); ++tx) {
      out << "link " << rx << " " << tx << "\n";
      const CMatrix& h = channels.link(rx, tx);
      for (Eigen::Index r = 0; r < h.rows(); ++r) {
        for (Eigen::Index c = 0; c < h.cols(); ++c) {
          out << format_double(h(r, c).real()) << " " << format_double(h(r, c).imag()) << "\n";
        }
      }
    }
  }
}

void save_channels(const std::filesystem::path& path, const ChannelSet& channels, int k1) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_channels(out, channels, k1);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

ChannelFile read_channels(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic || version != 1) {
    throw IoError("channel file: bad header");
  }
  const int k = std::stoi(expect_key(in, "k"));
  const int k1 = std::stoi(expect_key(in, "k1"));
  const int m = std::stoi(expect_key(in, "m"));
  if (k < 1 || m < 1 || k1 < 0 || k1 >= k) throw IoError("channel file: bad dimensions");
  ChannelFile file{ChannelSet(k, m), k1};
  file.channels.seed = std::stoull(expect_key(in, "seed"));
  file.channels.trial = std::stoull(expect_key(in, "trial"));
  for (int rx = 0; rx < k; ++rx) {
    for (int tx = 0; tx < k; ++tx) {
      std::string word;
      int r = -1, t = -1;
      if (!(in >> word >> r >> t) || word != "link" || r != rx || t != tx) {
        throw IoError("channel file: links out of order");
      }
      CMatrix& h = file.channels.link(rx, tx);
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
          std::string re, im;
          if (!(in >> re >> im)) throw IoError("channel file: truncated link data");
          h(i, j) = Complex(parse_double(re), parse_double(im));
        }
      }
    }
  }
  return file;
}

ChannelFile load_channels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_channels(in);
}

}  // namespace swipt
