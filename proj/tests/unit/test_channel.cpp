#include <doctest.h>

#include <sstream>

#include "swipt/channel.hpp"
#include "swipt/channel_io.hpp"
#include "swipt/errors.hpp"
#include "../support/oracles.hpp"

using namespace swipt;

TEST_CASE("links have the configured Frobenius norm and full rank") {
  SystemConfig c = reference_config(3, 1);
  c.alpha = RMatrix::Constant(3, 3, 0.25);
  c.alpha.diagonal().setOnes();
  c.alpha(0, 2) = 0.0;
  for (std::uint64_t t = 0; t < 10; ++t) {
    const ChannelSet ch = generate_channels(c, t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double want = c.path_loss * c.alpha(i, j) * c.m;
        if (want == 0.0) {
          CHECK(ch.link(i, j).norm() == 0.0);
          continue;
        }
        CHECK(ch.link(i, j).squaredNorm() == doctest::Approx(want).epsilon(1e-12));
        Eigen::JacobiSVD<CMatrix> svd(ch.link(i, j));
        CHECK(svd.singularValues()(c.m - 1) > 1e-10);
      }
    }
  }
}

TEST_CASE("generation is a pure function of seed, trial and link") {
  SystemConfig a = reference_config(2, 1);
  const ChannelSet x = generate_channels(a, 4);
  const ChannelSet y = generate_channels(a, 4);
  CHECK(x.link(1, 0) == y.link(1, 0));
  CHECK(x.link(1, 0) != generate_channels(a, 5).link(1, 0));
  SystemConfig bigger = reference_config(3, 1);
  // A link's draw does not depend on how many other links exist.
  CHECK((generate_channels(bigger, 4).link(1, 0) - x.link(1, 0)).norm() <
        1e-12 * x.link(1, 0).norm() + 1e-300);
  a.seed = 2;
  CHECK(generate_channels(a, 4).link(1, 0) != x.link(1, 0));
}

TEST_CASE("effective channels have the stacked shapes") {
  SystemConfig c = reference_config(4, 2);
  const ChannelSet ch = generate_channels(c, 0);
  const std::vector<int> eh{1, 3}, id{0, 2};
  const EffectiveChannels e = assemble_effective(ch, eh, id);
  REQUIRE(e.h11.size() == 2);
  CHECK(e.h11[0].rows() == 8);
  CHECK(e.h21[1].rows() == 8);
  CHECK(e.h12.rows() == 8);
  CHECK(e.h12.cols() == 8);
  CHECK(e.h22.rows() == 8);
  CHECK(e.h11[1] == oracle::vstack({ch.link(1, 3), ch.link(3, 3)}));
  CHECK(e.h21[0] == oracle::vstack({ch.link(0, 1), ch.link(2, 1)}));
  CHECK(e.h12_blocks[1] == oracle::vstack({ch.link(1, 2), ch.link(3, 2)}));
  CHECK(e.h12.block(0, 4, 8, 4) == e.h12_blocks[1]);
  CHECK(e.h22.block(4, 4, 4, 4) == ch.link(2, 2));
  CHECK(e.h22.block(0, 4, 4, 4).norm() == 0.0);
}

TEST_CASE("two-pair effective channels are the raw links") {
  const ChannelSet ch = generate_channels(reference_config(2, 1), 3);
  const EffectiveChannels e = assemble_effective(ch, std::vector<int>{0}, std::vector<int>{1});
  CHECK(e.h11[0] == ch.link(0, 0));
  CHECK(e.h21[0] == ch.link(1, 0));
  CHECK(e.h12 == ch.link(0, 1));
  CHECK(e.h22 == ch.link(1, 1));
}

TEST_CASE("partition errors") {
  const ChannelSet ch = generate_channels(reference_config(3, 1), 0);
  CHECK_THROWS_AS(assemble_effective(ch, std::vector<int>{0}, std::vector<int>{1}),
                  InvalidPartition);
  CHECK_THROWS_AS(assemble_effective(ch, std::vector<int>{0, 1}, std::vector<int>{1, 2}),
                  InvalidPartition);
  CHECK_THROWS_AS(assemble_effective(ch, std::vector<int>{0}, std::vector<int>{1, 5}),
                  InvalidPartition);
}

TEST_CASE("rate and energy match direct evaluation") {
  SystemConfig c = reference_config(3, 1);
  const ChannelSet ch = generate_channels(c, 1);
  std::mt19937_64 gen(8);
  std::vector<CMatrix> q;
  for (int k = 0; k < 3; ++k) q.push_back(oracle::random_psd(gen, 4, c.p_max));
  for (int rx = 0; rx < 3; ++rx) {
    CMatrix r = c.noise_power * CMatrix::Identity(4, 4);
    for (int j = 0; j < 3; ++j)
      if (j != rx) r += ch.link(rx, j) * q[j] * ch.link(rx, j).adjoint();
    CHECK((interference_covariance(ch, q, rx, c.noise_power) - r).norm() < 1e-15);
    CHECK(achievable_rate(ch, q, rx, c.noise_power) ==
          doctest::Approx(oracle::rate(ch.link(rx, rx), q[rx], r)).epsilon(1e-10));
    double e = 0.0;
    for (int j = 0; j < 3; ++j) e += (ch.link(rx, j) * q[j] * ch.link(rx, j).adjoint()).trace().real();
    LinkBudget b = link_budget(c);
    b.zeta = 0.5;
    CHECK(harvested_energy(ch, q, rx, b) == doctest::Approx(0.5 * e).epsilon(1e-12));
    b.noise_in_energy = true;
    CHECK(harvested_energy(ch, q, rx, b) ==
          doctest::Approx(0.5 * (e + 4 * c.noise_power)).epsilon(1e-12));
  }
}

TEST_CASE("metrics reject non-PSD covariances") {
  const ChannelSet ch = generate_channels(reference_config(2, 1), 0);
  std::vector<CMatrix> q(2, CMatrix::Identity(4, 4));
  q[1](0, 0) = -1.0;
  CHECK_THROWS_AS(achievable_rate(ch, q, 0, 1e-6), InvalidArgument);
}

TEST_CASE("channel dump and load round-trip exactly") {
  SystemConfig c = reference_config(3, 2);
  c.seed = 99;
  const ChannelSet ch = generate_channels(c, 17);
  std::stringstream buf;
  write_channels(buf, ch, c.k1);
  const ChannelFile back = read_channels(buf);
  CHECK(back.k1 == 2);
  CHECK(back.channels.seed == 99);
  CHECK(back.channels.trial == 17);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(back.channels.link(i, j) == ch.link(i, j));
  std::stringstream again;
  write_channels(again, back.channels, back.k1);
  std::stringstream first;
  write_channels(first, ch, c.k1);
  CHECK(again.str() == first.str());
}

TEST_CASE("malformed channel files are rejected") {
  std::stringstream bad("swipt-channels 1\nk 2\nk1 1\nm 2\nseed 1\ntrial 0\nlink 0 0\n1 0\n");
  CHECK_THROWS_AS(read_channels(bad), IoError);
  std::stringstream wrong("not-a-channel-file\n");
  CHECK_THROWS_AS(read_channels(wrong), IoError);
}

TEST_CASE("config validation names the field") {
  SystemConfig c;
  c.k1 = 2;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "k1");
  }
  c = SystemConfig{};
  c.tilt_decay = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SystemConfig{};
  c.noise_power = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}
