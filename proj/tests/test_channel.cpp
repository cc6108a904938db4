// SPDX-License-Identifier: Apache-2.0
//
// Channel layer: path loss anchors, fading statistics, reproducibility.
// The two large-scale constants were computed independently at 50-digit
// precision and rounded to the nearest double:
//   1e-3 * 20^-2.2 = 1.3732006791326471e-06
//   1e-3 * 50^-2.8 = 1.7493793183092449e-08

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "risim/channel.hpp"
#include "risim/config.hpp"
#include "risim/rng.hpp"

using namespace risim;

namespace {
constexpr double kLh = 1.3732006791326471e-06;
constexpr double kLf = 1.7493793183092449e-08;
}  // namespace

TEST_CASE("path loss anchors") {
  CHECK(path_loss(1e-3, 20.0, 2.2) == Catch::Approx(kLh).epsilon(1e-14));
  CHECK(path_loss(1e-3, 50.0, 2.8) == Catch::Approx(kLf).epsilon(1e-14));
  CHECK(path_loss(0.5, 1.0, 3.0) == 0.5);  // reference distance returns ref_gain
  CHECK(path_loss(1.0, 100.0, 2.0) == Catch::Approx(1e-4).epsilon(1e-14));
}

TEST_CASE("path loss rejects sub-reference distances") {
  CHECK_THROWS_AS(path_loss(1e-3, 0.5, 2.2), std::domain_error);
  CHECK_THROWS_AS(path_loss(1e-3, 0.0, 2.2), std::domain_error);
  CHECK_THROWS_AS(path_loss(1e-3, -3.0, 2.2), std::domain_error);
}

TEST_CASE("realization has the right shape and constants") {
  SystemConfig cfg;
  cfg.num_groups = 3;
  cfg.elements_per_group = 5;
  RngStream rng(7);
  ChannelRealization real = realize(cfg, rng);
  CHECK(real.num_groups == 3);
  CHECK(real.elements_per_group == 5);
  REQUIRE(real.bs_ris.size() == 15);
  REQUIRE(real.ris_ue.size() == 15);
  CHECK(real.l_h == Catch::Approx(kLh).epsilon(1e-14));
  CHECK(real.l_f == Catch::Approx(kLf).epsilon(1e-14));
  // row-major indexing
  CHECK(real.idx(0, 0) == 0);
  CHECK(real.idx(1, 0) == 5);
  CHECK(real.idx(2, 4) == 14);
  CHECK(real.h(1, 2) == real.bs_ris[7]);
  CHECK(real.f(2, 1) == real.ris_ue[11]);
}

TEST_CASE("same seed reproduces the realization exactly") {
  SystemConfig cfg;
  cfg.num_groups = 2;
  cfg.elements_per_group = 16;
  RngStream rng_a(123);
  RngStream rng_b(123);
  ChannelRealization a = realize(cfg, rng_a);
  ChannelRealization b = realize(cfg, rng_b);
  REQUIRE(a.bs_ris.size() == b.bs_ris.size());
  for (std::size_t k = 0; k < a.bs_ris.size(); ++k) {
    CHECK(a.bs_ris[k] == b.bs_ris[k]);
    CHECK(a.ris_ue[k] == b.ris_ue[k]);
  }
  RngStream rng_c(124);
  ChannelRealization c = realize(cfg, rng_c);
  CHECK(a.bs_ris[0] != c.bs_ris[0]);
}

TEST_CASE("realize_into reuses buffers without changing the draw") {
  SystemConfig cfg;
  cfg.num_groups = 2;
  cfg.elements_per_group = 8;
  ChannelRealization reused;
  RngStream warm(55);
  realize_into(reused, cfg, warm);  // populate once with other data
  RngStream rng_a(9001);
  realize_into(reused, cfg, rng_a);
  RngStream rng_b(9001);
  ChannelRealization fresh = realize(cfg, rng_b);
  for (std::size_t k = 0; k < fresh.bs_ris.size(); ++k) {
    CHECK(reused.bs_ris[k] == fresh.bs_ris[k]);
    CHECK(reused.ris_ue[k] == fresh.ris_ue[k]);
  }
}

TEST_CASE("fading second moments match the path loss") {
  SystemConfig cfg;
  cfg.num_groups = 4;
  cfg.elements_per_group = 64;
  RngStream rng(42);
  double sum_h = 0.0;
  double sum_f = 0.0;
  std::complex<double> mean_h{0.0, 0.0};
  const int draws = 400;
  const std::size_t n = static_cast<std::size_t>(cfg.total_elements());
  ChannelRealization real;
  for (int d = 0; d < draws; ++d) {
    realize_into(real, cfg, rng);
    for (std::size_t k = 0; k < n; ++k) {
      sum_h += std::norm(real.bs_ris[k]);
      sum_f += std::norm(real.ris_ue[k]);
      mean_h += real.bs_ris[k];
    }
  }
  const double count = static_cast<double>(draws) * static_cast<double>(n);
  // |h|^2 / l_h is Exp(1): unit mean, unit variance. 4 standard errors.
  const double tol = 4.0 / std::sqrt(count);
  CHECK(sum_h / count / kLh == Catch::Approx(1.0).margin(tol));
  CHECK(sum_f / count / kLf == Catch::Approx(1.0).margin(tol));
  // zero-mean fading: |mean| has Rayleigh scale sqrt(l_h / count)
  CHECK(std::abs(mean_h) / count <= 4.0 * std::sqrt(kLh / count));
}

TEST_CASE("rician draws keep unit second moment for every k factor") {
  const int n = 200000;
  for (double k_factor : {0.0, 1.0, 10.0}) {
    RngStream rng(77);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += std::norm(sample_rician(k_factor, rng));
    const double tol = 4.0 / std::sqrt(static_cast<double>(n));
    CHECK(sum / n == Catch::Approx(1.0).margin(tol));
  }
}

TEST_CASE("complex normal phase is uniform") {
  // Kolmogorov-Smirnov against U(0, 1) at the 1% level: critical statistic
  // 1.628 / sqrt(n).
  const int n = 20000;
  RngStream rng(2024);
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) {
    const auto z = sample_rician(0.0, rng);
    u[static_cast<std::size_t>(i)] =
        (std::atan2(z.imag(), z.real()) + 3.14159265358979323846) / (2.0 * 3.14159265358979323846);
  }
  std::sort(u.begin(), u.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ecdf_hi = static_cast<double>(i + 1) / n;
    const double ecdf_lo = static_cast<double>(i) / n;
    ks = std::max(ks, std::max(std::abs(ecdf_hi - u[static_cast<std::size_t>(i)]),
                               std::abs(u[static_cast<std::size_t>(i)] - ecdf_lo)));
  }
  CHECK(ks < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("csv dump lists every element once") {
  SystemConfig cfg;
  cfg.num_groups = 2;
  cfg.elements_per_group = 3;
  RngStream rng(5);
  ChannelRealization real = realize(cfg, rng);
  std::ostringstream out;
  write_csv(real, out);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "group,element,re_h,im_h,re_f,im_f");
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 6);
}
