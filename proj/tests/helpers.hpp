#pragma once

#include <vector>

#include "diswl/geometry.hpp"
#include "diswl/random.hpp"
#include "oracle.hpp"

namespace testing_helpers {

inline oracle::Cloud to_oracle(const diswl::PointCloud& pc) {
  oracle::Cloud c;
  for (std::size_t i = 0; i < pc.size(); ++i) c.x.push_back({pc[i].x(), pc[i].y(), pc[i].z()});
  c.label = pc.labels();
  return c;
}

inline diswl::PointCloud random_cloud(std::size_t n, std::uint64_t seed, double spread = 2.0) {
  diswl::Rng rng(seed);
  std::vector<diswl::Vec3> x;
  for (std::size_t i = 0; i < n; ++i)
    x.emplace_back(rng.uniform(-spread, spread), rng.uniform(-spread, spread), rng.uniform(-spread, spread));
  return diswl::build_point_cloud(std::move(x));
}

inline diswl::PointCloud random_image(const diswl::PointCloud& pc, std::uint64_t seed) {
  const auto g = diswl::random_e3(diswl::mix_seed(seed, 1));
  const auto perm = diswl::random_permutation(pc.size(), diswl::mix_seed(seed, 2));
  return diswl::apply_e3(pc, g).permuted(perm);
}

}  // namespace testing_helpers
