// Copyright 2026 The noisesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noisesim/clusters.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "noisesim/dynamics.hpp"
#include "oracles.hpp"

namespace noisesim {
namespace {

PauliString P(const char* s) { return parse_pauli(s); }

PauliSet S(std::initializer_list<const char*> strings) {
  PauliSet out;
  for (const char* s : strings) out.insert(parse_pauli(s));
  return out;
}

// Naive fixed-point closure, independent of the breadth-first library code.
std::set<std::string> naive_orbit(const std::string& node, const std::vector<std::string>& noise) {
  std::set<std::string> members{node};
  bool grew = true;
  while (grew) {
    grew = false;
    const auto snapshot = members;
    for (const auto& m : snapshot) {
      for (const auto& n : noise) grew |= members.insert(oracle::product(n, m).second).second;
    }
  }
  return members;
}

TEST(Orbit, OneDimensionalBraid) { EXPECT_EQ(orbit(P("XZ"), S({"XX"})), S({"XZ", "IY"})); }

TEST(Orbit, SymmetricNoise) {
  EXPECT_EQ(orbit(P("YI"), S({"XX", "YY", "ZZ"})), S({"YI", "ZX", "XZ", "IY"}));
}

TEST(Orbit, TwoGenerators) { EXPECT_EQ(orbit(P("YI"), S({"XX", "ZZ"})), S({"YI", "XZ", "ZX", "IY"})); }

TEST(Orbit, RejectsMixedRegisters) { EXPECT_THROW(orbit(P("XZ"), S({"XXX"})), DimensionError); }

TEST(Classify, SymmetricNoiseIsAllToAll) {
  const ClusterReport r = classify(P("YI"), S({"XX", "YY", "ZZ"}));
  EXPECT_EQ(r.braid_dimension, 3u);
  EXPECT_EQ(r.cluster_dimension, 4u);
  EXPECT_EQ(r.entropy, 0.0);
  EXPECT_TRUE(r.all_to_all);
  EXPECT_EQ(r.braid, S({"ZX", "XZ", "IY"}));
}

TEST(Classify, TwoGeneratorsAreNotAllToAll) {
  const ClusterReport r = classify(P("YI"), S({"XX", "ZZ"}));
  EXPECT_EQ(r.braid_dimension, 2u);
  EXPECT_EQ(r.cluster_dimension, 4u);
  EXPECT_DOUBLE_EQ(r.entropy, std::log(4.0 / 3.0));
  EXPECT_FALSE(r.all_to_all);
}

TEST(Classify, EmptyNoiseGivesSingleton) {
  const ClusterReport r = classify(P("XY"), {});
  EXPECT_EQ(r.members, S({"XY"}));
  EXPECT_EQ(r.braid_dimension, 0u);
  EXPECT_EQ(r.cluster_dimension, 1u);
  EXPECT_EQ(r.entropy, 0.0);
}

TEST(Classify, IdentityNoiseIsIgnored) {
  const ClusterReport r = classify(P("XZ"), S({"II", "XX"}));
  EXPECT_EQ(r.noise_support, S({"XX"}));
  EXPECT_EQ(r.braid_dimension, 1u);
  EXPECT_TRUE(r.all_to_all);
}

TEST(NodeInvariance, HoldsForKnownClusters) {
  EXPECT_TRUE(node_invariance_check(S({"YI", "ZX", "XZ", "IY"}), S({"XX", "YY", "ZZ"})));
  EXPECT_TRUE(node_invariance_check(S({"XY"}), {}));
  EXPECT_FALSE(node_invariance_check(S({"XZ", "ZZ"}), S({"XX"})));
}

TEST(NodeInvariance, TwoGeneratorClusterSplitsIntoTwoBraids) {
  // YI and IY both braid to {XZ, ZX}; XZ and ZX both braid to {YI, IY}.
  const PauliSet noise = S({"XX", "ZZ"});
  const PauliSet members = orbit(P("YI"), noise);
  EXPECT_TRUE(node_invariance_check(members, noise));
  std::set<PauliSet> braids;
  for (const auto& m : members) braids.insert(classify(m, noise).braid);
  EXPECT_EQ(braids, (std::set<PauliSet>{S({"XZ", "ZX"}), S({"YI", "IY"})}));
}

TEST(OrbitProperty, MatchesNaiveClosureAndIsClosed) {
  gen::Rng rng(4001);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = gen::index(rng, 1, 3);
    std::vector<std::string> noise;
    PauliSet noise_set;
    for (std::size_t k = 0, m = gen::index(rng, 0, 3); k < m; ++k) {
      noise.push_back(gen::pauli(rng, n));
      noise_set.insert(P(noise.back().c_str()));
    }
    const std::string node = gen::pauli(rng, n);
    const PauliSet got = orbit(P(node.c_str()), noise_set);
    std::set<std::string> rendered;
    for (const auto& p : got) rendered.insert(render(p));
    ASSERT_EQ(rendered, naive_orbit(node, noise));
    for (const auto& m : got) {
      for (const auto& q : noise_set) ASSERT_TRUE(got.count(multiply(q, m).string));
    }
    const ClusterReport r = classify(P(node.c_str()), noise_set);
    ASSERT_GE(r.cluster_dimension, r.braid_dimension + 1);
  }
}

TEST(OrbitProperty, MonotoneInNoise) {
  gen::Rng rng(4002);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen::index(rng, 1, 3);
    PauliSet noise{P(gen::pauli(rng, n).c_str())};
    const PauliString node = P(gen::pauli(rng, n).c_str());
    const PauliSet before = orbit(node, noise);
    noise.insert(P(gen::pauli(rng, n).c_str()));
    const PauliSet after = orbit(node, noise);
    ASSERT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
  }
}

TEST(OrbitProperty, OrbitsPartition) {
  gen::Rng rng(4003);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen::index(rng, 1, 3);
    PauliSet noise{P(gen::pauli(rng, n).c_str()), P(gen::pauli(rng, n).c_str())};
    const PauliSet a = orbit(P(gen::pauli(rng, n).c_str()), noise);
    const PauliSet b = orbit(P(gen::pauli(rng, n).c_str()), noise);
    PauliSet common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(common, common.end()));
    ASSERT_TRUE(common.empty() || a == b);
  }
}

TEST(LiftNoise, BitFlipOnFourQubits) {
  const double w = 0.3;
  const PauliChannel lifted = lift_noise_nn(bit_flip_pair_noise(w), 4);
  EXPECT_EQ(lifted.terms().size(), 4u);
  EXPECT_NEAR(lifted.weight_of(P("XXXX")), w * w, 1e-15);
  EXPECT_NEAR(lifted.weight_of(P("XXII")), w * (1 - w), 1e-15);
  EXPECT_NEAR(lifted.weight_of(P("IIXX")), (1 - w) * w, 1e-15);
  EXPECT_NEAR(lifted.weight_of(P("IIII")), (1 - w) * (1 - w), 1e-15);
}

TEST(LiftNoise, MatchesTensorProductOracle) {
  gen::Rng rng(4004);
  for (int t = 0; t < 10; ++t) {
    const auto base_terms = gen::channel(rng, 2, gen::index(rng, 1, 5));
    const PauliChannel lifted = lift_noise_nn(PauliChannel::from_text(base_terms), 6);
    std::map<std::string, double> expected;
    for (const auto& [wa, a] : base_terms)
      for (const auto& [wb, b] : base_terms)
        for (const auto& [wc, c] : base_terms) expected[a + b + c] += wa * wb * wc;
    for (const auto& [s, w] : expected) ASSERT_NEAR(lifted.weight_of(P(s.c_str())), w, 1e-14) << s;
    ASSERT_EQ(lifted.terms().size(), expected.size());
  }
}

TEST(LiftNoise, TrivialCases) {
  EXPECT_EQ(lift_noise_nn(PauliChannel::identity(2), 6), PauliChannel::identity(6));
  const PauliChannel base = bit_flip_pair_noise(0.2);
  EXPECT_EQ(lift_noise_nn(base, 2), base);
  EXPECT_THROW(lift_noise_nn(base, 3), std::invalid_argument);
  EXPECT_THROW(lift_noise_nn(PauliChannel::identity(1), 4), DimensionError);
}

TEST(LiftNoise, OverlappingPlacementsCompose) {
  const PauliChannel base = bit_flip_pair_noise(0.5);
  const PauliChannel lifted = lift_noise_nn(base, 4, {0, 1});
  // XXII and IXXI combine into XIXI.
  EXPECT_NEAR(lifted.weight_of(P("XIXI")), 0.25, 1e-15);
  EXPECT_NEAR(lifted.weight_of(P("XXII")), 0.25, 1e-15);
  EXPECT_NEAR(lifted.weight_of(P("IXXI")), 0.25, 1e-15);
  EXPECT_NEAR(lifted.weight_of(P("IIII")), 0.25, 1e-15);
  EXPECT_THROW(lift_noise_nn(base, 4, {3}), DimensionError);
}

TEST(ChannelsPerIteration, Counts) {
  EXPECT_EQ(channels_per_iteration(3, 2), 3u);
  EXPECT_EQ(channels_per_iteration(1, 2), 1u);
  EXPECT_EQ(channels_per_iteration(1, 4), 3u);
  EXPECT_THROW(channels_per_iteration(1, 5), std::invalid_argument);
}

TEST(ChannelsPerIterationProperty, EqualsLiftedNonIdentityTerms) {
  gen::Rng rng(4005);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = gen::index(rng, 1, 5);
    auto terms = gen::channel(rng, 2, m + 1);
    // Force exactly one identity term.
    bool has_identity = false;
    for (const auto& [w, s] : terms) has_identity |= s == "II";
    if (!has_identity) terms.back().second = "II";
    std::size_t non_identity = 0;
    for (const auto& [w, s] : terms) non_identity += s != "II";
    for (std::size_t n : {2u, 4u, 6u}) {
      const PauliChannel lifted = lift_noise_nn(PauliChannel::from_text(terms), n);
      ASSERT_EQ(support_of(lifted).size(), channels_per_iteration(non_identity, n));
    }
  }
}

TEST(ToDot, ListsMembersAndLabeledEdges) {
  const std::string dot = to_dot(classify(P("XZ"), S({"XX"})));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("\"XZ\" -> \"IY\" [label=\"XX\""), std::string::npos);
  EXPECT_NE(dot.find("\"IY\" -> \"XZ\" [label=\"XX\""), std::string::npos);
}

TEST(MultiExciton, FourStringsShareOneCluster) {
  const PauliSet members = orbit(P("XZXZ"), support_of(lift_noise_nn(bit_flip_pair_noise(0.3), 4)));
  EXPECT_EQ(members, S({"XZXZ", "IYIY", "IYXZ", "XZIY"}));
}

}  // namespace
}  // namespace noisesim
