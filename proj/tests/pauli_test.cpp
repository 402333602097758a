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

#include "noisesim/pauli.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace noisesim {
namespace {

PauliString P(const char* s) { return parse_pauli(s); }

TEST(PauliParse, RoundTripsText) {
  for (const char* s : {"I", "XZIY", "ZZZZZ", "YIXIZIYIX"}) EXPECT_EQ(render(P(s)), s);
}

TEST(PauliParse, ReportsOffendingPosition) {
  try {
    parse_pauli("XZQY");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
    EXPECT_NE(std::string(e.what()).find("'Q'"), std::string::npos);
  }
  EXPECT_THROW(parse_pauli(""), ParseError);
  EXPECT_THROW(parse_pauli("xz"), ParseError);
}

TEST(PauliParse, LongStringsSpanWords) {
  std::string s(130, 'I');
  s[0] = 'X';
  s[64] = 'Y';
  s[129] = 'Z';
  const PauliString p = parse_pauli(s);
  EXPECT_EQ(p.n_qubits(), 130u);
  EXPECT_EQ(p.weight(), 3u);
  EXPECT_EQ(p.letter(64), 'Y');
  EXPECT_EQ(render(p), s);
}

TEST(PauliPhase, RendersUnits) {
  EXPECT_EQ(render(Phase::kPlusOne), "+1");
  EXPECT_EQ(render(Phase::kPlusI), "+i");
  EXPECT_EQ(render(Phase::kMinusOne), "-1");
  EXPECT_EQ(render(Phase::kMinusI), "-i");
  EXPECT_EQ(Phase::kPlusI * Phase::kPlusI, Phase::kMinusOne);
  EXPECT_EQ(Phase::kMinusI * Phase::kPlusI, Phase::kPlusOne);
}

TEST(PauliMultiply, SingleQubitTable) {
  EXPECT_EQ(multiply(P("X"), P("Y")), (PhasedPauli{Phase::kPlusI, P("Z")}));
  EXPECT_EQ(multiply(P("Y"), P("Z")), (PhasedPauli{Phase::kPlusI, P("X")}));
  EXPECT_EQ(multiply(P("Z"), P("X")), (PhasedPauli{Phase::kPlusI, P("Y")}));
  EXPECT_EQ(multiply(P("Y"), P("X")), (PhasedPauli{Phase::kMinusI, P("Z")}));
  EXPECT_EQ(multiply(P("X"), P("X")), (PhasedPauli{Phase::kPlusOne, P("I")}));
  EXPECT_EQ(multiply(P("I"), P("Y")), (PhasedPauli{Phase::kPlusOne, P("Y")}));
}

TEST(PauliMultiply, BitFlipMapsXZToIY) {
  const PhasedPauli r = multiply(P("XZ"), P("XX"));
  EXPECT_EQ(r.string, P("IY"));
  EXPECT_TRUE(r.phase == Phase::kPlusI || r.phase == Phase::kMinusI);
}

TEST(PauliMultiply, ZZMapsYIToXZ) { EXPECT_EQ(multiply(P("YI"), P("ZZ")).string, P("XZ")); }

TEST(PauliMultiply, RejectsLengthMismatch) { EXPECT_THROW(multiply(P("X"), P("XX")), DimensionError); }

TEST(PauliMultiply, AllTwoQubitPairsMatchDenseOracle) {
  for (const auto& a : all_pauli_strings(2)) {
    for (const auto& b : all_pauli_strings(2)) {
      const auto [k, s] = oracle::product(render(a), render(b));
      const PhasedPauli got = multiply(a, b);
      EXPECT_EQ(render(got.string), s) << render(a) << "*" << render(b);
      EXPECT_EQ(int(got.phase), k) << render(a) << "*" << render(b);
    }
  }
}

TEST(PauliMultiplyProperty, RandomPairsMatchDenseOracle) {
  gen::Rng rng(1001);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = gen::index(rng, 1, 4);
    const std::string a = gen::pauli(rng, n), b = gen::pauli(rng, n);
    const auto [k, s] = oracle::product(a, b);
    const PhasedPauli got = multiply(P(a.c_str()), P(b.c_str()));
    ASSERT_EQ(render(got.string), s) << a << "*" << b;
    ASSERT_EQ(int(got.phase), k) << a << "*" << b;
  }
}

TEST(PauliMultiplyProperty, AssociativeWithPhases) {
  gen::Rng rng(1002);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = gen::index(rng, 1, 80);
    const PauliString a = P(gen::pauli(rng, n).c_str()), b = P(gen::pauli(rng, n).c_str()),
                      c = P(gen::pauli(rng, n).c_str());
    const PhasedPauli ab = multiply(a, b), bc = multiply(b, c);
    const PhasedPauli left = multiply(ab.string, c), right = multiply(a, bc.string);
    ASSERT_EQ(left.string, right.string);
    ASSERT_EQ(ab.phase * left.phase, bc.phase * right.phase);
  }
}

TEST(PauliMultiplyProperty, ProductsCommuteOrAnticommute) {
  gen::Rng rng(1003);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = gen::index(rng, 1, 70);
    const PauliString a = P(gen::pauli(rng, n).c_str()), b = P(gen::pauli(rng, n).c_str());
    const PhasedPauli ab = multiply(a, b), ba = multiply(b, a);
    ASSERT_EQ(ab.string, ba.string);
    const Phase ratio = ab.phase * ba.phase * ba.phase * ba.phase;  // ab / ba
    ASSERT_TRUE(ratio == Phase::kPlusOne || ratio == Phase::kMinusOne);
  }
}

TEST(PauliMatrix, MatchesKroneckerOracle) {
  for (const auto& p : all_pauli_strings(3)) {
    EXPECT_LT((to_matrix(p) - oracle::dense(render(p))).cwiseAbs().maxCoeff(), 1e-15) << render(p);
  }
}

TEST(PauliMatrix, RefusesAboveCap) {
  EXPECT_THROW(to_matrix(PauliString(11)), DimensionError);
  EXPECT_NO_THROW(to_matrix(PauliString(3), 3));
  EXPECT_THROW(to_matrix(PauliString(4), 3), DimensionError);
}

TEST(PauliConjugate, MatchesDenseSandwich) {
  gen::Rng rng(1004);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = gen::index(rng, 1, 3);
    const std::string s = gen::pauli(rng, n);
    const Matrix rho = gen::state(rng, std::size_t{1} << n);
    const Matrix pm = oracle::dense(s);
    EXPECT_LT((conjugate(P(s.c_str()), rho) - pm * rho * pm.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT(std::abs(trace_product(P(s.c_str()), rho) - (pm * rho).trace()), 1e-14);
  }
}

TEST(PauliStructure, TensorAndEmbed) {
  EXPECT_EQ(tensor(P("XZ"), P("YI")), P("XZYI"));
  EXPECT_EQ(embed(P("XX"), 4, 2), P("IIXX"));
  EXPECT_EQ(embed(P("Y"), 3, 1), P("IYI"));
  EXPECT_THROW(embed(P("XX"), 3, 2), DimensionError);
}

TEST(PauliStructure, EnumerationIsLexicographic) {
  const auto all = all_pauli_strings(2);
  ASSERT_EQ(all.size(), 16u);
  EXPECT_EQ(render(all.front()), "II");
  EXPECT_EQ(render(all[1]), "IX");
  EXPECT_EQ(render(all.back()), "ZZ");
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(PauliStructure, HashSeparatesRegisterSizes) {
  PauliStringHash h;
  EXPECT_EQ(h(P("XZ")), h(P("XZ")));
  EXPECT_NE(P("I"), P("II"));
}

}  // namespace
}  // namespace noisesim
