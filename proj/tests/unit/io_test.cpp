// Copyright 2026 The stabkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "stabkit/io.hpp"

namespace stabkit::io {
namespace {

TEST(Labels, RoundTripSkippingCommentsAndBlanks) {
    std::istringstream in("# header\n\n1000\n  0110 \n# trailing\n");
    const auto labels = read_labels(in);
    ASSERT_EQ(labels.size(), 2u);
    EXPECT_EQ(labels[0], WeylLabel::parse("1000"));
    std::ostringstream out;
    write_labels(out, labels);
    EXPECT_EQ(out.str(), "1000\n0110\n");
}

TEST(Labels, Malformed) {
    std::istringstream bad_char("10x0\n");
    EXPECT_THROW(read_labels(bad_char), InvalidArgument);
    std::istringstream odd("101\n");
    EXPECT_THROW(read_labels(odd), InvalidArgument);
    std::istringstream mixed("10\n1000\n");
    EXPECT_THROW(read_labels(mixed), DimensionMismatch);
    std::istringstream wrong_n("10\n");
    EXPECT_THROW(read_labels(wrong_n, 2), DimensionMismatch);
}

TEST(Subspace, RoundTrip) {
    std::istringstream in("100000\n010000\n110000\n000101\n");
    const auto v = read_subspace(in);
    EXPECT_EQ(v.n(), 3);
    EXPECT_EQ(v.dim(), 3);
    std::ostringstream out;
    write_subspace(out, v);
    std::istringstream again(out.str());
    EXPECT_EQ(read_subspace(again), v);
    std::istringstream empty("# nothing\n");
    EXPECT_THROW(read_subspace(empty), InvalidArgument);
    std::istringstream empty2("");
    EXPECT_EQ(read_subspace(empty2, 2).dim(), 0);
}

TEST(Set, RoundTrip) {
    std::istringstream in("0100\n1000\n0100\n");
    const auto s = read_set(in);
    EXPECT_EQ(s.size(), 2u);
    std::ostringstream out;
    write_set(out, s);
    EXPECT_EQ(out.str(), "1000\n0100\n");
    std::istringstream empty("");
    EXPECT_THROW(read_set(empty), InvalidArgument);
    EXPECT_TRUE(read_set(empty, 3).empty());
}

TEST(Graph, RoundTripAndMalformed) {
    std::istringstream in("# pentagon\n5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    const auto g = read_graph(in);
    EXPECT_EQ(g.order(), 5);
    EXPECT_EQ(g.edges().size(), 5u);
    std::ostringstream out;
    write_graph(out, g);
    std::istringstream again(out.str());
    const auto h = read_graph(again);
    EXPECT_EQ(h.edges(), g.edges());

    for (const char *text : {"", "3 4\n", "x\n", "3\n0\n", "3\n0 5\n", "3\n0 1 2\n", "3\n0 1x\n", "-1\n"}) {
        std::istringstream bad(text);
        EXPECT_THROW(read_graph(bad), InvalidArgument) << "input: " << text;
    }
}

TEST(State, JsonRoundTrip) {
    const auto s = generate_state({StateKind::haar, 3, 11, 0});
    std::istringstream in(state_to_json(s).dump());
    const auto t = read_state(in);
    EXPECT_EQ(t.n(), 3);
    EXPECT_NEAR(s.overlap_sq(t), 1.0, 1e-12);
}

TEST(State, Malformed) {
    for (const char *text : {"{", "[]", R"({"n": 1, "re": [1], "im": [0]})", R"({"n": 1, "re": [1, 0]})",
                             R"({"n": 1, "re": [0, 0], "im": [0, 0]})", R"({"n": 20, "re": [], "im": []})"}) {
        std::istringstream in(text);
        EXPECT_ANY_THROW(read_state(in)) << "input: " << text;
    }
    std::istringstream big(R"({"n": 20, "re": [], "im": []})");
    EXPECT_THROW(read_state(big), CapExceeded);
}

TEST(Files, MissingPathIsValidationError) {
    EXPECT_THROW(read_labels_file("/nonexistent/labels.txt"), InvalidArgument);
    EXPECT_THROW(read_state_file("/nonexistent/state.json"), InvalidArgument);
}

}  // namespace
}  // namespace stabkit::io
