// Copyright 2026 The Faircap Authors.
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

#include "faircap/metrics.h"

#include <vector>

#include <gtest/gtest.h>

#include "faircap/error.h"
#include "test_util.h"

namespace faircap {
namespace {

RunRecord Sample() {
  RunRecord r;
  r.method = "kmed_fair_cap_mcf";
  r.k = 3;
  r.cost = 12.5;
  r.balance = BalanceOf(2, 3);
  r.sizes = {5, 4, 3};
  r.q = 5;
  r.seed = 7;
  r.wall_time_ms = 3.25;
  return r;
}

TEST(EvaluateTest, FillsEveryField) {
  const Dataset data =
      testing::LineDataset({0, 1, 2, 10, 11}, {0, 1, 0, 1, 0});
  const Clustering c = Clustering::FromAssignment({0, 0, 0, 1, 1}, 2, data);
  Params params;
  params.epsilon = 1.2;
  params.seed = 4;
  const RunRecord r = Evaluate(c, data, params, "x");
  EXPECT_EQ(r.method, "x");
  EXPECT_EQ(r.k, 2);
  EXPECT_DOUBLE_EQ(r.cost, 3.0);
  EXPECT_EQ(r.balance, BalanceOf(1, 2));
  EXPECT_EQ(r.sizes, (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(r.q, 3);
  EXPECT_EQ(r.seed, 4u);
  EXPECT_TRUE(r.ok());
}

TEST(SizeDispersionTest, InclusiveQuartiles) {
  const std::vector<std::size_t> sizes = {1, 2, 3, 4, 5};
  const auto s = SizeDispersion(sizes);
  EXPECT_DOUBLE_EQ(s.min, 1);
  EXPECT_DOUBLE_EQ(s.q1, 2);
  EXPECT_DOUBLE_EQ(s.median, 3);
  EXPECT_DOUBLE_EQ(s.q3, 4);
  EXPECT_DOUBLE_EQ(s.max, 5);

  const std::vector<std::size_t> four = {10, 40, 20, 30};
  const auto t = SizeDispersion(four);
  EXPECT_DOUBLE_EQ(t.q1, 17.5);
  EXPECT_DOUBLE_EQ(t.median, 25);
  EXPECT_DOUBLE_EQ(t.q3, 32.5);

  const std::vector<std::size_t> one = {7};
  EXPECT_DOUBLE_EQ(SizeDispersion(one).q3, 7);
  EXPECT_THROW(SizeDispersion(std::vector<std::size_t>{}), ContractViolation);
}

TEST(RecordJsonTest, RoundTripWithTiming) {
  const RunRecord r = Sample();
  const RunRecord back = RecordFromJson(RecordToJson(r, true));
  EXPECT_EQ(back.method, r.method);
  EXPECT_EQ(back.k, r.k);
  EXPECT_EQ(back.cost, r.cost);
  EXPECT_EQ(back.balance, r.balance);
  EXPECT_EQ(back.sizes, r.sizes);
  EXPECT_EQ(back.q, r.q);
  EXPECT_EQ(back.t, r.t);
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.wall_time_ms, r.wall_time_ms);
}

TEST(RecordJsonTest, TimingOmittedByDefault) {
  const auto j = RecordToJson(Sample());
  EXPECT_FALSE(j.contains("wall_time_ms"));
  EXPECT_EQ(j["t"], "1/2");
}

TEST(RecordJsonTest, FailedRunKeepsMessage) {
  RunRecord r = Sample();
  r.status = "infeasible";
  r.message = "no room";
  const auto j = RecordToJson(r);
  EXPECT_FALSE(j.contains("cost"));
  const RunRecord back = RecordFromJson(j);
  EXPECT_EQ(back.status, "infeasible");
  EXPECT_EQ(back.message, "no room");
  EXPECT_FALSE(back.ok());
}

TEST(RecordJsonTest, MalformedIsDataError) {
  EXPECT_THROW(RecordFromJson(nlohmann::json::parse(R"({"k":2})")), DataError);
}

TEST(RecordsToCsvTest, HeaderAndRows) {
  RunRecord bad = Sample();
  bad.status = "error";
  const std::vector<RunRecord> records = {Sample(), bad};
  const std::string csv = RecordsToCsv(records);
  EXPECT_EQ(csv,
            "method,k,status,cost,balance,balance_numerator,"
            "balance_denominator,max_size,min_size,q,t,seed,wall_time_ms\n"
            "kmed_fair_cap_mcf,3,ok,12.5,0.66666666666666663,2,3,5,3,5,1/2,7,"
            "3.25\n"
            "kmed_fair_cap_mcf,3,error,,,,,,,5,1/2,7,3.25\n");
}

}  // namespace
}  // namespace faircap
