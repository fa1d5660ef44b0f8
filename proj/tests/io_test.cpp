#include <gtest/gtest.h>

#include "omd/core/error.hpp"
#include "omd/io/json_io.hpp"
#include "omd/lattice/flow.hpp"
#include "support/fixtures.hpp"

using namespace omd;
using namespace omd::io;
using namespace omd::testing;

TEST(JsonIo, RationalForms) {
  EXPECT_EQ(rational_from_json(Json("9/2"), "x"), Q("9/2"));
  EXPECT_EQ(rational_from_json(Json("-3"), "x"), Q("-3"));
  EXPECT_EQ(rational_from_json(Json(4), "x"), Q("4"));
  EXPECT_EQ(rational_to_json(Q("-3")), Json("-3/1"));
  EXPECT_THROW(rational_from_json(Json(0.5), "x"), ParseError);
  EXPECT_THROW(rational_from_json(Json("1/0"), "x"), ParseError);
}

TEST(JsonIo, InstanceRoundTrip) {
  const OmdInstance inst = instance({"1/2", "3/2", "0"}, {"1", "2", "7/3"}, {"1/2", "1/3", "9/10"});
  const Json j = instance_to_json(inst);
  EXPECT_EQ(j["a"][0], "1/2");
  EXPECT_EQ(instance_from_json(j), inst);
  EXPECT_EQ(instance_from_json(Json::parse(j.dump())), inst);
}

TEST(JsonIo, InstanceErrorsNameTheField) {
  const Json bad = Json::parse(R"({"n":2,"a":["1","1"],"d":["1"],"p":["1/2","1/2"]})");
  try {
    instance_from_json(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("\"d\""), std::string::npos);
  }
  EXPECT_THROW(instance_from_json(Json::parse(R"({"n":1,"a":["1"],"d":["1"]})")), ParseError);
  EXPECT_THROW(instance_from_json(Json::parse(R"({"n":1,"a":["x"],"d":["1"],"p":["1/2"]})")),
               ParseError);
}

TEST(JsonIo, MechanismRoundTrip) {
  const auto p = params({"2", "3"}, "9/2", {"1", "2"}, {"1/2", "1/2"});
  const auto mech = mechanism::closed_form_mechanism(p, lattice::canonical_solution(p));
  const Json j = mechanism_to_json(mech);
  ASSERT_EQ(j["menu"].size(), 4u);
  EXPECT_EQ(j["menu"][1]["type"], Json::array({1}));
  EXPECT_EQ(j["menu"][1]["price"], "9/4");
  const auto back = mechanism_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.utility, mech.utility);
  EXPECT_EQ(back.allocation, mech.allocation);
  EXPECT_EQ(back.price, mech.price);
  EXPECT_TRUE(mechanism::verify_bic_ir(from_lp2_params(p).instance, back).ok());
}

TEST(JsonIo, ReductionAndBudgetDocuments) {
  const auto lr = lexrank_from_json(Json::parse(R"({"C":[1,2],"S":[1],"k":1})"));
  EXPECT_EQ(lr.values, (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(lr.set, set_of({1}, 2));
  EXPECT_EQ(lr.k, 1);
  EXPECT_THROW(lexrank_from_json(Json::parse(R"({"C":[1,2],"S":[3],"k":1})")), ParseError);
  const auto ss = subsetsum_from_json(Json::parse(R"({"W":[1,2],"T":2})"));
  EXPECT_EQ(ss.target, 2);
  const auto bu = budgeted_from_json(Json::parse(R"({"x":[1,2],"budget":2,"eps":"1/5"})"));
  EXPECT_EQ(bu.eps, Q("1/5"));
  EXPECT_THROW(budgeted_from_json(Json::parse(R"({"x":[1,2],"budget":2})")), ParseError);
}
