#include <gtest/gtest.h>

#include "properties.hpp"

using namespace qmap;

namespace {
void expect_holds(const props::Outcome& o) {
  EXPECT_GE(o.cases, 1000);
  EXPECT_TRUE(o.ok()) << o.failures << " failures; " << o.first_failure;
}
}  // namespace

TEST(Properties, FieldAxioms) { expect_holds(props::field_axioms(1000)); }
TEST(Properties, ResultantVanishesIffCommonFactor) { expect_holds(props::resultant_gcd(1000)); }
TEST(Properties, SubstitutionIsARingHomomorphism) { expect_holds(props::substitution_homomorphism(1000)); }
TEST(Properties, MinorsAreCovariant) { expect_holds(props::minor_covariance(1000)); }
TEST(Properties, NodeParametersPairUp) { expect_holds(props::census_evenness(1000)); }
TEST(Properties, ParserRoundTrip) { expect_holds(props::parser_round_trip(1000)); }
