#include <gtest/gtest.h>

#include "oracles.hpp"
#include "teapot/enumerate.hpp"
#include "teapot/itinerary.hpp"
#include "teapot/roots.hpp"

using namespace teapot;
using symbolic::ItineraryStatus;

TEST(Itinerary, RootTwo) {
  auto it = symbolic::itinerary(std::sqrt(2.0), 8);
  EXPECT_EQ(it.letters, "10111111");
  EXPECT_EQ(it.status, ItineraryStatus::preperiodic);
  EXPECT_EQ(it.preperiod, 2u);
  EXPECT_EQ(it.period, 1u);
  EXPECT_EQ(it.word().to_string(), "10(1)");
}

TEST(Itinerary, SlopeTwo) {
  auto it = symbolic::itinerary(2.0, 8);
  EXPECT_EQ(it.letters, "10000000");
  EXPECT_EQ(it.status, ItineraryStatus::preperiodic);
  EXPECT_EQ(it.preperiod, 1u);
  EXPECT_EQ(it.period, 1u);
}

TEST(Itinerary, GoldenRatio) {
  auto it = symbolic::itinerary((1 + std::sqrt(5.0)) / 2, 8);
  EXPECT_EQ(it.letters, "10010010");
  EXPECT_EQ(it.status, ItineraryStatus::periodic);
  EXPECT_EQ(it.period, 3u);
}

TEST(Itinerary, GenericSlopeIsTruncated) {
  auto it = symbolic::itinerary(1.7, 30);
  EXPECT_EQ(it.status, ItineraryStatus::truncated);
  EXPECT_EQ(it.letters, oracle::tent_itinerary(1.7, 30));
}

TEST(Itinerary, DomainErrors) {
  EXPECT_THROW(symbolic::itinerary(1.0, 5), DomainError);
  EXPECT_THROW(symbolic::itinerary(2.5, 5), DomainError);
  EXPECT_THROW(symbolic::itinerary(1.5, 0), DomainError);
}

TEST(Itinerary, RecoversEnumeratedWords) {
  // the orbit of 1 passes through the critical point one step before it
  // returns, and I0 is closed there, so the last letter reads as 0; words
  // whose growth rate belongs to a shorter word come back as that word
  std::size_t checked = 0, exact = 0;
  for (auto id : dataset::enumerate_admissible(12).ids) {
    Word w = Word::from_id(id);
    double beta = roots::leading_root(poly::parry_polynomial(w));
    if (beta <= 1 + 1e-9) continue;
    std::string coded = w.letters();
    coded.back() = '0';
    auto it = symbolic::itinerary(beta, 2 * w.size());
    ASSERT_EQ(it.status, ItineraryStatus::periodic) << w.to_string();
    ASSERT_EQ(it.letters.substr(0, it.period).back(), '0') << w.to_string();
    Word found = it.word();
    ASSERT_NEAR(roots::leading_root(poly::parry_polynomial(found)), beta, 1e-9) << w.to_string() << " -> " << found.to_string();
    if (it.letters == oracle::unroll("", coded, 2 * w.size())) ++exact;
    ++checked;
  }
  EXPECT_GT(checked, 700u);
  EXPECT_GT(exact, checked * 9 / 10);
}

TEST(Itinerary, CriticalOrbitHasTwoCodings) {
  double phi = (1 + std::sqrt(5.0)) / 2;
  EXPECT_EQ(roots::leading_root(poly::parry_polynomial(Word::parse("101"))), roots::leading_root(poly::parry_polynomial(Word::parse("100"))));
  EXPECT_EQ(symbolic::itinerary(phi, 6).letters, "100100");
}

TEST(Itinerary, AgreesWithPlainIterationAwayFromTheCriticalPoint) {
  for (double beta = 1.05; beta < 2; beta += 0.0137) {
    auto it = symbolic::itinerary(beta, 25);
    if (it.status != ItineraryStatus::truncated) continue;
    EXPECT_EQ(it.letters, oracle::tent_itinerary(beta, 25)) << beta;
  }
}
