#include <doctest.h>

#include "properties.hpp"

using namespace contour::testing;

TEST_CASE("invariant properties") {
  for (const auto& prop : all_properties()) {
    SUBCASE(prop.name.c_str()) {
      const PropertyOutcome o = prop.run();
      INFO(prop.module << "/" << prop.name << ": " << o.name << " -- " << o.first_failure);
      CHECK(o.cases >= kPropertyCases);
      CHECK(o.failures == 0);
    }
  }
}
