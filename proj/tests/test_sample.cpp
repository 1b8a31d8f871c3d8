#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "uu/errors.hpp"
#include "uu/sample.hpp"

using namespace uu;

TEST_CASE("build_sample merges the toy sources") {
    IntegratedSample s = test::toy_before();
    CHECK(s.n() == 7);
    CHECK(s.unique_count() == 3);
    CHECK(s.multiplicity_of("A") == 1);
    CHECK(s.multiplicity_of("B") == 2);
    CHECK(s.multiplicity_of("D") == 4);
    CHECK(s.value_of("D") == 10000);
    CHECK(s.source_sizes().at("s1") == 3);
    CHECK(s.source_sizes().at("s4") == 1);
}

TEST_CASE("build_sample on an empty list") {
    IntegratedSample s = build_sample({});
    CHECK(s.n() == 0);
    CHECK(s.unique_count() == 0);
    CHECK(s.empty());
}

TEST_CASE("ingest invariants") {
    SUBCASE("same entity twice in one source") {
        CHECK_THROWS_AS(build_sample({{"s1", "X", 5.0}, {"s1", "X", 5.0}}), DuplicateInSource);
    }
    SUBCASE("conflicting values across sources") {
        CHECK_THROWS_AS(build_sample({{"s1", "X", 5.0}, {"s2", "X", 6.0}}), ConflictingValue);
    }
    SUBCASE("non-finite value") {
        CHECK_THROWS_AS(build_sample({{"s1", "X", std::nan("")}}), NonFiniteValue);
        CHECK_THROWS_AS(build_sample({{"s1", "X", HUGE_VAL}}), NonFiniteValue);
    }
    SUBCASE("negative values are fine") {
        IntegratedSample s = build_sample({{"s1", "X", -7.5}});
        CHECK(s.value_of("X") == -7.5);
    }
}

TEST_CASE("arrival order is preserved and prefixes replay") {
    IntegratedSample s = test::toy_after();
    CHECK(s.observations().front().entity_id == "A");
    CHECK(s.observations().back().entity_id == "E");

    IntegratedSample p = prefix_sample(s, 7);
    CHECK(p.n() == 7);
    CHECK(p.unique_count() == 3);
    CHECK(p.multiplicity_of("E") == 0);

    CHECK(prefix_sample(s, 0).empty());
    CHECK(prefix_sample(s, 999).n() == 9);
}

TEST_CASE("builder snapshots accumulate") {
    SampleBuilder builder;
    builder.add({"s1", "A", 1.0});
    IntegratedSample first = builder.snapshot();
    builder.add({"s2", "A", 1.0});
    IntegratedSample second = builder.snapshot();
    CHECK(first.multiplicity_of("A") == 1);
    CHECK(second.multiplicity_of("A") == 2);
}
