#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "uu/sample.hpp"

namespace uu::test {

struct EntitySpec {
    std::string id;
    double value;
    std::size_t multiplicity;
};

// Sample where entity e appears in sources s1..s<multiplicity>, once each.
inline IntegratedSample sample_of(const std::vector<EntitySpec>& entities) {
    std::vector<Observation> observations;
    for (const auto& e : entities)
        for (std::size_t j = 0; j < e.multiplicity; ++j)
            observations.push_back({"s" + std::to_string(j + 1), e.id, e.value});
    return build_sample(observations);
}

// Worked toy sample, before the fifth source arrives:
// multiplicities A:1, B:2, D:4.
inline IntegratedSample toy_before() {
    return build_sample({{"s1", "A", 1000},
                         {"s1", "B", 2000},
                         {"s1", "D", 10000},
                         {"s2", "B", 2000},
                         {"s2", "D", 10000},
                         {"s3", "D", 10000},
                         {"s4", "D", 10000}});
}

// After the fifth source: A:2, B:2, D:4, E:1.
inline IntegratedSample toy_after() {
    return build_sample({{"s1", "A", 1000},
                         {"s1", "B", 2000},
                         {"s1", "D", 10000},
                         {"s2", "B", 2000},
                         {"s2", "D", 10000},
                         {"s3", "D", 10000},
                         {"s4", "D", 10000},
                         {"s5", "A", 1000},
                         {"s5", "E", 300}});
}

} // namespace uu::test
