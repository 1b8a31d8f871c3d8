#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uu/estimators.hpp"
#include "uu/frequency.hpp"
#include "uu/sample.hpp"

namespace uu {

// One unique entity inside a bucket, multiplicity preserved.
struct BucketEntity {
    std::string entity_id;
    double value = 0.0;
    std::size_t multiplicity = 0;
};

// A value sub-range with its own sub-sample. Buckets partition the unique
// entities of the sample; members are sorted by (value, entity_id).
struct Bucket {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<BucketEntity> members;
    FrequencyStatistics stats;

    double value_sum() const;           // phi over member uniques
    double singleton_value_sum() const; // phi_f1 restricted to the bucket
};

// Delta per bucket plus the aggregate. All-singleton buckets carry a +inf
// sentinel delta and flag the whole estimate divergent; the total sums the
// finite entries only.
struct BucketEstimate {
    std::vector<Bucket> buckets;
    std::vector<double> per_bucket_delta;
    double total_delta = 0.0;
    bool divergent = false;
};

// Fixed number of equal-width value ranges over [a_min, a_max]; the last
// bucket is closed at a_max and empty buckets are permitted. All-equal values
// collapse into the first bucket. Throws EmptySample.
std::vector<Bucket> split_equiwidth(const IntegratedSample& sample, std::size_t n_b);

// Unique entities sorted by value, cut into n_b contiguous groups of size
// ceil(c/n_b) or floor(c/n_b); ties on value are never separated (groups made
// empty by tie absorption are dropped). Throws EmptySample.
std::vector<Bucket> split_equiheight(const IntegratedSample& sample, std::size_t n_b);

// Leaf delta per bucket, aggregated. Empty buckets contribute 0.
BucketEstimate bucket_delta(const std::vector<Bucket>& buckets, Leaf leaf);

// Recursive binary splitting on unique observed values; a split is accepted
// only when it strictly lowers the summed absolute delta, so the final total
// never exceeds the single-bucket delta in magnitude. Equally good split
// points resolve to the smallest value. Throws EmptySample.
BucketEstimate dynamic_buckets(const IntegratedSample& sample, Leaf leaf = Leaf::naive);

} // namespace uu
