#include "uu/bucketing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "uu/errors.hpp"

namespace uu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unique entities sorted by (value, entity_id) with prefix aggregates, so a
// leaf delta over any contiguous value range is O(1).
struct SortedEntities {
    std::vector<BucketEntity> ents;
    std::vector<double> cum_n;      // sum of multiplicities
    std::vector<double> cum_f1;     // count of singletons
    std::vector<double> cum_dup;    // sum of m(m-1)
    std::vector<double> cum_phi;    // sum of values
    std::vector<double> cum_phi_f1; // sum of singleton values

    explicit SortedEntities(const IntegratedSample& sample) {
        const std::size_t c = sample.unique_count();
        ents.reserve(c);
        for (std::size_t i = 0; i < c; ++i)
            ents.push_back({sample.entity_ids()[i], sample.values()[i],
                            sample.multiplicities()[i]});
        std::sort(ents.begin(), ents.end(), [](const BucketEntity& a, const BucketEntity& b) {
            if (a.value != b.value) return a.value < b.value;
            return a.entity_id < b.entity_id;
        });
        cum_n.assign(c + 1, 0.0);
        cum_f1.assign(c + 1, 0.0);
        cum_dup.assign(c + 1, 0.0);
        cum_phi.assign(c + 1, 0.0);
        cum_phi_f1.assign(c + 1, 0.0);
        for (std::size_t i = 0; i < c; ++i) {
            const double m = static_cast<double>(ents[i].multiplicity);
            cum_n[i + 1] = cum_n[i] + m;
            cum_f1[i + 1] = cum_f1[i] + (ents[i].multiplicity == 1 ? 1.0 : 0.0);
            cum_dup[i + 1] = cum_dup[i] + m * (m - 1.0);
            cum_phi[i + 1] = cum_phi[i] + ents[i].value;
            cum_phi_f1[i + 1] = cum_phi_f1[i] + (ents[i].multiplicity == 1 ? ents[i].value : 0.0);
        }
    }

    std::size_t size() const { return ents.size(); }

    // leaf delta over entities [lo, hi); 0 for empty or f1 = 0, +inf when n = f1
    double delta(std::size_t lo, std::size_t hi, Leaf leaf) const {
        if (lo >= hi) return 0.0;
        const double n = cum_n[hi] - cum_n[lo];
        const double c = static_cast<double>(hi - lo);
        const double f1 = cum_f1[hi] - cum_f1[lo];
        if (f1 == 0.0) return 0.0;
        if (f1 >= n) return kInf;
        double gamma_sq = 0.0;
        if (n >= 2.0) {
            const double c_hat = 1.0 - f1 / n;
            const double dup = cum_dup[hi] - cum_dup[lo];
            gamma_sq = (c / c_hat) * dup / (n * (n - 1.0)) - 1.0;
            if (gamma_sq < 0.0) gamma_sq = 0.0;
        }
        if (leaf == Leaf::naive) {
            const double phi = cum_phi[hi] - cum_phi[lo];
            return phi * f1 * (c + gamma_sq * n) / (c * (n - f1));
        }
        const double phi_f1 = cum_phi_f1[hi] - cum_phi_f1[lo];
        return phi_f1 * (c + gamma_sq * n) / (n - f1);
    }

    Bucket materialize(std::size_t lo, std::size_t hi) const {
        Bucket b;
        b.members.assign(ents.begin() + static_cast<std::ptrdiff_t>(lo),
                         ents.begin() + static_cast<std::ptrdiff_t>(hi));
        if (!b.members.empty()) {
            b.lo = b.members.front().value;
            b.hi = b.members.back().value;
        }
        std::vector<std::size_t> mults;
        mults.reserve(b.members.size());
        for (const auto& e : b.members) mults.push_back(e.multiplicity);
        b.stats = frequency_statistics(mults);
        return b;
    }
};

double bucket_leaf_delta(const Bucket& b, Leaf leaf) {
    if (b.stats.n == 0) return 0.0;
    const auto f1 = b.stats.singletons();
    if (f1 == 0) return 0.0;
    if (b.stats.all_singletons()) return kInf;
    const double n = static_cast<double>(b.stats.n);
    const double c = static_cast<double>(b.stats.c);
    double gamma_sq = b.stats.n >= 2 ? cv_squared(b.stats) : 0.0;
    if (leaf == Leaf::naive)
        return b.value_sum() * static_cast<double>(f1) * (c + gamma_sq * n) /
               (c * (n - static_cast<double>(f1)));
    return b.singleton_value_sum() * (c + gamma_sq * n) / (n - static_cast<double>(f1));
}

} // namespace

double Bucket::value_sum() const {
    double total = 0.0;
    for (const auto& e : members) total += e.value;
    return total;
}

double Bucket::singleton_value_sum() const {
    double total = 0.0;
    for (const auto& e : members)
        if (e.multiplicity == 1) total += e.value;
    return total;
}

std::vector<Bucket> split_equiwidth(const IntegratedSample& sample, std::size_t n_b) {
    if (n_b == 0) throw InvalidConfig("equi-width bucketing needs n_b >= 1");
    if (sample.unique_count() == 0) throw EmptySample("cannot bucket an empty sample");

    SortedEntities sorted(sample);
    const double a_min = sorted.ents.front().value;
    const double a_max = sorted.ents.back().value;
    const double width = (a_max - a_min) / static_cast<double>(n_b);

    std::vector<std::vector<BucketEntity>> groups(n_b);
    for (const auto& e : sorted.ents) {
        std::size_t idx = 0;
        if (width > 0.0) {
            idx = static_cast<std::size_t>((e.value - a_min) / width);
            if (idx >= n_b) idx = n_b - 1; // a_max closes the last bucket
        }
        groups[idx].push_back(e);
    }

    std::vector<Bucket> buckets;
    buckets.reserve(n_b);
    for (std::size_t i = 0; i < n_b; ++i) {
        Bucket b;
        b.lo = a_min + width * static_cast<double>(i);
        b.hi = (i + 1 == n_b) ? a_max : a_min + width * static_cast<double>(i + 1);
        b.members = std::move(groups[i]);
        std::vector<std::size_t> mults;
        mults.reserve(b.members.size());
        for (const auto& e : b.members) mults.push_back(e.multiplicity);
        b.stats = frequency_statistics(mults);
        buckets.push_back(std::move(b));
    }
    return buckets;
}

std::vector<Bucket> split_equiheight(const IntegratedSample& sample, std::size_t n_b) {
    if (n_b == 0) throw InvalidConfig("equi-height bucketing needs n_b >= 1");
    const std::size_t c = sample.unique_count();
    if (c == 0) throw EmptySample("cannot bucket an empty sample");
    if (n_b > c) n_b = c;

    SortedEntities sorted(sample);
    const std::size_t base = c / n_b;
    const std::size_t remainder = c % n_b;

    std::vector<Bucket> buckets;
    std::size_t lo = 0;
    for (std::size_t g = 0; g < n_b && lo < c; ++g) {
        std::size_t hi = lo + base + (g < remainder ? 1 : 0);
        if (hi > c) hi = c;
        // never cut between entities sharing a value
        while (hi < c && sorted.ents[hi - 1].value == sorted.ents[hi].value) ++hi;
        buckets.push_back(sorted.materialize(lo, hi));
        lo = hi;
    }
    return buckets;
}

BucketEstimate bucket_delta(const std::vector<Bucket>& buckets, Leaf leaf) {
    BucketEstimate estimate;
    estimate.buckets = buckets;
    estimate.per_bucket_delta.reserve(buckets.size());
    for (const Bucket& b : buckets) {
        double d = bucket_leaf_delta(b, leaf);
        estimate.per_bucket_delta.push_back(d);
        if (std::isinf(d))
            estimate.divergent = true;
        else
            estimate.total_delta += d;
    }
    return estimate;
}

BucketEstimate dynamic_buckets(const IntegratedSample& sample, Leaf leaf) {
    if (sample.unique_count() == 0) throw EmptySample("cannot bucket an empty sample");

    SortedEntities sorted(sample);
    const std::size_t c = sorted.size();

    struct Segment {
        std::size_t lo, hi;
    };
    std::deque<Segment> todo{{0, c}};
    std::vector<Segment> final_segments;

    while (!todo.empty()) {
        Segment seg = todo.front();
        todo.pop_front();

        // A split is kept only when it strictly lowers the summed absolute
        // delta; scanning boundaries in value order makes ties resolve to the
        // smallest split value. Splits are only possible between distinct
        // values, which keeps equal-valued entities together.
        const double current = std::abs(sorted.delta(seg.lo, seg.hi, leaf));
        double best = current;
        std::size_t best_cut = 0;
        for (std::size_t cut = seg.lo + 1; cut < seg.hi; ++cut) {
            if (sorted.ents[cut - 1].value == sorted.ents[cut].value) continue;
            const double candidate = std::abs(sorted.delta(seg.lo, cut, leaf)) +
                                     std::abs(sorted.delta(cut, seg.hi, leaf));
            if (candidate < best) {
                best = candidate;
                best_cut = cut;
            }
        }
        if (best_cut != 0) {
            todo.push_back({seg.lo, best_cut});
            todo.push_back({best_cut, seg.hi});
        } else {
            final_segments.push_back(seg);
        }
    }

    std::sort(final_segments.begin(), final_segments.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });

    BucketEstimate estimate;
    estimate.buckets.reserve(final_segments.size());
    estimate.per_bucket_delta.reserve(final_segments.size());
    for (const Segment& seg : final_segments) {
        estimate.buckets.push_back(sorted.materialize(seg.lo, seg.hi));
        double d = sorted.delta(seg.lo, seg.hi, leaf);
        estimate.per_bucket_delta.push_back(d);
        if (std::isinf(d))
            estimate.divergent = true;
        else
            estimate.total_delta += d;
    }
    return estimate;
}

} // namespace uu
