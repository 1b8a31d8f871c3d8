#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace uu {

// One (source, entity, value) record with lineage. The atom of the integrated sample.
struct Observation {
    std::string source_id;
    std::string entity_id;
    double value = 0.0;
};

// The merged multi-source sample S plus its unique-entity view K.
// Arrival order of observations is preserved so estimates can be replayed
// over growing prefixes. Immutable once built.
class IntegratedSample {
public:
    std::size_t n() const { return observations_.size(); }
    std::size_t unique_count() const { return entity_ids_.size(); }
    bool empty() const { return observations_.empty(); }

    const std::vector<Observation>& observations() const { return observations_; }

    // Unique-entity view, indexed 0..c-1 in order of first appearance.
    const std::vector<std::string>& entity_ids() const { return entity_ids_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::size_t>& multiplicities() const { return multiplicities_; }

    std::size_t multiplicity_of(const std::string& entity_id) const;
    double value_of(const std::string& entity_id) const;

    // source id -> n_j, ordered by source id for reproducible output
    const std::map<std::string, std::size_t>& source_sizes() const { return source_sizes_; }

private:
    friend class SampleBuilder;
    std::vector<Observation> observations_;
    std::vector<std::string> entity_ids_;
    std::vector<double> values_;
    std::vector<std::size_t> multiplicities_;
    std::unordered_map<std::string, std::size_t> entity_index_;
    std::map<std::string, std::size_t> source_sizes_;
};

// Incremental construction; validates the ingest invariants per observation.
// Used directly by prefix replay so statistics are recomputed incrementally
// instead of from scratch at every step.
class SampleBuilder {
public:
    // Throws DuplicateInSource, ConflictingValue or NonFiniteValue.
    void add(const Observation& obs);
    std::size_t size() const { return sample_.n(); }

    // Snapshot of everything added so far; the builder stays usable.
    IntegratedSample snapshot() const { return sample_; }
    IntegratedSample take() { return std::move(sample_); }

private:
    IntegratedSample sample_;
    std::unordered_map<std::string, std::unordered_set<std::string>> seen_in_source_;
};

IntegratedSample build_sample(const std::vector<Observation>& observations);

// First k observations as their own sample.
IntegratedSample prefix_sample(const IntegratedSample& sample, std::size_t k);

} // namespace uu
