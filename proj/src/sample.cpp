#include "uu/sample.hpp"

#include <cmath>
#include <utility>

#include "uu/errors.hpp"

namespace uu {

std::size_t IntegratedSample::multiplicity_of(const std::string& entity_id) const {
    auto it = entity_index_.find(entity_id);
    return it == entity_index_.end() ? 0 : multiplicities_[it->second];
}

double IntegratedSample::value_of(const std::string& entity_id) const {
    auto it = entity_index_.find(entity_id);
    if (it == entity_index_.end())
        throw Error("unknown entity: " + entity_id);
    return values_[it->second];
}

void SampleBuilder::add(const Observation& obs) {
    if (!std::isfinite(obs.value))
        throw NonFiniteValue("non-finite value for entity '" + obs.entity_id + "' in source '" +
                             obs.source_id + "'");

    auto& seen = seen_in_source_[obs.source_id];
    if (!seen.insert(obs.entity_id).second)
        throw DuplicateInSource("entity '" + obs.entity_id + "' listed twice by source '" +
                                obs.source_id + "'");

    auto [it, inserted] =
        sample_.entity_index_.try_emplace(obs.entity_id, sample_.entity_ids_.size());
    if (inserted) {
        sample_.entity_ids_.push_back(obs.entity_id);
        sample_.values_.push_back(obs.value);
        sample_.multiplicities_.push_back(1);
    } else {
        if (sample_.values_[it->second] != obs.value)
            throw ConflictingValue("entity '" + obs.entity_id + "' has conflicting values " +
                                   std::to_string(sample_.values_[it->second]) + " and " +
                                   std::to_string(obs.value));
        ++sample_.multiplicities_[it->second];
    }
    ++sample_.source_sizes_[obs.source_id];
    sample_.observations_.push_back(obs);
}

IntegratedSample build_sample(const std::vector<Observation>& observations) {
    SampleBuilder builder;
    for (const auto& obs : observations) builder.add(obs);
    return builder.take();
}

IntegratedSample prefix_sample(const IntegratedSample& sample, std::size_t k) {
    if (k >= sample.n()) return sample;
    SampleBuilder builder;
    for (std::size_t i = 0; i < k; ++i) builder.add(sample.observations()[i]);
    return builder.take();
}

} // namespace uu
