#include "fairkit/curation.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "fairkit/allocation.hpp"
#include "fairkit/error.hpp"
#include "fairkit/rng.hpp"

namespace fairkit {

void CurationConfig::validate() const {
    auto in_open_unit = [](double q) { return q > 0.0 && q < 1.0; };
    if (!in_open_unit(q_low) || !in_open_unit(q_high)) {
        throw ConfigError("curation quantiles must lie in (0, 1)");
    }
    if (!(q_low < q_high)) {
        throw ConfigError("curation q_low must be below q_high");
    }
    if (feature_priority.empty()) {
        throw ConfigError("feature_priority must name at least one feature");
    }
}

StateCounts state_counts(std::span<const Record> records, const std::string& feature) {
    const auto states = feature_states(records, feature);
    StateCounts counts;
    for (const auto& r : records) {
        auto& row = counts[r.age];
        if (row.empty()) {
            for (const auto& s : states) {
                row.emplace(s, 0);
            }
        }
        if (auto it = r.features.find(feature); it != r.features.end()) {
            ++row[it->second];
        }
    }
    return counts;
}

Thresholds compute_thresholds(const StateCounts& counts, const CurationConfig& config) {
    if (counts.empty()) {
        throw DataError("threshold computation needs at least one age");
    }
    std::set<std::string> states;
    for (const auto& [age, row] : counts) {
        for (const auto& [state, n] : row) {
            states.insert(state);
        }
    }
    if (states.empty()) {
        throw DataError("threshold computation needs at least one state");
    }

    Thresholds out;
    bool first = true;
    for (const auto& state : states) {
        std::vector<long long> per_age;
        per_age.reserve(counts.size());
        for (const auto& [age, row] : counts) {
            auto it = row.find(state);
            per_age.push_back(it == row.end() ? 0 : static_cast<long long>(it->second));
        }
        const auto hi = static_cast<std::size_t>(nearest_rank_quantile(per_age, config.q_high));
        const auto lo = static_cast<std::size_t>(nearest_rank_quantile(per_age, config.q_low));
        out.max_sample = first ? hi : std::min(out.max_sample, hi);
        out.min_sample = first ? lo : std::max(out.min_sample, lo);
        first = false;
    }

    for (const auto& [age, row] : counts) {
        std::size_t raw = SIZE_MAX;
        for (const auto& state : states) {
            auto it = row.find(state);
            raw = std::min(raw, it == row.end() ? std::size_t{0} : it->second);
        }
        out.raw[age] = raw;
        out.per_age[age] = std::min(out.max_sample, std::max(out.min_sample, raw));
    }
    return out;
}

Thresholds compute_thresholds(const GroupCounts& counts, const CurationConfig& config,
                              const std::string& feature) {
    StateCounts per_feature;
    std::set<int> ages;
    for (const auto& [key, n] : counts.cells) {
        ages.insert(key.age);
        if (key.feature == feature) {
            per_feature[key.age][key.state] = n;
        }
    }
    if (per_feature.empty()) {
        throw DataError("feature \"" + feature + "\" absent from counts");
    }
    for (int age : ages) {
        per_feature[age];  // ages without any cell of this feature count as zero
    }
    return compute_thresholds(per_feature, config);
}

namespace {

using StratumKey = std::vector<std::string>;

/// Picks `take` of `members` (pool indices), allocating proportionally over
/// the joint states of the secondary features (largest remainder), uniform
/// without replacement inside each stratum.
std::vector<std::size_t> stratified_pick(std::span<const Record> pool, const std::vector<std::size_t>& members,
                                         std::size_t take, const std::vector<std::string>& secondary,
                                         Engine& eng) {
    if (take >= members.size()) {
        return members;
    }
    std::map<StratumKey, std::vector<std::size_t>> strata;
    for (std::size_t idx : members) {
        StratumKey key;
        key.reserve(secondary.size());
        for (const auto& f : secondary) {
            key.push_back(pool[idx].features.at(f));
        }
        strata[std::move(key)].push_back(idx);
    }

    const std::size_t total = members.size();
    struct Quota {
        const StratumKey* key;
        std::size_t base;
        std::size_t remainder;
    };
    std::vector<Quota> quotas;
    std::size_t assigned = 0;
    for (const auto& [key, items] : strata) {
        const std::size_t scaled = take * items.size();
        quotas.push_back({&key, scaled / total, scaled % total});
        assigned += scaled / total;
    }
    std::vector<std::size_t> order(quotas.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return quotas[a].remainder > quotas[b].remainder; });
    for (std::size_t i = 0; assigned < take; ++i, ++assigned) {
        ++quotas[order[i]].base;
    }

    std::vector<std::size_t> picked;
    picked.reserve(take);
    for (const auto& q : quotas) {
        const auto& items = strata.at(*q.key);
        for (std::size_t i : sample_indices(eng, items.size(), q.base)) {
            picked.push_back(items[i]);
        }
    }
    return picked;
}

}  // namespace

CurationPlan curate(std::span<const Record> pool, const CurationConfig& config) {
    config.validate();
    if (pool.empty()) {
        throw DataError("curation pool is empty");
    }
    const auto names = feature_names(pool);
    for (const auto& f : config.feature_priority) {
        if (std::find(names.begin(), names.end(), f) == names.end()) {
            throw ConfigError("feature_priority names \"" + f + "\", absent from the pool");
        }
    }

    CurationPlan plan;
    plan.feature = config.feature_priority.front();

    std::vector<std::string> secondary(config.feature_priority.begin() + 1, config.feature_priority.end());
    for (const auto& f : names) {
        if (std::find(config.feature_priority.begin(), config.feature_priority.end(), f) ==
            config.feature_priority.end()) {
            secondary.push_back(f);
        }
    }

    std::set<std::string> source_set;
    std::map<std::tuple<int, std::string, std::string>, std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const auto& r = pool[i];
        source_set.insert(r.source);
        cells[{r.age, r.features.at(plan.feature), r.source}].push_back(i);
    }
    plan.sources.assign(source_set.begin(), source_set.end());
    const auto states = feature_states(pool, plan.feature);

    plan.thresholds = compute_thresholds(state_counts(pool, plan.feature), config);

    std::vector<bool> chosen(pool.size(), false);
    const std::vector<std::size_t> no_members;
    for (const auto& [age, threshold] : plan.thresholds.per_age) {
        if (threshold == 0) {
            plan.dropped_ages.push_back(age);
            continue;
        }
        for (const auto& state : states) {
            struct Bin {
                const std::string* source;
                const std::vector<std::size_t>* members;
            };
            std::vector<Bin> bins;
            for (const auto& src : plan.sources) {
                auto it = cells.find({age, state, src});
                bins.push_back({&src, it == cells.end() ? &no_members : &it->second});
            }
            std::stable_sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) {
                return a.members->size() < b.members->size();
            });
            std::vector<std::size_t> available;
            for (const auto& b : bins) {
                available.push_back(b.members->size());
            }
            const auto takes = waterfill(available, threshold);

            std::size_t got = 0;
            for (std::size_t j = 0; j < bins.size(); ++j) {
                if (takes[j] == 0) {
                    continue;
                }
                Engine eng(derive_seed(config.seed, {hash_label("curate"), signed_word(age), hash_label(state),
                                                     hash_label(*bins[j].source)}));
                for (std::size_t idx : stratified_pick(pool, *bins[j].members, takes[j], secondary, eng)) {
                    chosen[idx] = true;
                }
                got += takes[j];
            }
            if (got < threshold) {
                plan.shortfall[{age, state}] = threshold - got;
            }
        }
    }

    std::vector<Record> picked;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (chosen[i]) {
            plan.selected_ids.push_back(pool[i].id);
            picked.push_back(pool[i]);
        }
    }
    auto counts = group_counts(picked);
    plan.per_group_counts = std::move(counts.cells);
    plan.per_source_counts = std::move(counts.per_source);
    return plan;
}

std::vector<Record> selected_records(std::span<const Record> pool, const CurationPlan& plan) {
    std::set<std::string> wanted(plan.selected_ids.begin(), plan.selected_ids.end());
    std::vector<Record> out;
    for (const auto& r : pool) {
        if (wanted.count(r.id) != 0) {
            out.push_back(r);
        }
    }
    return out;
}

}  // namespace fairkit
