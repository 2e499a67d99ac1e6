#include "fairkit/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "fairkit/error.hpp"
#include "fairkit/io.hpp"

namespace fairkit {

namespace {

using nlohmann::json;

std::string where(const std::string& origin, std::size_t line) {
    return origin + ", line " + std::to_string(line);
}

std::string required_string(const json& obj, const char* key, const std::string& loc) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        throw DataError(std::string("missing or non-string '") + key + "', " + loc);
    }
    if (it->get_ref<const std::string&>().empty()) {
        throw DataError(std::string("empty '") + key + "', " + loc);
    }
    return it->get<std::string>();
}

Record parse_record(std::string_view text, const LabelRange& range, const std::string& loc) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError("parse failure, " + loc + ": " + e.what());
    }
    if (!obj.is_object()) {
        throw DataError("parse failure, " + loc + ": record is not an object");
    }

    Record r;
    r.id = required_string(obj, "id", loc);
    r.source = required_string(obj, "source", loc);

    auto age = obj.find("age");
    if (age == obj.end() || !age->is_number_integer()) {
        throw DataError("missing or non-integer 'age', " + loc);
    }
    const auto age_value = age->get<long long>();
    if (age_value < range.lo || age_value > range.hi) {
        throw DataError("age out of range, " + loc);
    }
    r.age = static_cast<int>(age_value);

    auto features = obj.find("features");
    if (features == obj.end() || !features->is_object()) {
        throw DataError("missing or non-object 'features', " + loc);
    }
    for (const auto& [name, state] : features->items()) {
        if (!state.is_string() || state.get_ref<const std::string&>().empty()) {
            throw DataError("feature '" + name + "' has no state, " + loc);
        }
        r.features.emplace(name, state.get<std::string>());
    }

    if (auto path = obj.find("path"); path != obj.end() && !path->is_null()) {
        if (!path->is_string()) {
            throw DataError("non-string 'path', " + loc);
        }
        r.path = path->get<std::string>();
    }
    return r;
}

struct Located {
    Record record;
    std::string location;
};

/// Enforces id uniqueness and a shared feature schema across `rows`.
void validate(const std::vector<Located>& rows) {
    std::unordered_map<std::string, const Located*> seen;
    std::optional<std::set<std::string>> schema;
    std::string schema_loc;
    for (const auto& row : rows) {
        auto [it, fresh] = seen.emplace(row.record.id, &row);
        if (!fresh) {
            throw DataError("duplicate id \"" + row.record.id + "\" at " + it->second->location +
                            " and " + row.location);
        }
        std::set<std::string> names;
        for (const auto& [name, state] : row.record.features) {
            names.insert(name);
        }
        if (!schema) {
            schema = std::move(names);
            schema_loc = row.location;
        } else if (names != *schema) {
            throw DataError("inconsistent feature schema at " + row.location +
                            " (differs from " + schema_loc + ")");
        }
    }
}

std::vector<Located> parse_located(std::istream& in, const LabelRange& range, const std::string& origin) {
    std::vector<Located> rows;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (io::is_skippable(line)) {
            continue;
        }
        const auto loc = where(origin, number);
        rows.push_back({parse_record(line, range, loc), loc});
    }
    return rows;
}

std::vector<Record> strip(std::vector<Located>&& rows) {
    std::vector<Record> out;
    out.reserve(rows.size());
    for (auto& row : rows) {
        out.push_back(std::move(row.record));
    }
    return out;
}

}  // namespace

std::vector<Record> parse_manifest(std::istream& in, const LabelRange& range, const std::string& origin) {
    auto rows = parse_located(in, range, origin);
    validate(rows);
    return strip(std::move(rows));
}

std::vector<Record> load_manifest(const std::filesystem::path& path, const LabelRange& range) {
    std::istringstream in(io::read_text(path));
    return parse_manifest(in, range, path.string());
}

std::vector<Record> load_manifests(std::span<const std::filesystem::path> paths, const LabelRange& range) {
    std::vector<Located> all;
    for (const auto& path : paths) {
        std::istringstream in(io::read_text(path));
        auto rows = parse_located(in, range, path.string());
        std::move(rows.begin(), rows.end(), std::back_inserter(all));
    }
    validate(all);
    return strip(std::move(all));
}

std::string record_to_json_line(const Record& record) {
    nlohmann::ordered_json obj;
    obj["id"] = record.id;
    obj["source"] = record.source;
    obj["age"] = record.age;
    nlohmann::ordered_json features = nlohmann::ordered_json::object();
    for (const auto& [name, state] : record.features) {
        features[name] = state;
    }
    obj["features"] = std::move(features);
    if (record.path) {
        obj["path"] = *record.path;
    }
    return obj.dump();
}

void write_manifest(std::ostream& out, std::span<const Record> records, const std::string& comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    for (const auto& r : records) {
        out << record_to_json_line(r) << '\n';
    }
}

void save_manifest(const std::filesystem::path& path, std::span<const Record> records,
                   const std::string& comment) {
    std::ostringstream out;
    write_manifest(out, records, comment);
    io::write_text(path, out.str());
}

std::vector<std::string> feature_names(std::span<const Record> records) {
    std::vector<std::string> names;
    if (!records.empty()) {
        for (const auto& [name, state] : records.front().features) {
            names.push_back(name);
        }
    }
    return names;
}

std::vector<std::string> feature_states(std::span<const Record> records, const std::string& feature) {
    std::set<std::string> states;
    for (const auto& r : records) {
        if (auto it = r.features.find(feature); it != r.features.end()) {
            states.insert(it->second);
        }
    }
    return {states.begin(), states.end()};
}

GroupCounts group_counts(std::span<const Record> records) {
    GroupCounts counts;
    for (const auto& r : records) {
        for (const auto& [name, state] : r.features) {
            GroupKey key{r.age, name, state};
            ++counts.cells[key];
            ++counts.per_source[{std::move(key), r.source}];
        }
    }
    return counts;
}

}  // namespace fairkit
