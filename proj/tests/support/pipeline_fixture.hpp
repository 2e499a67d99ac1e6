#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fairkit/augmentation.hpp"
#include "fairkit/cli.hpp"
#include "fairkit/embeddings.hpp"
#include "fairkit/image.hpp"
#include "fairkit/io.hpp"
#include "fairkit/manifest.hpp"
#include "fairkit/rng.hpp"

namespace fairkit::testing {

namespace fs = std::filesystem;

/// Stand-in embedder: per-channel means over a 2x2 block grid, scaled to [0, 1].
inline std::vector<float> embed_image(const RgbImage& img) {
    std::vector<float> out;
    for (int by = 0; by < 2; ++by) {
        for (int bx = 0; bx < 2; ++bx) {
            for (int ch = 0; ch < 3; ++ch) {
                double sum = 0.0;
                int n = 0;
                for (int y = by * img.height / 2; y < (by + 1) * img.height / 2; ++y) {
                    for (int x = bx * img.width / 2; x < (bx + 1) * img.width / 2; ++x) {
                        sum += img.at(x, y, ch);
                        ++n;
                    }
                }
                out.push_back(static_cast<float>(sum / n / 255.0));
            }
        }
    }
    return out;
}

inline void embed_files(const std::vector<std::pair<std::string, fs::path>>& items, const fs::path& femb,
                        const fs::path& ids) {
    std::vector<std::string> names;
    std::vector<float> values;
    for (const auto& [id, path] : items) {
        names.push_back(id);
        const auto v = embed_image(read_png(path));
        values.insert(values.end(), v.begin(), v.end());
    }
    save_embeddings(EmbeddingTable(names, 12, values), femb, ids);
}

/// 20 records over two ages, two genders and two sources, one 8x8 PNG each.
/// Age 20 holds 6 male and 4 female faces, age 21 holds 5 of each.
inline std::vector<Record> write_pool_fixture(const fs::path& dir) {
    fs::create_directories(dir / "img");
    std::vector<Record> all;
    std::vector<Record> by_source[2];
    int n = 0;
    for (int age : {20, 21}) {
        for (const char* gender : {"male", "female"}) {
            const int count = age == 20 ? (gender[0] == 'm' ? 6 : 4) : 5;
            for (int i = 0; i < count; ++i, ++n) {
                Record r;
                r.id = "face" + std::to_string(n);
                r.source = n % 3 == 0 ? "srcB" : "srcA";
                r.age = age;
                r.features = {{"gender", gender}, {"ethnicity", i % 2 == 0 ? "asian" : "white"}};
                r.path = "img/" + r.id + ".png";

                Engine eng(derive_seed(99, {hash_label(r.id)}));
                RgbImage img(8, 8);
                for (int y = 0; y < 8; ++y) {
                    for (int x = 0; x < 8; ++x) {
                        const int base[3] = {age == 20 ? 180 : 60, gender[0] == 'm' ? 150 : 90, age == 20 ? 50 : 170};
                        for (int ch = 0; ch < 3; ++ch) {
                            const int v = base[ch] + x * 4 - y * 3 + static_cast<int>(uniform_below(eng, 30));
                            img.at(x, y, ch) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
                        }
                    }
                }
                write_png(img, dir / *r.path);
                by_source[r.source == "srcA" ? 0 : 1].push_back(r);
                all.push_back(r);
            }
        }
    }
    save_manifest(dir / "pool_a.jsonl", by_source[0]);
    save_manifest(dir / "pool_b.jsonl", by_source[1]);
    return all;
}

/// Predictions for a manifest: actual age plus a fixed per-id offset.
inline void write_predictions(const std::vector<Record>& records, const fs::path& path) {
    std::ostringstream out;
    out << "id,actual_age,predicted_age,ethnicity,gender\n";
    for (const auto& r : records) {
        const double offset = static_cast<double>(hash_label(r.id) % 9) * 0.5 - 2.0;
        out << r.id << ',' << r.age << ',' << io::format_double(r.age + offset) << ',' << r.features.at("ethnicity")
            << ',' << r.features.at("gender") << '\n';
    }
    io::write_text(path, out.str());
}

struct StepResult {
    std::string step;
    int code = 0;
    std::string err;
};

inline StepResult cli_step(const std::string& step, std::vector<std::string> args) {
    args.insert(args.begin(), "fairkit");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {step, code, err.str()};
}

/// curate -> fit -> plan -> apply -> embed -> score -> filter -> sample -> evaluate -> report.
/// Returns the first failing step, or an empty step name on success.
inline StepResult run_pipeline(const fs::path& dir, const std::string& seed) {
    write_pool_fixture(dir);
    auto p = [&](const char* name) { return (dir / name).string(); };
    if (auto r = cli_step("curate", {"curate", "--pool", p("pool_a.jsonl"), "--pool", p("pool_b.jsonl"), "--out",
                                     p("curated.jsonl"), "--feature-priority", "gender,ethnicity", "--seed", seed});
        r.code != 0) {
        return r;
    }
    const auto curated = load_manifest(dir / "curated.jsonl");
    std::vector<std::pair<std::string, fs::path>> items;
    for (const auto& r : curated) {
        items.emplace_back(r.id, dir / *r.path);
    }
    embed_files(items, dir / "train.femb", dir / "train.ids");

    const std::vector<std::pair<std::string, std::vector<std::string>>> middle = {
        {"ood fit",
         {"ood", "fit", "--embeddings", p("train.femb"), "--ids", p("train.ids"), "--labels-from", p("curated.jsonl"),
          "--model", p("model.json"), "--seed", seed}},
        {"augment plan",
         {"augment", "plan", "--manifest", p("curated.jsonl"), "--out", p("plan.jsonl"), "--feature", "gender",
          "--seed", seed}},
        {"augment apply",
         {"augment", "apply", "--plan", p("plan.jsonl"), "--manifest", p("curated.jsonl"), "--out-dir", p("aug"),
          "--seed", seed}},
    };
    for (const auto& [name, args] : middle) {
        if (auto r = cli_step(name, args); r.code != 0) {
            return r;
        }
    }
    items.clear();
    for (const auto& s : load_plan(dir / "plan.jsonl")) {
        items.emplace_back(s.aug_id, dir / "aug" / (s.aug_id + ".png"));
    }
    embed_files(items, dir / "aug.femb", dir / "aug.ids");
    write_predictions(curated, dir / "predictions.csv");

    const std::vector<std::pair<std::string, std::vector<std::string>>> last = {
        {"ood score",
         {"ood", "score", "--model", p("model.json"), "--embeddings", p("aug.femb"), "--ids", p("aug.ids"), "--out",
          p("aug_scores.csv"), "--seed", seed}},
        {"augment filter",
         {"augment", "filter", "--model", p("model.json"), "--scores", p("aug_scores.csv"), "--out",
          p("filter.csv"), "--range", "0.05:1.00", "--seed", seed}},
        {"augment sample",
         {"augment", "sample", "--plan", p("plan.jsonl"), "--filter-report", p("filter.csv"), "--out",
          p("final.jsonl"), "--budget", "10", "--feature", "gender", "--seed", seed}},
        {"evaluate",
         {"evaluate", "--predictions", p("predictions.csv"), "--out", p("eval.json"), "--out-csv", p("eval.csv"),
          "--features", "gender,ethnicity", "--seed", seed}},
        {"report", {"report", "--scores", p("aug_scores.csv"), "--out-svg", p("llr.svg"), "--seed", seed}},
    };
    for (const auto& [name, args] : last) {
        if (auto r = cli_step(name, args); r.code != 0) {
            return r;
        }
    }
    return {};
}

/// Relative path -> file bytes for every regular file under `dir`.
inline std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files[fs::relative(entry.path(), dir).generic_string()] = io::read_text(entry.path());
        }
    }
    return files;
}

}  // namespace fairkit::testing
