#include "fairkit/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairkit/augmentation.hpp"
#include "fairkit/config.hpp"
#include "fairkit/curation.hpp"
#include "fairkit/embeddings.hpp"
#include "fairkit/error.hpp"
#include "fairkit/image.hpp"
#include "fairkit/io.hpp"
#include "fairkit/manifest.hpp"
#include "fairkit/metrics.hpp"
#include "fairkit/ood.hpp"
#include "fairkit/report.hpp"
#include "fairkit/rng.hpp"

namespace fairkit::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

/// Flag values; an option only overrides the config when it was given.
struct Flags {
    std::string config_path;
    std::uint64_t seed = 0;
    int age_min = 0;
    int age_max = 100;

    // curate
    std::vector<std::string> pools;
    std::string out;
    std::string audit;
    double q_low = 0.0;
    double q_high = 0.0;
    std::vector<std::string> feature_priority;

    // ood
    std::string embeddings;
    std::string ids;
    std::string labels_from;
    std::string model;
    int k = 0;
    double shrinkage = 0.0;
    double q = 0.0;
    bool exclude_label = false;

    // augment
    std::string manifest;
    std::string feature;
    std::string plan;
    std::string image_dir;
    std::string out_dir;
    std::string scores;
    std::string range;
    std::string filter_report;
    std::size_t budget = 0;

    // evaluate / report
    std::string predictions;
    std::vector<std::string> features;
    double t = 0.0;
    std::string out_csv;
    std::string out_svg;
    std::vector<std::string> score_files;
};

struct Given {
    CLI::Option* seed = nullptr;
    CLI::Option* age_min = nullptr;
    CLI::Option* age_max = nullptr;
    CLI::Option* q_low = nullptr;
    CLI::Option* q_high = nullptr;
    CLI::Option* feature_priority = nullptr;
    CLI::Option* k = nullptr;
    CLI::Option* shrinkage = nullptr;
    CLI::Option* feature = nullptr;
    CLI::Option* range = nullptr;
    CLI::Option* budget = nullptr;
    CLI::Option* features = nullptr;
    CLI::Option* t = nullptr;
};

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

PipelineConfig resolve(const Flags& f, const Given& g) {
    PipelineConfig c = f.config_path.empty() ? PipelineConfig{} : PipelineConfig::load(f.config_path);
    if (given(g.seed)) c.seed = f.seed;
    if (given(g.age_min)) c.labels.lo = f.age_min;
    if (given(g.age_max)) c.labels.hi = f.age_max;
    if (c.labels.lo > c.labels.hi) {
        throw ConfigError("label range lower bound exceeds upper bound");
    }
    if (given(g.q_low)) c.curation.q_low = f.q_low;
    if (given(g.q_high)) c.curation.q_high = f.q_high;
    if (given(g.feature_priority)) c.curation.feature_priority = f.feature_priority;
    c.curation.seed = c.seed;
    if (given(g.k)) c.ood.k = f.k;
    if (given(g.shrinkage)) c.ood.shrinkage = f.shrinkage;
    if (given(g.feature)) c.augmentation.feature = f.feature;
    if (given(g.range)) c.augmentation.filter = FilterRange::parse(f.range);
    if (given(g.budget)) c.augmentation.budget = f.budget;
    if (given(g.features)) c.metrics.features = f.features;
    if (given(g.t)) c.metrics.t = f.t;
    return c;
}

ojson header(const PipelineConfig& c) {
    ojson doc;
    doc["tool"] = "fairkit";
    doc["version"] = kVersion;
    doc["config"] = c.to_json();
    return doc;
}

void write_json(const fs::path& path, const ojson& doc) { io::write_text(path, doc.dump(2) + "\n"); }

std::string default_audit(const std::string& audit, const std::string& out) {
    return audit.empty() ? out + ".audit.json" : audit;
}

// ---------------------------------------------------------------- curate

void cmd_curate(const Flags& f, const PipelineConfig& c) {
    c.curation.validate();
    std::vector<fs::path> paths(f.pools.begin(), f.pools.end());
    const auto pool = load_manifests(paths, c.labels);
    const auto plan = curate(pool, c.curation);
    const auto chosen = selected_records(pool, plan);
    save_manifest(f.out, chosen, provenance(c));

    ojson audit = header(c);
    audit["feature"] = plan.feature;
    audit["sources"] = plan.sources;
    audit["pool_size"] = pool.size();
    audit["selected_count"] = plan.selected_ids.size();
    audit["min_sample"] = plan.thresholds.min_sample;
    audit["max_sample"] = plan.thresholds.max_sample;
    ojson thresholds = ojson::array();
    for (const auto& [age, t] : plan.thresholds.per_age) {
        thresholds.push_back({{"age", age}, {"raw", plan.thresholds.raw.at(age)}, {"threshold", t}});
    }
    audit["thresholds"] = std::move(thresholds);
    audit["dropped_ages"] = plan.dropped_ages;
    ojson shortfall = ojson::array();
    for (const auto& [cell, missing] : plan.shortfall) {
        shortfall.push_back({{"age", cell.first}, {"state", cell.second}, {"missing", missing}});
    }
    audit["shortfall"] = std::move(shortfall);
    ojson groups = ojson::array();
    for (const auto& [key, n] : plan.per_group_counts) {
        groups.push_back({{"age", key.age}, {"feature", key.feature}, {"state", key.state}, {"count", n}});
    }
    audit["per_group_counts"] = std::move(groups);
    ojson sources = ojson::array();
    for (const auto& [key, n] : plan.per_source_counts) {
        sources.push_back({{"age", key.first.age},
                           {"feature", key.first.feature},
                           {"state", key.first.state},
                           {"source", key.second},
                           {"count", n}});
    }
    audit["per_source_counts"] = std::move(sources);
    write_json(default_audit(f.audit, f.out), audit);
}

// ------------------------------------------------------------------- ood

std::map<std::string, int> labels_from(const std::string& path, const LabelRange& range) {
    std::map<std::string, int> labels;
    for (const auto& r : load_manifest(path, range)) {
        labels.emplace(r.id, r.age);
    }
    return labels;
}

FitOptions fit_options(const PipelineConfig& c) {
    FitOptions o;
    o.k = c.ood.k;
    o.shrinkage = c.ood.shrinkage;
    o.floor = c.ood.floor;
    return o;
}

void cmd_ood_fit(const Flags& f, const PipelineConfig& c) {
    const auto table = load_embeddings(f.embeddings, f.ids);
    const auto model = fit(table, labels_from(f.labels_from, c.labels), fit_options(c));
    save_model(model, f.model, header(c));
}

void cmd_ood_score(const Flags& f, const PipelineConfig& c, std::ostream& out) {
    const auto model = load_model(f.model);
    const auto table = load_embeddings(f.embeddings, f.ids);
    std::map<std::string, int> labels;
    if (f.exclude_label) {
        if (f.labels_from.empty()) {
            throw ConfigError("--exclude-label needs --labels-from");
        }
        labels = labels_from(f.labels_from, c.labels);
    }
    const auto scores = score_batch(model, table, kernels::Exec::parallel, f.exclude_label ? &labels : nullptr);
    const auto csv = scores_to_csv(scores, provenance(c));
    if (f.out.empty()) {
        out << csv;
    } else {
        io::write_text(f.out, csv);
    }
}

void cmd_ood_quantile(const Flags& f, std::ostream& out) {
    if (!(f.q >= 0.0 && f.q <= 1.0)) {
        throw ConfigError("--q must lie in [0, 1]");
    }
    out << io::format_double(train_quantile(load_model(f.model), f.q)) << '\n';
}

// --------------------------------------------------------------- augment

void cmd_augment_plan(const Flags& f, const PipelineConfig& c, std::ostream& err) {
    c.augmentation.bounds.validate();
    const auto feature = c.augmentation_feature();
    const auto records = load_manifest(f.manifest, c.labels);
    const auto table = plan_ratios(cell_counts(records, feature));
    const auto specs = generate_specs(records, table, feature, c.augmentation.bounds, c.seed);
    save_plan(f.out, specs, provenance(c));

    ojson audit = header(c);
    audit["feature"] = feature;
    audit["median_num"] = table.median_num;
    audit["mean_num"] = table.mean_num;
    audit["mean_exact"] = table.mean_exact;
    audit["max_num"] = table.max_num;
    audit["max_ratio"] = table.max_ratio;
    ojson ratios = ojson::array();
    for (const auto& [cell, r] : table.ratios) {
        ratios.push_back({{"class", cell.age}, {"state", cell.state}, {"aug_ratio", r}});
    }
    audit["ratios"] = std::move(ratios);
    ojson empty = ojson::array();
    for (const auto& cell : table.empty_cells) {
        empty.push_back({{"class", cell.age}, {"state", cell.state}});
        err << "warning: cell (" << cell.age << ", " << cell.state << ") is empty and cannot be augmented\n";
    }
    audit["empty_cells"] = std::move(empty);
    audit["spec_count"] = specs.size();
    write_json(default_audit(f.audit, f.out), audit);
}

void cmd_augment_apply(const Flags& f, const PipelineConfig& c) {
    if (f.manifest.empty() && f.image_dir.empty()) {
        throw ConfigError("apply needs --manifest (record paths) or --image-dir");
    }
    std::map<std::string, fs::path> sources;
    if (!f.manifest.empty()) {
        const fs::path base = fs::path(f.manifest).parent_path();
        for (const auto& r : load_manifest(f.manifest, c.labels)) {
            if (r.path) {
                const fs::path p(*r.path);
                sources.emplace(r.id, p.is_absolute() ? p : base / p);
            }
        }
    }
    for (const auto& spec : load_plan(f.plan)) {
        fs::path src;
        if (auto it = sources.find(spec.source_id); it != sources.end()) {
            src = it->second;
        } else if (!f.image_dir.empty()) {
            src = fs::path(f.image_dir) / (spec.source_id + ".png");
        } else {
            throw DataError("no image path for source \"" + spec.source_id + "\"");
        }
        write_png(apply_transform(read_png(src), spec), fs::path(f.out_dir) / (spec.aug_id + ".png"));
    }
}

void cmd_augment_filter(const Flags& f, const PipelineConfig& c) {
    const auto model = load_model(f.model);
    const auto scores = parse_scores_csv(io::read_text(f.scores), f.scores);
    const auto result = filter_by_llr(scores, model, c.augmentation.filter);
    io::write_text(f.out, filter_report_csv(scores, result, provenance(c)));
}

std::map<std::string, bool> parse_filter_report(const std::string& path) {
    std::istringstream in(io::read_text(path));
    std::map<std::string, bool> kept;
    std::string line;
    bool header = false;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (io::is_skippable(line)) {
            continue;
        }
        const auto fields = io::split_csv(line);
        if (!header) {
            if (fields.size() != 3 || fields[0] != "aug_id" || fields[2] != "kept") {
                throw DataError("expected header aug_id,llr,kept in " + path);
            }
            header = true;
            continue;
        }
        if (fields.size() != 3) {
            throw DataError("bad filter report row, " + path + ", line " + std::to_string(number));
        }
        kept[fields[0]] = io::parse_integer(fields[2], "kept") != 0;
    }
    return kept;
}

void cmd_augment_sample(const Flags& f, const PipelineConfig& c) {
    const auto feature = c.augmentation_feature();
    const auto specs = load_plan(f.plan);
    const auto verdicts = parse_filter_report(f.filter_report);
    std::vector<KeptItem> kept;
    std::map<std::string, const TransformSpec*> by_id;
    for (const auto& s : specs) {
        auto v = verdicts.find(s.aug_id);
        if (v == verdicts.end() || !v->second) {
            continue;
        }
        auto state = s.features.find(feature);
        if (state == s.features.end()) {
            throw DataError("augmentation \"" + s.aug_id + "\" lacks feature \"" + feature + "\"");
        }
        kept.push_back({s.aug_id, {s.age, state->second}});
        by_id.emplace(s.aug_id, &s);
    }
    const auto result =
        sample_balanced(kept, c.augmentation.budget, derive_seed(c.seed, {hash_label("augment-sample")}));
    std::vector<TransformSpec> chosen;
    for (const auto& id : result.selected) {
        chosen.push_back(*by_id.at(id));
    }
    save_plan(f.out, chosen, provenance(c));

    ojson audit = header(c);
    audit["feature"] = feature;
    audit["kept"] = kept.size();
    audit["selected"] = result.selected.size();
    ojson budgets = ojson::array();
    for (const auto& [age, b] : result.class_budget) {
        const std::size_t missing = result.shortfall.count(age) != 0 ? result.shortfall.at(age) : 0;
        budgets.push_back(ojson{{"class", age}, {"budget", b}, {"shortfall", missing}});
    }
    audit["class_budget"] = std::move(budgets);
    ojson cells = ojson::array();
    for (const auto& [cell, n] : result.per_cell) {
        cells.push_back(ojson{{"class", cell.age}, {"state", cell.state}, {"selected", n}});
    }
    audit["per_cell"] = std::move(cells);
    write_json(default_audit(f.audit, f.out), audit);
}

// -------------------------------------------------------------- evaluate

void cmd_evaluate(const Flags& f, const PipelineConfig& c, std::ostream& out) {
    if (!(c.metrics.t > 0.0)) {
        throw ConfigError("--t must be positive");
    }
    const auto predictions = load_predictions(f.predictions, c.labels);
    if (predictions.empty()) {
        throw DataError("no predictions in " + f.predictions);
    }
    std::vector<std::string> features = c.metrics.features;
    if (features.empty()) {
        for (const auto& [name, state] : predictions.front().features) {
            features.push_back(name);
        }
    }
    std::vector<FairnessReport> reports;
    for (const auto& feature : features) {
        reports.push_back(fairness_score(predictions, feature, c.metrics.t));
    }
    ojson doc = header(c);
    doc["predictions"] = predictions.size();
    doc["mae"] = mae(predictions);
    ojson fairness = ojson::array();
    for (const auto& r : reports) {
        fairness.push_back(report_to_json(r));
    }
    doc["fairness"] = std::move(fairness);
    if (f.out.empty()) {
        out << doc.dump(2) << '\n';
    } else {
        write_json(f.out, doc);
    }
    if (!f.out_csv.empty()) {
        io::write_text(f.out_csv, reports_to_csv(reports, provenance(c)));
    }
}

// ---------------------------------------------------------------- report

void cmd_report(const Flags& f, const PipelineConfig& c) {
    std::string svg;
    if (!f.manifest.empty()) {
        svg = age_histogram_svg(load_manifest(f.manifest, c.labels));
    } else if (!f.score_files.empty()) {
        std::vector<Series> series;
        for (const auto& path : f.score_files) {
            Series s;
            s.name = fs::path(path).stem().string();
            for (const auto& score : parse_scores_csv(io::read_text(path), path)) {
                s.values.push_back(score.llr);
            }
            series.push_back(std::move(s));
        }
        svg = llr_histogram_svg(series);
    } else {
        throw ConfigError("report needs --manifest or --scores");
    }
    std::string note = provenance(c);
    for (std::size_t pos = note.find("--"); pos != std::string::npos; pos = note.find("--", pos)) {
        note.replace(pos, 2, "- -");
    }
    io::write_text(f.out_svg, "<!-- " + note + " -->\n" + svg);
}

void error_json(std::ostream& err, const char* kind, const std::string& message) {
    ojson doc;
    doc["error"] = {{"kind", kind}, {"message", message}};
    err << doc.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Flags f;
    Given g;
    CLI::App app{"Dataset curation, OOD-filtered augmentation and fairness evaluation"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.add_option("--config", f.config_path, "PipelineConfig JSON; flags override it")->check(CLI::ExistingFile);

    auto add_common = [&](CLI::App* sub) {
        g.seed = sub->add_option("--seed", f.seed, "Master seed");
        g.age_min = sub->add_option("--age-min", f.age_min, "Smallest admissible age label");
        g.age_max = sub->add_option("--age-max", f.age_max, "Largest admissible age label");
    };
    // Each subcommand owns its options; the Given pointers refer to whichever
    // subcommand ends up parsed, so they are collected per subcommand.
    std::map<CLI::App*, Given> per_sub;
    auto commit = [&](CLI::App* sub) { per_sub[sub] = g; g = Given{}; };

    auto* curate_cmd = app.add_subcommand("curate", "Select a label- and feature-balanced subset of the pool");
    add_common(curate_cmd);
    curate_cmd->add_option("--pool", f.pools, "Pool manifest (repeatable)")->required();
    curate_cmd->add_option("--out", f.out, "Curated manifest")->required();
    curate_cmd->add_option("--audit", f.audit, "Plan audit JSON (default <out>.audit.json)");
    g.q_low = curate_cmd->add_option("--q-low", f.q_low, "Lower clamp quantile");
    g.q_high = curate_cmd->add_option("--q-high", f.q_high, "Upper clamp quantile");
    g.feature_priority = curate_cmd->add_option("--feature-priority", f.feature_priority, "Comma-separated features")
                             ->delimiter(',');
    commit(curate_cmd);

    auto* ood_cmd = app.add_subcommand("ood", "Class-conditional Gaussian OOD scoring");
    ood_cmd->require_subcommand(1);
    auto* fit_cmd = ood_cmd->add_subcommand("fit", "Fit per-class Gaussians");
    add_common(fit_cmd);
    fit_cmd->add_option("--embeddings", f.embeddings, "FEMB file")->required();
    fit_cmd->add_option("--ids", f.ids, "Sidecar id file")->required();
    fit_cmd->add_option("--labels-from", f.labels_from, "Manifest supplying class labels")->required();
    fit_cmd->add_option("--model", f.model, "Output model JSON")->required();
    g.k = fit_cmd->add_option("--k", f.k, "Contrast set size");
    g.shrinkage = fit_cmd->add_option("--shrinkage", f.shrinkage, "Covariance shrinkage lambda");
    commit(fit_cmd);

    auto* score_cmd = ood_cmd->add_subcommand("score", "Score embeddings");
    add_common(score_cmd);
    score_cmd->add_option("--model", f.model, "Model JSON")->required();
    score_cmd->add_option("--embeddings", f.embeddings, "FEMB file")->required();
    score_cmd->add_option("--ids", f.ids, "Sidecar id file")->required();
    score_cmd->add_option("--out", f.out, "Score CSV (default stdout)");
    score_cmd->add_option("--labels-from", f.labels_from, "Manifest with ground-truth labels");
    score_cmd->add_flag("--exclude-label", f.exclude_label, "Exclude the true label from the contrast set");
    commit(score_cmd);

    auto* quantile_cmd = ood_cmd->add_subcommand("quantile", "Nearest-rank quantile of the training LLR");
    add_common(quantile_cmd);
    quantile_cmd->add_option("--model", f.model, "Model JSON")->required();
    quantile_cmd->add_option("--q", f.q, "Quantile in [0, 1]")->required();
    commit(quantile_cmd);

    auto* augment_cmd = app.add_subcommand("augment", "Distribution-aware augmentation");
    augment_cmd->require_subcommand(1);
    auto* plan_cmd = augment_cmd->add_subcommand("plan", "Plan per-cell ratios and transform parameters");
    add_common(plan_cmd);
    plan_cmd->add_option("--manifest", f.manifest, "Curated manifest")->required();
    plan_cmd->add_option("--out", f.out, "Augmentation plan JSONL")->required();
    plan_cmd->add_option("--audit", f.audit, "Ratio audit JSON (default <out>.audit.json)");
    g.feature = plan_cmd->add_option("--feature", f.feature, "Feature defining the cells");
    commit(plan_cmd);

    auto* apply_cmd = augment_cmd->add_subcommand("apply", "Render planned augmentations to PNG");
    add_common(apply_cmd);
    apply_cmd->add_option("--plan", f.plan, "Augmentation plan JSONL")->required();
    apply_cmd->add_option("--manifest", f.manifest, "Manifest whose paths locate source images");
    apply_cmd->add_option("--image-dir", f.image_dir, "Directory of <source_id>.png images");
    apply_cmd->add_option("--out-dir", f.out_dir, "Output directory")->required();
    commit(apply_cmd);

    auto* filter_cmd = augment_cmd->add_subcommand("filter", "Keep augmentations inside training LLR quantile ranges");
    add_common(filter_cmd);
    filter_cmd->add_option("--model", f.model, "Model JSON with training LLR")->required();
    filter_cmd->add_option("--scores", f.scores, "Augmentation score CSV")->required();
    filter_cmd->add_option("--out", f.out, "Filter report CSV")->required();
    g.range = filter_cmd->add_option("--range", f.range, "Quantile segments, e.g. 0.00:0.05,0.95:1.00");
    commit(filter_cmd);

    auto* sample_cmd = augment_cmd->add_subcommand("sample", "Balanced selection of kept augmentations");
    add_common(sample_cmd);
    sample_cmd->add_option("--plan", f.plan, "Augmentation plan JSONL")->required();
    sample_cmd->add_option("--filter-report", f.filter_report, "Filter report CSV")->required();
    sample_cmd->add_option("--out", f.out, "Final augmentation manifest")->required();
    sample_cmd->add_option("--audit", f.audit, "Sampling audit JSON (default <out>.audit.json)");
    g.budget = sample_cmd->add_option("--budget", f.budget, "Total augmentations to select");
    g.feature = sample_cmd->add_option("--feature", f.feature, "Feature defining the cells");
    commit(sample_cmd);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "MAE and fairness score of a prediction file");
    add_common(evaluate_cmd);
    evaluate_cmd->add_option("--predictions", f.predictions, "Prediction CSV")->required();
    evaluate_cmd->add_option("--out", f.out, "Report JSON (default stdout)");
    evaluate_cmd->add_option("--out-csv", f.out_csv, "Flat per-age CSV");
    g.features = evaluate_cmd->add_option("--features", f.features, "Comma-separated features")->delimiter(',');
    g.t = evaluate_cmd->add_option("--t", f.t, "Fairness threshold in years");
    commit(evaluate_cmd);

    auto* report_cmd = app.add_subcommand("report", "SVG histograms of ages or LLR scores");
    add_common(report_cmd);
    report_cmd->add_option("--manifest", f.manifest, "Manifest for the per-age histogram");
    report_cmd->add_option("--scores", f.score_files, "Score CSV (repeatable) for LLR histograms");
    report_cmd->add_option("--out-svg", f.out_svg, "Output SVG")->required();
    commit(report_cmd);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        error_json(err, "config", e.what());
        return static_cast<int>(ExitCode::config);
    }

    CLI::App* leaf = nullptr;
    for (auto& [sub, opts] : per_sub) {
        if (sub->parsed()) {
            leaf = sub;
        }
    }
    try {
        if (leaf == nullptr) {
            throw ConfigError("no command given");
        }
        const PipelineConfig config = resolve(f, per_sub.at(leaf));
        if (leaf == curate_cmd) cmd_curate(f, config);
        else if (leaf == fit_cmd) cmd_ood_fit(f, config);
        else if (leaf == score_cmd) cmd_ood_score(f, config, out);
        else if (leaf == quantile_cmd) cmd_ood_quantile(f, out);
        else if (leaf == plan_cmd) cmd_augment_plan(f, config, err);
        else if (leaf == apply_cmd) cmd_augment_apply(f, config);
        else if (leaf == filter_cmd) cmd_augment_filter(f, config);
        else if (leaf == sample_cmd) cmd_augment_sample(f, config);
        else if (leaf == evaluate_cmd) cmd_evaluate(f, config, out);
        else if (leaf == report_cmd) cmd_report(f, config);
    } catch (const Error& e) {
        error_json(err, e.kind(), e.what());
        return static_cast<int>(e.code());
    } catch (const nlohmann::json::exception& e) {
        error_json(err, "data", e.what());
        return static_cast<int>(ExitCode::data);
    } catch (const std::invalid_argument& e) {
        error_json(err, "data", e.what());
        return static_cast<int>(ExitCode::data);
    } catch (const std::filesystem::filesystem_error& e) {
        error_json(err, "data", e.what());
        return static_cast<int>(ExitCode::data);
    }
    return 0;
}

}  // namespace fairkit::cli
