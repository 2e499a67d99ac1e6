#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fairkit/error.hpp"
#include "fairkit/kernels.hpp"
#include "fairkit/ood.hpp"
#include "fairkit/rng.hpp"
#include "test_support.hpp"

using namespace fairkit;

namespace {

GaussianClassModel unit_class(int id, std::vector<double> mu) {
    const auto d = static_cast<Eigen::Index>(mu.size());
    return GaussianClassModel::factorize(id, Eigen::Map<Eigen::VectorXd>(mu.data(), d), Eigen::MatrixXd::Identity(d, d), 2);
}

struct Dataset {
    EmbeddingTable table;
    std::map<std::string, int> labels;
};

/// `classes` Gaussian blobs in d dimensions with centers spread on the axes.
Dataset blobs(Engine& eng, int classes, std::size_t per_class, std::size_t d, double offset = 0.0) {
    std::vector<std::string> ids;
    std::vector<float> values;
    std::map<std::string, int> labels;
    for (int c = 0; c < classes; ++c) {
        for (std::size_t i = 0; i < per_class; ++i) {
            const std::string id = "c" + std::to_string(c) + "_" + std::to_string(i);
            ids.push_back(id);
            labels[id] = c * 3 + 1;
            for (std::size_t j = 0; j < d; ++j) {
                const double center = j == static_cast<std::size_t>(c) % d ? 6.0 : 0.0;
                const double noise = testing::standard_normal(eng);
                values.push_back(static_cast<float>(center + noise * (1.0 + 0.2 * static_cast<double>(j)) + offset));
            }
        }
    }
    return {EmbeddingTable(ids, d, values), labels};
}

}  // namespace

TEST_CASE("fit on the four-point fixture") {
    EmbeddingTable t({"a", "b", "c", "d", "e", "f"}, 2, {0, 0, 2, 0, 0, 2, 2, 2, 9, 9, 9, 8});
    std::map<std::string, int> labels{{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}, {"e", 1}, {"f", 1}};
    const std::vector<std::size_t> rows{0, 1, 2, 3};
    const auto m = kernels::class_moments_serial(t, rows);
    CHECK(m.mean(0) == 1.0);
    CHECK(m.mean(1) == 1.0);
    CHECK(m.cov(0, 0) == 1.0);
    CHECK(m.cov(1, 1) == 1.0);
    CHECK(m.cov(0, 1) == 0.0);

    const auto model = fit(t, labels);
    const auto& c0 = model.classes().front();
    CHECK(c0.sample_count == 4);
    CHECK(c0.sigma(0, 0) == doctest::Approx(1.001).epsilon(1e-15));
    CHECK(c0.sigma(0, 1) == 0.0);
    CHECK(model.k() == 1);
    CHECK(model.train_llr().size() == 6);
}

TEST_CASE("identical samples fit thanks to the floor, fail without it") {
    EmbeddingTable t({"a", "b", "c", "d"}, 2, {1, 1, 1, 1, 5, 5, 6, 4});
    std::map<std::string, int> labels{{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}};
    const auto model = fit(t, labels);
    CHECK(model.classes().front().sigma(0, 0) == doctest::Approx(1e-6));
    FitOptions no_floor;
    no_floor.floor = 0.0;
    CHECK_THROWS_WITH_AS(fit(t, labels, no_floor), doctest::Contains("degenerate class covariance"), NumericError);
}

TEST_CASE("fit preconditions") {
    EmbeddingTable t({"a", "b", "c"}, 1, {0, 1, 2});
    CHECK_THROWS_WITH_AS(fit(t, {{"a", 0}, {"b", 0}, {"c", 0}}), doctest::Contains("k exceeds class count - 1"),
                         ConfigError);
    FitOptions k1;
    k1.k = 1;
    CHECK_THROWS_WITH_AS(fit(t, {{"a", 0}, {"b", 0}, {"c", 0}}, k1), doctest::Contains("k exceeds class count - 1"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(fit(t, {{"a", 0}, {"b", 0}, {"c", 1}}), doctest::Contains("fewer than 2 samples"), DataError);
    CHECK_THROWS_WITH_AS(fit(t, {{"a", 0}, {"b", 0}}), doctest::Contains("has no label"), DataError);
    k1.k = 0;
    CHECK_THROWS_AS(fit(t, {{"a", 0}, {"b", 0}, {"c", 1}}, k1), ConfigError);
}

TEST_CASE("default k") {
    CHECK(default_k(2) == 1);
    CHECK(default_k(5) == 4);
    CHECK(default_k(11) == 10);
    CHECK(default_k(40) == 10);
}

TEST_CASE("llr examples") {
    OodModel two({unit_class(0, {0.0}), unit_class(1, {10.0})}, 1, 0.0, 0.0);
    const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(1);
    const auto s = two.llr(x0);
    CHECK(s.llr == doctest::Approx(50.0).epsilon(1e-14));
    CHECK(s.predicted_class == 0);

    const Eigen::VectorXd mid = Eigen::VectorXd::Constant(1, 5.0);
    CHECK(two.llr(mid).llr == 0.0);
    CHECK(two.llr(mid).predicted_class == 0);  // tie goes to the smaller id

    OodModel same({unit_class(4, {1.0, 2.0}), unit_class(2, {1.0, 2.0}), unit_class(9, {1.0, 2.0})}, 2, 0.0, 0.0);
    Engine eng(3);
    for (int i = 0; i < 20; ++i) {
        Eigen::VectorXd x(2);
        x << uniform_real(eng, -10, 10), uniform_real(eng, -10, 10);
        const auto r = same.llr(x);
        CHECK(r.llr == 0.0);
        CHECK(r.predicted_class == 2);
    }
}

TEST_CASE("llr with a ground-truth exclusion") {
    OodModel m({unit_class(0, {0.0}), unit_class(1, {10.0}), unit_class(2, {20.0})}, 1, 0.0, 0.0);
    const Eigen::VectorXd x = Eigen::VectorXd::Zero(1);
    const auto plain = m.llr(x);
    CHECK(plain.llr == doctest::Approx(50.0));
    const auto excl = m.llr(x, 1);
    // contrast set drawn from {0, 2}: its top member is class 0 itself
    CHECK(excl.predicted_class == 0);
    CHECK(excl.llr == 0.0);
}

TEST_CASE("OodModel constructor validation") {
    CHECK_THROWS_AS(OodModel({}, 1, 0.0, 0.0), DataError);
    CHECK_THROWS_AS(OodModel({unit_class(0, {0.0}), unit_class(0, {1.0})}, 1, 0.0, 0.0), DataError);
    CHECK_THROWS_AS(OodModel({unit_class(0, {0.0}), unit_class(1, {1.0, 2.0})}, 1, 0.0, 0.0), DataError);
    CHECK_THROWS_AS(OodModel({unit_class(0, {0.0}), unit_class(1, {1.0})}, 2, 0.0, 0.0), ConfigError);
    OodModel ok({unit_class(0, {0.0}), unit_class(1, {1.0})}, 1, 0.0, 0.0);
    CHECK_THROWS_AS(ok.llr(Eigen::VectorXd::Zero(2)), DataError);
}

TEST_CASE("llr is invariant to class order") {
    Engine eng(17);
    std::vector<GaussianClassModel> classes;
    for (int c = 0; c < 6; ++c) {
        classes.push_back(unit_class(c * 5, {uniform_real(eng, -4, 4), uniform_real(eng, -4, 4), uniform_real(eng, -4, 4)}));
    }
    auto reversed = classes;
    std::reverse(reversed.begin(), reversed.end());
    std::swap(reversed[1], reversed[4]);
    OodModel a(classes, 3, 0.0, 0.0), b(reversed, 3, 0.0, 0.0);
    for (int i = 0; i < 200; ++i) {
        Eigen::VectorXd x(3);
        x << uniform_real(eng, -6, 6), uniform_real(eng, -6, 6), uniform_real(eng, -6, 6);
        const auto ra = a.llr(x), rb = b.llr(x);
        CHECK(ra.llr == rb.llr);
        CHECK(ra.predicted_class == rb.predicted_class);
    }
}

TEST_CASE("translating training data and queries leaves llr unchanged") {
    Engine e1(44), e2(44);
    const auto base = blobs(e1, 4, 40, 5);
    const auto moved = blobs(e2, 4, 40, 5, 25.0);
    const auto ma = fit(base.table, base.labels);
    const auto mb = fit(moved.table, moved.labels);
    for (std::size_t i = 0; i < ma.train_llr().size(); ++i) {
        CHECK(std::fabs(ma.train_llr()[i] - mb.train_llr()[i]) < 1e-6 * std::max(1.0, std::fabs(ma.train_llr()[i])));
    }
}

TEST_CASE("rescoring, serialization and quantiles") {
    Engine eng(7);
    const auto data = blobs(eng, 5, 60, 6);
    const auto model = fit(data.table, data.labels);

    SUBCASE("batch rescoring reproduces train_llr") {
        for (auto exec : {kernels::Exec::serial, kernels::Exec::parallel}) {
            const auto scores = score_batch(model, data.table, exec);
            REQUIRE(scores.size() == model.train_llr().size());
            for (std::size_t i = 0; i < scores.size(); ++i) {
                CHECK(scores[i].id == data.table.ids()[i]);
                CHECK(std::fabs(scores[i].llr - model.train_llr()[i]) <= 1e-9);
            }
        }
    }
    SUBCASE("save, load, rescore") {
        const auto dir = testing::scratch_dir("ood_model");
        save_model(model, dir / "model.json");
        const auto back = load_model(dir / "model.json");
        CHECK(back.k() == model.k());
        CHECK(back.train_llr() == model.train_llr());
        const auto a = score_batch(model, data.table);
        const auto b = score_batch(back, data.table);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::fabs(a[i].llr - b[i].llr) <= 1e-9);
            CHECK(a[i].predicted_class == b[i].predicted_class);
        }
        save_model(back, dir / "model2.json");
        CHECK(testing::read_file(dir / "model.json") == testing::read_file(dir / "model2.json"));
    }
    SUBCASE("scores csv round trip") {
        const auto scores = score_batch(model, data.table);
        const auto text = scores_to_csv(scores, "fairkit test");
        const auto back = parse_scores_csv(text);
        REQUIRE(back.size() == scores.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            CHECK(back[i].id == scores[i].id);
            CHECK(back[i].llr == scores[i].llr);
            CHECK(back[i].predicted_class == scores[i].predicted_class);
        }
    }
    SUBCASE("empty table scores to nothing") {
        EmbeddingTable empty({}, 6, {});
        CHECK(score_batch(model, empty).empty());
    }
}

TEST_CASE("train_quantile") {
    OodModel m({unit_class(0, {0.0}), unit_class(1, {1.0})}, 1, 0.0, 0.0);
    CHECK_THROWS_AS(train_quantile(m, 0.5), DataError);
    std::vector<double> v;
    for (int i = 100; i >= 1; --i) {
        v.push_back(i);
    }
    m.set_train_llr(v);
    CHECK(train_quantile(m, 0.05) == 5.0);
    CHECK(train_quantile(m, 0.0) == 1.0);
    CHECK(train_quantile(m, 1.0) == 100.0);
    CHECK(train_quantile(m, 0.95) == 95.0);
    CHECK_THROWS_AS(train_quantile(m, 1.5), ConfigError);
}
