#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "firedes/errors.hpp"
#include "firedes/linear.hpp"

namespace firedes {

// The pool of base classifiers produced by bagging. Order is stable: pruning
// and selection results refer to classifiers by their index here.
struct Pool {
    std::vector<CalibratedLinearClassifier> classifiers;
    std::vector<std::uint32_t> seeds;

    std::size_t size() const { return classifiers.size(); }
};

// One bootstrap draw of |samples| indices with replacement. Single-class bags
// cannot be calibrated, so those are redrawn up to max_retries times.
inline std::vector<std::size_t> draw_bootstrap(std::mt19937& rng,
                                               const std::vector<Sample>& samples,
                                               int max_retries = 10) {
    const std::size_t n = samples.size();
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        std::vector<std::size_t> bag(n);
        bool saw0 = false, saw1 = false;
        for (std::size_t i = 0; i < n; ++i) {
            bag[i] = draw_index(rng, n);
            (samples[bag[i]].label == 1 ? saw1 : saw0) = true;
        }
        if (saw0 && saw1) return bag;
    }
    throw BootstrapError("exceeded retry budget drawing a two-class bootstrap bag");
}

// Bagging overproduction: pool_size calibrated perceptrons, each trained on
// its own bootstrap of the training fold. Classifier i uses seed + i, so
// pools are reproducible and classifiers can be built independently.
inline Pool generate_pool(const std::vector<Sample>& train, std::size_t pool_size,
                          std::uint32_t seed, double alpha = 0.001, int n_iter = 100) {
    if (train.empty()) throw EmptyTrainingSetError("cannot bag an empty training set");
    bool saw0 = false, saw1 = false;
    for (const Sample& s : train) (s.label == 1 ? saw1 : saw0) = true;
    if (!saw0 || !saw1) {
        throw EmptyTrainingSetError("training set must contain both classes");
    }
    if (pool_size == 0) throw EmptyTrainingSetError("pool size must be at least 1");

    Pool pool;
    pool.classifiers.reserve(pool_size);
    pool.seeds.reserve(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i) {
        const std::uint32_t classifier_seed = seed + static_cast<std::uint32_t>(i);
        std::mt19937 rng(classifier_seed);
        const std::vector<std::size_t> bag_idx = draw_bootstrap(rng, train);
        std::vector<Sample> bag;
        bag.reserve(bag_idx.size());
        for (std::size_t j : bag_idx) bag.push_back(train[j]);

        const std::uint32_t train_seed = rng();
        CalibratedLinearClassifier clf;
        clf.model = train_perceptron(bag, alpha, n_iter, train_seed);
        clf.calibration = fit_platt(clf.model, bag);
        pool.classifiers.push_back(std::move(clf));
        pool.seeds.push_back(classifier_seed);
    }
    return pool;
}

namespace detail {

inline void append_hex(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", v);
    out += buf;
}

}  // namespace detail

// Text serialization of a pool: one line per classifier, doubles as hex
// floats so the round-trip is bit-exact.
inline std::string save_pool(const Pool& pool) {
    std::string out = "firedes-pool v1\n";
    const std::size_t n_features =
        pool.classifiers.empty() ? 0 : pool.classifiers.front().model.weights.size();
    out += std::to_string(pool.size()) + " " + std::to_string(n_features) + "\n";
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const CalibratedLinearClassifier& clf = pool.classifiers[i];
        out += std::to_string(pool.seeds[i]);
        out += ' ';
        detail::append_hex(out, clf.model.bias);
        out += ' ';
        detail::append_hex(out, clf.calibration.slope);
        out += ' ';
        detail::append_hex(out, clf.calibration.intercept);
        for (double w : clf.model.weights) {
            out += ' ';
            detail::append_hex(out, w);
        }
        out += '\n';
    }
    return out;
}

inline Pool load_pool(const std::string& text) {
    std::size_t pos = text.find('\n');
    if (pos == std::string::npos || text.substr(0, pos) != "firedes-pool v1") {
        throw ParseError("not a firedes pool record");
    }
    const char* cursor = text.c_str() + pos + 1;
    auto next_value = [&cursor]() {
        char* end = nullptr;
        const double v = std::strtod(cursor, &end);
        if (end == cursor) throw ParseError("truncated pool record");
        cursor = end;
        return v;
    };

    const auto n = static_cast<std::size_t>(next_value());
    const auto n_features = static_cast<std::size_t>(next_value());
    Pool pool;
    pool.classifiers.reserve(n);
    pool.seeds.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        pool.seeds.push_back(static_cast<std::uint32_t>(next_value()));
        CalibratedLinearClassifier clf;
        clf.model.bias = next_value();
        clf.calibration.slope = next_value();
        clf.calibration.intercept = next_value();
        clf.model.weights.resize(n_features);
        for (std::size_t w = 0; w < n_features; ++w) clf.model.weights[w] = next_value();
        pool.classifiers.push_back(std::move(clf));
    }
    return pool;
}

}  // namespace firedes
