#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "firedes/dataset.hpp"
#include "firedes/errors.hpp"
#include "firedes/random.hpp"

namespace firedes {

// Binary perceptron with Heaviside activation. The tie convention is fixed:
// a decision value of exactly zero predicts the positive class.
struct Perceptron {
    std::vector<double> weights;
    double bias = 0.0;
    double learning_rate = 0.001;
    int n_iter = 100;

    double decision(std::span<const double> x) const {
        double f = bias;
        for (std::size_t i = 0; i < weights.size(); ++i) f += weights[i] * x[i];
        return f;
    }

    int predict(std::span<const double> x) const { return decision(x) >= 0.0 ? 1 : 0; }
};

// Sigmoid link fitted to decision values: P(y=1 | f) = 1 / (1 + exp(A f + B)).
// A < 0 makes the probability increase with f; A = 0 (degenerate fits) gives
// a constant probability.
struct PlattCalibration {
    double slope = 0.0;      // A
    double intercept = 0.0;  // B

    double probability(double f) const {
        const double z = slope * f + intercept;
        if (z >= 0.0) {
            const double e = std::exp(-z);
            return e / (1.0 + e);
        }
        return 1.0 / (1.0 + std::exp(z));
    }
};

struct CalibratedLinearClassifier {
    Perceptron model;
    PlattCalibration calibration;

    // The hard decision is the raw perceptron's; calibration never changes it.
    int predict_label(std::span<const double> x) const {
        check_shape(x);
        return model.predict(x);
    }

    double predict_proba(std::span<const double> x) const {
        check_shape(x);
        return calibration.probability(model.decision(x));
    }

  private:
    void check_shape(std::span<const double> x) const {
        if (x.size() != model.weights.size()) {
            throw ShapeError("expected " + std::to_string(model.weights.size()) +
                             " features, got " + std::to_string(x.size()));
        }
    }
};

// Classic perceptron updates from zero-initialized weights. Sample order is
// reshuffled each epoch with the seeded generator; there is no early stopping,
// so the result is a pure function of (samples, alpha, n_iter, seed).
inline Perceptron train_perceptron(const std::vector<Sample>& samples, double alpha, int n_iter,
                                   std::uint32_t seed) {
    if (samples.empty()) throw EmptyTrainingSetError("cannot train on an empty sample list");
    Perceptron p;
    p.weights.assign(samples.front().features.size(), 0.0);
    p.learning_rate = alpha;
    p.n_iter = n_iter;

    std::mt19937 rng(seed);
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < n_iter; ++epoch) {
        shuffle_in_place(order, rng);
        for (std::size_t idx : order) {
            const Sample& s = samples[idx];
            const int predicted = p.predict(s.features);
            const int err = s.label - predicted;
            if (err != 0) {
                const double step = alpha * err;
                for (std::size_t i = 0; i < p.weights.size(); ++i) {
                    p.weights[i] += step * s.features[i];
                }
                p.bias += step;
            }
        }
    }
    return p;
}

// Fits (A, B) by minimizing the cross-entropy against Platt's smoothed
// targets t+ = (N+ + 1)/(N+ + 2), t- = 1/(N- + 2), with damped Newton steps
// and a backtracking line search. Stops at gradient max-norm 1e-8 or 100
// iterations.
inline PlattCalibration fit_platt_scores(const std::vector<double>& decision_values,
                                         const std::vector<int>& labels) {
    const std::size_t n = decision_values.size();
    std::size_t n_pos = 0;
    for (int y : labels) n_pos += (y == 1);
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw CalibrationError("calibration requires samples of both classes");
    }

    const double hi = (static_cast<double>(n_pos) + 1.0) / (static_cast<double>(n_pos) + 2.0);
    const double lo = 1.0 / (static_cast<double>(n_neg) + 2.0);
    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = labels[i] == 1 ? hi : lo;

    // All decision values equal: the likelihood depends on A f + B only, so
    // fix A = 0 and place the constant probability at the mean target.
    const auto [fmin, fmax] = std::minmax_element(decision_values.begin(), decision_values.end());
    if (*fmax - *fmin < 1e-12) {
        const double mean_t = std::accumulate(target.begin(), target.end(), 0.0) / n;
        return PlattCalibration{0.0, std::log((1.0 - mean_t) / mean_t)};
    }

    // Stable per-sample negative log-likelihood for z = A f + B.
    auto nll = [&](double a, double b) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = a * decision_values[i] + b;
            if (z >= 0.0) {
                total += target[i] * z + std::log1p(std::exp(-z));
            } else {
                total += (target[i] - 1.0) * z + std::log1p(std::exp(z));
            }
        }
        return total;
    };

    double a = 0.0;
    double b = std::log((static_cast<double>(n_neg) + 1.0) / (static_cast<double>(n_pos) + 1.0));
    double value = nll(a, b);
    constexpr double kSigma = 1e-12;

    for (int iter = 0; iter < 100; ++iter) {
        double g_a = 0.0, g_b = 0.0;
        double h_aa = kSigma, h_ab = 0.0, h_bb = kSigma;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = decision_values[i];
            const double z = a * f + b;
            double prob;
            if (z >= 0.0) {
                const double e = std::exp(-z);
                prob = e / (1.0 + e);
            } else {
                prob = 1.0 / (1.0 + std::exp(z));
            }
            const double d = target[i] - prob;
            g_a += d * f;
            g_b += d;
            const double w = prob * (1.0 - prob);
            h_aa += w * f * f;
            h_ab += w * f;
            h_bb += w;
        }
        if (std::max(std::abs(g_a), std::abs(g_b)) < 1e-8) break;

        const double det = h_aa * h_bb - h_ab * h_ab;
        const double da = -(h_bb * g_a - h_ab * g_b) / det;
        const double db = -(-h_ab * g_a + h_aa * g_b) / det;
        const double slope = g_a * da + g_b * db;  // directional derivative, < 0

        double step = 1.0;
        while (step >= 1e-10) {
            const double trial = nll(a + step * da, b + step * db);
            if (trial <= value + 1e-4 * step * slope) {
                a += step * da;
                b += step * db;
                value = trial;
                break;
            }
            step *= 0.5;
        }
        if (step < 1e-10) break;  // no descent possible at double precision
    }
    return PlattCalibration{a, b};
}

inline PlattCalibration fit_platt(const Perceptron& model, const std::vector<Sample>& samples) {
    std::vector<double> scores;
    std::vector<int> labels;
    scores.reserve(samples.size());
    labels.reserve(samples.size());
    for (const Sample& s : samples) {
        scores.push_back(model.decision(s.features));
        labels.push_back(s.label);
    }
    return fit_platt_scores(scores, labels);
}

}  // namespace firedes
