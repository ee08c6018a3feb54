#include "credrep/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "credrep/errors.hpp"
#include "credrep/rng.hpp"

namespace credrep {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

struct ClassWeights {
    double positive = 1.0;
    double negative = 1.0;

    double of(int label) const { return label > 0 ? positive : negative; }
};

ClassWeights make_class_weights(std::span<const int> y, bool class_weighted) {
    if (!class_weighted) return {};
    const auto n_pos = static_cast<double>(std::count(y.begin(), y.end(), 1));
    const auto n = static_cast<double>(y.size());
    return {n / (2.0 * n_pos), n / (2.0 * (n - n_pos))};
}

} // namespace

double svm_objective(std::span<const std::vector<double>> X, std::span<const int> y,
                     std::span<const double> weights, double bias, double lambda,
                     bool class_weighted) {
    const ClassWeights cw = make_class_weights(y, class_weighted);
    double hinge = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double margin = static_cast<double>(y[i]) * (dot(weights, X[i]) + bias);
        hinge += cw.of(y[i]) * std::max(0.0, 1.0 - margin);
    }
    return lambda / 2.0 * dot(weights, weights) + hinge / static_cast<double>(X.size());
}

LinearSvmModel train_svm(std::span<const std::vector<double>> X, std::span<const int> y,
                         const SvmConfig& config) {
    if (X.size() != y.size()) throw ValidationError("train_svm: X and y differ in length");
    if (X.empty()) throw ValidationError("train_svm: empty training set");
    if (config.lambda <= 0.0) throw ValidationError("train_svm: lambda must be positive");
    const std::size_t width = X.front().size();
    bool has_pos = false;
    bool has_neg = false;
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (X[i].size() != width) throw ValidationError("train_svm: rows differ in width");
        for (double v : X[i]) {
            if (!std::isfinite(v)) throw ValidationError("train_svm: non-finite feature value");
        }
        if (y[i] > 0) {
            has_pos = true;
        } else {
            has_neg = true;
        }
    }
    if (!has_pos || !has_neg) {
        throw ValidationError("train_svm: both classes must be present");
    }

    const ClassWeights cw = make_class_weights(y, config.class_weighted);
    std::vector<double> w(width, 0.0);
    double b = 0.0;

    // Track the epoch-boundary snapshot with the lowest regularized objective;
    // the zero vector seeds the comparison, so the returned objective never
    // exceeds it.
    std::vector<double> best_w = w;
    double best_b = b;
    double best_obj = svm_objective(X, y, w, b, config.lambda, config.class_weighted);

    Rng rng(config.seed);
    std::vector<std::size_t> order(X.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::uint64_t t = 1;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t idx : order) {
            const double eta = 1.0 / (config.lambda * static_cast<double>(t));
            const double margin = static_cast<double>(y[idx]) * (dot(w, X[idx]) + b);
            const double decay = 1.0 - eta * config.lambda;  // == 1 - 1/t
            for (double& wi : w) wi *= decay;
            if (margin < 1.0) {
                const double step = eta * cw.of(y[idx]) * static_cast<double>(y[idx]);
                for (std::size_t d = 0; d < width; ++d) w[d] += step * X[idx][d];
                // The unregularized bias has no decay term to cancel a
                // lambda^-1-sized first step, so it follows a plain 1/t rate.
                b += cw.of(y[idx]) * static_cast<double>(y[idx]) /
                     static_cast<double>(t);
            }
            ++t;
        }
        const double obj = svm_objective(X, y, w, b, config.lambda, config.class_weighted);
        if (obj < best_obj) {
            best_obj = obj;
            best_w = w;
            best_b = b;
        }
    }

    LinearSvmModel model;
    model.weights = std::move(best_w);
    model.bias = best_b;
    model.lambda = config.lambda;
    model.epochs = config.epochs;
    model.seed = config.seed;
    return model;
}

double decision_function(const LinearSvmModel& model, std::span<const double> x) {
    if (x.size() != model.weights.size()) {
        throw ValidationError("decision_function: vector has " + std::to_string(x.size()) +
                              " features, model expects " +
                              std::to_string(model.weights.size()));
    }
    return dot(model.weights, x) + model.bias;
}

double PlattCalibration::apply(double margin) const {
    const double z = a * margin + b;
    double p = 0.0;
    if (z >= 0.0) {
        const double e = std::exp(-z);
        p = e / (1.0 + e);
    } else {
        p = 1.0 / (1.0 + std::exp(z));
    }
    // The sigmoid saturates to exactly 0 or 1 in double precision once
    // |z| passes ~745; pin the output inside the open interval.
    constexpr double kFloor = 1e-300;
    constexpr double kCeil = 0x1.fffffffffffffp-1;  // largest double below 1
    return std::clamp(p, kFloor, kCeil);
}

PlattCalibration fit_platt(std::span<const double> margins, std::span<const int> y,
                           int max_iter) {
    if (margins.size() != y.size()) {
        throw ValidationError("fit_platt: margins and labels differ in length");
    }
    const std::size_t n = margins.size();
    const std::size_t n_pos = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw ValidationError("fit_platt: both classes must be present");
    }

    // Platt's smoothed targets.
    const double hi = (static_cast<double>(n_pos) + 1.0) / (static_cast<double>(n_pos) + 2.0);
    const double lo = 1.0 / (static_cast<double>(n_neg) + 2.0);
    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = y[i] > 0 ? hi : lo;

    const auto loss_at = [&](double A, double B) {
        double f = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = margins[i] * A + B;
            if (z >= 0.0) {
                f += target[i] * z + std::log1p(std::exp(-z));
            } else {
                f += (target[i] - 1.0) * z + std::log1p(std::exp(z));
            }
        }
        return f;
    };

    double A = 0.0;
    double B = std::log((static_cast<double>(n_neg) + 1.0) / (static_cast<double>(n_pos) + 1.0));
    double fval = loss_at(A, B);
    constexpr double kSigma = 1e-12;
    constexpr double kEps = 1e-5;
    constexpr double kMinStep = 1e-10;

    for (int iter = 0; iter < max_iter; ++iter) {
        double h11 = kSigma;
        double h22 = kSigma;
        double h21 = 0.0;
        double g1 = 0.0;
        double g2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = margins[i] * A + B;
            double p = 0.0;
            double q = 0.0;
            if (z >= 0.0) {
                const double e = std::exp(-z);
                p = e / (1.0 + e);
                q = 1.0 / (1.0 + e);
            } else {
                const double e = std::exp(z);
                p = 1.0 / (1.0 + e);
                q = e / (1.0 + e);
            }
            const double d2 = p * q;
            h11 += margins[i] * margins[i] * d2;
            h22 += d2;
            h21 += margins[i] * d2;
            const double d1 = target[i] - p;
            g1 += margins[i] * d1;
            g2 += d1;
        }
        if (std::abs(g1) < kEps && std::abs(g2) < kEps) break;

        const double det = h11 * h22 - h21 * h21;
        const double dA = -(h22 * g1 - h21 * g2) / det;
        const double dB = -(-h21 * g1 + h11 * g2) / det;
        const double gd = g1 * dA + g2 * dB;

        double stepsize = 1.0;
        while (stepsize >= kMinStep) {
            const double new_a = A + stepsize * dA;
            const double new_b = B + stepsize * dB;
            const double new_f = loss_at(new_a, new_b);
            if (new_f < fval + 1e-4 * stepsize * gd) {
                A = new_a;
                B = new_b;
                fval = new_f;
                break;
            }
            stepsize /= 2.0;
        }
        if (stepsize < kMinStep) break;  // line search failed; keep best so far
    }

    // Anti-predictive margins would fit a non-negative slope; pin it barely
    // negative so Ps stays strictly increasing in the margin.
    if (A >= 0.0) A = -1e-9;
    return {A, B};
}

double predict_proba(const LinearSvmModel& model, const PlattCalibration& calib,
                     std::span<const double> x) {
    return calib.apply(decision_function(model, x));
}

} // namespace credrep
