#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace credrep {

struct LinearSvmModel {
    std::vector<double> weights;
    double bias = 0.0;
    double lambda = 1e-4;
    int epochs = 200;
    std::uint64_t seed = 0;

    bool operator==(const LinearSvmModel&) const = default;
};

struct SvmConfig {
    double lambda = 1e-4;
    int epochs = 200;
    std::uint64_t seed = 0;
    /// Weight each example's hinge term by n / (2 * n_class), countering
    /// class imbalance.
    bool class_weighted = false;
};

/// Pegasos: stochastic subgradient descent on the L2-regularized hinge loss,
/// learning rate 1/(lambda*t), order reshuffled per epoch by a seeded
/// generator, bias unregularized. The returned weights are the epoch-boundary
/// snapshot with the lowest regularized objective, so the final objective
/// never exceeds the zero vector's. Deterministic for fixed
/// (data, lambda, epochs, seed).
LinearSvmModel train_svm(std::span<const std::vector<double>> X, std::span<const int> y,
                         const SvmConfig& config = {});

/// w . x + b
double decision_function(const LinearSvmModel& model, std::span<const double> x);

/// Regularized empirical hinge objective, with the same per-class weights
/// used in training.
double svm_objective(std::span<const std::vector<double>> X, std::span<const int> y,
                     std::span<const double> weights, double bias, double lambda,
                     bool class_weighted);

/// Sigmoid over margins: Ps = 1 / (1 + exp(a*f + b)), a < 0 so that a larger
/// margin always gives a larger Ps.
struct PlattCalibration {
    double a = -1.0;
    double b = 0.0;

    double apply(double margin) const;

    bool operator==(const PlattCalibration&) const = default;
};

/// Newton fit with backtracking of the Platt log-loss with target smoothing.
/// Stops at convergence or max_iter with the best iterate so far. Throws
/// ValidationError when only one class is present.
PlattCalibration fit_platt(std::span<const double> margins, std::span<const int> y,
                           int max_iter = 100);

/// decision_function composed with the calibration.
double predict_proba(const LinearSvmModel& model, const PlattCalibration& calib,
                     std::span<const double> x);

} // namespace credrep
