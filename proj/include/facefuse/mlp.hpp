#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace facefuse {

// Per-dimension standardization fit on training features. stddev is floored
// at 1e-8 so constant dimensions stay finite.
struct InputScaler {
    std::vector<double> mean;
    std::vector<double> stddev;

    static InputScaler identity(size_t dim);
    static InputScaler fit(const std::vector<std::vector<double>>& features);
    std::vector<double> apply(const std::vector<double>& feature) const;
};

// Fully connected sigmoid network with per-parameter momentum buffers.
// weights[l] is row-major layer_sizes[l+1] x layer_sizes[l].
struct MlpModel {
    std::vector<int> layer_sizes;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    std::vector<std::vector<double>> weight_momentum;
    std::vector<std::vector<double>> bias_momentum;
    InputScaler input_scaling; // applied by classify(), not by forward()

    int input_size() const { return layer_sizes.front(); }
    int output_size() const { return layer_sizes.back(); }
};

struct Hyperparameters {
    double learning_rate = 0.1;
    double momentum = 0.9;   // in [0, 1)
    int max_epochs = 2000;
    double target_loss = 1e-3;
    uint64_t seed = 0;

    void validate() const; // throws InvalidHyperparameters
};

enum class StopReason { target_reached, max_epochs };

struct TrainingHistory {
    std::vector<double> epoch_mse;
    int epochs_run = 0;
    StopReason stop_reason = StopReason::max_epochs;
};

struct TrainingSample {
    std::vector<double> feature; // network-ready (already scaled)
    std::vector<double> target;  // one-hot
};

struct Classification {
    int class_index = 0;
    double confidence = 0.0;
    std::vector<double> outputs;
};

// Weights drawn uniformly from [-1/sqrt(fan_in), +1/sqrt(fan_in)] with the
// seeded generator; biases and momentum buffers start at zero. The same seed
// yields a bit-identical model.
MlpModel init_network(const std::vector<int>& layer_sizes, uint64_t seed);

// Returns activations for every layer, input included (activations[0]).
std::vector<std::vector<double>> forward(const MlpModel& model,
                                         const std::vector<double>& input);

// One online pass in sample order. Per parameter: delta = -lr * dE/dtheta +
// momentum * previous delta, with E = 1/2 ||output - target||^2. Momentum
// buffers persist across samples and epochs. Returns the mean per-sample E
// measured before each update.
double train_epoch(MlpModel& model, const std::vector<TrainingSample>& samples,
                   const Hyperparameters& hyper);

// Repeats train_epoch (fixed order, no shuffling) until the epoch MSE drops
// to target_loss or max_epochs is reached.
TrainingHistory train(MlpModel& model, const std::vector<TrainingSample>& samples,
                      const Hyperparameters& hyper);

// Applies the model's input scaling, then argmax over the output layer.
// Ties break toward the lowest index.
Classification classify(const MlpModel& model, const std::vector<double>& feature);

int argmax_lowest_tie(const std::vector<double>& values);

// Max over all parameters of the relative gap between the backprop gradient
// and a central finite difference with step eps.
double gradient_check(const MlpModel& model, const TrainingSample& sample, double eps);

// Binary format: magic "FMLP", version, architecture, then weights, biases,
// momentum buffers and input scaling as little-endian binary64 arrays,
// terminated by a CRC32.
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

} // namespace facefuse
