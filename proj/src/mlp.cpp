#include "facefuse/mlp.hpp"

#include <cmath>

#include "facefuse/errors.hpp"
#include "facefuse/rng.hpp"
#include "serial.hpp"

namespace facefuse {

namespace {

constexpr uint32_t kModelVersion = 1;

double sigmoid(double z) {
    return 1.0 / (1.0 + std::exp(-z));
}

void check_feature_length(const MlpModel& model, const std::vector<double>& feature) {
    if (feature.size() != static_cast<size_t>(model.input_size())) {
        throw LengthMismatch("feature length " + std::to_string(feature.size()) +
                             " does not match network input size " +
                             std::to_string(model.input_size()));
    }
}

struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};

// Backward pass for E = 1/2 ||a_L - target||^2 with sigmoid units everywhere;
// all gradients come from the pre-update parameters.
Gradients backprop(const MlpModel& model, const std::vector<std::vector<double>>& acts,
                   const std::vector<double>& target) {
    const int layers = static_cast<int>(model.weights.size());
    Gradients grads;
    grads.weights.resize(layers);
    grads.biases.resize(layers);

    std::vector<double> delta;
    for (int l = layers - 1; l >= 0; --l) {
        const int rows = model.layer_sizes[l + 1];
        const int cols = model.layer_sizes[l];
        const auto& out = acts[l + 1];

        std::vector<double> next_delta(rows);
        if (l == layers - 1) {
            for (int i = 0; i < rows; ++i) {
                next_delta[i] = (out[i] - target[i]) * out[i] * (1.0 - out[i]);
            }
        } else {
            const auto& w_above = model.weights[l + 1];
            const int rows_above = model.layer_sizes[l + 2];
            for (int i = 0; i < rows; ++i) {
                double acc = 0.0;
                for (int j = 0; j < rows_above; ++j) {
                    acc += w_above[static_cast<size_t>(j) * rows + i] * delta[j];
                }
                next_delta[i] = acc * out[i] * (1.0 - out[i]);
            }
        }
        delta = std::move(next_delta);

        auto& gw = grads.weights[l];
        gw.resize(static_cast<size_t>(rows) * cols);
        const auto& in = acts[l];
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                gw[static_cast<size_t>(i) * cols + j] = delta[i] * in[j];
            }
        }
        grads.biases[l] = delta;
    }
    return grads;
}

double sample_loss(const std::vector<double>& output, const std::vector<double>& target) {
    double e = 0.0;
    for (size_t i = 0; i < output.size(); ++i) {
        const double diff = output[i] - target[i];
        e += diff * diff;
    }
    return 0.5 * e;
}

void check_samples(const MlpModel& model, const std::vector<TrainingSample>& samples) {
    if (samples.empty()) {
        throw EmptyDataset("no training samples");
    }
    for (const auto& s : samples) {
        check_feature_length(model, s.feature);
        if (s.target.size() != static_cast<size_t>(model.output_size())) {
            throw LengthMismatch("target length does not match network output size");
        }
    }
}

} // namespace

InputScaler InputScaler::identity(size_t dim) {
    InputScaler s;
    s.mean.assign(dim, 0.0);
    s.stddev.assign(dim, 1.0);
    return s;
}

InputScaler InputScaler::fit(const std::vector<std::vector<double>>& features) {
    if (features.empty()) {
        throw EmptyDataset("cannot fit an input scaler on zero features");
    }
    const size_t dim = features.front().size();
    for (const auto& f : features) {
        if (f.size() != dim) {
            throw LengthMismatch("feature vectors have differing lengths");
        }
    }
    InputScaler s;
    s.mean.assign(dim, 0.0);
    s.stddev.assign(dim, 0.0);
    const double inv = 1.0 / static_cast<double>(features.size());
    for (const auto& f : features) {
        for (size_t i = 0; i < dim; ++i) {
            s.mean[i] += f[i];
        }
    }
    for (size_t i = 0; i < dim; ++i) {
        s.mean[i] *= inv;
    }
    for (const auto& f : features) {
        for (size_t i = 0; i < dim; ++i) {
            const double diff = f[i] - s.mean[i];
            s.stddev[i] += diff * diff;
        }
    }
    for (size_t i = 0; i < dim; ++i) {
        s.stddev[i] = std::sqrt(s.stddev[i] * inv);
        if (s.stddev[i] < 1e-8) {
            s.stddev[i] = 1e-8;
        }
    }
    return s;
}

std::vector<double> InputScaler::apply(const std::vector<double>& feature) const {
    if (feature.size() != mean.size()) {
        throw LengthMismatch("feature length does not match the input scaler");
    }
    std::vector<double> out(feature.size());
    for (size_t i = 0; i < feature.size(); ++i) {
        out[i] = (feature[i] - mean[i]) / stddev[i];
    }
    return out;
}

void Hyperparameters::validate() const {
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
        throw InvalidHyperparameters("learning rate must be a finite non-negative real");
    }
    if (!(momentum >= 0.0 && momentum < 1.0)) {
        throw InvalidHyperparameters("momentum must lie in [0, 1)");
    }
    if (max_epochs < 1) {
        throw InvalidHyperparameters("max_epochs must be positive");
    }
    if (!(target_loss >= 0.0)) {
        throw InvalidHyperparameters("target_loss must be non-negative");
    }
}

MlpModel init_network(const std::vector<int>& layer_sizes, uint64_t seed) {
    if (layer_sizes.size() < 2) {
        throw InvalidArchitecture("a network needs an input and an output layer");
    }
    for (int size : layer_sizes) {
        if (size < 1) {
            throw InvalidArchitecture("every layer needs at least one unit");
        }
    }

    MlpModel model;
    model.layer_sizes = layer_sizes;
    Rng rng(seed);
    for (size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int fan_in = layer_sizes[l];
        const int fan_out = layer_sizes[l + 1];
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        std::vector<double> w(static_cast<size_t>(fan_out) * fan_in);
        for (double& x : w) {
            x = rng.uniform(-bound, bound);
        }
        model.weights.push_back(std::move(w));
        model.biases.emplace_back(fan_out, 0.0);
        model.weight_momentum.emplace_back(static_cast<size_t>(fan_out) * fan_in, 0.0);
        model.bias_momentum.emplace_back(fan_out, 0.0);
    }
    model.input_scaling = InputScaler::identity(static_cast<size_t>(layer_sizes.front()));
    return model;
}

std::vector<std::vector<double>> forward(const MlpModel& model,
                                         const std::vector<double>& input) {
    check_feature_length(model, input);
    std::vector<std::vector<double>> acts;
    acts.reserve(model.layer_sizes.size());
    acts.push_back(input);
    for (size_t l = 0; l < model.weights.size(); ++l) {
        const int rows = model.layer_sizes[l + 1];
        const int cols = model.layer_sizes[l];
        const auto& w = model.weights[l];
        const auto& b = model.biases[l];
        const auto& in = acts.back();
        std::vector<double> out(rows);
        for (int i = 0; i < rows; ++i) {
            double z = b[i];
            for (int j = 0; j < cols; ++j) {
                z += w[static_cast<size_t>(i) * cols + j] * in[j];
            }
            out[i] = sigmoid(z);
        }
        acts.push_back(std::move(out));
    }
    return acts;
}

double train_epoch(MlpModel& model, const std::vector<TrainingSample>& samples,
                   const Hyperparameters& hyper) {
    hyper.validate();
    check_samples(model, samples);

    const double lr = hyper.learning_rate;
    const double mom = hyper.momentum;
    double total_loss = 0.0;
    for (const auto& sample : samples) {
        const auto acts = forward(model, sample.feature);
        total_loss += sample_loss(acts.back(), sample.target);

        const Gradients grads = backprop(model, acts, sample.target);
        for (size_t l = 0; l < model.weights.size(); ++l) {
            auto& w = model.weights[l];
            auto& wm = model.weight_momentum[l];
            const auto& gw = grads.weights[l];
            for (size_t i = 0; i < w.size(); ++i) {
                const double delta = -lr * gw[i] + mom * wm[i];
                w[i] += delta;
                wm[i] = delta;
            }
            auto& b = model.biases[l];
            auto& bm = model.bias_momentum[l];
            const auto& gb = grads.biases[l];
            for (size_t i = 0; i < b.size(); ++i) {
                const double delta = -lr * gb[i] + mom * bm[i];
                b[i] += delta;
                bm[i] = delta;
            }
        }
    }
    return total_loss / static_cast<double>(samples.size());
}

TrainingHistory train(MlpModel& model, const std::vector<TrainingSample>& samples,
                      const Hyperparameters& hyper) {
    hyper.validate();
    check_samples(model, samples);

    TrainingHistory history;
    for (int epoch = 0; epoch < hyper.max_epochs; ++epoch) {
        const double mse = train_epoch(model, samples, hyper);
        history.epoch_mse.push_back(mse);
        ++history.epochs_run;
        if (mse <= hyper.target_loss) {
            history.stop_reason = StopReason::target_reached;
            return history;
        }
    }
    history.stop_reason = StopReason::max_epochs;
    return history;
}

int argmax_lowest_tie(const std::vector<double>& values) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(values.size()); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

Classification classify(const MlpModel& model, const std::vector<double>& feature) {
    const auto scaled = model.input_scaling.apply(feature);
    const auto acts = forward(model, scaled);
    Classification result;
    result.outputs = acts.back();
    result.class_index = argmax_lowest_tie(result.outputs);
    result.confidence = result.outputs[result.class_index];
    return result;
}

double gradient_check(const MlpModel& model, const TrainingSample& sample, double eps) {
    if (!(eps > 0.0)) {
        throw InvalidParameters("finite-difference step must be positive");
    }
    check_feature_length(model, sample.feature);
    if (sample.target.size() != static_cast<size_t>(model.output_size())) {
        throw LengthMismatch("target length does not match network output size");
    }

    const auto acts = forward(model, sample.feature);
    const Gradients grads = backprop(model, acts, sample.target);

    MlpModel probe = model;
    const auto loss_at = [&]() {
        const auto a = forward(probe, sample.feature);
        return sample_loss(a.back(), sample.target);
    };

    double worst = 0.0;
    const auto compare = [&](double& param, double g_bp) {
        const double saved = param;
        param = saved + eps;
        const double plus = loss_at();
        param = saved - eps;
        const double minus = loss_at();
        param = saved;
        const double g_fd = (plus - minus) / (2.0 * eps);
        const double denom = std::abs(g_bp) + std::abs(g_fd);
        const double rel = std::abs(g_bp - g_fd) / (denom > 1e-12 ? denom : 1e-12);
        if (rel > worst) {
            worst = rel;
        }
    };

    for (size_t l = 0; l < probe.weights.size(); ++l) {
        for (size_t i = 0; i < probe.weights[l].size(); ++i) {
            compare(probe.weights[l][i], grads.weights[l][i]);
        }
        for (size_t i = 0; i < probe.biases[l].size(); ++i) {
            compare(probe.biases[l][i], grads.biases[l][i]);
        }
    }
    return worst;
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
    detail::PayloadWriter w;
    w.magic("FMLP");
    w.u32(kModelVersion);
    w.u32(static_cast<uint32_t>(model.layer_sizes.size()));
    for (int size : model.layer_sizes) {
        w.u32(static_cast<uint32_t>(size));
    }
    for (size_t l = 0; l < model.weights.size(); ++l) {
        w.f64_array(model.weights[l]);
        w.f64_array(model.biases[l]);
        w.f64_array(model.weight_momentum[l]);
        w.f64_array(model.bias_momentum[l]);
    }
    w.f64_array(model.input_scaling.mean);
    w.f64_array(model.input_scaling.stddev);
    w.write_file(path);
}

MlpModel load_model(const std::filesystem::path& path) {
    auto r = detail::PayloadReader::from_file(path);
    r.expect_magic("FMLP");
    const uint32_t version = r.u32();
    if (version != kModelVersion) {
        throw VersionMismatch("model file version " + std::to_string(version) +
                              " is not supported");
    }
    r.verify_crc();

    const uint32_t layer_count = r.u32();
    if (layer_count < 2) {
        throw CorruptModel("model file carries an invalid architecture");
    }
    MlpModel model;
    model.layer_sizes.reserve(layer_count);
    for (uint32_t i = 0; i < layer_count; ++i) {
        const uint32_t size = r.u32();
        if (size < 1) {
            throw CorruptModel("model file carries an empty layer");
        }
        model.layer_sizes.push_back(static_cast<int>(size));
    }
    for (uint32_t l = 0; l + 1 < layer_count; ++l) {
        const size_t rows = static_cast<size_t>(model.layer_sizes[l + 1]);
        const size_t cols = static_cast<size_t>(model.layer_sizes[l]);
        model.weights.push_back(r.f64_array(rows * cols));
        model.biases.push_back(r.f64_array(rows));
        model.weight_momentum.push_back(r.f64_array(rows * cols));
        model.bias_momentum.push_back(r.f64_array(rows));
    }
    const size_t dim = static_cast<size_t>(model.layer_sizes.front());
    model.input_scaling.mean = r.f64_array(dim);
    model.input_scaling.stddev = r.f64_array(dim);
    if (!r.at_payload_end()) {
        throw CorruptModel("model file has trailing bytes");
    }
    return model;
}

} // namespace facefuse
