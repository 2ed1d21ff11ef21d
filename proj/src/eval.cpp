#include "facefuse/eval.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "facefuse/errors.hpp"
#include "facefuse/pgm.hpp"

namespace facefuse {

namespace {

int class_index(const std::vector<std::string>& labels, const std::string& subject) {
    const auto it = std::find(labels.begin(), labels.end(), subject);
    if (it == labels.end()) {
        throw InsufficientData("subject '" + subject + "' is not in the class list");
    }
    return static_cast<int>(it - labels.begin());
}

struct LoadedSplit {
    std::vector<PixelVector> pixels;
    std::vector<int> labels;
    int width = 0;
    int height = 0;
};

LoadedSplit load_split(const FusedManifest& manifest, Split split) {
    LoadedSplit out;
    for (const auto& entry : manifest.entries) {
        if (entry.split != split) {
            continue;
        }
        const GrayImage image = load_grayscale(entry.fused_path);
        if (out.pixels.empty()) {
            out.width = image.width;
            out.height = image.height;
        } else if (image.width != out.width || image.height != out.height) {
            throw DimensionMismatch("fused image " + entry.fused_path.string() +
                                    " does not match the dataset dimensions");
        }
        out.pixels.push_back(flatten(image));
        out.labels.push_back(class_index(manifest.class_labels, entry.subject));
    }
    return out;
}

void check_protocol_manifest(const FusedManifest& manifest) {
    const size_t classes = manifest.class_labels.size();
    if (classes < 2) {
        throw InsufficientData("the protocol needs at least 2 classes, got " +
                               std::to_string(classes));
    }
    std::vector<int> train_count(classes, 0);
    std::vector<int> test_count(classes, 0);
    for (const auto& entry : manifest.entries) {
        const int c = class_index(manifest.class_labels, entry.subject);
        (entry.split == Split::train ? train_count[c] : test_count[c])++;
    }
    for (size_t c = 0; c < classes; ++c) {
        if (train_count[c] == 0 || test_count[c] == 0) {
            throw InsufficientData("class '" + manifest.class_labels[c] +
                                   "' is missing train or test images");
        }
    }
}

nlohmann::json echo_to_json(const ConfigEcho& echo) {
    return nlohmann::json{{"k", echo.k},
                          {"visual_weight", echo.visual_weight},
                          {"thermal_weight", echo.thermal_weight},
                          {"hidden", echo.hidden},
                          {"learning_rate", echo.learning_rate},
                          {"momentum", echo.momentum},
                          {"max_epochs", echo.max_epochs},
                          {"target_loss", echo.target_loss},
                          {"seed", echo.seed}};
}

ConfigEcho echo_from_json(const nlohmann::json& j) {
    ConfigEcho echo;
    echo.k = j.at("k").get<int>();
    echo.visual_weight = j.at("visual_weight").get<double>();
    echo.thermal_weight = j.at("thermal_weight").get<double>();
    echo.hidden = j.at("hidden").get<std::vector<int>>();
    echo.learning_rate = j.at("learning_rate").get<double>();
    echo.momentum = j.at("momentum").get<double>();
    echo.max_epochs = j.at("max_epochs").get<int>();
    echo.target_loss = j.at("target_loss").get<double>();
    echo.seed = j.at("seed").get<uint64_t>();
    return echo;
}

} // namespace

Eigenspace build_space_stage(const FusedManifest& manifest, int k) {
    const LoadedSplit train_split = load_split(manifest, Split::train);
    if (train_split.pixels.empty()) {
        throw InsufficientData("manifest has no train images");
    }
    const int n = static_cast<int>(train_split.pixels.size());
    const int effective_k = k == 0 ? default_k(n) : k;
    return build_eigenspace(train_split.pixels, effective_k, train_split.width,
                            train_split.height);
}

TrainedClassifier train_classifier_stage(const FusedManifest& manifest,
                                         const Eigenspace& space,
                                         const ProtocolConfig& config) {
    if (manifest.class_labels.size() < 2) {
        throw InsufficientData("the protocol needs at least 2 classes, got " +
                               std::to_string(manifest.class_labels.size()));
    }
    const LoadedSplit train_split = load_split(manifest, Split::train);
    if (train_split.pixels.empty()) {
        throw InsufficientData("manifest has no train images");
    }
    if (train_split.width != space.width || train_split.height != space.height) {
        throw DimensionMismatch("train images do not match the eigenspace dimensions");
    }

    std::vector<std::vector<double>> features;
    features.reserve(train_split.pixels.size());
    for (const auto& img : train_split.pixels) {
        features.push_back(project(space, img).coords);
    }
    const InputScaler scaler = InputScaler::fit(features);

    const int class_count = static_cast<int>(manifest.class_labels.size());
    std::vector<TrainingSample> samples;
    samples.reserve(features.size());
    for (size_t i = 0; i < features.size(); ++i) {
        TrainingSample s;
        s.feature = scaler.apply(features[i]);
        s.target.assign(class_count, 0.0);
        s.target[train_split.labels[i]] = 1.0;
        samples.push_back(std::move(s));
    }

    std::vector<int> layer_sizes;
    layer_sizes.push_back(space.k());
    for (int h : config.hidden) {
        layer_sizes.push_back(h);
    }
    layer_sizes.push_back(class_count);

    TrainedClassifier trained;
    trained.model = init_network(layer_sizes, config.hyper.seed);
    trained.model.input_scaling = scaler;
    trained.history = train(trained.model, samples, config.hyper);
    return trained;
}

EvalReport evaluate_stage(const Eigenspace& space, const MlpModel& model,
                          const FusedManifest& manifest, const ConfigEcho& echo) {
    const int class_count = static_cast<int>(manifest.class_labels.size());
    if (model.output_size() != class_count) {
        throw LengthMismatch("model has " + std::to_string(model.output_size()) +
                             " outputs but the manifest lists " +
                             std::to_string(class_count) + " classes");
    }

    EvalReport report;
    report.classes = manifest.class_labels;
    report.confusion.assign(class_count, std::vector<int>(class_count, 0));
    report.config_echo = echo;

    for (const auto& entry : manifest.entries) {
        if (entry.split != Split::test) {
            continue;
        }
        const GrayImage image = load_grayscale(entry.fused_path);
        if (image.width != space.width || image.height != space.height) {
            throw DimensionMismatch("test image " + entry.fused_path.string() +
                                    " does not match the eigenspace dimensions");
        }
        const FeatureVector feature = project(space, flatten(image));
        const Classification decision = classify(model, feature.coords);
        const int truth = class_index(manifest.class_labels, entry.subject);
        report.confusion[truth][decision.class_index]++;
        report.test_count++;
    }
    if (report.test_count == 0) {
        throw InsufficientData("manifest has no test images");
    }

    int correct = 0;
    report.per_class_rate.resize(class_count, 0.0);
    for (int c = 0; c < class_count; ++c) {
        int row_total = 0;
        for (int p = 0; p < class_count; ++p) {
            row_total += report.confusion[c][p];
        }
        correct += report.confusion[c][c];
        report.per_class_rate[c] =
            row_total > 0 ? static_cast<double>(report.confusion[c][c]) / row_total : 0.0;
    }
    report.overall_rate = static_cast<double>(correct) / report.test_count;
    return report;
}

ProtocolResult run_protocol(const FusedManifest& manifest, const ProtocolConfig& config) {
    check_protocol_manifest(manifest);

    ProtocolResult result;
    result.space = build_space_stage(manifest, config.k);
    TrainedClassifier trained = train_classifier_stage(manifest, result.space, config);
    result.model = std::move(trained.model);
    result.history = std::move(trained.history);

    ConfigEcho echo;
    echo.k = result.space.k();
    echo.visual_weight = config.visual_weight;
    echo.thermal_weight = config.thermal_weight;
    echo.hidden = config.hidden;
    echo.learning_rate = config.hyper.learning_rate;
    echo.momentum = config.hyper.momentum;
    echo.max_epochs = config.hyper.max_epochs;
    echo.target_loss = config.hyper.target_loss;
    echo.seed = config.hyper.seed;

    result.report = evaluate_stage(result.space, result.model, manifest, echo);
    return result;
}

void export_report(const EvalReport& report, const std::filesystem::path& path,
                   ReportFormat format) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoFailure("cannot open " + path.string() + " for writing");
    }
    if (format == ReportFormat::csv) {
        out << "class,test_count,correct,rate\n";
        int total_correct = 0;
        for (size_t c = 0; c < report.classes.size(); ++c) {
            int row_total = 0;
            for (int v : report.confusion[c]) {
                row_total += v;
            }
            const int correct = report.confusion[c][c];
            total_correct += correct;
            out << report.classes[c] << "," << row_total << "," << correct << ","
                << std::fixed << std::setprecision(4) << report.per_class_rate[c] << "\n";
        }
        out << "__overall__," << report.test_count << "," << total_correct << ","
            << std::fixed << std::setprecision(4) << report.overall_rate << "\n";
    } else {
        nlohmann::json j{{"overall_rate", report.overall_rate},
                         {"test_count", report.test_count},
                         {"classes", report.classes},
                         {"confusion", report.confusion},
                         {"config_echo", echo_to_json(report.config_echo)}};
        nlohmann::json rates = nlohmann::json::object();
        for (size_t c = 0; c < report.classes.size(); ++c) {
            rates[report.classes[c]] = report.per_class_rate[c];
        }
        j["per_class_rate"] = rates;
        out << j.dump(2) << "\n";
    }
    if (!out) {
        throw IoFailure("write failed: " + path.string());
    }
}

EvalReport report_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw CorruptModel(std::string("report does not parse as JSON: ") + e.what());
    }
    try {
        EvalReport report;
        report.overall_rate = j.at("overall_rate").get<double>();
        report.test_count = j.at("test_count").get<int>();
        report.classes = j.at("classes").get<std::vector<std::string>>();
        report.confusion = j.at("confusion").get<std::vector<std::vector<int>>>();
        report.config_echo = echo_from_json(j.at("config_echo"));
        for (const auto& label : report.classes) {
            report.per_class_rate.push_back(j.at("per_class_rate").at(label).get<double>());
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw CorruptModel(std::string("report JSON is missing fields: ") + e.what());
    }
}

} // namespace facefuse
