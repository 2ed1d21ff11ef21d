#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "facefuse/eigenspace.hpp"
#include "facefuse/manifest.hpp"
#include "facefuse/mlp.hpp"

namespace facefuse {

// Effective configuration echoed into every report.
struct ConfigEcho {
    int k = 0;
    double visual_weight = 0.70;
    double thermal_weight = 0.30;
    std::vector<int> hidden = {32};
    double learning_rate = 0.1;
    double momentum = 0.9;
    int max_epochs = 2000;
    double target_loss = 1e-3;
    uint64_t seed = 0;
};

struct EvalReport {
    double overall_rate = 0.0;
    std::vector<std::string> classes;        // manifest order
    std::vector<double> per_class_rate;      // parallel to classes
    std::vector<std::vector<int>> confusion; // rows = true, columns = predicted
    int test_count = 0;
    ConfigEcho config_echo;
};

struct ProtocolConfig {
    int k = 0; // 0 = auto: min(N - 1, 40)
    std::vector<int> hidden = {32};
    Hyperparameters hyper;
    double visual_weight = 0.70;  // echoed only; fusion happened upstream
    double thermal_weight = 0.30;
};

struct TrainedClassifier {
    MlpModel model;
    TrainingHistory history;
};

struct ProtocolResult {
    Eigenspace space;
    MlpModel model;
    TrainingHistory history;
    EvalReport report;
};

// Builds the eigenspace from the train split only (k = 0 picks the default);
// test entries are never opened.
Eigenspace build_space_stage(const FusedManifest& manifest, int k);

// Projects the train split into the space, fits the input scaler on those
// projections, and trains the MLP. Test entries are never opened. Class
// indices follow manifest.class_labels.
TrainedClassifier train_classifier_stage(const FusedManifest& manifest,
                                         const Eigenspace& space,
                                         const ProtocolConfig& config);

// Classifies the test split and fills the report.
EvalReport evaluate_stage(const Eigenspace& space, const MlpModel& model,
                          const FusedManifest& manifest, const ConfigEcho& echo);

// Full protocol: eigenspace from train split, projections, input scaling fit
// on train projections, MLP training, then test-set classification.
ProtocolResult run_protocol(const FusedManifest& manifest, const ProtocolConfig& config);

enum class ReportFormat { csv, json };

// CSV: header `class,test_count,correct,rate`, one row per class plus an
// `__overall__` row. JSON mirrors the EvalReport fields and parses back.
void export_report(const EvalReport& report, const std::filesystem::path& path,
                   ReportFormat format);
EvalReport report_from_json(const std::string& json_text);

} // namespace facefuse
